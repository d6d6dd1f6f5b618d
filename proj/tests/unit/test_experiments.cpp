#include <doctest.h>

#include <set>

#include "oracles/oracles.hpp"
#include "subspace/error.hpp"
#include "subspace/experiments.hpp"
#include "subspace/quang.hpp"
#include "subspace/sampling.hpp"
#include "subspace/serialize.hpp"

using namespace subspace;

namespace {

LinearForm L(std::initializer_list<long> c) { return LinearForm::of(c); }

ExperimentConfig p1_config(std::vector<Place> s, Rat eps, Real h_max, std::size_t count) {
  ExperimentConfig c;
  c.ambient_dim = 1;
  c.subvariety = LinearSubvariety::ambient(1);
  for (const auto& v : s) c.arrangements.push_back({v, {L({1, 0}), L({0, 1})}});
  c.l = 1;
  c.epsilon = eps;
  c.h_min = 0;
  c.h_max = h_max;
  c.sample_count = count;
  c.seed = 1;
  return c;
}

ExperimentConfig p2_config(std::size_t count, std::uint64_t seed, int workers) {
  ExperimentConfig c;
  c.ambient_dim = 2;
  c.subvariety = LinearSubvariety::ambient(2);
  // x0, x1, x0 + x1 concurrent at [0:0:1]; x2 completes a 3-subgeneral family.
  std::vector<Target> lines = {L({1, 0, 0}), L({0, 1, 0}), L({1, 1, 0}), L({0, 0, 1})};
  c.arrangements = {{Place::infinity(), lines}, {Place::finite(2), lines}};
  c.l = 3;
  c.epsilon = 1;
  c.h_min = 2;
  c.h_max = 6;
  c.sample_count = count;
  c.seed = seed;
  c.workers = workers;
  return c;
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("P1 window is exhaustive") {
    auto r = sample_points(LinearSubvariety::ambient(1), 0, std::log(5.0), 1000, 0);
    std::set<std::vector<Integer>> got;
    for (const auto& p : r.points) got.insert(p.coords());
    CHECK(got.size() == r.points.size());
    std::set<std::vector<Integer>> expected;
    for (long a = 0; a <= 5; ++a) {
      for (long b = -5; b <= 5; ++b) {
        if (a == 0 && b != 1) continue;
        Integer g;
        mpz_gcd(g.get_mpz_t(), Integer(a).get_mpz_t(), Integer(b).get_mpz_t());
        if (g != 1) continue;
        expected.insert({a, b});
      }
    }
    CHECK(got == expected);
    CHECK_FALSE(r.partial);
  }

  TEST_CASE("heights increase along the P1 enumeration") {
    auto r = sample_points(LinearSubvariety::ambient(1), 0, std::log(40.0), 100000, 0);
    for (std::size_t i = 1; i < r.points.size(); ++i) CHECK(height(r.points[i - 1]) <= height(r.points[i]));
  }

  TEST_CASE("count zero and window errors") {
    CHECK(sample_points(LinearSubvariety::ambient(2), 1, 2, 0, 0).points.empty());
    CHECK_THROWS_AS(sample_points(LinearSubvariety::ambient(2), 2, 2, 5, 0), ArgumentError);
  }

  TEST_CASE("points on a subvariety stay in the window and are distinct") {
    auto x = LinearSubvariety::cut_out(2, {L({0, 0, 1})});
    auto r = sample_points(x, 3, 6, 300, 9);
    CHECK(r.points.size() == 300);
    std::set<ProjPoint> seen(r.points.begin(), r.points.end());
    CHECK(seen.size() == r.points.size());
    for (const auto& p : r.points) {
      CHECK(p.coords()[2] == 0);
      CHECK(height(p) >= 3);
      CHECK(height(p) <= 6);
    }
  }

  TEST_CASE("seeded sampling is reproducible and filters apply") {
    auto x = LinearSubvariety::ambient(2);
    PointFilter no_x0 = [](const ProjPoint& p) { return p.coords()[0] == 0; };
    auto a = sample_points(x, 2, 5, 200, 42, no_x0);
    auto b = sample_points(x, 2, 5, 200, 42, no_x0);
    CHECK(a.points == b.points);
    for (const auto& p : a.points) CHECK(p.coords()[0] != 0);
    auto c = sample_points(x, 2, 5, 200, 43, no_x0);
    CHECK(a.points != c.points);
  }

  TEST_CASE("a window too narrow to fill is partial") {
    auto r = sample_points(LinearSubvariety::ambient(2), 0, 0.5, 500, 1);
    CHECK(r.partial);
    CHECK(r.points.size() < 500);
  }

  TEST_CASE("max_coordinate_for_height") {
    CHECK(max_coordinate_for_height(std::log(5.0)) == 5);
    CHECK(max_coordinate_for_height(std::log(5.0) - 1e-9) == 4);
    CHECK(max_coordinate_for_height(-1) == 0);
  }
}

TEST_SUITE("experiments") {
  TEST_CASE("weighted_defect examples") {
    auto c = p1_config({Place::infinity()}, 1, 3, 1);
    auto d = weighted_defect(ProjPoint::of({1, 17}), c);
    LogSum expect;
    expect.add(1, 17);
    CHECK(LogSum::compare(d, expect) == 0);
    auto empty = p1_config({}, 1, 3, 1);
    CHECK(weighted_defect(ProjPoint::of({1, 17}), empty).value() == 0.0);
    ExperimentConfig p2;
    p2.ambient_dim = 2;
    p2.subvariety = LinearSubvariety::ambient(2);
    p2.arrangements = {{Place::infinity(), {L({1, 0, 0}), L({0, 1, 0}), L({0, 0, 1}), L({1, 1, 1})}}};
    // Coordinate forms give 0; the sum form is far from [1:1:1]: log(1·1/3).
    CHECK(weighted_defect(ProjPoint::of({1, 1, 1}), p2).value() == doctest::Approx(-std::log(3.0)));
  }

  TEST_CASE("weights are Seshadri constants") {
    ExperimentConfig c = p1_config({Place::infinity()}, 1, 3, 1);
    std::vector<Rat> sq = {1, 0, 1};
    c.arrangements = {{Place::infinity(), {HomForm::from_dense(1, 2, sq), L({1, 0})}}};
    auto d = weighted_defect(ProjPoint::of({1, 3}), c);
    // (1/2)·log(9·1/10) + log(3) .
    LogSum expect;
    expect.add(make_rat(1, 2), make_rat(9, 10));
    expect.add(1, 3);
    CHECK(LogSum::compare(d, expect) == 0);
  }

  TEST_CASE("delta_budget examples and maximality") {
    CHECK(delta_budget(2, 2, 1) == make_rat(1, 8));
    for (int l = 1; l <= 8; ++l) {
      for (int n = 1; n <= l; ++n) {
        for (const Rat& eps : {make_rat(1, 10), Rat(1), Rat(10), Rat(100)}) {
          const Rat d = delta_budget(l, n, eps);
          const Rat k = l - n + 1;
          CHECK(d * k + d * k * (n + 1 + d) < eps);
          if (d < 1) {
            const Rat d2 = 2 * d;
            CHECK_FALSE(d2 * k + d2 * k * (n + 1 + d2) < eps);
          }
          CHECK(d == oracle::delta(l, n, eps));
        }
      }
    }
    CHECK_THROWS_AS(delta_budget(1, 2, 1), ArgumentError);
    CHECK_THROWS_AS(delta_budget(2, 2, 0), ArgumentError);
  }

  TEST_CASE("P1 main experiment: ratio at most 1 with S = {inf}") {
    auto c = p1_config({Place::infinity()}, 1, std::log(60.0), 100000);
    auto r = run_main_experiment(c);
    CHECK(r.bound == 3);
    CHECK(r.violators.empty());
    CHECK(r.zero_height > 0);
    for (const auto& rec : r.records) {
      if (rec.ratio) CHECK(*rec.ratio <= 1 + 1e-12);
      else CHECK(rec.height == 0.0);
    }
  }

  TEST_CASE("P1 baseline with S = {inf, 2, 3}: ratio at most 2") {
    auto c = p1_config({Place::infinity(), Place::finite(2), Place::finite(3)}, make_rat(1, 10), std::log(80.0), 100000);
    auto r = run_evertse_ferretti_baseline(c);
    CHECK(r.kind == "baseline");
    CHECK(r.bound == make_rat(21, 10));
    CHECK(r.violators.empty());
    Real worst = 0;
    for (const auto& rec : r.records) {
      if (rec.ratio) worst = std::max(worst, *rec.ratio);
    }
    CHECK(worst <= 2 + 1e-12);
    CHECK(worst > 1);
  }

  TEST_CASE("baseline rejects the wrong number of targets") {
    auto c = p1_config({Place::infinity()}, 1, 3, 10);
    c.arrangements[0].targets.push_back(L({1, 1}));
    CHECK_THROWS_AS(run_evertse_ferretti_baseline(c), ConfigRejected);
  }

  TEST_CASE("main experiment rejects positions that fail") {
    auto c = p2_config(10, 1, 1);
    c.arrangements[0].targets.push_back(L({1, -1, 0}));
    CHECK_THROWS_AS(run_main_experiment(c), PositionRejected);
  }

  TEST_CASE("non-linear targets need an assertion") {
    auto c = p1_config({Place::infinity()}, 1, 3, 10);
    std::vector<Rat> sq = {1, 0, 1};
    c.arrangements[0].targets[1] = HomForm::from_dense(1, 2, sq);
    CHECK_THROWS_AS(run_main_experiment(c), ConfigRejected);
    c.assert_position = true;
    auto r = run_main_experiment(c);
    CHECK(r.position_asserted);
  }

  TEST_CASE("empty sample gives an empty report") {
    auto c = p1_config({Place::infinity()}, 1, 3, 0);
    auto r = run_evertse_ferretti_baseline(c);
    CHECK(r.records.empty());
    CHECK(r.violators.empty());
  }

  TEST_CASE("P2 main experiment: chain checks pass and workers do not matter") {
    auto a = run_main_experiment(p2_config(400, 7, 1));
    auto b = run_main_experiment(p2_config(400, 7, 4));
    CHECK(io::to_json(a).dump() == io::to_json(b).dump());
    CHECK(a.chain.checked > 0);
    CHECK(a.chain.all_passed());
    CHECK(a.records.size() + a.support_skipped >= 1);
    CHECK(std::is_sorted(a.records.begin(), a.records.end(),
                         [](const PointRecord& x, const PointRecord& y) { return x.point < y.point; }));
  }

  TEST_CASE("raising epsilon never adds violators") {
    auto c = p2_config(300, 11, 2);
    c.epsilon = make_rat(-59, 10) + 6;  // bound just above 6: 6 + 1/10
    c.h_min = 0.5;
    c.h_max = 2;
    auto low = run_main_experiment(c);
    c.epsilon = 3;
    auto high = run_main_experiment(c);
    std::set<std::vector<Integer>> low_set;
    for (auto i : low.violators) low_set.insert(low.records[i].point);
    for (auto i : high.violators) CHECK(low_set.count(high.records[i].point) == 1);
  }

  TEST_CASE("exceptional_scan finds a line holding most points") {
    std::vector<ProjPoint> pts;
    for (long t = 1; t <= 12; ++t) pts.push_back(ProjPoint::of({t, 2 * t + 1, 3 * t + 2}));  // all on one line
    pts.push_back(ProjPoint::of({5, 1, 7}));
    pts.push_back(ProjPoint::of({2, 9, 4}));
    auto cands = exceptional_scan(pts, 0.5, 10);
    REQUIRE_FALSE(cands.empty());
    CHECK(cands.front().dimension == 1);
    CHECK(cands.front().members.size() == 12);
    for (const auto& cand : cands) {
      for (const auto& m : cand.members) {
        for (const auto& f : cand.defining_forms) CHECK(evaluate(f, ProjPoint::from_integers(m)) == 0);
      }
    }
    CHECK(exceptional_scan({}, 0.5, 10).empty());
  }
}
