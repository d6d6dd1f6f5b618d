// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles/generators.hpp"
#include "oracles/oracles.hpp"
#include "subspace/chain.hpp"
#include "subspace/error.hpp"
#include "subspace/experiments.hpp"
#include "subspace/quang.hpp"
#include "subspace/serialize.hpp"
#include "subspace/weil.hpp"

using namespace subspace;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

long draw(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Integer draw_big(std::mt19937_64& rng, std::uint64_t hi) {
  const auto x = std::uniform_int_distribution<std::uint64_t>(1, hi)(rng);
  return Integer(std::to_string(x));
}

ProjPoint random_point(std::mt19937_64& rng, int dim, long bound) {
  while (true) {
    std::vector<Rat> c;
    bool nonzero = false;
    for (int i = 0; i <= dim; ++i) {
      c.push_back(make_rat(draw(rng, -bound, bound), draw(rng, 1, 6)));
      nonzero = nonzero || c.back() != 0;
    }
    if (nonzero) return ProjPoint::from_rationals(c);
  }
}

HomForm random_form(std::mt19937_64& rng, int dim, int degree) {
  while (true) {
    std::vector<Rat> c;
    bool nonzero = false;
    for (std::size_t k = 0; k < monomial_count(dim, degree); ++k) {
      // Sparse forms keep Gelfond-type cancellation visible.
      c.push_back(draw(rng, 0, 2) == 0 ? Rat(draw(rng, -9, 9)) : Rat(0));
      nonzero = nonzero || c.back() != 0;
    }
    if (nonzero) return HomForm::from_dense(dim, degree, c);
  }
}

std::vector<std::pair<std::vector<int>, Rat>> terms_of(const HomForm& f) {
  std::vector<std::pair<std::vector<int>, Rat>> out;
  for (const auto& t : f.terms()) out.push_back({t.exponent, t.coeff});
  return out;
}

const std::vector<Place>& test_places() {
  static const std::vector<Place> v = {Place::infinity(), Place::finite(2), Place::finite(3), Place::finite(5),
                                       Place::finite(7)};
  return v;
}

// 1. Product formula on 10^4 rationals up to 10^12.
Outcome product_formula() {
  std::mt19937_64 rng(1001);
  const auto t0 = Clock::now();
  int exact = 0;
  const int total = 10000;
  for (int i = 0; i < total; ++i) {
    Rat x(draw_big(rng, 1000000000000ULL), draw_big(rng, 1000000000000ULL));
    x.canonicalize();
    if (draw(rng, 0, 1)) x = -x;
    auto ledger = product_formula_residual(x);
    bool ok = ledger.exact_zero();
    for (const auto& [p, e] : ledger.finite) {
      ok = ok && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0 && e != 0;
    }
    exact += ok;
  }
  const double secs = seconds_since(t0);
  return {exact == total && secs < 5.0, fmt("%d/%d exact, %.2f s (limit 5 s)", exact, total, secs)};
}

// 2. Weil-function constants on 10^3 triples in P^M, M <= 4.
Outcome weil_constants() {
  std::mt19937_64 rng(1002);
  const auto t0 = Clock::now();
  int triples = 0, failures = 0;
  while (triples < 1000) {
    const int m = static_cast<int>(draw(rng, 1, 4));
    const int df = static_cast<int>(draw(rng, 1, 2)), dg = static_cast<int>(draw(rng, 1, 2));
    auto f = random_form(rng, m, df);
    auto g = random_form(rng, m, dg);
    auto p = random_point(rng, m, 60);
    if (evaluate(f, p) == 0 || evaluate(g, p) == 0) continue;
    const auto& v = test_places()[static_cast<std::size_t>(draw(rng, 0, 4))];
    ++triples;
    const Rat a_f = weil_divisor(p, f, v).argument;
    const Rat a_g = weil_divisor(p, g, v).argument;
    bool ok = a_f == oracle::weil_argument(oracle::row(LinearForm::from_integers(p.coords())), terms_of(f), v);
    // Lower bounds: 0 at finite places, −log #monomials at ∞.
    if (v.is_archimedean()) {
      ok = ok && a_f * Rat(static_cast<long>(monomial_count(m, df))) >= 1;
    } else {
      ok = ok && a_f >= 1;
    }
    // Additivity under products.
    auto fg = HomForm::product(f, g);
    const Rat a_fg = weil_divisor(p, fg, v).argument;
    const Rat r = a_fg / (a_f * a_g);
    if (v.is_archimedean()) {
      // ∥FG∥ ≤ #monomials(FG)·∥F∥∥G∥ and, by Gelfond's lemma, ∥F∥∥G∥ ≤ e^D ∥FG∥
      // with D the sum of the partial degrees of FG.
      int partial = 0;
      for (int i = 0; i <= m; ++i) {
        int top = 0;
        for (const auto& t : fg.terms()) top = std::max(top, t.exponent[static_cast<std::size_t>(i)]);
        partial += top;
      }
      ok = ok && r <= Rat(static_cast<long>(monomial_count(m, df + dg)));
      ok = ok && log_real(r) >= -static_cast<double>(partial);
    } else {
      ok = ok && r == 1;
    }
    // Min-law, exact and independent of the component order.
    SubschemeSpec y1({f, g}), y2({g, f});
    const Rat a_y = weil_subscheme(p, y1, v).argument;
    ok = ok && a_y == std::min(a_f, a_g) && a_y == weil_subscheme(p, y2, v).argument;
    failures += !ok;
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs < 10.0,
          fmt("%d triples, %d failures, %.2f s (limit 10 s)", triples, failures, secs)};
}

// 3. Veronese functoriality on 500 (P, F, v), deg F <= 3, M <= 3.
Outcome veronese() {
  std::mt19937_64 rng(1003);
  int cases = 0, failures = 0;
  while (cases < 500) {
    const int m = static_cast<int>(draw(rng, 1, 3));
    const int d = static_cast<int>(draw(rng, 1, 3));
    auto f = random_form(rng, m, d);
    auto p = random_point(rng, m, 40);
    if (evaluate(f, p) == 0) continue;
    const auto& v = test_places()[static_cast<std::size_t>(draw(rng, 0, 4))];
    ++cases;
    auto vp = veronese_point(p, d);
    auto vf = veronese_form(f);
    const auto div = weil_divisor(p, f, v);
    const auto hyp = weil_hyperplane(vp.point, vf.form, v);
    // The recorded scalars must explain the evaluation exactly.
    bool ok = Rat(evaluate(vf.form, vp.point)) == veronese_ratio(vp, vf) * Rat(evaluate(f, p));
    if (v.is_archimedean()) {
      const double a = div.value, b = hyp.value;
      ok = ok && std::abs(a - b) <= 2 * std::abs(std::nextafter(a, 1e300) - a);
      ok = ok && div.argument == hyp.argument;
    } else {
      ok = ok && div.argument == hyp.argument;
    }
    failures += !ok;
  }
  return {failures == 0, fmt("%d cases, %d failures", cases, failures)};
}

// 4. Position oracle on 10^4 deduplicated arrangements, M <= 3, q <= 6.
Outcome position_oracle() {
  std::mt19937_64 rng(1004);
  const auto t0 = Clock::now();
  std::set<std::vector<std::vector<Integer>>> seen;
  int configs = 0, comparisons = 0, disagreements = 0;
  while (configs < 10000) {
    const int m = static_cast<int>(draw(rng, 1, 3));
    const int q = static_cast<int>(draw(rng, m + 1, 6));
    std::vector<LinearForm> forms;
    for (int i = 0; i < q; ++i) forms.push_back(oracle::small_form(rng, m));
    std::vector<std::vector<Integer>> key;
    for (const auto& f : forms) key.push_back(f.coeffs());
    if (!seen.insert(key).second) continue;
    ++configs;
    // Intersection dimensions per subset, from minors only.
    std::map<std::vector<int>, int> dims;
    for (std::size_t k = 1; k <= forms.size(); ++k) {
      oracle::each_subset(forms.size(), k, [&](const std::vector<std::size_t>& j) {
        std::vector<LinearForm> sub;
        for (auto i : j) sub.push_back(forms[i]);
        dims[std::vector<int>(j.begin(), j.end())] = oracle::intersection_dim(sub, {}, m);
        return true;
      });
    }
    const auto x = LinearSubvariety::ambient(m);
    for (int l = m; l <= q - 1; ++l) {
      std::vector<std::pair<std::vector<int>, int>> expected;
      for (std::size_t k = 1; k <= static_cast<std::size_t>(l + 1) && k <= forms.size(); ++k) {
        for (const auto& [j, d] : dims) {
          if (j.size() == k && d > l - static_cast<int>(k)) expected.push_back({j, d});
        }
      }
      auto report = check_subgeneral(forms, x, l);
      bool same = report.verdict == expected.empty() && report.witnesses.size() == expected.size();
      for (std::size_t i = 0; same && i < expected.size(); ++i) {
        same = report.witnesses[i].indices == expected[i].first && report.witnesses[i].dimension == expected[i].second;
      }
      ++comparisons;
      disagreements += !same;
    }
  }
  const double secs = seconds_since(t0);
  return {disagreements == 0 && secs < 60.0,
          fmt("%d configurations, %d (config, l) comparisons, %d disagreements, %.1f s (limit 60 s)", configs,
              comparisons, disagreements, secs)};
}

std::vector<oracle::Arrangement> quang_arrangements() {
  std::mt19937_64 rng(1005);
  std::vector<oracle::Arrangement> out;
  while (out.size() < 100) {
    const int n = static_cast<int>(draw(rng, 1, 3));
    const int l = static_cast<int>(draw(rng, n, 6));
    if (auto a = oracle::strict_subgeneral(rng, n, l)) out.push_back(std::move(*a));
  }
  return out;
}

// 5. Quang certificates for 100 strict arrangements plus the worked example.
Outcome quang_certificates(const std::vector<oracle::Arrangement>& arrs) {
  const auto t0 = Clock::now();
  int ok_count = 0;
  std::set<std::pair<int, int>> shapes;
  for (const auto& a : arrs) {
    shapes.insert({a.n, a.l});
    try {
      auto cert = quang_combine(a.forms, LinearSubvariety::cut_out(a.m, a.xforms));
      bool ok = verify(cert).ok() && cert.outputs.front() == a.forms.front();
      // Independent replay and general-position check.
      for (std::size_t t = 0; ok && t < cert.outputs.size(); ++t) {
        std::vector<Rat> sum(static_cast<std::size_t>(a.m + 1), 0);
        for (std::size_t j = 0; j < a.forms.size(); ++j) {
          const bool allowed = t == 0 ? j == 0 : (j >= 1 && j <= static_cast<std::size_t>(a.l - a.n) + t);
          if (!allowed && cert.coefficients[t][j] != 0) ok = false;
          for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += cert.coefficients[t][j] * Rat(a.forms[j].coeffs()[i]);
        }
        ok = ok && LinearForm::from_rationals(sum) == cert.outputs[t];
      }
      ok = ok && oracle::subgeneral_violations(cert.outputs, a.xforms, a.m, a.n).empty();
      ok_count += ok;
    } catch (const Error&) {
    }
  }
  auto x = LinearSubvariety::cut_out(2, {LinearForm::of({0, 0, 1})});
  std::vector<LinearForm> forms = {LinearForm::of({1, 0, 0}), LinearForm::of({0, 1, 0}), LinearForm::of({1, -1, 0})};
  auto worked = quang_combine(forms, x);
  const bool example = worked.outputs.size() == 2 && worked.outputs[0] == LinearForm::of({1, 0, 0}) &&
                       worked.outputs[1] == LinearForm::of({0, 1, 0}) && verify(worked).ok();
  return {ok_count == 100 && example,
          fmt("%d/100 certificates verified over %zu (n, l) shapes, worked example %s, %.1f s", ok_count,
              shapes.size(), example ? "reproduced" : "WRONG", seconds_since(t0))};
}

// 6. Chain inequality at 10^3 points per arrangement across S = {inf, 2, 3}.
Outcome chain(const std::vector<oracle::Arrangement>& arrs) {
  const auto t0 = Clock::now();
  const std::vector<Place> s = {Place::infinity(), Place::finite(2), Place::finite(3)};
  std::size_t checked = 0, passed = 0, invalid = 0, certificates = 0;
  double min_slack = 1e300;
  std::uint64_t seed = 6000;
  for (const auto& a : arrs) {
    auto x = LinearSubvariety::cut_out(a.m, a.xforms);
    ChainChecker checker(a.forms, x);
    auto on_support = [&](const ProjPoint& p) {
      for (const auto& f : a.forms) {
        if (evaluate(f, p) == 0) return true;
      }
      return false;
    };
    auto sample = sample_points(x, 1.0, 8.0, 1000, seed++, on_support);
    for (const auto& p : sample.points) {
      for (const auto& v : s) {
        try {
          auto rec = checker.check(p, v);
          ++checked;
          passed += rec.pass;
          min_slack = std::min(min_slack, rec.slack);
        } catch (const SupportError&) {
          ++invalid;  // on a combination hyperplane of that ordering
        }
      }
    }
    certificates += checker.cached_certificates();
  }
  return {checked > 0 && passed == checked,
          fmt("%zu/%zu valid samples pass, %zu on combination hyperplanes, %zu certificates, min slack %.3g, %.1f s",
              passed, checked, invalid, certificates, min_slack, seconds_since(t0))};
}

// 7. P^1 baseline with {x0, x1}, S = {inf, 2, 3}, ε = 1/10, h ≤ log 1000.
Outcome p1_baseline() {
  const auto t0 = Clock::now();
  ExperimentConfig c;
  c.ambient_dim = 1;
  c.subvariety = LinearSubvariety::ambient(1);
  for (const auto& v : {Place::infinity(), Place::finite(2), Place::finite(3)}) {
    c.arrangements.push_back({v, {LinearForm::of({1, 0}), LinearForm::of({0, 1})}});
  }
  c.l = 1;
  c.epsilon = make_rat(1, 10);
  c.h_min = 0;
  c.h_max = log_real(Rat(1000));
  c.sample_count = 10000000;
  c.seed = 7;
  auto r = run_evertse_ferretti_baseline(c);
  double worst = 0;
  for (const auto& rec : r.records) {
    if (rec.ratio) worst = std::max(worst, *rec.ratio);
  }
  const double secs = seconds_since(t0);
  return {r.violators.empty() && !r.records.empty() && secs < 30.0,
          fmt("%zu points (%zu of height 0), %zu violators, max ratio %.4f vs bound 2.1, %.1f s (limit 30 s)",
              r.records.size(), r.zero_height, r.violators.size(), worst, secs)};
}

ExperimentConfig p2_main_config(int workers) {
  ExperimentConfig c;
  c.ambient_dim = 2;
  c.subvariety = LinearSubvariety::ambient(2);
  // Three concurrent lines plus one more: 3-subgeneral, not general.
  std::vector<Target> at_inf = {LinearForm::of({1, 0, 0}), LinearForm::of({0, 1, 0}), LinearForm::of({1, 1, 0}),
                                LinearForm::of({0, 0, 1})};
  std::vector<Target> at_2 = {LinearForm::of({1, 0, 0}), LinearForm::of({0, 0, 1}), LinearForm::of({1, 0, -1}),
                              LinearForm::of({0, 1, 0})};
  c.arrangements = {{Place::infinity(), at_inf}, {Place::finite(2), at_2}};
  c.l = 3;
  c.epsilon = 1;
  c.h_min = 5;
  c.h_max = 12;
  c.sample_count = 10000;
  c.seed = 8;
  c.workers = workers;
  c.max_candidates = 10;
  return c;
}

// 8. Main inequality on P^2, l = 3.
Outcome p2_main(std::string& report_text) {
  const auto t0 = Clock::now();
  auto c = p2_main_config(1);
  auto r = run_main_experiment(c);
  report_text = io::to_json(r).dump();
  bool covered = true;
  for (auto i : r.violators) {
    const auto p = ProjPoint::from_integers(r.records[i].point);
    bool in_some = false;
    for (const auto& cand : r.candidates) {
      bool in = cand.dimension <= 1;
      for (const auto& f : cand.defining_forms) in = in && evaluate(f, p) == 0;
      in_some = in_some || in;
    }
    covered = covered && in_some;
  }
  std::size_t rerun_violators = 0;
  if (!r.candidates.empty()) {
    auto c2 = c;
    for (const auto& cand : r.candidates) c2.excluded.push_back(cand.defining_forms);
    rerun_violators = run_main_experiment(c2).violators.size();
  }
  const bool ok = r.records.size() == 10000 && covered && r.candidates.size() <= 10 && rerun_violators == 0 &&
                  r.chain.all_passed() && r.chain.checked > 0;
  return {ok, fmt("%zu points, %zu violators, %zu candidate lines, rerun violators %zu, chain %zu/%zu, %.1f s",
                  r.records.size(), r.violators.size(), r.candidates.size(), rerun_violators, r.chain.passed,
                  r.chain.checked, seconds_since(t0))};
}

// 9. delta_budget over a grid.
Outcome delta_grid() {
  int cases = 0, failures = 0;
  for (int l = 1; l <= 8; ++l) {
    for (int n = 1; n <= l; ++n) {
      for (const Rat& eps : {make_rat(1, 10), Rat(1), Rat(10)}) {
        ++cases;
        const Rat d = delta_budget(l, n, eps);
        const Rat k = l - n + 1;
        bool ok = d > 0 && d * k + d * k * (n + 1 + d) < eps;
        const Rat d2 = 2 * d;
        if (d < 1) ok = ok && !(d2 * k + d2 * k * (n + 1 + d2) < eps);
        failures += !ok;
      }
    }
  }
  return {failures == 0, fmt("%d (l, n, eps) cases, %d failures", cases, failures)};
}

// 10. Determinism of criterion 8's report.
Outcome determinism(const std::string& first) {
  auto again = io::to_json(run_main_experiment(p2_main_config(1))).dump();
  auto threaded = io::to_json(run_main_experiment(p2_main_config(4))).dump();
  const bool same = first == again && first == threaded;
  return {same && !first.empty(),
          fmt("%zu-byte report, rerun %s, 4-worker run %s", first.size(), first == again ? "identical" : "DIFFERS",
              first == threaded ? "identical" : "DIFFERS")};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  };

  report(1, "product formula", product_formula);
  report(2, "Weil constants", weil_constants);
  report(3, "Veronese functoriality", veronese);
  report(4, "position oracle", position_oracle);
  std::vector<oracle::Arrangement> arrs;
  report(5, "Quang certificates", [&] {
    arrs = quang_arrangements();
    return quang_certificates(arrs);
  });
  report(6, "chain inequality", [&] { return chain(arrs); });
  report(7, "P1 baseline", p1_baseline);
  std::string p2_report;
  report(8, "P2 main inequality", [&] { return p2_main(p2_report); });
  report(9, "delta budget", delta_grid);
  report(10, "determinism", [&] { return determinism(p2_report); });

  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
