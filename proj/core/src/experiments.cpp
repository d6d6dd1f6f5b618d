#include "subspace/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

#include "subspace/seshadri.hpp"

namespace subspace {

namespace {

// Upper bound on anchored subsets tried per dimension in exceptional_scan.
constexpr std::size_t kMaxSpanTrials = 2000;

std::vector<Rat> defect_weights(const ExperimentConfig& config) {
  std::vector<Rat> out;
  for (const auto& a : config.arrangements) {
    for (const auto& t : a.targets) out.push_back(seshadri_constant(t).value);
  }
  return out;
}

LogSum defect_sum(const ProjPoint& p, const ExperimentConfig& config, const std::vector<Rat>& weights) {
  LogSum sum;
  std::size_t k = 0;
  for (const auto& a : config.arrangements) {
    for (const auto& t : a.targets) sum.add(weights[k++], weil_argument(p, t, a.place));
  }
  return sum;
}

std::optional<LinearGroup> linear_group(const Target& t) {
  if (auto* l = std::get_if<LinearForm>(&t)) return LinearGroup{*l};
  if (auto* h = std::get_if<HomForm>(&t)) {
    if (h->is_linear()) return LinearGroup{h->as_linear()};
    return std::nullopt;
  }
  const auto& y = std::get<SubschemeSpec>(t);
  if (y.is_linear()) return y.linear_components();
  return std::nullopt;
}

std::optional<LinearForm> hyperplane(const Target& t) {
  auto g = linear_group(t);
  if (g && g->size() == 1) return g->front();
  return std::nullopt;
}

void validate_common(const ExperimentConfig& c, int l) {
  if (c.subvariety.ambient_dim() != c.ambient_dim) {
    throw ConfigRejected("subvariety lives in P^" + std::to_string(c.subvariety.ambient_dim()) +
                         ", config says P^" + std::to_string(c.ambient_dim));
  }
  if (l < c.subvariety.dim()) {
    throw ConfigRejected("l = " + std::to_string(l) + " is below dim X = " +
                         std::to_string(c.subvariety.dim()));
  }
  if (sgn(c.epsilon) <= 0) throw ConfigRejected("epsilon must be positive");
  if (!(c.h_min < c.h_max)) throw ConfigRejected("height window needs h_min < h_max");
  if (c.workers < 1) throw ConfigRejected("workers must be >= 1");
  std::set<Place> seen;
  for (const auto& a : c.arrangements) {
    if (!seen.insert(a.place).second) {
      throw ConfigRejected("place " + a.place.to_string() + " appears twice in S");
    }
    if (a.targets.empty()) throw ConfigRejected("place " + a.place.to_string() + " has no targets");
    for (const auto& t : a.targets) {
      if (target_dim(t) != c.ambient_dim) {
        throw ConfigRejected("target " + target_label(t) + " lives in the wrong dimension");
      }
      try {
        seshadri_constant(t);
      } catch (const UnsupportedError& e) {
        throw ConfigRejected(e.what());
      }
    }
  }
  for (const auto& g : c.excluded) {
    for (const auto& f : g) {
      if (f.dim() != c.ambient_dim) throw ConfigRejected("excluded subspace in the wrong dimension");
    }
  }
}

void check_positions(const ExperimentConfig& c, int l) {
  for (const auto& a : c.arrangements) {
    std::vector<LinearGroup> groups;
    bool linear = true;
    for (const auto& t : a.targets) {
      auto g = linear_group(t);
      if (!g) {
        linear = false;
        break;
      }
      groups.push_back(std::move(*g));
    }
    if (!linear) {
      if (!c.assert_position) {
        throw ConfigRejected("place " + a.place.to_string() +
                             " has non-linear targets; position must be asserted");
      }
      continue;
    }
    for (std::size_t j = 0; j < groups.size(); ++j) {
      if (intersection_dim(std::span<const LinearForm>(groups[j]), c.subvariety) == c.subvariety.dim()) {
        throw ConfigRejected("target " + target_label(a.targets[j]) + " at " + a.place.to_string() +
                             " contains X");
      }
    }
    auto report = check_subgeneral(std::span<const LinearGroup>(groups), c.subvariety, l);
    if (!report.verdict) {
      throw PositionRejected("targets at " + a.place.to_string() + " are not in " +
                                 std::to_string(l) + "-subgeneral position on X",
                             std::move(report));
    }
  }
}

bool has_nonlinear(const ExperimentConfig& c) {
  for (const auto& a : c.arrangements) {
    for (const auto& t : a.targets) {
      if (!linear_group(t)) return true;
    }
  }
  return false;
}

bool in_subspace(const ProjPoint& p, const LinearGroup& g) {
  return std::all_of(g.begin(), g.end(), [&](const LinearForm& f) { return evaluate(f, p) == 0; });
}

struct Evaluation {
  std::optional<PointRecord> record;
  bool skipped = false;
  std::vector<std::optional<ChainRecord>> chains;  // per chain checker
  std::vector<bool> chain_invalid;
};

DefectReport run(const ExperimentConfig& c, const std::string& kind, const Rat& bound, int l) {
  DefectReport report;
  report.kind = kind;
  report.config = c;
  report.bound = bound;
  report.bound_value = bound.get_d();
  report.delta = delta_budget(l, c.subvariety.dim(), c.epsilon);
  report.position_asserted = c.assert_position && has_nonlinear(c);
  report.notes.push_back(
      "exceptional candidates are linear spans fitted to violators; the exceptional set itself is "
      "not computed");
  if (report.position_asserted) {
    report.notes.push_back("position of non-linear targets asserted by the user, not checked");
  }

  auto excluded = [&](const ProjPoint& p) {
    for (const auto& a : c.arrangements) {
      for (const auto& t : a.targets) {
        if (touches_support(p, t)) return true;
      }
    }
    for (const auto& g : c.excluded) {
      if (in_subspace(p, g)) return true;
    }
    return false;
  };
  auto sample = sample_points(c.subvariety, c.h_min, c.h_max, c.sample_count, c.seed, excluded);
  report.partial_sample = sample.partial;

  std::vector<std::unique_ptr<ChainChecker>> checkers;
  std::vector<Place> checker_places;
  if (kind == "main" && c.run_chain_check) {
    for (const auto& a : c.arrangements) {
      std::vector<LinearForm> forms;
      for (const auto& t : a.targets) {
        if (auto h = hyperplane(t)) forms.push_back(*h);
      }
      if (forms.size() == a.targets.size() && static_cast<int>(forms.size()) == l + 1) {
        checkers.push_back(std::make_unique<ChainChecker>(std::move(forms), c.subvariety));
        checker_places.push_back(a.place);
      } else {
        report.notes.push_back("chain check skipped at " + a.place.to_string() +
                               ": needs exactly l+1 hyperplanes");
      }
    }
  }

  const auto& points = sample.points;
  const auto weights = defect_weights(c);
  std::vector<Evaluation> evals(points.size());
  auto evaluate_point = [&](std::size_t i) {
    const auto& p = points[i];
    auto& ev = evals[i];
    PointRecord rec;
    rec.point = p.coords();
    Integer h_arg = height_argument(p);
    rec.height = log_real(h_arg);
    LogSum lhs;
    try {
      lhs = defect_sum(p, c, weights);
    } catch (const SupportError&) {
      ev.skipped = true;
      return;
    }
    rec.weighted_sum = lhs.value();
    if (h_arg != 1) {
      rec.ratio = rec.weighted_sum / rec.height;
      LogSum rhs;
      rhs.add(bound, Rat(h_arg));
      rec.violator = LogSum::compare(lhs, rhs) > 0;
    }
    ev.record = std::move(rec);
    ev.chains.resize(checkers.size());
    ev.chain_invalid.assign(checkers.size(), false);
    for (std::size_t k = 0; k < checkers.size(); ++k) {
      try {
        ev.chains[k] = checkers[k]->check(p, checker_places[k]);
      } catch (const SupportError&) {
        ev.chain_invalid[k] = true;
      }
    }
  };

  const auto workers = static_cast<std::size_t>(std::max(1, c.workers));
  if (workers == 1 || points.size() < 2) {
    for (std::size_t i = 0; i < points.size(); ++i) evaluate_point(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < points.size(); i += workers) evaluate_point(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });

  bool first_slack = true;
  std::vector<ProjPoint> violator_points;
  for (std::size_t i : order) {
    auto& ev = evals[i];
    if (ev.skipped) {
      ++report.support_skipped;
      continue;
    }
    if (!ev.record->ratio) ++report.zero_height;
    if (ev.record->violator) {
      report.violators.push_back(report.records.size());
      violator_points.push_back(points[i]);
    }
    report.records.push_back(std::move(*ev.record));
    for (std::size_t k = 0; k < ev.chains.size(); ++k) {
      if (ev.chain_invalid[k]) {
        ++report.chain.invalid;
        continue;
      }
      const auto& rec = *ev.chains[k];
      ++report.chain.checked;
      if (rec.pass) ++report.chain.passed;
      if (first_slack || rec.slack < report.chain.min_slack) report.chain.min_slack = rec.slack;
      first_slack = false;
    }
  }
  for (const auto& ch : checkers) report.chain.certificates += ch->cached_certificates();

  report.candidates = exceptional_scan(violator_points, c.candidate_fraction, c.max_candidates);
  return report;
}

}  // namespace

std::vector<Place> places(const ExperimentConfig& config) {
  std::vector<Place> out;
  for (const auto& a : config.arrangements) out.push_back(a.place);
  return out;
}

Rat delta_budget(int l, int n, const Rat& epsilon) {
  if (n < 1 || l < n) throw ArgumentError("delta_budget needs l >= n >= 1");
  if (sgn(epsilon) <= 0) throw ArgumentError("delta_budget needs epsilon > 0");
  const Rat m(l - n + 1);
  Rat delta = 1;
  while (!(delta * m + delta * m * (n + 1 + delta) < epsilon)) delta /= 2;
  return delta;
}

LogSum weighted_defect(const ProjPoint& p, const ExperimentConfig& config) {
  return defect_sum(p, config, defect_weights(config));
}

void validate_main(const ExperimentConfig& config) {
  validate_common(config, config.l);
  check_positions(config, config.l);
}

void validate_baseline(const ExperimentConfig& config) {
  const int n = config.subvariety.dim();
  validate_common(config, n);
  for (const auto& a : config.arrangements) {
    if (static_cast<int>(a.targets.size()) != n + 1) {
      throw ConfigRejected("baseline needs exactly n+1 = " + std::to_string(n + 1) +
                           " targets at " + a.place.to_string());
    }
  }
  check_positions(config, n);
}

DefectReport run_main_experiment(const ExperimentConfig& config) {
  validate_main(config);
  const int n = config.subvariety.dim();
  Rat bound = Rat((config.l - n + 1) * (n + 1)) + config.epsilon;
  return run(config, "main", bound, config.l);
}

DefectReport run_evertse_ferretti_baseline(const ExperimentConfig& config) {
  validate_baseline(config);
  const int n = config.subvariety.dim();
  Rat bound = Rat(n + 1) + config.epsilon;
  auto report = run(config, "baseline", bound, n);
  return report;
}

std::vector<ExceptionalCandidate> exceptional_scan(std::span<const ProjPoint> points, Real fraction,
                                                   int max_candidates) {
  std::vector<ExceptionalCandidate> out;
  if (points.empty()) return out;
  const int ambient = points.front().dim();
  const auto total = static_cast<long>(points.size());
  const long fraction_count = static_cast<long>(std::ceil(fraction * static_cast<Real>(total)));

  std::vector<std::size_t> remaining(points.size());
  std::iota(remaining.begin(), remaining.end(), 0);

  while (!remaining.empty() && static_cast<int>(out.size()) < max_candidates) {
    const std::size_t anchor = remaining.front();
    std::vector<std::size_t> span_ids{anchor};
    std::vector<std::size_t> members{anchor};
    int dim = 0;

    for (int d = 1; d < ambient && remaining.size() > static_cast<std::size_t>(d); ++d) {
      std::vector<std::size_t> best_ids, best_members;
      // Anchored d-subsets of the other remaining points, lexicographic.
      std::vector<std::size_t> pick(d);
      std::iota(pick.begin(), pick.end(), 1);
      const std::size_t pool = remaining.size();
      std::size_t trials = 0;
      while (trials++ < kMaxSpanTrials) {
        linalg::Matrix rows{as_vector(points[anchor])};
        std::vector<std::size_t> ids{anchor};
        for (auto k : pick) {
          rows.push_back(as_vector(points[remaining[k]]));
          ids.push_back(remaining[k]);
        }
        if (linalg::rank(rows) == static_cast<std::size_t>(d + 1)) {
          linalg::RowSpace space(rows);
          std::vector<std::size_t> inside;
          for (auto r : remaining) {
            if (space.contains(as_vector(points[r]))) inside.push_back(r);
          }
          if (inside.size() > best_members.size()) {
            best_members = std::move(inside);
            best_ids = ids;
          }
        }
        int i = d - 1;
        while (i >= 0 && pick[i] == pool - static_cast<std::size_t>(d - i)) --i;
        if (i < 0) break;
        ++pick[i];
        for (int k = i + 1; k < d; ++k) pick[k] = pick[k - 1] + 1;
      }
      const long need = std::max<long>(d + 2, fraction_count);
      if (static_cast<long>(best_members.size()) >= need) {
        span_ids = std::move(best_ids);
        members = std::move(best_members);
        dim = d;
        break;
      }
    }

    ExceptionalCandidate cand;
    cand.dimension = dim;
    linalg::Matrix rows;
    for (auto id : span_ids) {
      rows.push_back(as_vector(points[id]));
      cand.spanning_points.push_back(points[id].coords());
    }
    for (const auto& v : linalg::nullspace(rows, static_cast<std::size_t>(ambient) + 1)) {
      cand.defining_forms.push_back(LinearForm::from_rationals(v));
    }
    for (auto m : members) cand.members.push_back(points[m].coords());
    std::set<std::size_t> taken(members.begin(), members.end());
    std::erase_if(remaining, [&](std::size_t r) { return taken.count(r) > 0; });
    out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace subspace
