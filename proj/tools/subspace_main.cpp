#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "subspace/chain.hpp"
#include "subspace/experiments.hpp"
#include "subspace/position.hpp"
#include "subspace/quang.hpp"
#include "subspace/serialize.hpp"
#include "subspace/seshadri.hpp"
#include "subspace/weil.hpp"

using namespace subspace;
using io::json;

namespace {

constexpr int kParseError = 64;
constexpr int kDomainError = 65;
constexpr int kIoError = 66;
constexpr int kConfigRejected = 2;
constexpr int kPartialSample = 3;

struct Globals {
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  bool verbose = false;
};

Globals g;

void emit(const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    io::write_text_file(g.out, text);
  }
}

void emit(const json& j) { emit(j.dump(2) + "\n"); }

void require_format(std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (g.format == f) return;
  }
  throw ArgumentError("format '" + g.format + "' is not available for this subcommand");
}

void log_verbose(const std::string& msg) {
  if (g.verbose) std::cerr << msg << '\n';
}

// "[4,6,10]", "[4:6:10]" or "4,6,10"; entries are rationals.
std::vector<Rat> parse_tuple(std::string text) {
  for (char& c : text) {
    if (c == '[' || c == ']' || c == ':' || c == ',') c = ' ';
  }
  std::istringstream in(text);
  std::vector<Rat> out;
  std::string tok;
  while (in >> tok) {
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') tok = tok.substr(1, tok.size() - 2);
    out.push_back(parse_rat(tok));
  }
  if (out.empty()) throw ArgumentError("empty coordinate list");
  return out;
}

ProjPoint parse_point(const std::string& text) { return ProjPoint::from_rationals(parse_tuple(text)); }
LinearForm parse_form(const std::string& text) { return LinearForm::from_rationals(parse_tuple(text)); }

// Inline JSON when the argument looks like JSON, otherwise a path.
json json_arg(const std::string& s) {
  if (!s.empty() && (s.front() == '{' || s.front() == '[')) {
    try {
      return json::parse(s);
    } catch (const json::parse_error& e) {
      throw ArgumentError(std::string("invalid inline JSON: ") + e.what());
    }
  }
  return io::read_json_file(s);
}

std::vector<Place> parse_places(const std::vector<std::string>& texts) {
  std::vector<Place> out;
  for (const auto& t : texts) out.push_back(Place::parse(t));
  return out;
}

struct Arrangement {
  std::vector<LinearForm> forms;
  LinearSubvariety x = LinearSubvariety::ambient(1);
};

// A bare array of forms (X is the ambient space) or {"forms": [...], "subvariety": [...]}.
Arrangement load_arrangement(const std::string& arg, const std::string& subvariety_arg) {
  json j = json_arg(arg);
  Arrangement a;
  std::vector<LinearForm> xforms;
  if (j.is_object()) {
    if (!j.contains("forms")) throw ArgumentError("arrangement object needs a 'forms' field");
    a.forms = io::forms_from_json(j.at("forms"));
    if (j.contains("subvariety")) xforms = io::forms_from_json(j.at("subvariety"));
  } else {
    a.forms = io::forms_from_json(j);
  }
  if (!subvariety_arg.empty()) xforms = io::forms_from_json(json_arg(subvariety_arg));
  if (a.forms.empty()) throw ArgumentError("no forms given");
  const int m = a.forms.front().dim();
  for (const auto& f : a.forms) {
    if (f.dim() != m) throw ArgumentError("forms live in different ambient spaces");
  }
  a.x = LinearSubvariety::cut_out(m, std::move(xforms));
  return a;
}

struct TargetArgs {
  std::string hyperplane;
  std::string divisor;
  std::string subscheme;
  std::string target;

  void attach(CLI::App* app) {
    auto* h = app->add_option("--hyperplane", hyperplane, "Linear form coefficients, e.g. 1,-1,0");
    auto* d = app->add_option("--divisor", divisor, "Homogeneous form as inline JSON or file");
    auto* s = app->add_option("--subscheme", subscheme, "Subscheme as inline JSON or file");
    auto* t = app->add_option("--target", target, "Any target in tagged JSON form");
    h->excludes(d, s, t);
    d->excludes(s, t);
    s->excludes(t);
  }

  std::optional<Target> get() const {
    if (!hyperplane.empty()) return Target{parse_form(hyperplane)};
    if (!divisor.empty()) return Target{io::hom_form_from_json(json_arg(divisor))};
    if (!subscheme.empty()) return Target{io::subscheme_from_json(json_arg(subscheme))};
    if (!target.empty()) return io::target_from_json(json_arg(target));
    return std::nullopt;
  }
};

int cmd_norm(const std::string& value, const std::vector<std::string>& place_args) {
  require_format({"json", "csv"});
  Rat x = parse_rat(value);
  if (x == 0) throw DomainError("norm of zero is undefined");
  std::vector<Place> vs = parse_places(place_args);
  if (vs.empty()) {
    vs.push_back(Place::infinity());
    const Integer num = x.get_num() < 0 ? Integer(-x.get_num()) : Integer(x.get_num());
    for (const auto& [p, e] : factor(num)) vs.push_back(Place::finite(p));
    for (const auto& [p, e] : factor(x.get_den())) vs.push_back(Place::finite(p));
    std::sort(vs.begin(), vs.end());
  }
  auto ledger = product_formula_residual(x);
  if (g.format == "csv") {
    std::string s = "place,value,exact_ledger\n";
    for (const auto& v : vs) {
      auto n = norm(x, v);
      std::string exact;
      if (n.exact) {
        exact = std::to_string(n.exact->exponent) + "*log(" + n.exact->prime.get_str() + ")";
      } else {
        exact = "log(" + to_string(abs_value(x, v)) + ")";
      }
      s += v.to_string() + "," + io::format_real(n.approx) + "," + exact + "\n";
    }
    emit(s);
    return 0;
  }
  json norms = json::array();
  for (const auto& v : vs) {
    json e = io::to_json(norm(x, v));
    e["place"] = v.to_string();
    e["abs_value"] = to_string(abs_value(x, v));
    norms.push_back(e);
  }
  emit(json{{"x", to_string(x)}, {"norms", norms}, {"product_formula", io::to_json(ledger)}});
  return 0;
}

int cmd_height(const std::string& text) {
  require_format({"json", "csv"});
  ProjPoint p = parse_point(text);
  const auto arg = height_argument(p);
  if (g.format == "csv") {
    emit("point,height,exact_ledger\n" + p.to_string() + "," + io::format_real(height(p)) + ",log(" +
         arg.get_str() + ")\n");
    return 0;
  }
  emit(json{{"point", io::to_json(p)},
            {"canonical", p.to_string()},
            {"height", height(p)},
            {"argument", arg.get_str()},
            {"ledger", "log(" + arg.get_str() + ")"}});
  return 0;
}

int cmd_weil(const std::string& point, const TargetArgs& ta, const std::vector<std::string>& place_args,
             const std::string& manifest, bool strict) {
  const auto mode = strict ? SubschemeMode::strict : SubschemeMode::lenient;
  if (!manifest.empty()) {
    // Batch output is always CSV.
    auto m = io::manifest_from_json(json_arg(manifest));
    if (strict) m.mode = mode;
    emit(io::weil_batch_csv(m));
    return 0;
  }
  require_format({"json", "csv"});
  if (point.empty()) throw ArgumentError("--point is required without --manifest");
  auto t = ta.get();
  if (!t) throw ArgumentError("one of --hyperplane, --divisor, --subscheme, --target is required");
  io::WeilManifest m;
  m.points = {parse_point(point)};
  m.targets = {*t};
  m.places = parse_places(place_args);
  m.mode = mode;
  if (m.places.empty()) m.places = contributing_places(m.points.front(), *t);
  if (g.format == "csv") {
    emit(io::weil_batch_csv(m));
    return 0;
  }
  json values = json::array();
  for (const auto& v : m.places) values.push_back(io::to_json(weil_value(m.points.front(), *t, v, mode)));
  auto prox = proximity_sum(m.points.front(), *t, m.places, mode);
  emit(json{{"point", m.points.front().to_string()},
            {"target", target_label(*t)},
            {"values", values},
            {"proximity", prox.value}});
  return 0;
}

int cmd_position(const std::string& forms, const std::string& subvariety, std::optional<int> l,
                 bool verdict_only) {
  require_format({"json"});
  auto a = load_arrangement(forms, subvariety);
  const int level = l.value_or(a.x.dim());
  auto report = check_subgeneral(a.forms, a.x, level,
                                 verdict_only ? PositionMode::verdict_only : PositionMode::full);
  json j = io::to_json(report);
  j["dim_x"] = a.x.dim();
  j["minimal_l"] = minimal_subgeneral_index(a.forms, a.x);
  emit(j);
  return 0;
}

int cmd_quang(const std::string& forms, const std::string& subvariety,
              const std::vector<std::string>& place_args) {
  require_format({"json"});
  auto a = load_arrangement(forms, subvariety);
  auto vs = parse_places(place_args);
  if (vs.empty()) vs = {Place::infinity()};
  auto cert = quang_combine(a.forms, a.x, vs);
  auto check = verify(cert);
  json j = io::to_json(cert);
  j["verification"] = {{"first_equal", check.first_equal},
                       {"replay", check.replay},
                       {"span", check.span},
                       {"general", check.general},
                       {"ok", check.ok()}};
  log_verbose("certificate: " + std::to_string(cert.outputs.size()) + " outputs");
  emit(j);
  return 0;
}

int cmd_seshadri(const TargetArgs& ta) {
  require_format({"json"});
  auto t = ta.get();
  if (!t) throw ArgumentError("one of --hyperplane, --divisor, --subscheme, --target is required");
  json j = io::to_json(seshadri_constant(*t));
  j["target"] = target_label(*t);
  emit(j);
  return 0;
}

int cmd_experiment(const std::string& config_path, bool baseline) {
  require_format({"json", "csv"});
  ExperimentConfig c;
  try {
    c = io::config_from_json(json_arg(config_path));
  } catch (const ArgumentError&) {
    throw;
  } catch (const DomainError& e) {
    std::cerr << "config rejected: " << e.what() << '\n';
    return kConfigRejected;
  }
  if (g.seed) c.seed = *g.seed;
  if (g.workers) c.workers = *g.workers;
  DefectReport r;
  try {
    r = baseline ? run_evertse_ferretti_baseline(c) : run_main_experiment(c);
  } catch (const ConfigRejected& e) {
    std::cerr << "config rejected: " << e.what() << '\n';
    return kConfigRejected;
  } catch (const PositionRejected& e) {
    std::cerr << "config rejected: " << e.what() << '\n';
    return kConfigRejected;
  }
  log_verbose("points: " + std::to_string(r.records.size()) +
              ", violators: " + std::to_string(r.violators.size()) +
              ", candidates: " + std::to_string(r.candidates.size()));
  if (g.format == "csv") {
    emit(io::report_csv(r));
  } else {
    emit(io::to_json(r));
  }
  if (r.partial_sample) {
    std::cerr << "warning: sampler returned fewer points than requested\n";
    return kPartialSample;
  }
  return 0;
}

std::string chain_csv(const std::vector<ChainRecord>& rs) {
  std::string s = "point,place,ordering,lhs,rhs,constant,slack,pass\n";
  for (const auto& r : rs) {
    std::string ord;
    for (std::size_t i = 0; i < r.ordering.size(); ++i) {
      ord += (i ? " " : "") + std::to_string(r.ordering[i] + 1);
    }
    s += ProjPoint::from_integers(r.point).to_string() + "," + r.place.to_string() + "," + ord + "," +
         io::format_real(r.lhs) + "," + io::format_real(r.rhs) + "," + io::format_real(r.constant) + "," +
         io::format_real(r.slack) + "," + (r.pass ? "true" : "false") + "\n";
  }
  return s;
}

int cmd_chain(const std::string& certificate, const std::string& forms, const std::string& subvariety,
              const std::vector<std::string>& point_args, const std::string& points_file,
              const std::vector<std::string>& place_args) {
  require_format({"json", "csv"});
  std::vector<ProjPoint> pts;
  for (const auto& p : point_args) pts.push_back(parse_point(p));
  if (!points_file.empty()) {
    for (const auto& p : json_arg(points_file)) pts.push_back(io::point_from_json(p));
  }
  if (pts.empty()) throw ArgumentError("give at least one --point or --points");
  auto vs = parse_places(place_args);
  if (vs.empty()) vs = {Place::infinity()};

  std::vector<ChainRecord> records;
  if (!certificate.empty()) {
    auto cert = io::certificate_from_json(json_arg(certificate));
    for (const auto& p : pts) {
      for (const auto& v : vs) records.push_back(chain_check(p, v, cert));
    }
  } else if (!forms.empty()) {
    auto a = load_arrangement(forms, subvariety);
    ChainChecker checker(a.forms, a.x);
    for (const auto& p : pts) {
      for (const auto& v : vs) records.push_back(checker.check(p, v));
    }
  } else {
    throw ArgumentError("one of --certificate or --forms is required");
  }
  if (g.format == "csv") {
    emit(chain_csv(records));
    return 0;
  }
  json a = json::array();
  for (const auto& r : records) a.push_back(io::to_json(r));
  emit(a);
  return 0;
}

int cmd_delta(int l, int n, const std::string& eps) {
  require_format({"json"});
  Rat e = parse_rat(eps);
  Rat d = delta_budget(l, n, e);
  const Rat k = l - n + 1;
  const Rat lhs = d * k + d * k * (n + 1 + d);
  emit(json{{"l", l},
            {"n", n},
            {"epsilon", to_string(e)},
            {"delta", to_string(d)},
            {"budget_used", to_string(lhs)},
            {"strict", lhs < e}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact heights, Weil functions and subspace-theorem experiments over the rationals."};
  app.require_subcommand(1);
  app.add_option("--out", g.out, "Write the result to this file instead of stdout");
  app.add_option("--format", g.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "Override the experiment seed");
  app.add_option("--workers", g.workers, "Worker threads for experiments")->check(CLI::PositiveNumber);
  app.add_flag("--verbose,-v", g.verbose, "Progress notes on stderr");
  app.fallthrough();

  std::function<int()> action;

  std::string norm_value;
  std::vector<std::string> norm_places;
  auto* norm_cmd = app.add_subcommand("norm", "Normalized absolute values of a rational; their logs sum to zero over all places.");
  norm_cmd->add_option("x", norm_value, "Nonzero rational a or a/b")->required();
  norm_cmd->add_option("--place", norm_places, "Places (inf, p=2, 3); default: all nontrivial ones");
  norm_cmd->callback([&] { action = [&] { return cmd_norm(norm_value, norm_places); }; });

  std::string height_point;
  auto* height_cmd = app.add_subcommand("height", "Absolute logarithmic height of a projective point, the sum of local max-norm logs.");
  height_cmd->add_option("point", height_point, "Coordinates, e.g. [4,6,10]")->required();
  height_cmd->callback([&] { action = [&] { return cmd_height(height_point); }; });

  std::string weil_point, weil_manifest;
  std::vector<std::string> weil_places;
  bool weil_strict = false;
  TargetArgs weil_target;
  auto* weil_cmd = app.add_subcommand("weil", "Local Weil function measuring v-adic proximity of a point to a hyperplane, divisor or subscheme.");
  weil_cmd->add_option("--point", weil_point, "Coordinates of the point");
  weil_target.attach(weil_cmd);
  weil_cmd->add_option("--place", weil_places, "Places; default: every place with a nonzero value");
  weil_cmd->add_option("--manifest", weil_manifest, "Batch manifest (points, targets, places) emitted as CSV");
  weil_cmd->add_flag("--strict", weil_strict, "Reject points lying on a subscheme component");
  weil_cmd->callback([&] {
    action = [&] { return cmd_weil(weil_point, weil_target, weil_places, weil_manifest, weil_strict); };
  });

  std::string pos_forms, pos_subvariety;
  std::optional<int> pos_l;
  bool pos_verdict_only = false;
  auto* position_cmd = app.add_subcommand("position", "Subgeneral position of hyperplanes relative to a linear subvariety.");
  position_cmd->require_subcommand(1);
  auto* position_check = position_cmd->add_subcommand("check", "Check l-subgeneral position and list every violating subfamily.");
  position_check->add_option("--forms", pos_forms, "Arrangement as JSON file or inline JSON")->required();
  position_check->add_option("--subvariety", pos_subvariety, "Forms cutting out X (default: ambient space)");
  position_check->add_option("--l", pos_l, "Subgeneral index (default: dim X)");
  position_check->add_flag("--verdict-only", pos_verdict_only, "Stop at the first witness");
  position_check->callback([&] {
    action = [&] { return cmd_position(pos_forms, pos_subvariety, pos_l, pos_verdict_only); };
  });

  std::string q_forms, q_subvariety;
  std::vector<std::string> q_places;
  auto* quang_cmd = app.add_subcommand("quang", "Quang's replacement of subgeneral forms by general-position linear combinations.");
  quang_cmd->require_subcommand(1);
  auto* quang_combine_cmd = quang_cmd->add_subcommand("combine", "Build and verify a combination certificate for an ordered arrangement.");
  quang_combine_cmd->add_option("--forms", q_forms, "Ordered arrangement as JSON file or inline JSON")->required();
  quang_combine_cmd->add_option("--subvariety", q_subvariety, "Forms cutting out X (default: ambient space)");
  quang_combine_cmd->add_option("--place", q_places, "Places for the chain constants (default: inf)");
  quang_combine_cmd->callback([&] { action = [&] { return cmd_quang(q_forms, q_subvariety, q_places); }; });

  TargetArgs s_target;
  auto* seshadri_cmd = app.add_subcommand("seshadri", "Seshadri constant of O(1) along a hypersurface or linear subspace, the weight in the main inequality.");
  s_target.attach(seshadri_cmd);
  seshadri_cmd->callback([&] { action = [&] { return cmd_seshadri(s_target); }; });

  std::string exp_config;
  auto* exp_cmd = app.add_subcommand("experiment", "Sample rational points and test the subspace-theorem inequalities on them.");
  exp_cmd->require_subcommand(1);
  auto* exp_run = exp_cmd->add_subcommand("run", "Main inequality: weighted proximity against (l-n+1)(n+1)+eps times the height.");
  exp_run->add_option("--config", exp_config, "Experiment config JSON")->required();
  exp_run->callback([&] { action = [&] { return cmd_experiment(exp_config, false); }; });
  auto* exp_base = exp_cmd->add_subcommand("baseline", "Evertse-Ferretti baseline: general-position proximity against n+1+eps times the height.");
  exp_base->add_option("--config", exp_config, "Experiment config JSON")->required();
  exp_base->callback([&] { action = [&] { return cmd_experiment(exp_config, true); }; });

  std::string c_cert, c_forms, c_subvariety, c_points;
  std::vector<std::string> c_point, c_places;
  auto* chain_cmd = app.add_subcommand("chain", "Chain inequality bounding subgeneral proximity by general-position proximity.");
  chain_cmd->require_subcommand(1);
  auto* chain_check_cmd = chain_cmd->add_subcommand("check", "Evaluate the chain inequality with its explicit constant at given points.");
  auto* cert_opt = chain_check_cmd->add_option("--certificate", c_cert, "Certificate whose inputs are sorted at each point");
  auto* forms_opt = chain_check_cmd->add_option("--forms", c_forms, "Arrangement; a certificate is built per ordering");
  cert_opt->excludes(forms_opt);
  chain_check_cmd->add_option("--subvariety", c_subvariety, "Forms cutting out X (with --forms)");
  chain_check_cmd->add_option("--point", c_point, "Point coordinates (repeatable)");
  chain_check_cmd->add_option("--points", c_points, "JSON array of points");
  chain_check_cmd->add_option("--place", c_places, "Places (default: inf)");
  chain_check_cmd->callback([&] {
    action = [&] { return cmd_chain(c_cert, c_forms, c_subvariety, c_point, c_points, c_places); };
  });

  int d_l = 0, d_n = 0;
  std::string d_eps;
  auto* delta_cmd = app.add_subcommand("delta", "Largest 1/2^k fitting the error budget delta(l-n+1)+delta(l-n+1)(n+1+delta) < eps.");
  delta_cmd->add_option("--l", d_l, "Subgeneral index")->required()->check(CLI::NonNegativeNumber);
  delta_cmd->add_option("--n", d_n, "Dimension of X")->required()->check(CLI::PositiveNumber);
  delta_cmd->add_option("--epsilon", d_eps, "Positive rational")->required();
  delta_cmd->callback([&] { action = [&] { return cmd_delta(d_l, d_n, d_eps); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kParseError;
  }

  try {
    return action ? action() : kParseError;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainError;
  }
}
