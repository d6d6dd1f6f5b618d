#include "subspace/serialize.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace subspace::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ArgumentError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

template <class T>
T value_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<Rat> rats_from_json(const json& j) {
  if (!j.is_array()) throw ArgumentError("expected an array of rationals");
  std::vector<Rat> out;
  for (const auto& x : j) out.push_back(rat_from_json(x));
  return out;
}

json integers_to_json(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

std::vector<Integer> integers_from_json(const json& j) {
  std::vector<Integer> out;
  for (const auto& r : rats_from_json(j)) {
    if (r.get_den() != 1) throw ArgumentError("expected integer coordinates");
    out.push_back(r.get_num());
  }
  return out;
}

json indices_to_json(const std::vector<int>& v) {
  json a = json::array();
  for (int i : v) a.push_back(i + 1);
  return a;
}

std::vector<int> indices_from_json(const json& j) {
  std::vector<int> out;
  for (const auto& x : j) out.push_back(x.get<int>() - 1);
  return out;
}

json forms_to_json(std::span<const LinearForm> forms) {
  json a = json::array();
  for (const auto& f : forms) a.push_back(to_json(f));
  return a;
}

std::string point_string(const std::vector<Integer>& coords) {
  return ProjPoint::from_integers(coords).to_string();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json to_json(const Rat& x) { return to_string(x); }
json to_json(const Place& v) { return v.to_string(); }
json to_json(const ProjPoint& p) { return integers_to_json(p.coords()); }
json to_json(const LinearForm& f) { return integers_to_json(f.coeffs()); }

json to_json(const HomForm& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back({{"exponent", t.exponent}, {"coeff", to_json(t.coeff)}});
  return {{"dim", f.dim()}, {"degree", f.degree()}, {"terms", terms}};
}

json to_json(const SubschemeSpec& y) {
  json comps = json::array();
  for (const auto& c : y.components()) comps.push_back(to_json(c));
  return {{"label", y.label()}, {"components", comps}};
}

json to_json(const Target& t) {
  if (auto* l = std::get_if<LinearForm>(&t)) return {{"kind", "linear"}, {"coeffs", to_json(*l)}};
  if (auto* h = std::get_if<HomForm>(&t)) {
    json j = to_json(*h);
    j["kind"] = "divisor";
    return j;
  }
  json j = to_json(std::get<SubschemeSpec>(t));
  j["kind"] = "subscheme";
  return j;
}

json to_json(const LinearSubvariety& x) {
  return {{"ambient_dim", x.ambient_dim()}, {"dim", x.dim()}, {"forms", forms_to_json(x.forms())}};
}

json to_json(const LogNorm& n) {
  json j = {{"value", n.approx}};
  if (n.exact) {
    j["exact"] = {{"prime", n.exact->prime.get_str()}, {"ord", n.exact->exponent}};
  } else {
    j["exact"] = nullptr;
  }
  return j;
}

json to_json(const ProductFormulaLedger& ledger) {
  json finite = json::array();
  for (const auto& [p, e] : ledger.finite) finite.push_back({{"prime", p.get_str()}, {"ord", e}});
  return {{"finite", finite},
          {"archimedean", to_json(ledger.archimedean)},
          {"archimedean_log", ledger.archimedean_log},
          {"residual_ratio", to_json(ledger.residual_ratio())},
          {"residual_exact_zero", ledger.exact_zero()},
          {"residual_approx", ledger.residual_approx()}};
}

json to_json(const PositionReport& r) {
  json w = json::array();
  for (const auto& x : r.witnesses) {
    w.push_back({{"indices", indices_to_json(x.indices)}, {"dimension", x.dimension}, {"bound", x.bound}});
  }
  return {{"verdict", r.verdict}, {"l", r.l}, {"witnesses", w}};
}

json to_json(const CombinationCertificate& c) {
  json coeffs = json::array();
  for (const auto& row : c.coefficients) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    coeffs.push_back(r);
  }
  json constants = json::array();
  for (const auto& k : c.constants) {
    constants.push_back({{"place", to_json(k.place)}, {"value", to_json(k.value)}, {"log_value", k.log_value}});
  }
  return {{"subvariety", to_json(c.subvariety)},
          {"l", c.l},
          {"n", c.n},
          {"inputs", forms_to_json(c.inputs)},
          {"outputs", forms_to_json(c.outputs)},
          {"coefficients", coeffs},
          {"position", to_json(c.output_position)},
          {"constants", constants}};
}

json to_json(const Ordering& o) {
  return {{"place", to_json(o.place)}, {"permutation", indices_to_json(o.permutation)}};
}

json to_json(const WeilValue& w) {
  return {{"value", w.value},
          {"place", to_json(w.place)},
          {"subject", w.subject},
          {"point", integers_to_json(w.point)},
          {"argument", to_json(w.argument)},
          {"ledger", w.ledger()}};
}

json to_json(const SeshadriValue& s) {
  json j = {{"value", to_json(s.value)},
            {"class", to_string(s.subject)},
            {"justification", s.justification}};
  if (s.subject == SeshadriClass::hypersurface) {
    j["degree"] = s.degree;
  } else {
    j["codimension"] = s.codimension;
  }
  return j;
}

json to_json(const ChainRecord& r) {
  return {{"point", integers_to_json(r.point)},
          {"place", to_json(r.place)},
          {"ordering", indices_to_json(r.ordering)},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"constant", r.constant},
          {"slack", r.slack},
          {"lhs_argument", to_json(r.lhs_argument)},
          {"rhs_argument", to_json(r.rhs_argument)},
          {"constant_argument", to_json(r.constant_argument)},
          {"pass", r.pass}};
}

json to_json(const ExperimentConfig& c) {
  json arrangements = json::array();
  for (const auto& a : c.arrangements) {
    json targets = json::array();
    for (const auto& t : a.targets) targets.push_back(to_json(t));
    arrangements.push_back({{"place", to_json(a.place)}, {"targets", targets}});
  }
  json excluded = json::array();
  for (const auto& g : c.excluded) excluded.push_back(forms_to_json(g));
  return {{"ambient_dim", c.ambient_dim},
          {"subvariety", forms_to_json(c.subvariety.forms())},
          {"arrangements", arrangements},
          {"l", c.l},
          {"epsilon", to_json(c.epsilon)},
          {"height_window", {c.h_min, c.h_max}},
          {"sample_count", c.sample_count},
          {"seed", c.seed},
          {"assert_position", c.assert_position},
          {"excluded", excluded},
          {"candidate_fraction", c.candidate_fraction},
          {"max_candidates", c.max_candidates},
          {"workers", c.workers},
          {"chain_check", c.run_chain_check}};
}

json to_json(const DefectReport& r) {
  json records = json::array();
  for (const auto& p : r.records) {
    records.push_back({{"point", integers_to_json(p.point)},
                       {"height", p.height},
                       {"weighted_sum", p.weighted_sum},
                       {"ratio", p.ratio ? json(*p.ratio) : json(nullptr)},
                       {"violator", p.violator}});
  }
  json violators = json::array();
  for (auto i : r.violators) violators.push_back(integers_to_json(r.records.at(i).point));
  json candidates = json::array();
  for (const auto& c : r.candidates) {
    json spanning = json::array(), members = json::array();
    for (const auto& p : c.spanning_points) spanning.push_back(integers_to_json(p));
    for (const auto& p : c.members) members.push_back(integers_to_json(p));
    candidates.push_back({{"status", "candidate"},
                          {"dimension", c.dimension},
                          {"defining_forms", forms_to_json(c.defining_forms)},
                          {"spanning_points", spanning},
                          {"members", members}});
  }
  json config = to_json(r.config);
  // Workers change scheduling only; leave them out so reports compare equal.
  config.erase("workers");
  return {{"kind", r.kind},
          {"config", config},
          {"seed", r.config.seed},
          {"bound", to_json(r.bound)},
          {"bound_value", r.bound_value},
          {"delta", to_json(r.delta)},
          {"records", records},
          {"zero_height", r.zero_height},
          {"support_skipped", r.support_skipped},
          {"violators", violators},
          {"exceptional_candidates", candidates},
          {"chain",
           {{"checked", r.chain.checked},
            {"passed", r.chain.passed},
            {"invalid", r.chain.invalid},
            {"min_slack", r.chain.min_slack},
            {"certificates", r.chain.certificates},
            {"all_passed", r.chain.all_passed()}}},
          {"partial_sample", r.partial_sample},
          {"position_asserted", r.position_asserted},
          {"notes", r.notes}};
}

Rat rat_from_json(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rat(Integer(std::to_string(j.get<std::uint64_t>()), 10));
    return Rat(Integer(std::to_string(j.get<std::int64_t>()), 10));
  }
  throw ArgumentError("expected a rational (string or integer), got " + j.dump());
}

Place place_from_json(const json& j) {
  if (j.is_string()) return Place::parse(j.get<std::string>());
  if (j.is_number_integer()) return Place::finite(Integer(std::to_string(j.get<std::int64_t>()), 10));
  throw ArgumentError("expected a place, got " + j.dump());
}

ProjPoint point_from_json(const json& j) {
  auto r = rats_from_json(j);
  return ProjPoint::from_rationals(r);
}

LinearForm linear_form_from_json(const json& j) {
  if (j.is_object() && j.contains("coeffs")) return linear_form_from_json(j.at("coeffs"));
  auto r = rats_from_json(j);
  return LinearForm::from_rationals(r);
}

HomForm hom_form_from_json(const json& j) {
  if (j.is_array()) return HomForm::from_linear(linear_form_from_json(j));
  const int dim = field(j, "dim").get<int>();
  const int degree = field(j, "degree").get<int>();
  std::vector<HomForm::Term> terms;
  for (const auto& t : field(j, "terms")) {
    terms.push_back({field(t, "exponent").get<Exponent>(), rat_from_json(field(t, "coeff"))});
  }
  return HomForm::from_terms(dim, degree, terms);
}

SubschemeSpec subscheme_from_json(const json& j) {
  std::vector<HomForm> comps;
  for (const auto& c : field(j, "components")) comps.push_back(hom_form_from_json(c));
  return SubschemeSpec(std::move(comps), value_or<std::string>(j, "label", ""));
}

Target target_from_json(const json& j) {
  if (j.is_array()) return linear_form_from_json(j);
  const auto kind = value_or<std::string>(j, "kind", "");
  if (kind == "linear") return linear_form_from_json(field(j, "coeffs"));
  if (kind == "divisor") {
    auto f = hom_form_from_json(j);
    return f;
  }
  if (kind == "subscheme") return subscheme_from_json(j);
  throw ArgumentError("unknown target kind '" + kind + "'");
}

std::vector<LinearForm> forms_from_json(const json& j) {
  if (!j.is_array()) throw ArgumentError("expected an array of linear forms");
  std::vector<LinearForm> out;
  for (const auto& f : j) out.push_back(linear_form_from_json(f));
  return out;
}

LinearSubvariety subvariety_from_json(const json& j) {
  const int m = field(j, "ambient_dim").get<int>();
  auto forms = j.contains("forms") ? forms_from_json(j.at("forms")) : std::vector<LinearForm>{};
  return LinearSubvariety::cut_out(m, std::move(forms));
}

PositionReport position_report_from_json(const json& j) {
  PositionReport r;
  r.verdict = field(j, "verdict").get<bool>();
  r.l = field(j, "l").get<int>();
  for (const auto& w : field(j, "witnesses")) {
    r.witnesses.push_back({indices_from_json(field(w, "indices")), field(w, "dimension").get<int>(),
                           field(w, "bound").get<int>()});
  }
  return r;
}

CombinationCertificate certificate_from_json(const json& j) {
  CombinationCertificate c;
  c.subvariety = subvariety_from_json(field(j, "subvariety"));
  c.l = field(j, "l").get<int>();
  c.n = field(j, "n").get<int>();
  c.inputs = forms_from_json(field(j, "inputs"));
  c.outputs = forms_from_json(field(j, "outputs"));
  for (const auto& row : field(j, "coefficients")) c.coefficients.push_back(rats_from_json(row));
  c.output_position = position_report_from_json(field(j, "position"));
  for (const auto& k : field(j, "constants")) {
    c.constants.push_back({place_from_json(field(k, "place")), rat_from_json(field(k, "value")),
                           field(k, "log_value").get<Real>()});
  }
  return c;
}

Real height_bound_from_json(const json& j) {
  if (j.is_number()) return j.get<Real>();
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s.starts_with("log(") && s.ends_with(")")) return log_real(parse_rat(s.substr(4, s.size() - 5)));
    try {
      std::size_t used = 0;
      Real x = std::stod(s, &used);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw ArgumentError("malformed height bound " + j.dump());
}

ExperimentConfig config_from_json(const json& j) {
  try {
    ExperimentConfig c;
    c.ambient_dim = field(j, "ambient_dim").get<int>();
    std::vector<LinearForm> xforms;
    if (j.contains("subvariety")) xforms = forms_from_json(j.at("subvariety"));
    c.subvariety = LinearSubvariety::cut_out(c.ambient_dim, std::move(xforms));
    for (const auto& a : field(j, "arrangements")) {
      PlaceArrangement pa;
      pa.place = place_from_json(field(a, "place"));
      for (const auto& t : field(a, "targets")) pa.targets.push_back(target_from_json(t));
      c.arrangements.push_back(std::move(pa));
    }
    c.l = value_or<int>(j, "l", c.subvariety.dim());
    c.epsilon = rat_from_json(field(j, "epsilon"));
    const auto& window = field(j, "height_window");
    if (!window.is_array() || window.size() != 2) throw ArgumentError("height_window needs [h_min, h_max]");
    c.h_min = height_bound_from_json(window[0]);
    c.h_max = height_bound_from_json(window[1]);
    c.sample_count = field(j, "sample_count").get<std::size_t>();
    c.seed = value_or<std::uint64_t>(j, "seed", 0);
    c.assert_position = value_or<bool>(j, "assert_position", false);
    if (j.contains("excluded")) {
      for (const auto& g : j.at("excluded")) c.excluded.push_back(forms_from_json(g));
    }
    c.candidate_fraction = value_or<Real>(j, "candidate_fraction", c.candidate_fraction);
    c.max_candidates = value_or<int>(j, "max_candidates", c.max_candidates);
    c.workers = value_or<int>(j, "workers", c.workers);
    c.run_chain_check = value_or<bool>(j, "chain_check", c.run_chain_check);
    return c;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed experiment config: ") + e.what());
  }
}

DefectReport report_from_json(const json& j) {
  try {
    DefectReport r;
    r.kind = field(j, "kind").get<std::string>();
    r.config = config_from_json(field(j, "config"));
    r.bound = rat_from_json(field(j, "bound"));
    r.bound_value = field(j, "bound_value").get<Real>();
    r.delta = rat_from_json(field(j, "delta"));
    std::map<std::vector<Integer>, std::size_t> index;
    for (const auto& p : field(j, "records")) {
      PointRecord rec;
      rec.point = integers_from_json(field(p, "point"));
      rec.height = field(p, "height").get<Real>();
      rec.weighted_sum = field(p, "weighted_sum").get<Real>();
      if (!p.at("ratio").is_null()) rec.ratio = p.at("ratio").get<Real>();
      rec.violator = field(p, "violator").get<bool>();
      index[rec.point] = r.records.size();
      r.records.push_back(std::move(rec));
    }
    r.zero_height = field(j, "zero_height").get<std::size_t>();
    r.support_skipped = field(j, "support_skipped").get<std::size_t>();
    for (const auto& v : field(j, "violators")) r.violators.push_back(index.at(integers_from_json(v)));
    for (const auto& c : field(j, "exceptional_candidates")) {
      ExceptionalCandidate cand;
      cand.dimension = field(c, "dimension").get<int>();
      cand.defining_forms = forms_from_json(field(c, "defining_forms"));
      for (const auto& p : field(c, "spanning_points")) cand.spanning_points.push_back(integers_from_json(p));
      for (const auto& p : field(c, "members")) cand.members.push_back(integers_from_json(p));
      r.candidates.push_back(std::move(cand));
    }
    const auto& ch = field(j, "chain");
    r.chain.checked = field(ch, "checked").get<std::size_t>();
    r.chain.passed = field(ch, "passed").get<std::size_t>();
    r.chain.invalid = field(ch, "invalid").get<std::size_t>();
    r.chain.min_slack = field(ch, "min_slack").get<Real>();
    r.chain.certificates = field(ch, "certificates").get<std::size_t>();
    r.partial_sample = field(j, "partial_sample").get<bool>();
    r.position_asserted = field(j, "position_asserted").get<bool>();
    r.notes = field(j, "notes").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed report: ") + e.what());
  }
}

std::string report_csv(const DefectReport& r) {
  std::ostringstream os;
  os << "point,height,weighted_sum,ratio,violator\n";
  for (const auto& p : r.records) {
    os << point_string(p.point) << ',' << format_real(p.height) << ',' << format_real(p.weighted_sum)
       << ',' << (p.ratio ? format_real(*p.ratio) : std::string()) << ','
       << (p.violator ? "true" : "false") << '\n';
  }
  return os.str();
}

WeilManifest manifest_from_json(const json& j) {
  WeilManifest m;
  for (const auto& p : field(j, "points")) m.points.push_back(point_from_json(p));
  for (const auto& t : field(j, "targets")) m.targets.push_back(target_from_json(t));
  for (const auto& v : field(j, "places")) m.places.push_back(place_from_json(v));
  if (value_or<std::string>(j, "mode", "lenient") == "strict") m.mode = SubschemeMode::strict;
  return m;
}

std::string weil_batch_csv(const WeilManifest& m) {
  std::ostringstream os;
  os << "point,target,place,value,exact_ledger\n";
  for (const auto& p : m.points) {
    for (const auto& t : m.targets) {
      for (const auto& v : m.places) {
        os << p.to_string() << ',' << csv_escape(target_label(t)) << ',' << v.to_string() << ',';
        try {
          auto w = weil_value(p, t, v, m.mode);
          os << format_real(w.value) << ',' << csv_escape(w.ledger());
        } catch (const SupportError&) {
          os << ",support";
        }
        os << '\n';
      }
    }
  }
  return os.str();
}

std::string format_real(Real x) { return json(x).dump(); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ArgumentError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace subspace::io
