#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "subspace/chain.hpp"
#include "subspace/experiments.hpp"
#include "subspace/seshadri.hpp"

namespace subspace::io {

using json = nlohmann::json;

// Rationals are written as canonical strings; readers also accept JSON
// integers. Index lists (witnesses, orderings) are 1-based on disk.

json to_json(const Rat& x);
json to_json(const Place& v);
json to_json(const ProjPoint& p);
json to_json(const LinearForm& f);
json to_json(const HomForm& f);
json to_json(const SubschemeSpec& y);
json to_json(const Target& t);
json to_json(const LinearSubvariety& x);
json to_json(const LogNorm& n);
json to_json(const ProductFormulaLedger& ledger);
json to_json(const PositionReport& r);
json to_json(const CombinationCertificate& c);
json to_json(const Ordering& o);
json to_json(const WeilValue& w);
json to_json(const SeshadriValue& s);
json to_json(const ChainRecord& r);
json to_json(const ExperimentConfig& c);
json to_json(const DefectReport& r);

Rat rat_from_json(const json& j);
Place place_from_json(const json& j);
ProjPoint point_from_json(const json& j);
LinearForm linear_form_from_json(const json& j);
HomForm hom_form_from_json(const json& j);
SubschemeSpec subscheme_from_json(const json& j);
/// Accepts {"kind": "linear"|"divisor"|"subscheme", ...} or a bare
/// coefficient array (a hyperplane).
Target target_from_json(const json& j);
/// Accepts {"ambient_dim": M, "forms": [...]}.
LinearSubvariety subvariety_from_json(const json& j);
std::vector<LinearForm> forms_from_json(const json& j);
PositionReport position_report_from_json(const json& j);
CombinationCertificate certificate_from_json(const json& j);
ExperimentConfig config_from_json(const json& j);
DefectReport report_from_json(const json& j);

/// Height bounds may be numbers or strings "log(N)" / "log(a/b)".
Real height_bound_from_json(const json& j);

/// Per-point CSV: point,height,weighted_sum,ratio,violator.
std::string report_csv(const DefectReport& r);

/// Batch Weil evaluation: every (point, target, place) triple of a manifest
/// {"points": [...], "targets": [...], "places": [...]}.
struct WeilManifest {
  std::vector<ProjPoint> points;
  std::vector<Target> targets;
  std::vector<Place> places;
  SubschemeMode mode = SubschemeMode::lenient;
};

WeilManifest manifest_from_json(const json& j);
/// CSV with columns point,target,place,value,exact_ledger. Points on a
/// target's support get an empty value and ledger "support".
std::string weil_batch_csv(const WeilManifest& m);

/// Shortest round-trip decimal form of a double (as JSON writes it).
std::string format_real(Real x);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Raised for unreadable or unwritable files.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace subspace::io
