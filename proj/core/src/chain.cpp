#include "subspace/chain.hpp"

#include "subspace/weil.hpp"

namespace subspace {

namespace {

Rat form_norm(const LinearForm& f, const Place& v) {
  Rat best = 0;
  for (const auto& c : f.coeffs()) {
    Rat a = abs_value(Rat(c), v);
    if (a > best) best = a;
  }
  return best;
}

}  // namespace

ChainRecord chain_check(const ProjPoint& p, const Place& v, const CombinationCertificate& cert) {
  const auto& in = cert.inputs;
  const auto& out = cert.outputs;
  const int l = cert.l;
  const int n = cert.n;

  ChainRecord rec;
  rec.point = p.coords();
  rec.place = v;

  std::vector<Rat> values;
  for (const auto& f : in) {
    Integer val = evaluate(f, p);
    if (val == 0) throw SupportError("point " + p.to_string() + " lies on input " + f.to_string());
    values.emplace_back(val);
  }
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (compare_abs(values[j - 1], values[j], v) > 0) {
      throw DomainError("certificate inputs are not sorted by local norm at " + p.to_string() +
                        " (" + v.to_string() + ")");
    }
  }
  for (std::size_t j = 0; j < in.size(); ++j) rec.ordering.push_back(static_cast<int>(j));

  for (const auto& f : in) rec.lhs_argument *= weil_hyperplane(p, f, v).argument;
  Rat outputs_product = 1;
  for (const auto& f : out) {
    if (evaluate(f, p) == 0) {
      throw SupportError("point " + p.to_string() + " lies on combination " + f.to_string());
    }
    outputs_product *= weil_hyperplane(p, f, v).argument;
  }

  const Rat c_v = chain_constant(cert, v).value;
  Rat k = 1;
  for (int t = 1; t <= n; ++t) {
    k *= c_v * form_norm(in[static_cast<std::size_t>(l - n + t)], v) / form_norm(out[t], v);
    if (v.is_archimedean()) k *= pow(Rat(static_cast<long>(out[t].nonzero_count())), l - n);
  }
  const Rat first_norm = form_norm(in.front(), v);
  for (int j = 0; j <= l - n; ++j) k *= form_norm(in[j], v) / first_norm;

  rec.constant_argument = k;
  rec.rhs_argument = pow(outputs_product, l - n + 1) * k;
  rec.lhs = log_real(rec.lhs_argument);
  rec.rhs = log_real(rec.rhs_argument);
  rec.constant = log_real(k);
  rec.slack = log_real(Rat(rec.rhs_argument / rec.lhs_argument));
  rec.pass = rec.lhs_argument <= rec.rhs_argument;
  return rec;
}

ChainChecker::ChainChecker(std::vector<LinearForm> arrangement, LinearSubvariety x)
    : arrangement_(std::move(arrangement)), subvariety_(std::move(x)) {}

CombinationCertificate ChainChecker::certificate_for(const std::vector<int>& ordering) {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(ordering);
    if (it != cache_.end()) return it->second;
  }
  std::vector<LinearForm> sorted;
  for (int i : ordering) sorted.push_back(arrangement_.at(static_cast<std::size_t>(i)));
  auto cert = quang_combine(sorted, subvariety_);
  std::lock_guard lock(mutex_);
  return cache_.try_emplace(ordering, std::move(cert)).first->second;
}

ChainRecord ChainChecker::check(const ProjPoint& p, const Place& v) {
  auto ordering = reorder_by_local_norm(p, v, arrangement_);
  auto cert = certificate_for(ordering.permutation);
  auto rec = chain_check(p, v, cert);
  rec.ordering = ordering.permutation;
  return rec;
}

std::size_t ChainChecker::cached_certificates() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

}  // namespace subspace
