#include "invopt/norms.hpp"

#include <cmath>
#include <string>

#include "invopt/errors.hpp"
#include "invopt/kernels.hpp"

namespace invopt {

double NormPair::primal(const Vector& v) const {
  if (kind == NormKind::kLinfL1) return kernels::max_abs(v.data(), v.size());
  return std::sqrt(kernels::sum_sq(v.data(), v.size()));
}

double NormPair::primal_sq(const Vector& v) const {
  if (kind == NormKind::kL2L2) return kernels::sum_sq(v.data(), v.size());
  const double m = kernels::max_abs(v.data(), v.size());
  return m * m;
}

double NormPair::dual(const Vector& v) const {
  if (kind == NormKind::kLinfL1) return kernels::sum_abs(v.data(), v.size());
  return std::sqrt(kernels::sum_sq(v.data(), v.size()));
}

std::string_view NormPair::name() const {
  return kind == NormKind::kLinfL1 ? "linf-l1" : "l2-l2";
}

NormPair NormPair::parse(std::string_view name) {
  if (name == "linf-l1") return NormPair{NormKind::kLinfL1};
  if (name == "l2-l2") return NormPair{NormKind::kL2L2};
  throw ConfigError("unknown norm pair '" + std::string(name) + "'");
}

}  // namespace invopt
