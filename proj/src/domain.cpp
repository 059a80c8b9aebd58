#include "invopt/domain.hpp"

#include <cmath>

#include "invopt/errors.hpp"
#include "invopt/tolerance.hpp"

namespace invopt {

PredictionDomain PredictionDomain::simplex(std::size_t n) {
  if (n == 0) throw ConfigError("simplex dimension must be positive");
  return PredictionDomain(Simplex{n});
}

PredictionDomain PredictionDomain::ball(Vector center, double radius) {
  if (center.empty()) throw ConfigError("ball center must be nonempty");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("ball radius must be positive");
  return PredictionDomain(Ball{std::move(center), radius});
}

std::size_t PredictionDomain::dimension() const {
  if (const auto* s = std::get_if<Simplex>(&set_)) return s->dim;
  return std::get<Ball>(set_).center.size();
}

NormPair PredictionDomain::norms() const {
  return is_simplex() ? NormPair{NormKind::kLinfL1} : NormPair{NormKind::kL2L2};
}

bool PredictionDomain::contains(const Vector& c) const {
  if (c.size() != dimension()) return false;
  if (is_simplex()) {
    double total = 0.0;
    for (double x : c) {
      if (x < -kRelTol) return false;
      total += x;
    }
    return eq_tol(total, 1.0);
  }
  const Ball& b = as_ball();
  const double dist = NormPair{NormKind::kL2L2}.dual(c - b.center);
  return leq_tol(dist, b.radius);
}

double PredictionDomain::dual_diameter() const {
  if (is_simplex()) return dimension() >= 2 ? 2.0 : 0.0;
  return 2.0 * as_ball().radius;
}

bool PredictionDomain::excludes_origin() const {
  if (is_simplex()) return true;
  const Ball& b = as_ball();
  return NormPair{NormKind::kL2L2}.dual(b.center) > b.radius;
}

}  // namespace invopt
