#include "invopt/loss.hpp"

#include "invopt/errors.hpp"
#include "invopt/tolerance.hpp"

namespace invopt {
namespace {

void require_member(const FeasibleSet& set, const Vector& x) {
  if (x.size() != set.dimension()) throw DimensionMismatch(set.dimension(), x.size());
  if (!set.contains(x)) throw MembershipError("x " + x.to_string() + " is not in the feasible set");
}

}  // namespace

double LossBreakdown::reported_suboptimality() const {
  return suboptimality < 0.0 && suboptimality > -tolerance(suboptimality) ? 0.0 : suboptimality;
}

SuboptimalityLoss suboptimality_loss(const Vector& x, const Vector& c_hat, const OracleResult& best) {
  Vector x_hat = best.maximizer;
  const double value = inner(c_hat, x_hat - x);
  return SuboptimalityLoss{value, std::move(x_hat)};
}

SuboptimalityLoss suboptimality_loss(const FeasibleSet& set, const Vector& x, const Vector& c_hat) {
  require_member(set, x);
  return suboptimality_loss(x, c_hat, argmax(set, c_hat));
}

double fenchel_young_loss(const FeasibleSet& set, const Vector& x, const Vector& c_hat) {
  require_member(set, x);  // Omega(x) = 0; otherwise +inf
  const double conjugate = argmax(set, c_hat).optimal_value;
  return conjugate - inner(c_hat, x);
}

double estimate_loss(const Vector& c_star, const Vector& x, const Vector& x_hat) {
  require_same_size(c_star, x);
  return inner(c_star, x - x_hat);
}

Vector residual_subgradient(const Vector& x, const Vector& x_hat) { return x_hat - x; }

LossBreakdown evaluate_losses(const FeasibleSet& set, const Vector& x, const Vector& c_hat,
                              const std::optional<Vector>& c_star) {
  SuboptimalityLoss sub = suboptimality_loss(set, x, c_hat);
  LossBreakdown out;
  out.suboptimality = sub.value;
  out.subgradient = residual_subgradient(x, sub.x_hat);
  if (c_star) {
    out.estimate = estimate_loss(*c_star, x, sub.x_hat);
    out.total = out.suboptimality + *out.estimate;
  }
  out.chosen_x_hat = std::move(sub.x_hat);
  return out;
}

}  // namespace invopt
