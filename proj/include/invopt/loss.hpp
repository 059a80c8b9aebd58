#pragma once

#include <optional>

#include "invopt/feasible_set.hpp"
#include "invopt/oracle.hpp"
#include "invopt/vector.hpp"

namespace invopt {

// Suboptimality loss of the agent's choice x under a predicted objective,
// together with the prediction's recommended action x_hat.
struct SuboptimalityLoss {
  double value = 0.0;  // raw; may be slightly negative from rounding
  Vector x_hat;
};

// Per-round loss decomposition. The estimate and total parts need the true
// objective and are empty in observation-only mode.
struct LossBreakdown {
  double suboptimality = 0.0;  // raw value, >= -tau
  std::optional<double> estimate;
  std::optional<double> total;
  Vector subgradient;  // x_hat - x
  Vector chosen_x_hat;

  // Suboptimality with (-tau, 0) rounding noise clamped to zero.
  double reported_suboptimality() const;
};

// max_{x' in X} <c_hat, x'> - <c_hat, x>, evaluated as <c_hat, x_hat - x>.
// Throws MembershipError if x is not in X.
SuboptimalityLoss suboptimality_loss(const FeasibleSet& set, const Vector& x, const Vector& c_hat);

// Same as above, reusing an already computed oracle answer for c_hat.
SuboptimalityLoss suboptimality_loss(const Vector& x, const Vector& c_hat, const OracleResult& best);

// Fenchel-Young loss with the indicator regularizer of X:
//   Omega*(c_hat) + Omega(x) - <c_hat, x>, Omega*(c) = max_{x' in X} <c, x'>.
double fenchel_young_loss(const FeasibleSet& set, const Vector& x, const Vector& c_hat);

// <c_star, x - x_hat>
double estimate_loss(const Vector& c_star, const Vector& x, const Vector& x_hat);

// x_hat - x, a subgradient of the suboptimality loss at the prediction.
Vector residual_subgradient(const Vector& x, const Vector& x_hat);

// Full breakdown; pass c_star in simulation mode.
LossBreakdown evaluate_losses(const FeasibleSet& set, const Vector& x, const Vector& c_hat,
                              const std::optional<Vector>& c_star = std::nullopt);

}  // namespace invopt
