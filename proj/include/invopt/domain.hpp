#pragma once

#include <cstddef>
#include <variant>

#include "invopt/norms.hpp"
#include "invopt/vector.hpp"

namespace invopt {

// {c >= 0 : ||c||_1 = 1}
struct Simplex {
  std::size_t dim = 0;
};

// Euclidean ball around `center`.
struct Ball {
  Vector center;
  double radius = 0.0;
};

// Closed convex set of admissible predictions.
class PredictionDomain {
 public:
  static PredictionDomain simplex(std::size_t n);
  static PredictionDomain ball(Vector center, double radius);

  std::size_t dimension() const;
  bool is_simplex() const { return std::holds_alternative<Simplex>(set_); }
  const Ball& as_ball() const { return std::get<Ball>(set_); }

  // Simplex pairs with (l-inf, l1); Ball with (l2, l2).
  NormPair norms() const;

  // Membership within tau.
  bool contains(const Vector& c) const;

  // Largest dual-norm distance between two members.
  double dual_diameter() const;

  bool excludes_origin() const;

 private:
  using Variant = std::variant<Simplex, Ball>;
  explicit PredictionDomain(Variant set) : set_(std::move(set)) {}
  Variant set_;
};

}  // namespace invopt
