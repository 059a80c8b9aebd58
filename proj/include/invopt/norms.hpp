#pragma once

#include <string_view>

#include "invopt/vector.hpp"

namespace invopt {

enum class NormKind {
  kLinfL1,  // primal l-infinity on actions, dual l1 on predictions
  kL2L2,
};

// A primal norm on the action space together with its dual on predictions.
struct NormPair {
  NormKind kind = NormKind::kLinfL1;

  double primal(const Vector& v) const;
  double primal_sq(const Vector& v) const;  // exact sum of squares for l2
  double dual(const Vector& v) const;

  std::string_view name() const;
  static NormPair parse(std::string_view name);

  friend bool operator==(const NormPair&, const NormPair&) = default;
};

}  // namespace invopt
