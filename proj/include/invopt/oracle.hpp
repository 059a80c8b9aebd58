#pragma once

#include <cstddef>

#include "invopt/feasible_set.hpp"
#include "invopt/vector.hpp"

namespace invopt {

struct OracleResult {
  Vector maximizer;
  double optimal_value = 0.0;  // always <c, maximizer>
  std::size_t tie_count = 1;   // maximizers within tie tolerance, when cheaply known
};

// Exact argmax_{x in X} <c, x>, with deterministic tie-breaking:
//   explicit  - linear scan, lexicographically smallest among exact ties
//   hypercube - x_i = 1 iff c_i > 0 (zero coefficients resolve to 0)
//   knapsack  - DP over the integer capacity grid; items with c_i <= 0 are
//               never packed, and an item is packed only if that is strictly
//               better than leaving it out
//   dag       - longest path in topological order with strict-improvement
//               relaxation, so the first-found predecessor wins ties
OracleResult argmax(const FeasibleSet& set, const Vector& c);

// Exhaustive scan over set.members(cap) with lexicographic tie-break. Uses
// the scalar reference kernels only, so it stays independent of argmax.
OracleResult argmax_bruteforce(const FeasibleSet& set, const Vector& c,
                               std::size_t cap = kDefaultEnumerationCap);

}  // namespace invopt
