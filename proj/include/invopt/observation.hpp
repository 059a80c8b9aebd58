#pragma once

#include <cstddef>

#include "invopt/feasible_set.hpp"
#include "invopt/vector.hpp"

namespace invopt {

// One round of data: the feasible set the agent faced and the action it took.
struct Observation {
  Observation(FeasibleSet set, Vector choice, std::size_t round);

  FeasibleSet feasible_set;
  Vector agent_choice;
  std::size_t round_index = 1;
};

}  // namespace invopt
