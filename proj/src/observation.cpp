#include "invopt/observation.hpp"

#include "invopt/errors.hpp"

namespace invopt {

Observation::Observation(FeasibleSet set, Vector choice, std::size_t round)
    : feasible_set(std::move(set)), agent_choice(std::move(choice)), round_index(round) {
  if (agent_choice.size() != feasible_set.dimension()) {
    throw DimensionMismatch(feasible_set.dimension(), agent_choice.size());
  }
  if (!feasible_set.contains(agent_choice)) {
    throw MembershipError("agent choice " + agent_choice.to_string() +
                          " is not a member of the feasible set");
  }
  if (round_index == 0) throw ConfigError("round index must be positive");
}

}  // namespace invopt
