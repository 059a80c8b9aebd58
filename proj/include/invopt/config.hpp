#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "invopt/feasible_set.hpp"
#include "invopt/learner.hpp"

namespace invopt {

enum class Family { kRandomVertices, kHypercube, kKnapsack, kDag };
enum class GapTarget { kNone, kIntegral, kMargin };
enum class DomainKind { kSimplex, kBall };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);
std::string_view domain_name(DomainKind d);

// Flat experiment description. Every field has a key in the key = value
// config format (see README); `seed` has no default and must be given.
struct ExperimentConfig {
  std::size_t dimension = 5;
  std::size_t rounds = 1000;
  DomainKind domain = DomainKind::kSimplex;
  Schedule schedule = Schedule::kPropFour;
  Family family = Family::kRandomVertices;
  double agent_noise = 0.0;  // probability of a uniformly random feasible action
  GapTarget gap = GapTarget::kNone;
  double gap_margin = 0.0;   // delta* for GapTarget::kMargin
  std::optional<std::uint64_t> seed;
  std::size_t holdout = 0;
  std::string out = "run";

  // instance families
  std::size_t vertices = 32;
  int vertex_grid = 0;  // 0: continuous in [0,1]^n; g >= 1: round(g * u) in {0..g}
  std::int64_t knapsack_max_weight = 10;
  std::size_t dag_nodes = 0;  // 0: derived from the dimension
  int cstar_max = 5;          // integral objectives draw entries from {1..cstar_max}

  // ball domain
  double ball_center = 3.0;  // center = ball_center * (1, ..., 1)
  double ball_radius = 2.0;

  // constants and limits
  std::optional<double> K;  // default: primal norm of grid * (1, ..., 1)
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t retry_cap = 100000;
  std::size_t burn_in = 1000;

  // Applies one key = value assignment. Throws ConfigError on unknown keys or bad values.
  void set(std::string_view key, std::string_view value);

  // Throws ConfigError if a field is out of range or the seed is missing.
  void validate() const;

  std::uint64_t require_seed() const;
  int effective_grid() const;
  double effective_K() const;

  std::map<std::string, std::string> to_map() const;
};

// Parses "key = value" lines; '#' starts a comment.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

}  // namespace invopt
