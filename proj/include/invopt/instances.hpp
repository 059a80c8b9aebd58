#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "invopt/analysis.hpp"
#include "invopt/config.hpp"
#include "invopt/domain.hpp"
#include "invopt/observation.hpp"

namespace invopt {

// A generated experiment: the rounds' observations plus the hidden objective.
struct InstanceStream {
  std::vector<Observation> observations;
  Vector c_star;
  // For integral gap targets: the integer objective c_star was scaled from
  // (equal to c_star on the ball domain).
  std::optional<Vector> c_star_integral;
  NormPair norms;
};

PredictionDomain make_domain(const ExperimentConfig& config);

// Uniformly random member of `set`.
Vector sample_member(const FeasibleSet& set, std::mt19937_64& rng);

// Draws the hidden objective from the prediction domain (Dirichlet(1) on the
// simplex, uniform on the ball; integer-valued for the integral gap target).
// Returns (c_star, integral objective if any).
std::pair<Vector, std::optional<Vector>> draw_objective(const ExperimentConfig& config,
                                                        std::mt19937_64& rng);

// One round: draws X_t for the family (redrawing under a gap target until the
// optimum is unique, or the round's gap reaches the margin) and the agent's
// action. Throws GenerationFailed after config.retry_cap draws.
Observation draw_round(const ExperimentConfig& config, const Vector& c_star,
                       std::mt19937_64& rng, std::size_t round_index);

// Deterministic in config (including the mandatory seed).
InstanceStream generate_instance_stream(const ExperimentConfig& config);

// Fresh i.i.d. rounds from the same distribution, for holdout evaluation.
ObservationSampler make_sampler(const ExperimentConfig& config, const Vector& c_star);

}  // namespace invopt
