#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invopt/analysis.hpp"
#include "invopt/config.hpp"
#include "invopt/instances.hpp"

namespace invopt {

inline constexpr std::string_view kTraceHeader =
    "t,loss_sub,loss_est,total,R_t,R_sub_t,beta_t,grad_norm,bound_prop4,bound_appB,bound_thm2";

struct ExperimentResult {
  ExperimentResult(ExperimentConfig cfg, RegularizerConfig reg, RegretLedger led, Vector truth)
      : config(std::move(cfg)), regularizer(reg), ledger(std::move(led)), c_star(std::move(truth)) {}

  ExperimentConfig config;
  RegularizerConfig regularizer;
  RegretLedger ledger;
  Vector c_star;
  std::vector<CheckResult> checks;
  std::optional<GapCertificate> gap;
  std::optional<double> integral_gap;  // certified delta of the integer objective
  std::optional<OfflineEvaluation> offline;
  std::optional<Vector> c_avg;
  double max_dual_distance = 0.0;  // max_t ||c_hat_t - c*||_*

  bool passed() const;
  std::vector<std::string> failed_checks() const;
  // Gap-dependent constant regret bound, when it applies to this run.
  std::optional<double> gap_bound() const;
};

// Runs the online protocol over a given stream (predict, then observe) and
// certifies every inequality that applies to the configuration.
ExperimentResult run_protocol(const ExperimentConfig& config, const InstanceStream& stream);

// generate_instance_stream + run_protocol + holdout evaluation.
ExperimentResult run_experiment(const ExperimentConfig& config);

void write_trace(std::ostream& out, const ExperimentResult& result);
void write_summary(std::ostream& out, const ExperimentResult& result);

// Writes <prefix>.trace.csv and <prefix>.summary.txt; returns the exit status.
int write_outputs(const ExperimentResult& result, const std::string& prefix);

struct SweepSpec {
  ExperimentConfig base;
  std::vector<std::size_t> rounds;
  std::vector<std::size_t> dimensions;
  std::vector<std::string> gaps;  // values accepted by the "gap" key
  std::size_t trials = 1;
  std::size_t threads = 1;
};

// Runs every (rounds, dimension, gap, trial) cell; trial i uses seed
// base_seed + i. Writes per-trial outputs and <out_dir>/sweep.csv. Returns
// nonzero if any trial failed a check.
int run_sweep(const SweepSpec& spec, const std::string& out_dir);

}  // namespace invopt
