#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "invopt/learner.hpp"
#include "invopt/norms.hpp"
#include "invopt/observation.hpp"

namespace invopt {

// Outcome of one certified inequality (or family of inequalities over prefixes).
struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool applicable = true;  // false when a precondition does not hold
  bool pass = true;
  double margin = 0.0;     // min over checked instances of rhs - lhs
  std::size_t worst_round = 0;
  std::string detail;

  bool failed() const { return applicable && !pass; }
};

// Accumulates regret quantities round by round. With a known c* it fills the
// simulation fields of every RoundRecord it stores.
class RegretLedger {
 public:
  RegretLedger(std::optional<Vector> c_star, Schedule schedule, RegularizerConfig config);

  const RoundRecord& append(RoundRecord rec, const Observation& obs);

  bool simulation() const { return c_star_.has_value(); }
  const std::optional<Vector>& c_star() const { return c_star_; }
  Schedule schedule() const { return schedule_; }
  const RegularizerConfig& config() const { return config_; }

  std::size_t rounds() const { return records_.size(); }
  const std::vector<RoundRecord>& per_round() const { return records_; }
  const RoundRecord& at(std::size_t t) const { return records_.at(t - 1); }  // 1-based

  double linearized_regret() const { return regret_; }
  double subopt_regret() const { return subopt_regret_; }
  double total_loss() const { return total_loss_; }
  double sum_sq_grad() const { return sum_sq_grad_; }
  double max_grad_norm() const { return max_grad_norm_; }
  bool agent_always_optimal() const { return agent_optimal_; }

 private:
  std::optional<Vector> c_star_;
  Schedule schedule_;
  RegularizerConfig config_;
  std::vector<RoundRecord> records_;
  double regret_ = 0.0;
  double subopt_regret_ = 0.0;
  double total_loss_ = 0.0;
  double sum_sq_grad_ = 0.0;
  double max_grad_norm_ = 0.0;
  bool agent_optimal_ = true;
};

// Closed-form bound values.
double prop4_bound(const RegularizerConfig& cfg, double sum_sq_grad);   // 2^{5/4} B sqrt(S/lambda)
double prop4_diameter_bound(const RegularizerConfig& cfg, std::size_t t);  // 2^{5/4} K B sqrt(t/lambda)
double appendix_b_bound(const RegularizerConfig& cfg, std::size_t t);   // 2 K H sqrt(t/lambda)
double theorem2_bound(const RegularizerConfig& cfg, double delta);      // 2^{5/4} K B^3 / (lambda^{3/2} delta^2)
double lemma1_coefficient(const RegularizerConfig& cfg, double delta);  // K B / (2^{5/4} sqrt(lambda) delta^2)

// Adaptive-schedule regret bound at prefix t (both the sum-of-squares and
// the diameter forms). Throws ConfigError if the ledger ran another schedule
// or other constants.
CheckResult check_prop4_bound(const RegretLedger& ledger, const RegularizerConfig& cfg,
                              std::size_t t);
CheckResult check_appendix_b_bound(const RegretLedger& ledger, const RegularizerConfig& cfg,
                                   std::size_t t);

// R_t = sum of (l_sub + l_est) within 1e-9 * t at every prefix.
CheckResult check_total_loss_identity(const RegretLedger& ledger);
// R_t^sub <= R_t + 1e-9 * t at every prefix.
CheckResult check_subopt_regret(const RegretLedger& ledger);
// Per round: the linearization identity and L(c_hat) - L(c*) <= <g, c_hat - c*>.
CheckResult check_linearization(const RoundRecord& rec, const Vector& c_star);

// Def. of the gap condition: <c*, x_t - v> >= delta ||x_t - v|| for all v in X_t.
struct GapWitness {
  std::size_t round = 0;
  Vector point;
  double value_gap = 0.0;  // <c*, x_t - point>
};

struct GapCertificate {
  bool satisfied = false;
  double delta = 0.0;  // exact minimum ratio when satisfied (+inf if every X_t is a singleton)
  std::vector<double> per_round_deltas;
  std::optional<GapWitness> witness;  // first violating point when not satisfied
};

// Exhaustive certification; throws EnumerationRefused past `cap`.
GapCertificate certify_gap(const std::vector<Observation>& observations, const Vector& c_star,
                           const NormPair& norms, std::size_t cap = kDefaultEnumerationCap);

CheckResult check_lemma1(const RoundRecord& rec, const Vector& c_star,
                         const RegularizerConfig& cfg, const NormPair& norms, double delta);

// Gap-dependent constant bound on R_t at every prefix.
CheckResult check_theorem2_bound(const RegretLedger& ledger, const RegularizerConfig& cfg,
                                 double delta);
// sum ||g||^2 <= K B / (2^{5/4} sqrt(lambda) delta^2) R_t at every prefix.
CheckResult check_gradient_self_bound(const RegretLedger& ledger, const RegularizerConfig& cfg,
                                      double delta);
// Total loss over rounds (T/2, T] is at most 1e-9 * T.
CheckResult check_plateau(const RegretLedger& ledger, std::size_t T);

// Average of the predictions in `records`. Throws on an empty list.
Vector online_to_batch(const std::vector<RoundRecord>& records);

using ObservationSampler = std::function<Observation(std::mt19937_64&)>;

struct OfflineEvaluation {
  std::size_t samples = 0;
  double mean_loss_prediction = 0.0;
  double stddev_loss_prediction = 0.0;
  double mean_loss_truth = 0.0;
  double stddev_loss_truth = 0.0;
  double stddev_difference = 0.0;  // of the paired per-sample differences

  // Standard error of mean_loss_prediction - mean_loss_truth.
  double standard_error() const;
};

// Monte-Carlo estimates of E[l_sub(c_bar)] and E[l_sub(c_star)] on m fresh samples.
OfflineEvaluation offline_evaluate(const Vector& c_bar, const Vector& c_star,
                                   const ObservationSampler& sampler, std::size_t m,
                                   std::uint64_t seed);

}  // namespace invopt
