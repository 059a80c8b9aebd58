#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "invopt/domain.hpp"
#include "invopt/observation.hpp"
#include "invopt/vector.hpp"

namespace invopt {

enum class Schedule {
  kPropFour,   // beta_t = 2^{1/4}/B * sqrt(sum ||g_i||^2 / lambda)
  kAppendixB,  // beta_t = 1/(H sqrt(lambda)) * sqrt(K^2 + sum ||g_i||^2)
};

std::string_view schedule_name(Schedule s);
Schedule parse_schedule(std::string_view name);

enum class RegularizerKind {
  kNegativeEntropy,  // <c, ln c> on the simplex, 1-strongly convex w.r.t. l1
  kHalfSquaredNorm,  // 0.5 ||c - center||_2^2 on a ball, 1-strongly convex w.r.t. l2
};

struct RegularizerConfig {
  RegularizerKind kind = RegularizerKind::kNegativeEntropy;
  double lambda = 1.0;  // strong-convexity modulus
  double B = 1.0;       // range constant of the adaptive schedule
  double H = 1.0;       // sqrt of the regularizer range, used by kAppendixB
  double K = 1.0;       // bound on the primal diameter of every feasible set

  // Built-in constants for the regularizer that matches `domain`:
  //   simplex: lambda = 1, B = 2^{11/4} sqrt(ln n), H = sqrt(ln n)
  //   ball:    lambda = 1, B = 2^{9/4} r,          H = r / sqrt(2)
  static RegularizerConfig for_domain(const PredictionDomain& domain, double K);

  // Throws ConfigError unless
  //   B^2 >= 2^{5/2} lambda diam_*(domain)^2,  B^2 >= sup psi - inf psi,
  //   H^2 >= sup psi - inf psi, and the kind matches the domain.
  void validate(const PredictionDomain& domain) const;

  friend bool operator==(const RegularizerConfig&, const RegularizerConfig&) = default;
};

// Regularizer value psi(c), with 0 ln 0 = 0 for the entropy.
double regularizer_value(const RegularizerConfig& config, const PredictionDomain& domain,
                         const Vector& c);

// sup psi - inf psi over the domain.
double regularizer_range(const RegularizerConfig& config, const PredictionDomain& domain);

// Minimizer of psi over the domain (uniform vector or ball center).
Vector regularizer_minimizer(const PredictionDomain& domain);

// argmin_{c in domain} beta * psi(c) + <grad_sum, c> for beta > 0.
Vector ftrl_minimizer(const PredictionDomain& domain, const Vector& grad_sum, double beta);

struct LearnerState {
  Vector grad_sum;
  double sq_norm_sum = 0.0;  // sum of squared primal norms of past gradients
  std::size_t round = 0;     // completed rounds
  Vector current_prediction;
  bool last_gradient_zero = true;
  Schedule schedule = Schedule::kPropFour;
  RegularizerConfig config;
  PredictionDomain domain;
};

double beta(const LearnerState& state);

// One round of the online protocol as seen by the learner.
struct RoundRecord {
  std::size_t t = 0;
  Vector c_hat;
  Vector x_hat;
  Vector gradient;  // x_hat - x
  double beta = 0.0;
  double grad_norm = 0.0;  // primal norm of the gradient
  double grad_norm_sq = 0.0;
  double loss_sub = 0.0;   // raw <c_hat, x_hat - x>
  std::optional<double> loss_est;

  // Simulation-only quantities filled in by RegretLedger.
  std::optional<double> loss_sub_at_truth;  // suboptimality of the agent under c*
  std::optional<double> linearized_term;    // <g_t, c_hat - c*>
  double running_sum_sq_grad = 0.0;
  double running_max_grad_norm = 0.0;
  std::optional<double> running_regret;
  std::optional<double> running_subopt_regret;
  std::optional<double> running_total_loss;
};

// Follow-The-Regularized-Leader over the prediction domain.
class FtrlLearner {
 public:
  FtrlLearner(PredictionDomain domain, RegularizerConfig config, Schedule schedule);

  const LearnerState& state() const { return state_; }
  double beta() const { return invopt::beta(state_); }

  // Prediction for round state().round + 1.
  const Vector& predict();

  // Feeds round t's data. `x_hat` must be the oracle answer for predict().
  // With `c_star` the record carries the estimate loss.
  RoundRecord observe(const Observation& obs, const Vector& x_hat,
                      const std::optional<Vector>& c_star = std::nullopt);

 private:
  LearnerState state_;
  double prediction_beta_ = 0.0;
  bool stale_ = true;
};

}  // namespace invopt
