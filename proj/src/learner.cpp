#include "invopt/learner.hpp"

#include <cmath>
#include <string>

#include "invopt/errors.hpp"
#include "invopt/kernels.hpp"
#include "invopt/loss.hpp"
#include "invopt/tolerance.hpp"

namespace invopt {

std::string_view schedule_name(Schedule s) {
  return s == Schedule::kPropFour ? "prop4" : "appendix-b";
}

Schedule parse_schedule(std::string_view name) {
  if (name == "prop4") return Schedule::kPropFour;
  if (name == "appendix-b") return Schedule::kAppendixB;
  throw ConfigError("unknown schedule '" + std::string(name) + "'");
}

RegularizerConfig RegularizerConfig::for_domain(const PredictionDomain& domain, double K) {
  RegularizerConfig cfg;
  cfg.K = K;
  cfg.lambda = 1.0;
  if (domain.is_simplex()) {
    const auto n = static_cast<double>(domain.dimension());
    if (domain.dimension() < 2) throw ConfigError("simplex learner needs n >= 2");
    cfg.kind = RegularizerKind::kNegativeEntropy;
    cfg.B = std::pow(2.0, 11.0 / 4.0) * std::sqrt(std::log(n));
    cfg.H = std::sqrt(std::log(n));
  } else {
    const double r = domain.as_ball().radius;
    cfg.kind = RegularizerKind::kHalfSquaredNorm;
    cfg.B = std::pow(2.0, 9.0 / 4.0) * r;
    cfg.H = r / std::sqrt(2.0);
  }
  cfg.validate(domain);
  return cfg;
}

void RegularizerConfig::validate(const PredictionDomain& domain) const {
  if ((kind == RegularizerKind::kNegativeEntropy) != domain.is_simplex()) {
    throw ConfigError("regularizer does not match the prediction domain");
  }
  if (!(lambda > 0.0) || !(B > 0.0) || !(H > 0.0) || !(K > 0.0)) {
    throw ConfigError("lambda, B, H and K must be positive");
  }
  const double diam = domain.dual_diameter();
  const double range = regularizer_range(*this, domain);
  const double b2 = B * B;
  if (!leq_tol(std::pow(2.0, 2.5) * lambda * diam * diam, b2)) {
    throw ConfigError("B^2 is below 2^{5/2} lambda diam^2");
  }
  if (!leq_tol(range, b2)) throw ConfigError("B^2 is below the regularizer range");
  if (!leq_tol(range, H * H)) throw ConfigError("H^2 is below the regularizer range");
}

double regularizer_value(const RegularizerConfig& config, const PredictionDomain& domain,
                         const Vector& c) {
  if (config.kind == RegularizerKind::kNegativeEntropy) {
    double acc = 0.0;
    for (double x : c) {
      if (x > 0.0) acc += x * std::log(x);
    }
    return acc;
  }
  const Vector d = c - domain.as_ball().center;
  return 0.5 * kernels::sum_sq(d.data(), d.size());
}

double regularizer_range(const RegularizerConfig& config, const PredictionDomain& domain) {
  if (config.kind == RegularizerKind::kNegativeEntropy) {
    return std::log(static_cast<double>(domain.dimension()));
  }
  const double r = domain.as_ball().radius;
  return 0.5 * r * r;
}

Vector regularizer_minimizer(const PredictionDomain& domain) {
  if (domain.is_simplex()) {
    const std::size_t n = domain.dimension();
    return Vector(n, 1.0 / static_cast<double>(n));
  }
  return domain.as_ball().center;
}

Vector ftrl_minimizer(const PredictionDomain& domain, const Vector& grad_sum, double beta) {
  if (grad_sum.size() != domain.dimension()) {
    throw DimensionMismatch(domain.dimension(), grad_sum.size());
  }
  if (!(beta > 0.0)) throw ConfigError("ftrl_minimizer needs beta > 0");
  const std::size_t n = grad_sum.size();
  if (domain.is_simplex()) {
    // c_i proportional to exp(-G_i / beta), shifted by the max exponent.
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = -grad_sum[i] / beta;
    const double top = kernels::max_value(z.data(), n);
    for (double& v : z) v = std::exp(v - top);
    const double total = kernels::sum(z.data(), n);
    for (double& v : z) v /= total;
    return Vector(std::move(z));
  }
  const Ball& ball = domain.as_ball();
  std::vector<double> step(n);
  for (std::size_t i = 0; i < n; ++i) step[i] = -grad_sum[i] / beta;
  const double len = std::sqrt(kernels::sum_sq(step.data(), n));
  const double scale = len > ball.radius ? ball.radius / len : 1.0;
  std::vector<double> out(ball.center.values());
  kernels::axpy(scale, step.data(), out.data(), n);
  return Vector(std::move(out));
}

double beta(const LearnerState& state) {
  const RegularizerConfig& cfg = state.config;
  if (state.schedule == Schedule::kPropFour) {
    return std::pow(2.0, 0.25) / cfg.B * std::sqrt(state.sq_norm_sum / cfg.lambda);
  }
  return std::sqrt(cfg.K * cfg.K + state.sq_norm_sum) / (cfg.H * std::sqrt(cfg.lambda));
}

FtrlLearner::FtrlLearner(PredictionDomain domain, RegularizerConfig config, Schedule schedule)
    : state_{Vector(domain.dimension(), 0.0),
             0.0,
             0,
             regularizer_minimizer(domain),
             true,
             schedule,
             config,
             std::move(domain)} {
  state_.config.validate(state_.domain);
}

const Vector& FtrlLearner::predict() {
  if (!stale_) return state_.current_prediction;
  stale_ = false;
  const double b = beta();
  prediction_beta_ = b;
  // Hold the previous prediction (argmin psi in round 1) when the last
  // gradient was zero or beta = 0 makes the argmin ill-posed.
  if (b == 0.0 || (state_.round > 0 && state_.last_gradient_zero)) {
    return state_.current_prediction;
  }
  state_.current_prediction = ftrl_minimizer(state_.domain, state_.grad_sum, b);
  return state_.current_prediction;
}

RoundRecord FtrlLearner::observe(const Observation& obs, const Vector& x_hat,
                                 const std::optional<Vector>& c_star) {
  const std::size_t n = state_.domain.dimension();
  if (obs.feasible_set.dimension() != n) throw DimensionMismatch(n, obs.feasible_set.dimension());
  if (!obs.feasible_set.contains(x_hat)) {
    throw MembershipError("x_hat " + x_hat.to_string() + " is not in the feasible set");
  }
  const Vector& c_hat = predict();
  const NormPair norms = state_.domain.norms();

  RoundRecord rec;
  rec.t = state_.round + 1;
  rec.c_hat = c_hat;
  rec.x_hat = x_hat;
  rec.gradient = residual_subgradient(obs.agent_choice, x_hat);
  rec.beta = prediction_beta_;
  rec.grad_norm = norms.primal(rec.gradient);
  rec.grad_norm_sq = norms.primal_sq(rec.gradient);
  rec.loss_sub = inner(c_hat, rec.gradient);
  if (c_star) rec.loss_est = -inner(*c_star, rec.gradient);

  state_.last_gradient_zero = is_zero(rec.gradient);
  if (!state_.last_gradient_zero) {
    state_.grad_sum = state_.grad_sum + rec.gradient;
    state_.sq_norm_sum += rec.grad_norm_sq;
  }
  state_.round = rec.t;
  stale_ = true;
  return rec;
}

}  // namespace invopt
