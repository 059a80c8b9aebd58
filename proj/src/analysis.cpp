#include "invopt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "invopt/errors.hpp"
#include "invopt/kernels.hpp"
#include "invopt/loss.hpp"
#include "invopt/oracle.hpp"
#include "invopt/tolerance.hpp"

namespace invopt {
namespace {

const double kTwoFiveQuarters = std::pow(2.0, 1.25);

// Folds one lhs <= rhs instance into a running check.
void fold(CheckResult& out, double lhs, double rhs, std::size_t t, double slack = -1.0) {
  const bool ok = slack >= 0.0 ? lhs <= rhs + slack : leq_tol(lhs, rhs);
  const double margin = rhs - lhs;
  if (out.worst_round == 0 || margin < out.margin) {
    out.margin = margin;
    out.worst_round = t;
  }
  if (!ok && out.pass) {
    out.pass = false;
    out.detail = "violated at t=" + std::to_string(t) + ": lhs=" + std::to_string(lhs) +
                 " rhs=" + std::to_string(rhs);
  }
}

void require_simulation(const RegretLedger& ledger) {
  if (!ledger.simulation()) throw ConfigError("regret checks need the true objective");
}

void require_prefix(const RegretLedger& ledger, std::size_t t) {
  if (t == 0 || t > ledger.rounds()) throw ConfigError("prefix out of range");
}

void require_config(const RegretLedger& ledger, const RegularizerConfig& cfg, Schedule schedule) {
  if (ledger.schedule() != schedule) throw ConfigError("ledger was produced by another schedule");
  if (!(ledger.config() == cfg)) throw ConfigError("configuration does not match the ledger");
}

CheckResult not_applicable(std::string name, std::string why) {
  CheckResult r;
  r.name = std::move(name);
  r.applicable = false;
  r.detail = std::move(why);
  return r;
}

}  // namespace

RegretLedger::RegretLedger(std::optional<Vector> c_star, Schedule schedule,
                           RegularizerConfig config)
    : c_star_(std::move(c_star)), schedule_(schedule), config_(config) {}

const RoundRecord& RegretLedger::append(RoundRecord rec, const Observation& obs) {
  if (rec.t != records_.size() + 1) throw ConfigError("ledger records must arrive in round order");
  sum_sq_grad_ += rec.grad_norm_sq;
  max_grad_norm_ = std::max(max_grad_norm_, rec.grad_norm);
  rec.running_sum_sq_grad = sum_sq_grad_;
  rec.running_max_grad_norm = max_grad_norm_;
  if (c_star_) {
    const Vector& c = *c_star_;
    const double truth = suboptimality_loss(obs.agent_choice, c, argmax(obs.feasible_set, c)).value;
    if (!leq_tol(truth, 0.0)) agent_optimal_ = false;
    if (!rec.loss_est) rec.loss_est = estimate_loss(c, obs.agent_choice, rec.x_hat);
    rec.loss_sub_at_truth = truth;
    rec.linearized_term = inner(rec.gradient, rec.c_hat - c);
    regret_ += *rec.linearized_term;
    subopt_regret_ += rec.loss_sub - truth;
    total_loss_ += rec.loss_sub + *rec.loss_est;
    rec.running_regret = regret_;
    rec.running_subopt_regret = subopt_regret_;
    rec.running_total_loss = total_loss_;
  }
  records_.push_back(std::move(rec));
  return records_.back();
}

double prop4_bound(const RegularizerConfig& cfg, double sum_sq_grad) {
  return kTwoFiveQuarters * cfg.B * std::sqrt(sum_sq_grad / cfg.lambda);
}

double prop4_diameter_bound(const RegularizerConfig& cfg, std::size_t t) {
  return kTwoFiveQuarters * cfg.K * cfg.B * std::sqrt(static_cast<double>(t) / cfg.lambda);
}

double appendix_b_bound(const RegularizerConfig& cfg, std::size_t t) {
  return 2.0 * cfg.K * cfg.H * std::sqrt(static_cast<double>(t) / cfg.lambda);
}

double theorem2_bound(const RegularizerConfig& cfg, double delta) {
  return kTwoFiveQuarters * cfg.K * std::pow(cfg.B, 3) /
         (std::pow(cfg.lambda, 1.5) * delta * delta);
}

double lemma1_coefficient(const RegularizerConfig& cfg, double delta) {
  return cfg.K * cfg.B / (kTwoFiveQuarters * std::sqrt(cfg.lambda) * delta * delta);
}

CheckResult check_prop4_bound(const RegretLedger& ledger, const RegularizerConfig& cfg,
                              std::size_t t) {
  require_simulation(ledger);
  require_prefix(ledger, t);
  require_config(ledger, cfg, Schedule::kPropFour);
  const RoundRecord& rec = ledger.at(t);
  CheckResult out{"prop4_bound"};
  fold(out, *rec.running_regret, prop4_bound(cfg, rec.running_sum_sq_grad), t);
  if (leq_tol(rec.running_max_grad_norm, cfg.K)) {
    fold(out, *rec.running_regret, prop4_diameter_bound(cfg, t), t);
  } else if (out.detail.empty()) {
    out.detail = "diameter form skipped: ||g|| exceeds K";
  }
  return out;
}

CheckResult check_appendix_b_bound(const RegretLedger& ledger, const RegularizerConfig& cfg,
                                   std::size_t t) {
  require_simulation(ledger);
  require_prefix(ledger, t);
  require_config(ledger, cfg, Schedule::kAppendixB);
  const RoundRecord& rec = ledger.at(t);
  if (!leq_tol(rec.running_max_grad_norm, cfg.K)) {
    return not_applicable("appendix_b_bound", "||g|| exceeds K");
  }
  CheckResult out{"appendix_b_bound"};
  fold(out, *rec.running_regret, appendix_b_bound(cfg, t), t);
  return out;
}

CheckResult check_total_loss_identity(const RegretLedger& ledger) {
  require_simulation(ledger);
  CheckResult out{"total_loss_identity"};
  for (const RoundRecord& rec : ledger.per_round()) {
    const double gap = std::fabs(*rec.running_regret - *rec.running_total_loss);
    fold(out, gap, 0.0, rec.t, kRelTol * static_cast<double>(rec.t));
  }
  return out;
}

CheckResult check_subopt_regret(const RegretLedger& ledger) {
  require_simulation(ledger);
  CheckResult out{"subopt_regret_below_regret"};
  for (const RoundRecord& rec : ledger.per_round()) {
    fold(out, *rec.running_subopt_regret, *rec.running_regret, rec.t,
         kRelTol * static_cast<double>(rec.t));
  }
  return out;
}

CheckResult check_linearization(const RoundRecord& rec, const Vector& c_star) {
  if (!rec.loss_sub_at_truth || !rec.linearized_term || !rec.loss_est) {
    throw ConfigError("record lacks simulation fields");
  }
  CheckResult out{"linearization"};
  // <x_hat - x, c_hat - c*> = l_sub(c_hat) + <c*, x - x_hat>
  const double lin = inner(rec.gradient, rec.c_hat - c_star);
  const double identity_gap = std::fabs(lin - (rec.loss_sub + *rec.loss_est));
  fold(out, identity_gap, 0.0, rec.t, tolerance(lin, rec.loss_sub + *rec.loss_est));
  fold(out, rec.loss_sub - *rec.loss_sub_at_truth, lin, rec.t);
  return out;
}

GapCertificate certify_gap(const std::vector<Observation>& observations, const Vector& c_star,
                           const NormPair& norms, std::size_t cap) {
  GapCertificate cert;
  cert.delta = std::numeric_limits<double>::infinity();
  cert.per_round_deltas.reserve(observations.size());
  for (const Observation& obs : observations) {
    const Vector& x = obs.agent_choice;
    double round_delta = std::numeric_limits<double>::infinity();
    for (const Vector& v : obs.feasible_set.members(cap)) {
      if (v == x) continue;
      const Vector diff = x - v;
      const double gap = inner(c_star, diff);
      if (gap <= tolerance(inner(c_star, x), inner(c_star, v))) {
        if (!cert.witness) cert.witness = GapWitness{obs.round_index, v, gap};
        continue;
      }
      round_delta = std::min(round_delta, gap / norms.primal(diff));
    }
    cert.per_round_deltas.push_back(round_delta);
    cert.delta = std::min(cert.delta, round_delta);
  }
  cert.satisfied = !cert.witness.has_value() && cert.delta > 0.0;
  if (!cert.satisfied) cert.delta = 0.0;
  return cert;
}

CheckResult check_lemma1(const RoundRecord& rec, const Vector& c_star,
                         const RegularizerConfig& cfg, const NormPair& norms, double delta) {
  if (!(delta > 0.0)) return not_applicable("gap_round_inequality", "gap not certified");
  if (!rec.loss_sub_at_truth) throw ConfigError("record lacks simulation fields");
  if (!leq_tol(*rec.loss_sub_at_truth, 0.0)) {
    return not_applicable("gap_round_inequality", "agent not optimal at t=" + std::to_string(rec.t));
  }
  CheckResult out{"gap_round_inequality"};
  const double dist_sq = norms.primal_sq(rec.gradient);
  // <c* - c_hat, x - x_hat> = <g, c_hat - c*>
  const double rhs = lemma1_coefficient(cfg, delta) * inner(rec.gradient, rec.c_hat - c_star);
  fold(out, dist_sq, rhs, rec.t);
  return out;
}

CheckResult check_theorem2_bound(const RegretLedger& ledger, const RegularizerConfig& cfg,
                                 double delta) {
  require_simulation(ledger);
  if (!(delta > 0.0)) return not_applicable("gap_regret_bound", "gap not certified");
  if (!ledger.agent_always_optimal()) return not_applicable("gap_regret_bound", "agent not optimal");
  require_config(ledger, cfg, Schedule::kPropFour);
  CheckResult out{"gap_regret_bound"};
  const double bound = theorem2_bound(cfg, delta);
  for (const RoundRecord& rec : ledger.per_round()) fold(out, *rec.running_regret, bound, rec.t);
  return out;
}

CheckResult check_gradient_self_bound(const RegretLedger& ledger, const RegularizerConfig& cfg,
                                      double delta) {
  require_simulation(ledger);
  if (!(delta > 0.0)) return not_applicable("gradient_self_bound", "gap not certified");
  if (!ledger.agent_always_optimal()) {
    return not_applicable("gradient_self_bound", "agent not optimal");
  }
  CheckResult out{"gradient_self_bound"};
  const double coef = lemma1_coefficient(cfg, delta);
  for (const RoundRecord& rec : ledger.per_round()) {
    fold(out, rec.running_sum_sq_grad, coef * *rec.running_regret, rec.t);
  }
  return out;
}

CheckResult check_plateau(const RegretLedger& ledger, std::size_t T) {
  require_simulation(ledger);
  require_prefix(ledger, T);
  CheckResult out{"plateau"};
  const std::size_t half = T / 2;
  const double early = half == 0 ? 0.0 : *ledger.at(half).running_total_loss;
  const double late = *ledger.at(T).running_total_loss - early;
  fold(out, late, 0.0, T, kRelTol * static_cast<double>(T));
  return out;
}

Vector online_to_batch(const std::vector<RoundRecord>& records) {
  if (records.empty()) throw ConfigError("online_to_batch needs at least one round");
  std::vector<double> acc(records.front().c_hat.size(), 0.0);
  for (const RoundRecord& rec : records) {
    require_same_size(records.front().c_hat, rec.c_hat);
    kernels::axpy(1.0, rec.c_hat.data(), acc.data(), acc.size());
  }
  const double inv = 1.0 / static_cast<double>(records.size());
  for (double& x : acc) x *= inv;
  return Vector(std::move(acc));
}

double OfflineEvaluation::standard_error() const {
  return samples == 0 ? 0.0 : stddev_difference / std::sqrt(static_cast<double>(samples));
}

OfflineEvaluation offline_evaluate(const Vector& c_bar, const Vector& c_star,
                                   const ObservationSampler& sampler, std::size_t m,
                                   std::uint64_t seed) {
  if (m == 0) throw ConfigError("offline evaluation needs m >= 1");
  std::mt19937_64 rng(seed);
  std::vector<double> pred(m);
  std::vector<double> truth(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Observation obs = sampler(rng);
    pred[i] = suboptimality_loss(obs.feasible_set, obs.agent_choice, c_bar).value;
    truth[i] = suboptimality_loss(obs.feasible_set, obs.agent_choice, c_star).value;
  }
  auto moments = [m](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double var = m > 1 ? ss / static_cast<double>(m - 1) : 0.0;
    return std::pair{mean, std::sqrt(var)};
  };
  OfflineEvaluation out;
  out.samples = m;
  std::tie(out.mean_loss_prediction, out.stddev_loss_prediction) = moments(pred);
  std::tie(out.mean_loss_truth, out.stddev_loss_truth) = moments(truth);
  std::vector<double> diff(m);
  for (std::size_t i = 0; i < m; ++i) diff[i] = pred[i] - truth[i];
  out.stddev_difference = moments(diff).second;
  return out;
}

}  // namespace invopt
