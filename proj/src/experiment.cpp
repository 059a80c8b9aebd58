#include "invopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "invopt/errors.hpp"
#include "invopt/kernels.hpp"
#include "invopt/oracle.hpp"
#include "invopt/text.hpp"
#include "invopt/tolerance.hpp"

namespace invopt {
namespace {

constexpr std::uint64_t kHoldoutSeedSalt = 0x9e3779b97f4a7c15ULL;

void merge(CheckResult& into, const CheckResult& part) {
  if (!part.applicable) {
    if (into.detail.empty()) into.detail = part.detail;
    return;
  }
  if (into.worst_round == 0 || part.margin < into.margin) {
    into.margin = part.margin;
    into.worst_round = part.worst_round;
  }
  if (!part.pass && into.pass) {
    into.pass = false;
    into.detail = part.detail;
  }
}

bool plateau_applies(const ExperimentConfig& cfg) {
  return cfg.gap != GapTarget::kNone && cfg.agent_noise == 0.0 &&
         cfg.schedule == Schedule::kPropFour && cfg.rounds >= cfg.burn_in;
}

}  // namespace

bool ExperimentResult::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.failed(); });
}

std::vector<std::string> ExperimentResult::failed_checks() const {
  std::vector<std::string> out;
  for (const CheckResult& c : checks) {
    if (c.failed()) out.push_back(c.name);
  }
  return out;
}

std::optional<double> ExperimentResult::gap_bound() const {
  if (!gap || !gap->satisfied || !ledger.agent_always_optimal() ||
      ledger.schedule() != Schedule::kPropFour || !std::isfinite(gap->delta)) {
    return std::nullopt;
  }
  return theorem2_bound(regularizer, gap->delta);
}

ExperimentResult run_protocol(const ExperimentConfig& config, const InstanceStream& stream) {
  config.validate();
  const PredictionDomain domain = make_domain(config);
  const RegularizerConfig reg = RegularizerConfig::for_domain(domain, config.effective_K());
  const NormPair norms = domain.norms();
  const Vector& c_star = stream.c_star;
  require_same_size(c_star, Vector(config.dimension, 0.0));

  ExperimentResult result(config, reg, RegretLedger(c_star, config.schedule, reg), c_star);
  FtrlLearner learner(domain, reg, config.schedule);
  CheckResult linearization{"linearization"};
  for (const Observation& obs : stream.observations) {
    const Vector& c_hat = learner.predict();  // before round t's data is seen
    const Vector x_hat = argmax(obs.feasible_set, c_hat).maximizer;
    const RoundRecord& rec = result.ledger.append(learner.observe(obs, x_hat, c_star), obs);
    merge(linearization, check_linearization(rec, c_star));
    result.max_dual_distance = std::max(result.max_dual_distance, norms.dual(rec.c_hat - c_star));
  }
  const RegretLedger& ledger = result.ledger;
  const std::size_t T = ledger.rounds();
  if (T == 0) throw ConfigError("stream has no rounds");

  result.checks.push_back(check_total_loss_identity(ledger));
  result.checks.push_back(check_subopt_regret(ledger));
  result.checks.push_back(linearization);

  if (config.schedule == Schedule::kPropFour) {
    CheckResult prop4{"prop4_bound"};
    for (std::size_t t = 1; t <= T; ++t) merge(prop4, check_prop4_bound(ledger, reg, t));
    result.checks.push_back(prop4);
  } else {
    CheckResult appb{"appendix_b_bound"};
    for (std::size_t t = 1; t <= T; ++t) {
      const CheckResult c = check_appendix_b_bound(ledger, reg, t);
      if (!c.applicable) {
        appb.applicable = false;
        appb.detail = c.detail;
        break;
      }
      merge(appb, c);
    }
    result.checks.push_back(appb);
  }

  if (config.gap != GapTarget::kNone) {
    try {
      result.gap = certify_gap(stream.observations, c_star, norms, config.enumeration_cap);
      if (stream.c_star_integral) {
        const GapCertificate integral =
            certify_gap(stream.observations, *stream.c_star_integral, norms, config.enumeration_cap);
        CheckResult lower{"integral_gap_lower_bound"};
        if (integral.satisfied) {
          result.integral_gap = integral.delta;
          lower.margin = integral.delta - 1.0 / reg.K;
          lower.pass = leq_tol(1.0 / reg.K, integral.delta);
        } else {
          lower.pass = false;
          lower.detail = "integral objective has a tied optimum";
        }
        result.checks.push_back(lower);
      }
    } catch (const EnumerationRefused& e) {
      CheckResult skipped{"gap_certificate"};
      skipped.applicable = false;
      skipped.detail = e.what();
      result.checks.push_back(skipped);
    }
  }

  if (result.gap && result.gap->satisfied && std::isfinite(result.gap->delta)) {
    const double delta = result.gap->delta;
    CheckResult lemma{"gap_round_inequality"};
    for (const RoundRecord& rec : ledger.per_round()) {
      const CheckResult c = check_lemma1(rec, c_star, reg, norms, delta);
      if (!c.applicable) {
        lemma.applicable = false;
        lemma.detail = c.detail;
        break;
      }
      merge(lemma, c);
    }
    result.checks.push_back(lemma);
    result.checks.push_back(check_gradient_self_bound(ledger, reg, delta));
    if (config.schedule == Schedule::kPropFour) {
      result.checks.push_back(check_theorem2_bound(ledger, reg, delta));
    }
    if (plateau_applies(config)) result.checks.push_back(check_plateau(ledger, T));
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const InstanceStream stream = generate_instance_stream(config);
  ExperimentResult result = run_protocol(config, stream);
  result.c_avg = online_to_batch(result.ledger.per_round());
  if (config.holdout > 0) {
    result.offline = offline_evaluate(*result.c_avg, stream.c_star, make_sampler(config, stream.c_star),
                                      config.holdout, config.require_seed() ^ kHoldoutSeedSalt);
    const double T = static_cast<double>(result.ledger.rounds());
    CheckResult o2b{"online_to_batch"};
    const double lhs = result.offline->mean_loss_prediction;
    const double rhs = result.offline->mean_loss_truth + result.ledger.subopt_regret() / T +
                       3.0 * result.offline->standard_error();
    o2b.margin = rhs - lhs;
    o2b.worst_round = result.ledger.rounds();
    o2b.pass = leq_tol(lhs, rhs);
    if (!o2b.pass) o2b.detail = "holdout loss exceeds R_sub/T plus 3 standard errors";
    result.checks.push_back(o2b);
  }
  return result;
}

void write_trace(std::ostream& out, const ExperimentResult& result) {
  const RegularizerConfig& reg = result.regularizer;
  const std::optional<double> thm2 = result.gap_bound();
  out << kTraceHeader << '\n';
  for (const RoundRecord& rec : result.ledger.per_round()) {
    out << rec.t << ',' << format_double(rec.loss_sub) << ',' << format_double(*rec.loss_est) << ','
        << format_double(rec.loss_sub + *rec.loss_est) << ',' << format_double(*rec.running_regret)
        << ',' << format_double(*rec.running_subopt_regret) << ',' << format_double(rec.beta) << ','
        << format_double(rec.grad_norm) << ','
        << format_double(prop4_bound(reg, rec.running_sum_sq_grad)) << ','
        << format_double(appendix_b_bound(reg, rec.t)) << ','
        << (thm2 ? format_double(*thm2) : std::string()) << '\n';
  }
}

void write_summary(std::ostream& out, const ExperimentResult& result) {
  const RegretLedger& ledger = result.ledger;
  const RegularizerConfig& reg = result.regularizer;
  const std::vector<std::string> failed = result.failed_checks();
  auto kv = [&out](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  kv("status", result.passed() ? "pass" : "fail");
  std::string failed_list;
  for (const std::string& name : failed) failed_list += (failed_list.empty() ? "" : ",") + name;
  kv("failed_checks", failed.empty() ? "none" : failed_list);
  for (const auto& [key, value] : result.config.to_map()) kv("config." + key, value);
  kv("kernels", std::string(kernels::active().name));
  kv("rounds", std::to_string(ledger.rounds()));
  kv("R_T", format_double(ledger.linearized_regret()));
  kv("R_sub_T", format_double(ledger.subopt_regret()));
  kv("total_loss", format_double(ledger.total_loss()));
  kv("sum_sq_grad", format_double(ledger.sum_sq_grad()));
  kv("agent_always_optimal", ledger.agent_always_optimal() ? "true" : "false");
  kv("constants.lambda", format_double(reg.lambda));
  kv("constants.B", format_double(reg.B));
  kv("constants.H", format_double(reg.H));
  kv("constants.K", format_double(reg.K));
  kv("empirical.max_grad_norm", format_double(ledger.max_grad_norm()));
  kv("empirical.max_dual_distance", format_double(result.max_dual_distance));
  const std::size_t T = ledger.rounds();
  kv("bound.prop4", format_double(prop4_bound(reg, ledger.sum_sq_grad())));
  kv("bound.prop4_diameter", format_double(prop4_diameter_bound(reg, T)));
  kv("bound.appendix_b", format_double(appendix_b_bound(reg, T)));
  if (const auto thm2 = result.gap_bound()) kv("bound.gap", format_double(*thm2));
  if (result.gap) {
    kv("gap.satisfied", result.gap->satisfied ? "true" : "false");
    kv("gap.delta", format_double(result.gap->delta));
    if (result.gap->witness) {
      kv("gap.witness_round", std::to_string(result.gap->witness->round));
      kv("gap.witness_point", format_vector(result.gap->witness->point));
      kv("gap.witness_value_gap", format_double(result.gap->witness->value_gap));
    }
  }
  if (result.integral_gap) kv("gap.delta_integral", format_double(*result.integral_gap));
  for (const CheckResult& c : result.checks) {
    const std::string prefix = "check." + c.name;
    kv(prefix, !c.applicable ? "n/a" : (c.pass ? "pass" : "fail"));
    if (c.applicable) {
      kv(prefix + ".margin", format_double(c.margin));
      kv(prefix + ".worst_round", std::to_string(c.worst_round));
    }
    if (!c.detail.empty()) kv(prefix + ".detail", c.detail);
  }
  if (result.offline) {
    kv("offline.samples", std::to_string(result.offline->samples));
    kv("offline.mean_loss_prediction", format_double(result.offline->mean_loss_prediction));
    kv("offline.mean_loss_truth", format_double(result.offline->mean_loss_truth));
    kv("offline.standard_error", format_double(result.offline->standard_error()));
  }
  kv("c_star", format_vector(result.c_star));
  if (result.c_avg) kv("c_avg", format_vector(*result.c_avg));
}

int write_outputs(const ExperimentResult& result, const std::string& prefix) {
  const std::filesystem::path base(prefix);
  if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
  {
    std::ofstream trace(prefix + ".trace.csv");
    if (!trace) throw Error("cannot write " + prefix + ".trace.csv");
    write_trace(trace, result);
  }
  {
    std::ofstream summary(prefix + ".summary.txt");
    if (!summary) throw Error("cannot write " + prefix + ".summary.txt");
    write_summary(summary, result);
  }
  return result.passed() ? 0 : 1;
}

int run_sweep(const SweepSpec& spec, const std::string& out_dir) {
  struct Cell {
    ExperimentConfig config;
    std::string prefix;
  };
  const std::uint64_t base_seed = spec.base.require_seed();
  std::vector<Cell> cells;
  const auto rounds = spec.rounds.empty() ? std::vector<std::size_t>{spec.base.rounds} : spec.rounds;
  const auto dims = spec.dimensions.empty() ? std::vector<std::size_t>{spec.base.dimension} : spec.dimensions;
  std::vector<std::string> gaps = spec.gaps;
  if (gaps.empty()) gaps.push_back(spec.base.to_map().at("gap"));
  for (std::size_t T : rounds) {
    for (std::size_t n : dims) {
      for (const std::string& gap : gaps) {
        for (std::size_t k = 0; k < std::max<std::size_t>(spec.trials, 1); ++k) {
          ExperimentConfig cfg = spec.base;
          cfg.rounds = T;
          cfg.dimension = n;
          cfg.set("gap", gap);
          cfg.seed = base_seed + cells.size();
          std::ostringstream name;
          name << out_dir << "/trial_" << cells.size();
          cfg.out = name.str();
          cfg.validate();
          cells.push_back({cfg, name.str()});
        }
      }
    }
  }

  std::vector<int> status(cells.size(), 0);
  std::vector<std::string> errors(cells.size());
  std::vector<std::string> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const ExperimentConfig& cfg = cells[i].config;
      try {
        const ExperimentResult result = run_experiment(cfg);
        status[i] = write_outputs(result, cells[i].prefix);
        std::ostringstream row;
        row << i << ',' << *cfg.seed << ',' << cfg.rounds << ',' << cfg.dimension << ','
            << cfg.to_map().at("gap") << ',' << format_double(result.ledger.linearized_regret())
            << ',' << format_double(result.ledger.subopt_regret()) << ','
            << (result.gap ? format_double(result.gap->delta) : std::string()) << ','
            << (result.passed() ? "pass" : "fail");
        rows[i] = row.str();
      } catch (const std::exception& e) {
        status[i] = 2;
        errors[i] = e.what();
        rows[i] = std::to_string(i) + ',' + std::to_string(*cfg.seed) + ",,,,,,,error";
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(spec.threads, 1, cells.size());
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  std::filesystem::create_directories(out_dir);
  std::ofstream index(out_dir + "/sweep.csv");
  if (!index) throw Error("cannot write " + out_dir + "/sweep.csv");
  index << "trial,seed,rounds,dimension,gap,R_T,R_sub_T,delta,status\n";
  for (const std::string& row : rows) index << row << '\n';
  int worst = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!errors[i].empty()) index << "# trial " << i << " error: " << errors[i] << '\n';
    worst = std::max(worst, status[i]);
  }
  return worst;
}

}  // namespace invopt
