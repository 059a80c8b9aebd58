// Command-line front end: run, sweep, generate, certify and eval.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "invopt/errors.hpp"
#include "invopt/experiment.hpp"
#include "invopt/kernels.hpp"
#include "invopt/stream_io.hpp"
#include "invopt/text.hpp"

namespace {

using invopt::ExperimentConfig;

// Options shared by every subcommand that builds an ExperimentConfig.
struct ConfigOptions {
  std::string config_path;
  std::vector<std::string> assignments;
  std::string seed, family, schedule, gap, agent_noise, out, dimension, domain, holdout, rounds;

  void attach(CLI::App* app, bool with_rounds) {
    app->add_option("--config", config_path, "key = value config file");
    app->add_option("--set", assignments, "extra key=value override (repeatable)");
    app->add_option("--seed", seed, "64-bit seed (mandatory here or in the config)");
    app->add_option("--family", family, "random-vertices | hypercube | knapsack | dag");
    app->add_option("--schedule", schedule, "prop4 | appendix-b");
    app->add_option("--gap", gap, "none | integral | margin:<delta>");
    app->add_option("--agent-noise", agent_noise, "probability of a uniformly random action");
    app->add_option("--dimension", dimension, "dimension n");
    app->add_option("--domain", domain, "simplex | ball");
    app->add_option("--holdout", holdout, "holdout sample count for offline evaluation");
    if (with_rounds) app->add_option("--rounds", rounds, "number of rounds T");
  }

  ExperimentConfig build() const {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = invopt::load_config(config_path, cfg);
    for (const std::string& a : assignments) {
      const auto eq = a.find('=');
      if (eq == std::string::npos) throw invopt::ConfigError("--set expects key=value: " + a);
      cfg.set(invopt::trim(std::string_view(a).substr(0, eq)),
              invopt::trim(std::string_view(a).substr(eq + 1)));
    }
    auto apply = [&cfg](const char* key, const std::string& value) {
      if (!value.empty()) cfg.set(key, value);
    };
    apply("seed", seed);
    apply("family", family);
    apply("schedule", schedule);
    apply("gap", gap);
    apply("agent_noise", agent_noise);
    apply("dimension", dimension);
    apply("domain", domain);
    apply("holdout", holdout);
    apply("rounds", rounds);
    apply("out", out);
    cfg.validate();
    return cfg;
  }
};

std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> out;
  for (std::string_view f : invopt::split_fields(list)) out.push_back(std::stoull(std::string(f)));
  return out;
}

std::vector<std::string> parse_words(const std::string& list) {
  std::vector<std::string> out;
  for (std::string_view f : invopt::split_fields(list)) out.emplace_back(f);
  return out;
}

// Accepts a plain vector file or a summary file with a "c_avg = ..." line.
invopt::Vector read_prediction(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invopt::Error("cannot open " + path);
  std::string line;
  std::string plain;
  while (std::getline(in, line)) {
    std::string_view body = invopt::trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (body.starts_with("c_avg")) {
      const auto eq = body.find('=');
      if (eq != std::string_view::npos) return invopt::parse_vector(body.substr(eq + 1));
    }
    if (body.find('=') == std::string_view::npos) plain += std::string(body) + " ";
  }
  return invopt::parse_vector(plain);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online inverse linear optimization with certified regret bounds"};
  app.require_subcommand(1);
  std::string simd = "auto";
  app.add_option("--simd", simd, "kernel table: auto | scalar | avx2");

  ConfigOptions run_opts;
  std::string stream_out;
  CLI::App* run = app.add_subcommand("run", "run one experiment");
  run_opts.attach(run, true);
  run->add_option("--out", run_opts.out, "output prefix for .trace.csv and .summary.txt");
  run->add_option("--stream-out", stream_out, "also save the generated stream");

  ConfigOptions sweep_opts;
  std::string sweep_rounds, sweep_dims, sweep_gaps, sweep_dir = "sweep";
  std::size_t trials = 1, threads = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "grid of experiments over T, gap target and n");
  sweep_opts.attach(sweep, false);
  sweep->add_option("--rounds", sweep_rounds, "comma-separated list of T");
  sweep->add_option("--dimensions", sweep_dims, "comma-separated list of n");
  sweep->add_option("--gaps", sweep_gaps, "comma-separated list of gap targets");
  sweep->add_option("--trials", trials, "trials per grid cell");
  sweep->add_option("--threads", threads, "worker threads");
  sweep->add_option("--out", sweep_dir, "output directory");

  ConfigOptions gen_opts;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("generate", "generate and save an instance stream");
  gen_opts.attach(gen, true);
  gen->add_option("--out", gen_out, "stream file")->required();

  std::string certify_path;
  std::size_t cap = invopt::kDefaultEnumerationCap;
  CLI::App* certify = app.add_subcommand("certify", "exact gap certification of a stored stream");
  certify->add_option("--stream", certify_path, "stream file")->required();
  certify->add_option("--cap", cap, "enumeration cap per feasible set");

  ConfigOptions eval_opts;
  std::string prediction_path;
  std::size_t eval_m = 10000;
  CLI::App* eval = app.add_subcommand("eval", "offline evaluation of a stored prediction");
  eval_opts.attach(eval, false);
  eval->add_option("--prediction", prediction_path, "vector file or run summary")->required();
  eval->add_option("-m,--samples", eval_m, "holdout sample count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!invopt::kernels::select(simd)) {
      std::cerr << "kernel table '" << simd << "' is not available here\n";
      return 2;
    }
    if (*run) {
      const ExperimentConfig cfg = run_opts.build();
      if (!stream_out.empty()) invopt::save_stream(stream_out, invopt::generate_instance_stream(cfg));
      const invopt::ExperimentResult result = invopt::run_experiment(cfg);
      const int status = invopt::write_outputs(result, cfg.out);
      std::cout << "status = " << (status == 0 ? "pass" : "fail") << '\n'
                << "R_T = " << invopt::format_double(result.ledger.linearized_regret()) << '\n'
                << "trace = " << cfg.out << ".trace.csv\n"
                << "summary = " << cfg.out << ".summary.txt\n";
      for (const std::string& name : result.failed_checks()) std::cout << "failed = " << name << '\n';
      return status;
    }
    if (*sweep) {
      invopt::SweepSpec spec;
      spec.base = sweep_opts.build();
      spec.rounds = parse_sizes(sweep_rounds);
      spec.dimensions = parse_sizes(sweep_dims);
      spec.gaps = parse_words(sweep_gaps);
      spec.trials = trials;
      spec.threads = threads;
      const int status = invopt::run_sweep(spec, sweep_dir);
      std::cout << "status = " << (status == 0 ? "pass" : "fail") << '\n'
                << "index = " << sweep_dir << "/sweep.csv\n";
      return status;
    }
    if (*gen) {
      invopt::save_stream(gen_out, invopt::generate_instance_stream(gen_opts.build()));
      std::cout << "stream = " << gen_out << '\n';
      return 0;
    }
    if (*certify) {
      const invopt::InstanceStream stream = invopt::load_stream(certify_path);
      const invopt::GapCertificate cert =
          invopt::certify_gap(stream.observations, stream.c_star, stream.norms, cap);
      std::cout << "rounds = " << stream.observations.size() << '\n'
                << "norms = " << stream.norms.name() << '\n'
                << "satisfied = " << (cert.satisfied ? "true" : "false") << '\n'
                << "delta = " << invopt::format_double(cert.delta) << '\n';
      if (cert.witness) {
        std::cout << "witness_round = " << cert.witness->round << '\n'
                  << "witness_point = " << invopt::format_vector(cert.witness->point) << '\n'
                  << "witness_value_gap = " << invopt::format_double(cert.witness->value_gap) << '\n';
      }
      return cert.satisfied ? 0 : 1;
    }
    if (*eval) {
      const ExperimentConfig cfg = eval_opts.build();
      const invopt::Vector prediction = read_prediction(prediction_path);
      std::mt19937_64 rng(cfg.require_seed());
      const invopt::Vector c_star = invopt::draw_objective(cfg, rng).first;
      const invopt::OfflineEvaluation ev = invopt::offline_evaluate(
          prediction, c_star, invopt::make_sampler(cfg, c_star), eval_m, cfg.require_seed() + 1);
      std::cout << "samples = " << ev.samples << '\n'
                << "mean_loss_prediction = " << invopt::format_double(ev.mean_loss_prediction) << '\n'
                << "mean_loss_truth = " << invopt::format_double(ev.mean_loss_truth) << '\n'
                << "standard_error = " << invopt::format_double(ev.standard_error()) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
