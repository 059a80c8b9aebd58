#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "invopt/experiment.hpp"
#include "invopt/instances.hpp"
#include "invopt/oracle.hpp"
#include "invopt/stream_io.hpp"
#include "invopt/text.hpp"
#include "test_support.hpp"

using namespace invopt;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("INVOPT_TEST_TMP");
  fs::path root = env != nullptr ? fs::path(env) : fs::temp_directory_path() / "invopt_tests";
  fs::path dir = root / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string trace_of(const ExperimentResult& r) {
  std::ostringstream s;
  write_trace(s, r);
  return s.str();
}

std::string stream_text(const InstanceStream& st) {
  std::ostringstream s;
  write_stream(s, st);
  return s.str();
}

ExperimentConfig base_config(std::uint64_t seed) {
  ExperimentConfig c;
  c.seed = seed;
  c.rounds = 300;
  c.dimension = 4;
  return c;
}

}  // namespace

TEST_CASE("number formatting round trips exactly") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = testing::uniform(rng, -1e6, 1e6) * std::pow(10.0, testing::uniform_int(rng, -20, 20));
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK_THROWS_AS(parse_double("1.5x"), FormatError);
  CHECK(parse_vector("0.5, 0.25 ,1") == Vector{0.5, 0.25, 1});
  CHECK(trim("  a b \t") == "a b");
}

TEST_CASE("config text parsing") {
  auto c = parse_config(
      "# comment\n"
      "dimension = 7\n"
      "rounds=1234   # trailing comment\n"
      "domain = ball\n"
      "schedule = appendix-b\n"
      "family = knapsack\n"
      "gap = margin:0.25\n"
      "seed = 42\n");
  CHECK(c.dimension == 7);
  CHECK(c.rounds == 1234);
  CHECK(c.domain == DomainKind::kBall);
  CHECK(c.schedule == Schedule::kAppendixB);
  CHECK(c.family == Family::kKnapsack);
  CHECK(c.gap == GapTarget::kMargin);
  CHECK(c.gap_margin == 0.25);
  CHECK(c.require_seed() == 42);
  CHECK_NOTHROW(c.validate());

  CHECK_THROWS_AS(parse_config("colour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("dimension = many\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("gap = lots\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("no equals sign\n"), ConfigError);
  ExperimentConfig unseeded;
  CHECK_THROWS_AS(unseeded.validate(), ConfigError);
  ExperimentConfig noisy = base_config(1);
  noisy.agent_noise = 1.5;
  CHECK_THROWS_AS(noisy.validate(), ConfigError);
}

TEST_CASE("effective K follows the grid and the norm") {
  auto c = base_config(1);
  CHECK(c.effective_K() == 1.0);
  c.domain = DomainKind::kBall;
  CHECK(c.effective_K() == doctest::Approx(2.0));
  c.gap = GapTarget::kIntegral;
  c.vertex_grid = 3;
  c.domain = DomainKind::kSimplex;
  CHECK(c.effective_K() == 3.0);
}

TEST_CASE("config maps round trip through the parser") {
  auto c = base_config(77);
  c.family = Family::kDag;
  c.agent_noise = 0.2;
  std::string text;
  for (const auto& [k, v] : c.to_map()) text += k + " = " + v + "\n";
  auto back = parse_config(text);
  CHECK(back.to_map() == c.to_map());
}

TEST_CASE("instance streams are deterministic in the seed") {
  for (Family f : {Family::kRandomVertices, Family::kHypercube, Family::kKnapsack, Family::kDag}) {
    auto c = base_config(5);
    c.family = f;
    const std::string a = stream_text(generate_instance_stream(c));
    const std::string b = stream_text(generate_instance_stream(c));
    CHECK(a == b);
    c.seed = 6;
    CHECK(stream_text(generate_instance_stream(c)) != a);
  }
}

TEST_CASE("noise-free agents are always optimal") {
  for (Family f : {Family::kRandomVertices, Family::kHypercube, Family::kKnapsack, Family::kDag}) {
    auto c = base_config(11);
    c.family = f;
    auto st = generate_instance_stream(c);
    REQUIRE(st.observations.size() == c.rounds);
    for (const auto& obs : st.observations) {
      const double best = argmax(obs.feasible_set, st.c_star).optimal_value;
      CHECK(inner(st.c_star, obs.agent_choice) >= best - tolerance(best));
    }
  }
}

TEST_CASE("integral gap target certifies delta >= 1/K on the integer objective") {
  for (Family f : {Family::kRandomVertices, Family::kHypercube, Family::kKnapsack, Family::kDag}) {
    for (DomainKind d : {DomainKind::kSimplex, DomainKind::kBall}) {
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto c = base_config(seed);
        c.family = f;
        c.domain = d;
        c.gap = GapTarget::kIntegral;
        c.rounds = 100;
        auto st = generate_instance_stream(c);
        REQUIRE(st.c_star_integral.has_value());
        if (d == DomainKind::kBall) CHECK(*st.c_star_integral == st.c_star);
        auto cert = certify_gap(st.observations, *st.c_star_integral, st.norms);
        CAPTURE(family_name(f));
        REQUIRE(cert.satisfied);
        CHECK(cert.delta >= 1.0 / c.effective_K() - 1e-12);
      }
    }
  }
}

TEST_CASE("retry cap produces a generation error") {
  auto c = base_config(3);
  c.gap = GapTarget::kMargin;
  c.gap_margin = 100.0;
  c.retry_cap = 50;
  CHECK_THROWS_AS(generate_instance_stream(c), GenerationFailed);
}

TEST_CASE("stream files round trip and replay identically") {
  for (Family f : {Family::kRandomVertices, Family::kHypercube, Family::kKnapsack, Family::kDag}) {
    auto c = base_config(21);
    c.family = f;
    c.gap = GapTarget::kIntegral;
    auto st = generate_instance_stream(c);
    std::istringstream in(stream_text(st));
    auto back = read_stream(in);
    CHECK(stream_text(back) == stream_text(st));
    CHECK(trace_of(run_protocol(c, back)) == trace_of(run_protocol(c, st)));
  }
  std::istringstream junk("invopt-stream 1\ndimension 2\nround 1 hypercube\nchoice 2 0\n");
  CHECK_THROWS(read_stream(junk));
  std::istringstream wrong("not-a-stream\n");
  CHECK_THROWS_AS(read_stream(wrong), FormatError);
}

TEST_CASE("prediction at round t does not depend on rounds t and later") {
  auto c = base_config(8);
  c.agent_noise = 0.3;
  auto st = generate_instance_stream(c);
  auto full = run_protocol(c, st);
  const std::size_t cut = 120;
  auto other = c;
  other.seed = 999;
  auto replacement = generate_instance_stream(other);
  InstanceStream changed = st;
  for (std::size_t i = cut - 1; i < st.observations.size(); ++i) {
    changed.observations[i] = replacement.observations[i];
  }
  auto perturbed = run_protocol(c, changed);
  for (std::size_t t = 1; t <= cut; ++t) {
    CHECK(perturbed.ledger.at(t).c_hat == full.ledger.at(t).c_hat);
  }
  bool differs = false;
  for (std::size_t t = cut; t <= c.rounds; ++t) {
    differs = differs || !(perturbed.ledger.at(t).x_hat == full.ledger.at(t).x_hat) ||
              !(perturbed.ledger.at(t).c_hat == full.ledger.at(t).c_hat);
  }
  CHECK(differs);
}

TEST_CASE("experiments are bitwise reproducible and write both outputs") {
  auto c = base_config(13);
  c.holdout = 200;
  auto a = run_experiment(c);
  auto b = run_experiment(c);
  CHECK(trace_of(a) == trace_of(b));
  CHECK(a.passed());
  const std::string header = trace_of(a).substr(0, trace_of(a).find('\n'));
  CHECK(header == kTraceHeader);

  const auto dir = scratch("outputs");
  CHECK(write_outputs(a, (dir / "r").string()) == 0);
  const std::string summary = slurp(dir / "r.summary.txt");
  CHECK(summary.find("R_T = ") != std::string::npos);
  CHECK(summary.find("check.prop4_bound = pass") != std::string::npos);
  CHECK(summary.find("offline.mean_loss_prediction = ") != std::string::npos);
  CHECK(slurp(dir / "r.trace.csv") == trace_of(a));
}

TEST_CASE("sweeps are deterministic across thread counts") {
  SweepSpec spec;
  spec.base = base_config(100);
  spec.rounds = {200};
  spec.dimensions = {3, 5};
  spec.gaps = {"none", "integral"};
  spec.trials = 2;
  spec.threads = 1;
  const auto one = scratch("sweep1");
  const auto many = scratch("sweep4");
  const int s1 = run_sweep(spec, one.string());
  spec.threads = 4;
  const int s4 = run_sweep(spec, many.string());
  CHECK(s1 == s4);
  CHECK(slurp(one / "sweep.csv") == slurp(many / "sweep.csv"));
  std::size_t traces = 0;
  for (const auto& entry : fs::directory_iterator(one)) {
    if (entry.path().extension() != ".csv" || entry.path().filename() == "sweep.csv") continue;
    CHECK(slurp(entry.path()) == slurp(many / entry.path().filename()));
    ++traces;
  }
  CHECK(traces == 8);
}
