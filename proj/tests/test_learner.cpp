#include <cmath>

#include "doctest.h"
#include "invopt/learner.hpp"
#include "invopt/oracle.hpp"
#include "test_support.hpp"

using namespace invopt;
using namespace invopt::testing;

namespace {

LearnerState state_for(const PredictionDomain& d, Schedule s, double sq, double K = 1.0) {
  auto cfg = RegularizerConfig::for_domain(d, K);
  return LearnerState{Vector(d.dimension()), sq, 0, regularizer_minimizer(d), true, s, cfg, d};
}

double objective(const RegularizerConfig& cfg, const PredictionDomain& d, const Vector& G,
                 double b, const Vector& c) {
  return b * regularizer_value(cfg, d, c) + inner(G, c);
}

}  // namespace

TEST_CASE("schedule names round trip") {
  CHECK(parse_schedule(schedule_name(Schedule::kPropFour)) == Schedule::kPropFour);
  CHECK(parse_schedule("appendix-b") == Schedule::kAppendixB);
  CHECK_THROWS_AS(parse_schedule("adagrad"), ConfigError);
}

TEST_CASE("constants for the built-in domains") {
  auto s = RegularizerConfig::for_domain(PredictionDomain::simplex(2), 1.0);
  CHECK(s.B == doctest::Approx(std::pow(2.0, 2.75) * std::sqrt(std::log(2.0))));
  CHECK(s.H * s.H == doctest::Approx(std::log(2.0)));
  auto b = RegularizerConfig::for_domain(PredictionDomain::ball(Vector{3, 3}, 2.0), 1.0);
  CHECK(b.B * b.B == doctest::Approx(std::pow(2.0, 4.5) * 4.0));
  CHECK(b.kind == RegularizerKind::kHalfSquaredNorm);

  RegularizerConfig weak = s;
  weak.B = 1.0;
  CHECK_THROWS_AS(weak.validate(PredictionDomain::simplex(2)), ConfigError);
  CHECK_THROWS_AS(s.validate(PredictionDomain::ball(Vector{1, 1}, 1.0)), ConfigError);
  CHECK_THROWS_AS(RegularizerConfig::for_domain(PredictionDomain::simplex(1), 1.0), ConfigError);
}

TEST_CASE("beta schedule values") {
  auto d = PredictionDomain::simplex(2);
  CHECK(beta(state_for(d, Schedule::kPropFour, 0.0)) == 0.0);
  // sqrt(1 + 0) / sqrt(ln 2)
  CHECK(beta(state_for(d, Schedule::kAppendixB, 0.0)) ==
        doctest::Approx(1.2011224087864498).epsilon(1e-14));
  // 2^{1/4} * 2 / (2^{11/4} sqrt(ln 2))
  CHECK(beta(state_for(d, Schedule::kPropFour, 4.0)) ==
        doctest::Approx(0.4246609001440096).epsilon(1e-14));
}

TEST_CASE("first prediction is the regularizer minimizer") {
  FtrlLearner s(PredictionDomain::simplex(3),
                RegularizerConfig::for_domain(PredictionDomain::simplex(3), 1.0),
                Schedule::kPropFour);
  CHECK(s.predict() == Vector(3, 1.0 / 3.0));
  auto ball = PredictionDomain::ball(Vector{3, 3}, 2.0);
  FtrlLearner b(ball, RegularizerConfig::for_domain(ball, 1.0), Schedule::kAppendixB);
  CHECK(b.predict() == Vector{3, 3});
}

TEST_CASE("softmax closed form against a grid search") {
  auto d = PredictionDomain::simplex(2);
  CHECK(ftrl_minimizer(d, Vector{0, 0}, 1.0) == Vector{0.5, 0.5});
  const Vector c = ftrl_minimizer(d, Vector{1, 0}, 1.0);
  const double e = std::exp(-1.0);
  CHECK(c[0] == doctest::Approx(e / (1 + e)).epsilon(1e-15));
  CHECK(c[1] == doctest::Approx(1 / (1 + e)).epsilon(1e-15));

  // Grid oracle: minimize p ln p + (1-p) ln(1-p) + p over p = c[0].
  double best_p = 0.0, best_v = INFINITY;
  for (int k = 1; k < 1000000; ++k) {
    const double p = k * 1e-6;
    const double v = p * std::log(p) + (1 - p) * std::log(1 - p) + p;
    if (v < best_v) {
      best_v = v;
      best_p = p;
    }
  }
  CHECK(std::fabs(best_p - c[0]) <= 1e-6);
  CHECK(c[0] == doctest::Approx(0.2689).epsilon(1e-3));
}

TEST_CASE("closed forms beat random feasible points and small grids") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 60; ++rep) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 6));
    const bool simplex = rep % 2 == 0;
    auto d = simplex ? PredictionDomain::simplex(n)
                     : PredictionDomain::ball(random_vector(rng, n, 1.0, 4.0), uniform(rng, 0.5, 3.0));
    auto cfg = RegularizerConfig::for_domain(d, 1.0);
    const Vector G = random_vector(rng, n, -20.0, 20.0);
    const double b = uniform(rng, 0.05, 5.0);
    const Vector c = ftrl_minimizer(d, G, b);
    CHECK(d.contains(c));
    const double at_c = objective(cfg, d, G, b, c);
    for (int k = 0; k < 1000; ++k) {
      const Vector other = simplex ? random_simplex_point(rng, n)
                                   : random_ball_point(rng, d.as_ball().center, d.as_ball().radius);
      CHECK(at_c <= objective(cfg, d, G, b, other) + tolerance(at_c));
    }
    if (simplex && n == 3) {
      for (int i = 0; i <= 200; ++i)
        for (int j = 0; i + j <= 200; ++j) {
          const Vector g{i / 200.0, j / 200.0, (200 - i - j) / 200.0};
          CHECK(at_c <= objective(cfg, d, G, b, g) + tolerance(at_c));
        }
    }
  }
}

TEST_CASE("simplex prediction equals the exponentiated-weights form") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 200; ++rep) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 12));
    const Vector G = random_vector(rng, n, -5.0, 5.0);
    const double b = uniform(rng, 0.2, 3.0);
    const Vector c = ftrl_minimizer(PredictionDomain::simplex(n), G, b);
    long double z = 0.0L;
    for (std::size_t i = 0; i < n; ++i) z += std::exp(-static_cast<long double>(G[i]) / b);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = static_cast<double>(std::exp(-static_cast<long double>(G[i]) / b) / z);
      CHECK(close(c[i], w, 1e-13));
    }
  }
}

TEST_CASE("observe accumulates squared primal norms") {
  auto X = FeasibleSet::vertices({Vector{1, 0}, Vector{0, 1}});
  Observation obs(X, Vector{1, 0}, 1);

  auto s = PredictionDomain::simplex(2);
  FtrlLearner a(s, RegularizerConfig::for_domain(s, 1.0), Schedule::kPropFour);
  a.predict();
  auto rec = a.observe(obs, Vector{0, 1});
  CHECK(rec.gradient == Vector{-1, 1});
  CHECK(a.state().sq_norm_sum == 1.0);
  CHECK(a.state().grad_sum == Vector{-1, 1});

  auto ball = PredictionDomain::ball(Vector{3, 3}, 2.0);
  FtrlLearner b(ball, RegularizerConfig::for_domain(ball, 1.0), Schedule::kPropFour);
  b.observe(obs, Vector{0, 1});
  CHECK(b.state().sq_norm_sum == 2.0);

  FtrlLearner z(s, RegularizerConfig::for_domain(s, 1.0), Schedule::kAppendixB);
  auto zero = z.observe(obs, Vector{1, 0});
  CHECK(is_zero(zero.gradient));
  CHECK(z.state().round == 1);
  CHECK(z.state().sq_norm_sum == 0.0);
  CHECK(is_zero(z.state().grad_sum));

  CHECK_THROWS_AS(a.observe(obs, Vector{1, 1}), MembershipError);
}

// Runs a random stream and checks feasibility, monotone beta, and the hold rule.
TEST_CASE("learner stream invariants") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 24; ++rep) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 8));
    auto d = rep % 2 == 0 ? PredictionDomain::simplex(n)
                          : PredictionDomain::ball(Vector(n, 3.0), 2.0);
    const Schedule sched = (rep / 2) % 2 == 0 ? Schedule::kPropFour : Schedule::kAppendixB;
    FtrlLearner L(d, RegularizerConfig::for_domain(d, std::sqrt(static_cast<double>(n))), sched);
    double prev_beta = 0.0;
    Vector prev_c = L.predict();
    bool prev_zero = false;
    for (std::size_t t = 1; t <= 300; ++t) {
      auto X = random_set(rng, static_cast<int>(t), n);
      while (X.dimension() != n) X = random_set(rng, static_cast<int>(t), n);
      const Vector c = L.predict();
      CHECK(d.contains(c));
      if (prev_zero) CHECK(c == prev_c);
      const double b = L.beta();
      CHECK(b >= prev_beta);
      prev_beta = b;

      const auto members = X.members();
      const Vector x = uniform(rng) < 0.3 ? argmax(X, c).maximizer
                                          : members[static_cast<std::size_t>(uniform_int(
                                                rng, 0, static_cast<std::int64_t>(members.size()) - 1))];
      auto rec = L.observe(Observation(X, x, t), argmax(X, c).maximizer);
      prev_zero = is_zero(rec.gradient);
      prev_c = c;
    }
  }
}
