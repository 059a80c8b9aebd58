#include <cmath>

#include "doctest.h"
#include "invopt/oracle.hpp"
#include "test_support.hpp"

using namespace invopt;
using namespace invopt::testing;

TEST_CASE("hypercube sign rule sends zero coefficients to zero") {
  auto r = argmax(FeasibleSet::hypercube(3), Vector{1, -2, 0});
  CHECK(r.maximizer == Vector{1, 0, 0});
  CHECK(r.optimal_value == 1.0);
  CHECK(argmax(FeasibleSet::hypercube(2), Vector{0, 0}).maximizer == Vector{0, 0});
  CHECK(argmax_bruteforce(FeasibleSet::hypercube(2), Vector{0, 0}).maximizer == Vector{0, 0});
}

TEST_CASE("explicit scan over three vertices") {
  auto X = FeasibleSet::vertices({Vector{0, 0}, Vector{1, 0}, Vector{0, 1}});
  auto r = argmax(X, Vector{0.3, 0.7});
  CHECK(r.maximizer == Vector{0, 1});
  CHECK(r.optimal_value == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("explicit scan returns the lexicographically smallest of tied vertices") {
  auto X = FeasibleSet::vertices({Vector{1, 0}, Vector{0, 1}, Vector{0, 0}});
  auto r = argmax(X, Vector{1, 1});
  CHECK(r.maximizer == Vector{0, 1});
  CHECK(r.tie_count == 2);
}

TEST_CASE("knapsack dynamic program") {
  auto r = argmax(FeasibleSet::knapsack({2, 2}, 3), Vector{5, 4});
  CHECK(r.maximizer == Vector{1, 0});
  CHECK(r.optimal_value == 5.0);
  // Negative and zero coefficients are never packed.
  auto z = argmax(FeasibleSet::knapsack({1, 1, 1}, 3), Vector{-1, 0, 2});
  CHECK(z.maximizer == Vector{0, 0, 1});
}

TEST_CASE("dag with two parallel arcs") {
  auto D = FeasibleSet::dag(2, 0, 1, {{0, 1}, {0, 1}});
  auto brute = argmax_bruteforce(D, Vector{1, 1});
  CHECK(brute.maximizer == Vector{0, 1});
  CHECK(brute.optimal_value == 1.0);
  CHECK(brute.tie_count == 2);
  auto fast = argmax(D, Vector{1, 1});
  CHECK(fast.optimal_value == 1.0);
  CHECK(D.contains(fast.maximizer));
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(argmax(FeasibleSet::hypercube(2), Vector{1, 2, 3}), DimensionMismatch);
  CHECK_THROWS_AS(argmax_bruteforce(FeasibleSet::hypercube(2), Vector{1}), DimensionMismatch);
}

TEST_CASE("oracle optimality and agreement with enumeration on random instances") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    auto X = random_set(rng, i);
    Vector c = random_vector(rng, X.dimension());
    auto fast = argmax(X, c);
    auto brute = argmax_bruteforce(X, c);
    const auto members = X.members();
    const double best = ref_support(members, c);

    CAPTURE(X.family_name());
    CHECK(X.contains(fast.maximizer));
    CHECK(fast.optimal_value == inner(c, fast.maximizer));
    CHECK(std::fabs(fast.optimal_value - best) <= 1e-12 * (1 + std::fabs(best)));
    CHECK(std::fabs(brute.optimal_value - fast.optimal_value) <= 1e-12 * (1 + std::fabs(best)));
    if (brute.tie_count == 1) CHECK(brute.maximizer == fast.maximizer);
  }
}

TEST_CASE("scale invariance and determinism") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    auto X = random_set(rng, i);
    Vector c = random_vector(rng, X.dimension());
    const double alpha = uniform(rng, 0.1, 10.0);
    auto a = argmax(X, c);
    auto b = argmax(X, alpha * c);
    CHECK(close(inner(c, b.maximizer), a.optimal_value, 1e-12));
    auto again = argmax(X, c);
    CHECK(again.maximizer == a.maximizer);
    CHECK(again.optimal_value == a.optimal_value);
  }
}
