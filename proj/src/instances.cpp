#include "invopt/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "invopt/errors.hpp"
#include "invopt/oracle.hpp"

namespace invopt {
namespace {

double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

FeasibleSet draw_random_vertices(const ExperimentConfig& cfg, std::mt19937_64& rng) {
  const int grid = cfg.effective_grid();
  std::vector<Vector> points;
  points.reserve(cfg.vertices);
  for (std::size_t k = 0; k < cfg.vertices; ++k) {
    std::vector<double> p(cfg.dimension);
    for (double& x : p) {
      x = uniform01(rng);
      if (grid > 0) x = std::round(x * grid);
    }
    points.emplace_back(std::move(p));
  }
  return FeasibleSet::vertices(points);
}

FeasibleSet draw_knapsack(const ExperimentConfig& cfg, std::mt19937_64& rng) {
  std::vector<std::int64_t> w(cfg.dimension);
  for (auto& x : w) x = uniform_int(rng, 1, cfg.knapsack_max_weight);
  const double total = static_cast<double>(std::accumulate(w.begin(), w.end(), std::int64_t{0}));
  const double fraction = 0.25 + 0.5 * uniform01(rng);
  return FeasibleSet::knapsack(std::move(w), static_cast<std::int64_t>(std::floor(fraction * total)));
}

// A backbone path 0 -> 1 -> ... -> m-1 plus random forward arcs, listed in a
// random order so that coordinates do not follow the backbone.
FeasibleSet draw_dag(const ExperimentConfig& cfg, std::mt19937_64& rng) {
  const std::size_t n = cfg.dimension;
  std::size_t m = cfg.dag_nodes != 0 ? cfg.dag_nodes : n / 2 + 1;
  m = std::clamp<std::size_t>(m, 2, n + 1);
  std::vector<Arc> arcs;
  arcs.reserve(n);
  for (std::size_t v = 0; v + 1 < m; ++v) arcs.push_back({v, v + 1});
  while (arcs.size() < n) {
    auto a = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(m) - 1));
    auto b = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(m) - 2));
    if (b >= a) ++b;
    arcs.push_back({std::min(a, b), std::max(a, b)});
  }
  std::shuffle(arcs.begin(), arcs.end(), rng);
  return FeasibleSet::dag(m, 0, m - 1, std::move(arcs));
}

FeasibleSet draw_set(const ExperimentConfig& cfg, std::mt19937_64& rng) {
  switch (cfg.family) {
    case Family::kRandomVertices: return draw_random_vertices(cfg, rng);
    case Family::kHypercube: return FeasibleSet::hypercube(cfg.dimension);
    case Family::kKnapsack: return draw_knapsack(cfg, rng);
    default: return draw_dag(cfg, rng);
  }
}

bool unique_optimum(const FeasibleSet& set, const Vector& c, std::size_t cap) {
  if (std::holds_alternative<Hypercube>(set.variant())) {
    return std::none_of(c.begin(), c.end(), [](double x) { return x == 0.0; });
  }
  return argmax_bruteforce(set, c, cap).tie_count == 1;
}

Vector uniform_in_ball(const Vector& center, double radius, std::mt19937_64& rng) {
  const std::size_t n = center.size();
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> dir(n);
  double len = 0.0;
  while (len == 0.0) {
    for (double& x : dir) x = gauss(rng);
    len = std::sqrt(std::inner_product(dir.begin(), dir.end(), dir.begin(), 0.0));
  }
  const double r = radius * std::pow(uniform01(rng), 1.0 / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) dir[i] = center[i] + r * dir[i] / len;
  return Vector(std::move(dir));
}

}  // namespace

PredictionDomain make_domain(const ExperimentConfig& config) {
  if (config.domain == DomainKind::kSimplex) return PredictionDomain::simplex(config.dimension);
  return PredictionDomain::ball(Vector(config.dimension, config.ball_center), config.ball_radius);
}

Vector sample_member(const FeasibleSet& set, std::mt19937_64& rng) {
  const auto& v = set.variant();
  if (const auto* ev = std::get_if<ExplicitVertices>(&v)) {
    return ev->vertex(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(ev->count) - 1)));
  }
  if (const auto* h = std::get_if<Hypercube>(&v)) {
    std::vector<double> z(h->dim);
    for (double& x : z) x = static_cast<double>(uniform_int(rng, 0, 1));
    return Vector(std::move(z));
  }
  if (const auto* k = std::get_if<Knapsack>(&v)) {
    // ways[j][c]: feasible completions of items [j, n) with remaining capacity c.
    const std::size_t n = k->weights.size();
    const auto cap = static_cast<std::size_t>(k->effective_capacity());
    std::vector<std::vector<double>> ways(n + 1, std::vector<double>(cap + 1, 1.0));
    for (std::size_t j = n; j-- > 0;) {
      const auto wj = static_cast<std::size_t>(k->weights[j]);
      for (std::size_t c = 0; c <= cap; ++c) {
        ways[j][c] = ways[j + 1][c] + (wj <= c ? ways[j + 1][c - wj] : 0.0);
      }
    }
    std::vector<double> z(n, 0.0);
    std::size_t c = cap;
    for (std::size_t j = 0; j < n; ++j) {
      const auto wj = static_cast<std::size_t>(k->weights[j]);
      if (wj > c) continue;
      if (uniform01(rng) * ways[j][c] < ways[j + 1][c - wj]) {
        z[j] = 1.0;
        c -= wj;
      }
    }
    return Vector(std::move(z));
  }
  const auto& g = std::get<DagPaths>(v);
  std::vector<double> to_sink(g.num_nodes, 0.0);
  to_sink[g.sink] = 1.0;
  for (auto it = g.topo_order.rbegin(); it != g.topo_order.rend(); ++it) {
    if (*it == g.sink) continue;
    for (std::size_t a : g.out_arcs[*it]) to_sink[*it] += to_sink[g.arcs[a].to];
  }
  std::vector<double> z(g.arcs.size(), 0.0);
  std::size_t u = g.source;
  while (u != g.sink) {
    double pick = uniform01(rng) * to_sink[u];
    std::size_t chosen = g.out_arcs[u].front();
    for (std::size_t a : g.out_arcs[u]) {
      const double w = to_sink[g.arcs[a].to];
      if (w == 0.0) continue;
      chosen = a;
      if (pick < w) break;
      pick -= w;
    }
    z[chosen] = 1.0;
    u = g.arcs[chosen].to;
  }
  return Vector(std::move(z));
}

std::pair<Vector, std::optional<Vector>> draw_objective(const ExperimentConfig& config,
                                                        std::mt19937_64& rng) {
  const std::size_t n = config.dimension;
  const bool integral = config.gap == GapTarget::kIntegral;
  if (config.domain == DomainKind::kSimplex) {
    std::vector<double> c(n);
    if (integral) {
      for (double& x : c) x = static_cast<double>(uniform_int(rng, 1, config.cstar_max));
    } else {
      std::exponential_distribution<double> expo(1.0);
      for (double& x : c) x = expo(rng);
    }
    const double total = std::accumulate(c.begin(), c.end(), 0.0);
    Vector integer_part(c);
    for (double& x : c) x /= total;
    return {Vector(std::move(c)), integral ? std::optional<Vector>(integer_part) : std::nullopt};
  }
  const PredictionDomain domain = make_domain(config);
  const Ball& ball = domain.as_ball();
  if (!integral) return {uniform_in_ball(ball.center, ball.radius, rng), std::nullopt};
  for (std::size_t attempt = 0; attempt < config.retry_cap; ++attempt) {
    std::vector<double> c = uniform_in_ball(ball.center, ball.radius, rng).values();
    for (double& x : c) x = std::round(x);
    Vector candidate(std::move(c));
    if (domain.contains(candidate) && !is_zero(candidate)) return {candidate, candidate};
  }
  throw GenerationFailed("no integral objective found inside the ball");
}

Observation draw_round(const ExperimentConfig& config, const Vector& c_star,
                       std::mt19937_64& rng, std::size_t round_index) {
  for (std::size_t attempt = 0; attempt < config.retry_cap; ++attempt) {
    FeasibleSet set = draw_set(config, rng);
    const double u = uniform01(rng);
    Vector best = argmax(set, c_star).maximizer;
    if (config.gap == GapTarget::kIntegral &&
        !unique_optimum(set, c_star, config.enumeration_cap)) {
      continue;
    }
    if (config.gap == GapTarget::kMargin) {
      const Observation probe(set, best, round_index);
      const GapCertificate cert = certify_gap({probe}, c_star,
                                              make_domain(config).norms(), config.enumeration_cap);
      if (!cert.satisfied || cert.delta < config.gap_margin) continue;
    }
    Vector choice = u < config.agent_noise ? sample_member(set, rng) : std::move(best);
    return Observation(std::move(set), std::move(choice), round_index);
  }
  throw GenerationFailed("round " + std::to_string(round_index) + ": no instance after " +
                         std::to_string(config.retry_cap) + " draws");
}

InstanceStream generate_instance_stream(const ExperimentConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.require_seed());
  auto [c_star, c_int] = draw_objective(config, rng);
  InstanceStream stream{{}, c_star, c_int, make_domain(config).norms()};
  stream.observations.reserve(config.rounds);
  for (std::size_t t = 1; t <= config.rounds; ++t) {
    stream.observations.push_back(draw_round(config, stream.c_star, rng, t));
  }
  return stream;
}

ObservationSampler make_sampler(const ExperimentConfig& config, const Vector& c_star) {
  return [config, c_star](std::mt19937_64& rng) { return draw_round(config, c_star, rng, 1); };
}

}  // namespace invopt
