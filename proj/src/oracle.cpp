#include "invopt/oracle.hpp"

#include <cmath>
#include <limits>

#include "invopt/errors.hpp"
#include "invopt/kernels.hpp"
#include "invopt/tolerance.hpp"

namespace invopt {
namespace {

OracleResult finish(const Vector& c, std::vector<double> x, std::size_t ties) {
  Vector maximizer(std::move(x));
  const double value = inner(c, maximizer);
  return OracleResult{std::move(maximizer), value, ties};
}

OracleResult scan(const ExplicitVertices& ev, const Vector& c) {
  std::vector<double> values(ev.count);
  kernels::row_dots(ev.rows.data(), ev.count, ev.dim, c.data(), values.data());
  const double best = kernels::max_value(values.data(), ev.count);
  std::size_t chosen = ev.count;
  std::size_t ties = 0;
  const double tie_tol = tolerance(best);
  for (std::size_t i = 0; i < ev.count; ++i) {
    if (values[i] >= best - tie_tol) ++ties;
    if (values[i] != best) continue;
    if (chosen == ev.count ||
        std::lexicographical_compare(ev.row(i), ev.row(i) + ev.dim, ev.row(chosen),
                                     ev.row(chosen) + ev.dim)) {
      chosen = i;
    }
  }
  return finish(c, std::vector<double>(ev.row(chosen), ev.row(chosen) + ev.dim), ties);
}

OracleResult sign_rule(const Hypercube& h, const Vector& c) {
  std::vector<double> x(h.dim, 0.0);
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < h.dim; ++i) {
    if (c[i] > 0.0) x[i] = 1.0;
    if (c[i] == 0.0) ++zeros;
  }
  const std::size_t ties = zeros >= 63 ? std::numeric_limits<std::size_t>::max()
                                       : std::size_t{1} << zeros;
  return finish(c, std::move(x), ties);
}

OracleResult knapsack_dp(const Knapsack& k, const Vector& c) {
  const std::size_t n = k.weights.size();
  const auto cap = static_cast<std::size_t>(k.effective_capacity());
  // best[j][w]: max value from items [0, j) with load <= w.
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(cap + 1, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    const auto wj = static_cast<std::size_t>(k.weights[j]);
    const std::vector<double>& prev = best[j];
    std::vector<double>& cur = best[j + 1];
    cur = prev;
    if (!(c[j] > 0.0) || wj > cap) continue;
    for (std::size_t w = wj; w <= cap; ++w) {
      const double take = prev[w - wj] + c[j];
      if (take > cur[w]) cur[w] = take;
    }
  }
  std::vector<double> x(n, 0.0);
  std::size_t w = cap;
  for (std::size_t j = n; j-- > 0;) {
    if (best[j + 1][w] != best[j][w]) {
      x[j] = 1.0;
      w -= static_cast<std::size_t>(k.weights[j]);
    }
  }
  return finish(c, std::move(x), 1);
}

OracleResult longest_path(const DagPaths& g, const Vector& c) {
  constexpr double kUnreached = -std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<double> value(g.num_nodes, kUnreached);
  std::vector<std::size_t> via(g.num_nodes, kNone);
  value[g.source] = 0.0;
  for (std::size_t u : g.topo_order) {
    if (value[u] == kUnreached) continue;
    for (std::size_t a : g.out_arcs[u]) {
      const std::size_t v = g.arcs[a].to;
      const double candidate = value[u] + c[a];
      if (candidate > value[v]) {
        value[v] = candidate;
        via[v] = a;
      }
    }
  }
  std::vector<double> x(g.arcs.size(), 0.0);
  for (std::size_t v = g.sink; v != g.source;) {
    const std::size_t a = via[v];
    x[a] = 1.0;
    v = g.arcs[a].from;
  }
  return finish(c, std::move(x), 1);
}

}  // namespace

OracleResult argmax(const FeasibleSet& set, const Vector& c) {
  if (c.size() != set.dimension()) throw DimensionMismatch(set.dimension(), c.size());
  const auto& v = set.variant();
  if (const auto* ev = std::get_if<ExplicitVertices>(&v)) return scan(*ev, c);
  if (const auto* h = std::get_if<Hypercube>(&v)) return sign_rule(*h, c);
  if (const auto* k = std::get_if<Knapsack>(&v)) return knapsack_dp(*k, c);
  return longest_path(std::get<DagPaths>(v), c);
}

OracleResult argmax_bruteforce(const FeasibleSet& set, const Vector& c, std::size_t cap) {
  if (c.size() != set.dimension()) throw DimensionMismatch(set.dimension(), c.size());
  const std::vector<Vector> members = set.members(cap);
  const auto& ref = kernels::scalar_table();
  std::size_t chosen = 0;
  double best = ref.dot(members[0].data(), c.data(), c.size());
  std::vector<double> values(members.size());
  values[0] = best;
  // members() is sorted, so the first strict maximum is the lexicographic minimum.
  for (std::size_t i = 1; i < members.size(); ++i) {
    values[i] = ref.dot(members[i].data(), c.data(), c.size());
    if (values[i] > best) {
      best = values[i];
      chosen = i;
    }
  }
  std::size_t ties = 0;
  for (double v : values) {
    if (v >= best - tolerance(best)) ++ties;
  }
  return OracleResult{members[chosen], best, ties};
}

}  // namespace invopt
