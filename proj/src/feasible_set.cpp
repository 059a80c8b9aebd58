#include "invopt/feasible_set.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "invopt/errors.hpp"

namespace invopt {
namespace {

std::size_t saturating_add(std::size_t a, std::size_t b, std::size_t limit) {
  return (a >= limit || b >= limit - a) ? limit : a + b;
}

bool is_binary(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0 || x == 1.0; });
}

void refuse(std::string_view family, std::size_t cap) {
  throw EnumerationRefused(std::string(family) + " has more than " + std::to_string(cap) +
                           " members");
}

std::size_t count_paths(const DagPaths& g, std::size_t limit) {
  std::vector<std::size_t> ways(g.num_nodes, 0);
  ways[g.source] = 1;
  for (std::size_t u : g.topo_order) {
    if (ways[u] == 0) continue;
    for (std::size_t a : g.out_arcs[u]) {
      const std::size_t v = g.arcs[a].to;
      ways[v] = saturating_add(ways[v], ways[u], limit);
    }
  }
  return ways[g.sink];
}

void enumerate_paths(const DagPaths& g, std::size_t node, std::vector<double>& incidence,
                     std::vector<Vector>& out, std::size_t cap) {
  if (node == g.sink) {
    if (out.size() >= cap) refuse("dag", cap);
    out.emplace_back(incidence);
    return;
  }
  for (std::size_t a : g.out_arcs[node]) {
    incidence[a] = 1.0;
    enumerate_paths(g, g.arcs[a].to, incidence, out, cap);
    incidence[a] = 0.0;
  }
}

void enumerate_knapsack(const Knapsack& k, std::size_t item, std::int64_t remaining,
                        std::vector<double>& z, std::vector<Vector>& out, std::size_t cap) {
  if (item == k.weights.size()) {
    if (out.size() >= cap) refuse("knapsack", cap);
    out.emplace_back(z);
    return;
  }
  enumerate_knapsack(k, item + 1, remaining, z, out, cap);
  if (k.weights[item] <= remaining) {
    z[item] = 1.0;
    enumerate_knapsack(k, item + 1, remaining - k.weights[item], z, out, cap);
    z[item] = 0.0;
  }
}

}  // namespace

std::int64_t Knapsack::effective_capacity() const {
  std::int64_t total = 0;
  for (std::int64_t w : weights) total += w;
  return std::min(capacity, total);
}

Vector ExplicitVertices::vertex(std::size_t i) const {
  return Vector(std::vector<double>(row(i), row(i) + dim));
}

FeasibleSet FeasibleSet::vertices(const std::vector<Vector>& points) {
  if (points.empty()) throw MalformedSet("explicit vertex set must be nonempty");
  const std::size_t dim = points.front().size();
  if (dim == 0) throw MalformedSet("vertices must have positive dimension");
  ExplicitVertices ev;
  ev.dim = dim;
  std::vector<Vector> seen;
  for (const Vector& p : points) {
    if (p.size() != dim) throw DimensionMismatch(dim, p.size());
    if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
    seen.push_back(p);
    ev.rows.insert(ev.rows.end(), p.begin(), p.end());
  }
  ev.count = seen.size();
  return FeasibleSet(std::move(ev), dim);
}

FeasibleSet FeasibleSet::hypercube(std::size_t n) {
  if (n == 0) throw MalformedSet("hypercube dimension must be positive");
  return FeasibleSet(Hypercube{n}, n);
}

FeasibleSet FeasibleSet::knapsack(std::vector<std::int64_t> weights, std::int64_t capacity) {
  if (weights.empty()) throw MalformedSet("knapsack needs at least one item");
  if (capacity < 0) throw MalformedSet("knapsack capacity must be nonnegative");
  if (std::any_of(weights.begin(), weights.end(), [](std::int64_t w) { return w < 0; })) {
    throw MalformedSet("knapsack weights must be nonnegative");
  }
  const std::size_t n = weights.size();
  Knapsack k{std::move(weights), capacity};
  if (k.effective_capacity() > kMaxKnapsackGrid) throw MalformedSet("knapsack capacity too large");
  return FeasibleSet(std::move(k), n);
}

FeasibleSet FeasibleSet::dag(std::size_t num_nodes, std::size_t source, std::size_t sink,
                             std::vector<Arc> arcs) {
  if (arcs.empty()) throw MalformedSet("dag needs at least one arc");
  if (source >= num_nodes || sink >= num_nodes || source == sink) {
    throw MalformedSet("dag source/sink out of range or equal");
  }
  DagPaths g;
  g.num_nodes = num_nodes;
  g.source = source;
  g.sink = sink;
  g.out_arcs.assign(num_nodes, {});
  std::vector<std::size_t> indegree(num_nodes, 0);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const Arc& arc = arcs[a];
    if (arc.from >= num_nodes || arc.to >= num_nodes) throw MalformedSet("arc endpoint out of range");
    if (arc.from == arc.to) throw MalformedSet("self-loop in dag");
    g.out_arcs[arc.from].push_back(a);
    ++indegree[arc.to];
  }
  // Kahn's algorithm; a min-heap keeps the order deterministic.
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < num_nodes; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  while (!ready.empty()) {
    const std::size_t u = ready.top();
    ready.pop();
    g.topo_order.push_back(u);
    for (std::size_t a : g.out_arcs[u]) {
      if (--indegree[arcs[a].to] == 0) ready.push(arcs[a].to);
    }
  }
  if (g.topo_order.size() != num_nodes) throw MalformedSet("cycle detected in dag");
  g.arcs = std::move(arcs);
  if (count_paths(g, 1) == 0) throw MalformedSet("dag has no source->sink path");
  const std::size_t n = g.arcs.size();
  return FeasibleSet(std::move(g), n);
}

std::string_view FeasibleSet::family_name() const {
  switch (set_.index()) {
    case 0: return "explicit";
    case 1: return "hypercube";
    case 2: return "knapsack";
    default: return "dag";
  }
}

bool FeasibleSet::contains(const Vector& v) const {
  if (v.size() != dim_) return false;
  if (const auto* ev = std::get_if<ExplicitVertices>(&set_)) {
    for (std::size_t i = 0; i < ev->count; ++i) {
      if (std::equal(v.begin(), v.end(), ev->row(i))) return true;
    }
    return false;
  }
  if (!is_binary(v)) return false;
  if (std::holds_alternative<Hypercube>(set_)) return true;
  if (const auto* k = std::get_if<Knapsack>(&set_)) {
    std::int64_t load = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (v[i] == 1.0) load += k->weights[i];
    }
    return load <= k->capacity;
  }
  // A 0/1 flow with unit excess at the source and balance elsewhere is a
  // single source->sink path, since a DAG admits no cycles.
  const auto& g = std::get<DagPaths>(set_);
  std::vector<long> balance(g.num_nodes, 0);
  for (std::size_t a = 0; a < dim_; ++a) {
    if (v[a] == 1.0) {
      ++balance[g.arcs[a].from];
      --balance[g.arcs[a].to];
    }
  }
  for (std::size_t u = 0; u < g.num_nodes; ++u) {
    const long want = u == g.source ? 1 : (u == g.sink ? -1 : 0);
    if (balance[u] != want) return false;
  }
  return true;
}

std::size_t FeasibleSet::count_members(std::size_t cap) const {
  const std::size_t limit = cap == std::numeric_limits<std::size_t>::max() ? cap : cap + 1;
  if (const auto* ev = std::get_if<ExplicitVertices>(&set_)) return std::min(ev->count, limit);
  if (std::holds_alternative<Hypercube>(set_)) {
    if (dim_ >= 63) return limit;
    return std::min(std::size_t{1} << dim_, limit);
  }
  if (const auto* k = std::get_if<Knapsack>(&set_)) {
    // ways[c] = number of subsets of the processed items with load exactly c.
    const auto cap_w = static_cast<std::size_t>(k->effective_capacity());
    std::vector<std::size_t> ways(cap_w + 1, 0);
    ways[0] = 1;
    for (std::int64_t w : k->weights) {
      const auto wu = static_cast<std::size_t>(w);
      if (wu > cap_w) continue;
      for (std::size_t c = cap_w + 1; c-- > wu;) ways[c] = saturating_add(ways[c], ways[c - wu], limit);
    }
    std::size_t total = 0;
    for (std::size_t c : ways) total = saturating_add(total, c, limit);
    return total;
  }
  return count_paths(std::get<DagPaths>(set_), limit);
}

std::vector<Vector> FeasibleSet::members(std::size_t cap) const {
  if (count_members(cap) > cap) refuse(family_name(), cap);
  std::vector<Vector> out;
  if (const auto* ev = std::get_if<ExplicitVertices>(&set_)) {
    for (std::size_t i = 0; i < ev->count; ++i) out.push_back(ev->vertex(i));
  } else if (std::holds_alternative<Hypercube>(set_)) {
    const std::size_t total = std::size_t{1} << dim_;
    out.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
      std::vector<double> z(dim_);
      for (std::size_t i = 0; i < dim_; ++i) z[i] = (mask >> (dim_ - 1 - i)) & 1U ? 1.0 : 0.0;
      out.emplace_back(std::move(z));
    }
  } else if (const auto* k = std::get_if<Knapsack>(&set_)) {
    std::vector<double> z(dim_, 0.0);
    enumerate_knapsack(*k, 0, k->capacity, z, out, cap);
  } else {
    const auto& g = std::get<DagPaths>(set_);
    std::vector<double> incidence(dim_, 0.0);
    enumerate_paths(g, g.source, incidence, out, cap);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace invopt
