#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "invopt/vector.hpp"

namespace invopt {

inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 20;

// Finite list of points, stored row-major and deduplicated in first-seen order.
struct ExplicitVertices {
  std::size_t dim = 0;
  std::size_t count = 0;
  std::vector<double> rows;

  const double* row(std::size_t i) const { return rows.data() + i * dim; }
  Vector vertex(std::size_t i) const;
};

// {0,1}^dim
struct Hypercube {
  std::size_t dim = 0;
};

// {z in {0,1}^n : <w, z> <= capacity}
struct Knapsack {
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;

  // min(capacity, sum of weights); the DP grid never needs more.
  std::int64_t effective_capacity() const;
};

// Upper limit on the knapsack DP grid width.
inline constexpr std::int64_t kMaxKnapsackGrid = std::int64_t{1} << 24;

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Arc-incidence vectors of source->sink paths. Arc i maps to coordinate i.
struct DagPaths {
  std::size_t num_nodes = 0;
  std::size_t source = 0;
  std::size_t sink = 0;
  std::vector<Arc> arcs;
  std::vector<std::size_t> topo_order;                  // Kahn order, smallest ready node first
  std::vector<std::vector<std::size_t>> out_arcs;       // arc indices per node, ascending
};

class FeasibleSet {
 public:
  using Variant = std::variant<ExplicitVertices, Hypercube, Knapsack, DagPaths>;

  static FeasibleSet vertices(const std::vector<Vector>& points);
  static FeasibleSet hypercube(std::size_t n);
  static FeasibleSet knapsack(std::vector<std::int64_t> weights, std::int64_t capacity);
  // Throws MalformedSet on a cycle, out-of-range endpoints, or no source->sink path.
  static FeasibleSet dag(std::size_t num_nodes, std::size_t source, std::size_t sink,
                         std::vector<Arc> arcs);

  std::size_t dimension() const { return dim_; }
  const Variant& variant() const { return set_; }
  std::string_view family_name() const;

  // Exact membership test.
  bool contains(const Vector& v) const;

  // Number of members, saturating at `cap + 1`.
  std::size_t count_members(std::size_t cap = kDefaultEnumerationCap) const;

  // Exhaustive list of members in lexicographic order. Throws
  // EnumerationRefused when there are more than `cap` of them.
  std::vector<Vector> members(std::size_t cap = kDefaultEnumerationCap) const;

 private:
  FeasibleSet(Variant set, std::size_t dim) : set_(std::move(set)), dim_(dim) {}

  Variant set_;
  std::size_t dim_ = 0;
};

}  // namespace invopt
