#include "invopt/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "invopt/errors.hpp"
#include "invopt/text.hpp"

namespace invopt {
namespace {

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("bad integer for '" + std::string(key) + "': " + std::string(value));
  }
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  try {
    return parse_double(value);
  } catch (const FormatError&) {
    throw ConfigError("bad number for '" + std::string(key) + "': " + std::string(value));
  }
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kRandomVertices: return "random-vertices";
    case Family::kHypercube: return "hypercube";
    case Family::kKnapsack: return "knapsack";
    default: return "dag";
  }
}

Family parse_family(std::string_view name) {
  if (name == "random-vertices") return Family::kRandomVertices;
  if (name == "hypercube") return Family::kHypercube;
  if (name == "knapsack") return Family::kKnapsack;
  if (name == "dag") return Family::kDag;
  throw ConfigError("unknown family '" + std::string(name) + "'");
}

std::string_view domain_name(DomainKind d) { return d == DomainKind::kSimplex ? "simplex" : "ball"; }

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "dimension") {
    dimension = parse_integer<std::size_t>(key, value);
  } else if (key == "rounds") {
    rounds = parse_integer<std::size_t>(key, value);
  } else if (key == "domain") {
    if (value == "simplex") domain = DomainKind::kSimplex;
    else if (value == "ball") domain = DomainKind::kBall;
    else throw ConfigError("unknown domain '" + std::string(value) + "'");
  } else if (key == "schedule") {
    schedule = parse_schedule(value);
  } else if (key == "family") {
    family = parse_family(value);
  } else if (key == "agent_noise") {
    agent_noise = parse_real(key, value);
  } else if (key == "gap") {
    if (value == "none") {
      gap = GapTarget::kNone;
    } else if (value == "integral") {
      gap = GapTarget::kIntegral;
    } else if (value.starts_with("margin:")) {
      gap = GapTarget::kMargin;
      gap_margin = parse_real(key, value.substr(7));
    } else {
      throw ConfigError("gap must be none, integral or margin:<delta>");
    }
  } else if (key == "seed") {
    seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "holdout") {
    holdout = parse_integer<std::size_t>(key, value);
  } else if (key == "out") {
    out = std::string(value);
  } else if (key == "vertices") {
    vertices = parse_integer<std::size_t>(key, value);
  } else if (key == "vertex_grid") {
    vertex_grid = parse_integer<int>(key, value);
  } else if (key == "knapsack_max_weight") {
    knapsack_max_weight = parse_integer<std::int64_t>(key, value);
  } else if (key == "dag_nodes") {
    dag_nodes = parse_integer<std::size_t>(key, value);
  } else if (key == "cstar_max") {
    cstar_max = parse_integer<int>(key, value);
  } else if (key == "ball_center") {
    ball_center = parse_real(key, value);
  } else if (key == "ball_radius") {
    ball_radius = parse_real(key, value);
  } else if (key == "K") {
    if (value == "auto") K.reset();
    else K = parse_real(key, value);
  } else if (key == "enumeration_cap") {
    enumeration_cap = parse_integer<std::size_t>(key, value);
  } else if (key == "retry_cap") {
    retry_cap = parse_integer<std::size_t>(key, value);
  } else if (key == "burn_in") {
    burn_in = parse_integer<std::size_t>(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void ExperimentConfig::validate() const {
  if (!seed) throw ConfigError("seed is mandatory");
  if (dimension == 0) throw ConfigError("dimension must be >= 1");
  if (domain == DomainKind::kSimplex && dimension < 2) throw ConfigError("simplex needs n >= 2");
  if (rounds == 0) throw ConfigError("rounds must be >= 1");
  if (!(agent_noise >= 0.0 && agent_noise <= 1.0)) throw ConfigError("agent_noise must be in [0,1]");
  if (gap == GapTarget::kMargin && !(gap_margin > 0.0)) throw ConfigError("gap margin must be > 0");
  if (vertices == 0) throw ConfigError("vertices must be >= 1");
  if (vertex_grid < 0) throw ConfigError("vertex_grid must be >= 0");
  if (knapsack_max_weight < 1) throw ConfigError("knapsack_max_weight must be >= 1");
  if (cstar_max < 1) throw ConfigError("cstar_max must be >= 1");
  if (domain == DomainKind::kBall) {
    if (!(ball_radius > 0.0)) throw ConfigError("ball_radius must be > 0");
    if (!(std::fabs(ball_center) * std::sqrt(static_cast<double>(dimension)) > ball_radius)) {
      throw ConfigError("ball must exclude the origin");
    }
  }
  if (K && !(*K > 0.0)) throw ConfigError("K must be > 0");
  if (retry_cap == 0) throw ConfigError("retry_cap must be >= 1");
}

std::uint64_t ExperimentConfig::require_seed() const {
  if (!seed) throw ConfigError("seed is mandatory");
  return *seed;
}

int ExperimentConfig::effective_grid() const {
  if (family != Family::kRandomVertices) return 1;
  if (gap == GapTarget::kIntegral) return std::max(1, vertex_grid);
  return vertex_grid;
}

double ExperimentConfig::effective_K() const {
  if (K) return *K;
  // Every family lives in [0, g]^n, so the primal diameter is at most the
  // primal norm of g * (1, ..., 1).
  const double g = effective_grid() == 0 ? 1.0 : static_cast<double>(effective_grid());
  if (domain == DomainKind::kSimplex) return g;
  return g * std::sqrt(static_cast<double>(dimension));
}

std::map<std::string, std::string> ExperimentConfig::to_map() const {
  std::map<std::string, std::string> m;
  m["dimension"] = std::to_string(dimension);
  m["rounds"] = std::to_string(rounds);
  m["domain"] = std::string(domain_name(domain));
  m["schedule"] = std::string(schedule_name(schedule));
  m["family"] = std::string(family_name(family));
  m["agent_noise"] = format_double(agent_noise);
  m["gap"] = gap == GapTarget::kNone       ? "none"
             : gap == GapTarget::kIntegral ? "integral"
                                           : "margin:" + format_double(gap_margin);
  m["seed"] = seed ? std::to_string(*seed) : "";
  m["holdout"] = std::to_string(holdout);
  m["out"] = out;
  m["vertices"] = std::to_string(vertices);
  m["vertex_grid"] = std::to_string(vertex_grid);
  m["knapsack_max_weight"] = std::to_string(knapsack_max_weight);
  m["dag_nodes"] = std::to_string(dag_nodes);
  m["cstar_max"] = std::to_string(cstar_max);
  m["ball_center"] = format_double(ball_center);
  m["ball_radius"] = format_double(ball_radius);
  m["K"] = K ? format_double(*K) : "auto";
  m["enumeration_cap"] = std::to_string(enumeration_cap);
  m["retry_cap"] = std::to_string(retry_cap);
  m["burn_in"] = std::to_string(burn_in);
  return m;
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    base.set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
  return base;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

}  // namespace invopt
