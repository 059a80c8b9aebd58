#include "invopt/stream_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "invopt/errors.hpp"
#include "invopt/text.hpp"

namespace invopt {
namespace {

template <typename T>
T to_integer(std::string_view s) {
  T out{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("bad integer '" + std::string(s) + "'");
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-empty, non-comment line split into fields; false at EOF.
  bool next(std::vector<std::string_view>& fields) {
    while (std::getline(in_, line_)) {
      ++lineno_;
      std::string_view body = line_;
      if (const auto hash = body.find('#'); hash != std::string_view::npos) {
        body = body.substr(0, hash);
      }
      fields = split_fields(body);
      if (!fields.empty()) return true;
    }
    return false;
  }

  void expect(std::vector<std::string_view>& fields, std::string_view tag) {
    if (!next(fields) || fields[0] != tag) fail("expected '" + std::string(tag) + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("stream line " + std::to_string(lineno_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::string line_;
  std::size_t lineno_ = 0;
};

Vector tail_vector(const std::vector<std::string_view>& fields, std::size_t n, LineReader& r) {
  if (fields.size() != n + 1) r.fail("expected " + std::to_string(n) + " values");
  std::vector<double> v;
  v.reserve(n);
  for (std::size_t i = 1; i < fields.size(); ++i) v.push_back(parse_double(fields[i]));
  return Vector(std::move(v));
}

void write_row(std::ostream& out, std::string_view tag, const Vector& v) {
  out << tag;
  for (double x : v) out << ' ' << format_double(x);
  out << '\n';
}

}  // namespace

void write_stream(std::ostream& out, const InstanceStream& stream) {
  const std::size_t n = stream.c_star.size();
  out << "invopt-stream 1\n";
  out << "dimension " << n << '\n';
  out << "norms " << stream.norms.name() << '\n';
  write_row(out, "c_star", stream.c_star);
  if (stream.c_star_integral) write_row(out, "c_star_integral", *stream.c_star_integral);
  for (const Observation& obs : stream.observations) {
    out << "round " << obs.round_index << ' ';
    const auto& v = obs.feasible_set.variant();
    if (const auto* ev = std::get_if<ExplicitVertices>(&v)) {
      out << "explicit " << ev->count << '\n';
      for (std::size_t i = 0; i < ev->count; ++i) write_row(out, "v", ev->vertex(i));
    } else if (std::holds_alternative<Hypercube>(v)) {
      out << "hypercube\n";
    } else if (const auto* k = std::get_if<Knapsack>(&v)) {
      out << "knapsack " << k->capacity;
      for (std::int64_t w : k->weights) out << ' ' << w;
      out << '\n';
    } else {
      const auto& g = std::get<DagPaths>(v);
      out << "dag " << g.num_nodes << ' ' << g.source << ' ' << g.sink << '\n';
      for (const Arc& a : g.arcs) out << "a " << a.from << ' ' << a.to << '\n';
    }
    write_row(out, "choice", obs.agent_choice);
  }
}

InstanceStream read_stream(std::istream& in) {
  LineReader r(in);
  std::vector<std::string_view> f;
  if (!r.next(f) || f.size() != 2 || f[0] != "invopt-stream" || f[1] != "1") {
    r.fail("missing 'invopt-stream 1' header");
  }
  r.expect(f, "dimension");
  if (f.size() != 2) r.fail("dimension takes one value");
  const auto n = to_integer<std::size_t>(f[1]);
  if (n == 0) r.fail("dimension must be positive");
  r.expect(f, "norms");
  if (f.size() != 2) r.fail("norms takes one value");
  InstanceStream stream{{}, Vector(n, 0.0), std::nullopt, NormPair::parse(f[1])};

  bool have_line = r.next(f);
  if (have_line && f[0] == "c_star") {
    stream.c_star = tail_vector(f, n, r);
    have_line = r.next(f);
  }
  if (have_line && f[0] == "c_star_integral") {
    stream.c_star_integral = tail_vector(f, n, r);
    have_line = r.next(f);
  }
  while (have_line) {
    if (f[0] != "round" || f.size() < 3) r.fail("expected 'round <t> <family> ...'");
    const auto t = to_integer<std::size_t>(f[1]);
    const std::string family(f[2]);
    std::optional<FeasibleSet> set;
    if (family == "explicit") {
      if (f.size() != 4) r.fail("explicit takes a count");
      const auto count = to_integer<std::size_t>(f[3]);
      std::vector<Vector> points;
      for (std::size_t i = 0; i < count; ++i) {
        r.expect(f, "v");
        points.push_back(tail_vector(f, n, r));
      }
      set = FeasibleSet::vertices(points);
    } else if (family == "hypercube") {
      set = FeasibleSet::hypercube(n);
    } else if (family == "knapsack") {
      if (f.size() != 4 + n) r.fail("knapsack takes a capacity and n weights");
      std::vector<std::int64_t> w;
      for (std::size_t i = 4; i < f.size(); ++i) w.push_back(to_integer<std::int64_t>(f[i]));
      set = FeasibleSet::knapsack(std::move(w), to_integer<std::int64_t>(f[3]));
    } else if (family == "dag") {
      if (f.size() != 6) r.fail("dag takes num_nodes source sink");
      const auto nodes = to_integer<std::size_t>(f[3]);
      const auto source = to_integer<std::size_t>(f[4]);
      const auto sink = to_integer<std::size_t>(f[5]);
      std::vector<Arc> arcs;
      for (std::size_t i = 0; i < n; ++i) {
        r.expect(f, "a");
        if (f.size() != 3) r.fail("arc takes two endpoints");
        arcs.push_back({to_integer<std::size_t>(f[1]), to_integer<std::size_t>(f[2])});
      }
      set = FeasibleSet::dag(nodes, source, sink, std::move(arcs));
    } else {
      r.fail("unknown family '" + family + "'");
    }
    if (set->dimension() != n) r.fail("feasible set dimension does not match");
    r.expect(f, "choice");
    stream.observations.emplace_back(std::move(*set), tail_vector(f, n, r), t);
    have_line = r.next(f);
  }
  return stream;
}

void save_stream(const std::string& path, const InstanceStream& stream) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_stream(out, stream);
  if (!out) throw Error("write failed: " + path);
}

InstanceStream load_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_stream(in);
}

}  // namespace invopt
