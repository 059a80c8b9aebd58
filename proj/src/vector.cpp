#include "invopt/vector.hpp"

#include <cmath>
#include <cstdio>

#include "invopt/errors.hpp"
#include "invopt/kernels.hpp"

namespace invopt {
namespace {

void normalize_and_check(std::vector<double>& values) {
  for (double& x : values) {
    if (!std::isfinite(x)) throw NonFiniteValue("vector entry is not finite");
    if (x == 0.0) x = 0.0;  // drop the sign of -0.0
  }
}

}  // namespace

Vector::Vector(std::size_t n, double fill) : values_(n, fill) { normalize_and_check(values_); }

Vector::Vector(std::initializer_list<double> values) : values_(values) {
  normalize_and_check(values_);
}

Vector::Vector(std::vector<double> values) : values_(std::move(values)) {
  normalize_and_check(values_);
}

Vector Vector::basis(std::size_t n, std::size_t i) {
  std::vector<double> v(n, 0.0);
  v.at(i) = 1.0;
  return Vector(std::move(v));
}

std::string Vector::to_string() const {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < values_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", values_[i]);
    if (i > 0) out += ", ";
    out += buf;
  }
  out += ")";
  return out;
}

void require_same_size(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
}

double inner(const Vector& a, const Vector& b) {
  require_same_size(a, b);
  return kernels::dot(a.data(), b.data(), a.size());
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same_size(a, b);
  std::vector<double> out(a.size());
  kernels::sub(a.data(), b.data(), out.data(), a.size());
  return Vector(std::move(out));
}

Vector operator+(const Vector& a, const Vector& b) {
  require_same_size(a, b);
  std::vector<double> out(a.values());
  kernels::axpy(1.0, b.data(), out.data(), a.size());
  return Vector(std::move(out));
}

Vector operator*(double alpha, const Vector& v) {
  std::vector<double> out(v.values());
  for (double& x : out) x *= alpha;
  return Vector(std::move(out));
}

bool is_zero(const Vector& v) {
  for (double x : v) {
    if (x != 0.0) return false;
  }
  return true;
}

}  // namespace invopt
