#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace invopt {

// Immutable dense real vector. Every stored entry is finite; construction
// from non-finite data throws NonFiniteValue. Negative zero is normalized to
// +0.0 so that bitwise equality coincides with numeric equality.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n, double fill = 0.0);
  Vector(std::initializer_list<double> values);
  explicit Vector(std::vector<double> values);

  static Vector basis(std::size_t n, std::size_t i);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const double* data() const { return values_.data(); }
  std::span<const double> span() const { return values_; }
  const std::vector<double>& values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  // Exact (bitwise after normalization) equality and lexicographic order.
  friend bool operator==(const Vector& a, const Vector& b) { return a.values_ == b.values_; }
  friend bool operator<(const Vector& a, const Vector& b) { return a.values_ < b.values_; }

  std::string to_string() const;

 private:
  std::vector<double> values_;
};

void require_same_size(const Vector& a, const Vector& b);

double inner(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);
Vector operator*(double alpha, const Vector& v);
bool is_zero(const Vector& v);

}  // namespace invopt
