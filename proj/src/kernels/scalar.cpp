#include <cmath>

#include "invopt/kernels.hpp"

namespace invopt::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_abs_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i]);
  return acc;
}

double max_abs_scalar(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(a[i]));
  return m;
}

double sum_sq_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

double max_value_scalar(const double* a, std::size_t n) {
  double m = a[0];
  for (std::size_t i = 1; i < n; ++i) m = std::fmax(m, a[i]);
  return m;
}

double sum_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

void sub_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void axpy_scalar(double alpha, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += alpha * b[i];
}

void row_dots_scalar(const double* rows, std::size_t count, std::size_t n, const double* c,
                     double* out) {
  for (std::size_t r = 0; r < count; ++r) out[r] = dot_scalar(rows + r * n, c, n);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      "scalar",        dot_scalar,       sum_abs_scalar, max_abs_scalar,
      sum_sq_scalar,   max_value_scalar, sum_scalar,     sub_scalar,
      axpy_scalar,     row_dots_scalar,
  };
  return table;
}

}  // namespace invopt::kernels
