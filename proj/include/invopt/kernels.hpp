#pragma once

// Dense double-precision kernels used by every inner loop of the library.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active table is chosen once at first use from the CPU features
// and the INVOPT_SIMD environment variable ("scalar", "avx2" or "auto").
// Results of the two paths agree up to floating-point reassociation; the
// scalar table is always reachable for reproducing a run bit-for-bit on a
// different machine.

#include <cstddef>
#include <string_view>

namespace invopt::kernels {

struct KernelTable {
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_abs)(const double* a, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);
  double (*sum_sq)(const double* a, std::size_t n);
  double (*max_value)(const double* a, std::size_t n);  // n >= 1
  double (*sum)(const double* a, std::size_t n);
  // out[i] = a[i] - b[i]
  void (*sub)(const double* a, const double* b, double* out, std::size_t n);
  // out[i] = a[i] + alpha * b[i]
  void (*axpy)(double alpha, const double* b, double* out, std::size_t n);
  // out[r] = <rows[r*n .. r*n+n), c> for r in [0, count)
  void (*row_dots)(const double* rows, std::size_t count, std::size_t n, const double* c,
                   double* out);
};

const KernelTable& scalar_table();

// Null when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table();

// Table selected for this process.
const KernelTable& active();

// Overrides the process-wide selection. Returns false if `name` is not
// available on this machine. Intended for tests and reproducibility.
bool select(std::string_view name);

// Thin forwarding helpers so call sites read naturally.
inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline double sum_abs(const double* a, std::size_t n) { return active().sum_abs(a, n); }
inline double max_abs(const double* a, std::size_t n) { return active().max_abs(a, n); }
inline double sum_sq(const double* a, std::size_t n) { return active().sum_sq(a, n); }
inline double max_value(const double* a, std::size_t n) { return active().max_value(a, n); }
inline double sum(const double* a, std::size_t n) { return active().sum(a, n); }
inline void sub(const double* a, const double* b, double* out, std::size_t n) {
  active().sub(a, b, out, n);
}
inline void axpy(double alpha, const double* b, double* out, std::size_t n) {
  active().axpy(alpha, b, out, n);
}
inline void row_dots(const double* rows, std::size_t count, std::size_t n, const double* c,
                     double* out) {
  active().row_dots(rows, count, n, c, out);
}

}  // namespace invopt::kernels
