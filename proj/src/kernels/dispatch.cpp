#include <atomic>
#include <cstdlib>
#include <string_view>

#include "invopt/kernels.hpp"

namespace invopt::kernels {

#if defined(INVOPT_HAVE_AVX2)
const KernelTable& avx2_table_unchecked();
#endif

const KernelTable* avx2_table() {
#if defined(INVOPT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* initial_table() {
  const char* env = std::getenv("INVOPT_SIMD");
  const std::string_view want = env != nullptr ? env : "auto";
  if (want == "scalar") return &scalar_table();
  const KernelTable* simd = avx2_table();
  return simd != nullptr ? simd : &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{initial_table()};
  return current;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelTable* table = nullptr;
  if (name == "scalar") {
    table = &scalar_table();
  } else if (name == "avx2") {
    table = avx2_table();
  } else if (name == "auto") {
    table = avx2_table() != nullptr ? avx2_table() : &scalar_table();
  }
  if (table == nullptr) return false;
  slot().store(table, std::memory_order_release);
  return true;
}

}  // namespace invopt::kernels
