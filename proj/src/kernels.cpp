#include "mrplate/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mrplate::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(MRPLATE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

SimdLevel initial_level() noexcept {
  if (const char* env = std::getenv("MRPLATE_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") return SimdLevel::Scalar;
    if (v == "avx2" && cpu_has_avx2()) return SimdLevel::Avx2;
  }
  return detected_level();
}

std::atomic<SimdLevel>& current() {
  static std::atomic<SimdLevel> level{initial_level()};
  return level;
}

}  // namespace

const char* to_string(SimdLevel level) noexcept {
  switch (level) {
    case SimdLevel::Scalar: return "scalar";
    case SimdLevel::Avx2: return "avx2";
  }
  return "?";
}

SimdLevel detected_level() noexcept { return cpu_has_avx2() ? SimdLevel::Avx2 : SimdLevel::Scalar; }

bool level_available(SimdLevel level) noexcept { return level == SimdLevel::Scalar || cpu_has_avx2(); }

SimdLevel active_level() noexcept { return current().load(std::memory_order_relaxed); }

void set_level(SimdLevel level) {
  if (!level_available(level)) throw std::invalid_argument(std::string("SIMD level unavailable: ") + to_string(level));
  current().store(level, std::memory_order_relaxed);
}

void accumulate_btdb(std::span<const double> b, std::span<const double> weights, std::span<const double, 9> d,
                     int ncols, std::span<double> k) {
#if defined(MRPLATE_HAVE_AVX2)
  if (active_level() == SimdLevel::Avx2) return avx2::accumulate_btdb(b, weights, d, ncols, k);
#endif
  scalar::accumulate_btdb(b, weights, d, ncols, k);
}

void accumulate_weighted_sum(std::span<const double> values, std::span<const double> weights, int ncols,
                             std::span<double> out) {
#if defined(MRPLATE_HAVE_AVX2)
  if (active_level() == SimdLevel::Avx2) return avx2::accumulate_weighted_sum(values, weights, ncols, out);
#endif
  scalar::accumulate_weighted_sum(values, weights, ncols, out);
}

}  // namespace mrplate::kernels
