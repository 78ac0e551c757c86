#pragma once

// Data-parallel inner loops of element integration. Every kernel has a scalar
// reference version and, where the build and CPU allow, an AVX2/FMA version;
// the dispatcher picks one at runtime. Both must agree to rounding.

#include <span>

namespace mrplate::kernels {

enum class SimdLevel { Scalar, Avx2 };

const char* to_string(SimdLevel level) noexcept;

/// Best level supported by both this build and the running CPU.
SimdLevel detected_level() noexcept;
/// Level currently used by the dispatching entry points. Defaults to
/// detected_level(), or to the MRPLATE_SIMD environment variable
/// ("scalar" / "avx2") when set.
SimdLevel active_level() noexcept;
/// Throws std::invalid_argument if `level` is not available.
void set_level(SimdLevel level);
bool level_available(SimdLevel level) noexcept;

// Layouts (npts quadrature points, ncols columns):
//   b       : 3 x ncols per point, b[(row * ncols + col) * npts + q]
//   weights : npts
//   d       : 3 x 3 row-major
//   k       : ncols x ncols row-major, accumulated into
//   values  : ncols per point, values[col * npts + q]
//   out     : ncols, accumulated into

/// k += sum_q weights[q] * B_q^T D B_q  (result exactly symmetric)
void accumulate_btdb(std::span<const double> b, std::span<const double> weights, std::span<const double, 9> d,
                     int ncols, std::span<double> k);

/// out[col] += sum_q weights[q] * values[col][q]
void accumulate_weighted_sum(std::span<const double> values, std::span<const double> weights, int ncols,
                             std::span<double> out);

namespace scalar {
void accumulate_btdb(std::span<const double> b, std::span<const double> weights, std::span<const double, 9> d,
                     int ncols, std::span<double> k);
void accumulate_weighted_sum(std::span<const double> values, std::span<const double> weights, int ncols,
                             std::span<double> out);
}  // namespace scalar

namespace avx2 {
void accumulate_btdb(std::span<const double> b, std::span<const double> weights, std::span<const double, 9> d,
                     int ncols, std::span<double> k);
void accumulate_weighted_sum(std::span<const double> values, std::span<const double> weights, int ncols,
                             std::span<double> out);
}  // namespace avx2

}  // namespace mrplate::kernels
