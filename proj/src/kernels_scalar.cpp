#include <vector>

#include "mrplate/kernels.hpp"

namespace mrplate::kernels::scalar {

void accumulate_btdb(std::span<const double> b, std::span<const double> weights, std::span<const double, 9> d,
                     int ncols, std::span<double> k) {
  const std::size_t npts = weights.size();
  const std::size_t n = static_cast<std::size_t>(ncols);

  // db = D * B, same layout as b
  std::vector<double> db(3 * n * npts);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t q = 0; q < npts; ++q) {
        double s = 0.0;
        for (std::size_t t = 0; t < 3; ++t) s += d[3 * r + t] * b[(t * n + j) * npts + q];
        db[(r * n + j) * npts + q] = s;
      }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t q = 0; q < npts; ++q) {
        double s = 0.0;
        for (std::size_t r = 0; r < 3; ++r) s += b[(r * n + i) * npts + q] * db[(r * n + j) * npts + q];
        acc += weights[q] * s;
      }
      k[i * n + j] += acc;
      if (j != i) k[j * n + i] += acc;
    }
  }
}

void accumulate_weighted_sum(std::span<const double> values, std::span<const double> weights, int ncols,
                             std::span<double> out) {
  const std::size_t npts = weights.size();
  for (std::size_t c = 0; c < static_cast<std::size_t>(ncols); ++c) {
    double acc = 0.0;
    for (std::size_t q = 0; q < npts; ++q) acc += weights[q] * values[c * npts + q];
    out[c] += acc;
  }
}

}  // namespace mrplate::kernels::scalar
