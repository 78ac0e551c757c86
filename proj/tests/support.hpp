#pragma once

#include <array>
#include <cmath>
#include <random>

#include "mrplate/geometry.hpp"
#include "mrplate/shapefn.hpp"

namespace testsupport {

using mrplate::Vec2;

/// Random well-shaped triangle (minimum angle bounded away from zero).
inline std::array<Vec2, 3> random_triangle(std::mt19937& rng, double span = 2.0) {
  std::uniform_real_distribution<double> u(-span, span);
  for (;;) {
    std::array<Vec2, 3> v{Vec2(u(rng), u(rng)), Vec2(u(rng), u(rng)), Vec2(u(rng), u(rng))};
    const Vec2 e1 = v[1] - v[0], e2 = v[2] - v[0];
    const double area = 0.5 * std::abs(e1.x() * e2.y() - e1.y() * e2.x());
    double lmax = 0.0;
    for (int k = 0; k < 3; ++k) lmax = std::max(lmax, (v[(k + 1) % 3] - v[k]).norm());
    if (area > 0.1 * lmax * lmax) return v;
  }
}

inline mrplate::LocalFrame random_frame(std::mt19937& rng) {
  const auto v = random_triangle(rng);
  return mrplate::canonicalize_triangle(v[0], v[1], v[2]);
}

/// Random point inside the local element.
inline Vec2 random_point(std::mt19937& rng, const mrplate::LocalFrame& f) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s = u(rng), t = u(rng);
  if (s + t > 1.0) {
    s = 1.0 - s;
    t = 1.0 - t;
  }
  return s * Vec2(f.a, 0.0) + t * f.apex();
}

/// Quadratic field w = c0 + c1 x + c2 y + c3 x^2 + c4 x y + c5 y^2 with its
/// derivatives.
struct Quadratic {
  std::array<double, 6> c{};
  double w(const Vec2& p) const {
    return c[0] + c[1] * p.x() + c[2] * p.y() + c[3] * p.x() * p.x() + c[4] * p.x() * p.y() + c[5] * p.y() * p.y();
  }
  double wx(const Vec2& p) const { return c[1] + 2 * c[3] * p.x() + c[4] * p.y(); }
  double wy(const Vec2& p) const { return c[2] + c[4] * p.x() + 2 * c[5] * p.y(); }
  Eigen::Vector3d hess() const { return {2 * c[3], 2 * c[5], c[4]}; }
};

inline Quadratic random_quadratic(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Quadratic q;
  for (double& c : q.c) c = u(rng);
  return q;
}

}  // namespace testsupport
