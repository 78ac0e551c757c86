#include "mrplate/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "mrplate/error.hpp"

namespace mrplate {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = 0.5 * (1.0 - x);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

TriangleRule triangle_rule(int degree) {
  if (degree < 1) throw Error(ErrorCode::QuadratureFailure, "quadrature degree must be positive");
  TriangleRule rule;
  if (degree == 1) {
    rule.points = {Eigen::Vector3d::Constant(1.0 / 3.0)};
    rule.weights = {1.0};
    rule.degree = 1;
    return rule;
  }
  if (degree == 2) {
    const double a = 1.0 / 6.0, b = 2.0 / 3.0;
    rule.points = {{b, a, a}, {a, b, a}, {a, a, b}};
    rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    rule.degree = 2;
    return rule;
  }
  if (degree <= 5) {
    const double r15 = std::sqrt(15.0);
    const double a1 = (6.0 - r15) / 21.0, b1 = (9.0 + 2.0 * r15) / 21.0;
    const double a2 = (6.0 + r15) / 21.0, b2 = (9.0 - 2.0 * r15) / 21.0;
    const double w1 = (155.0 - r15) / 1200.0, w2 = (155.0 + r15) / 1200.0;
    rule.points = {Eigen::Vector3d::Constant(1.0 / 3.0),
                   {b1, a1, a1}, {a1, b1, a1}, {a1, a1, b1},
                   {b2, a2, a2}, {a2, b2, a2}, {a2, a2, b2}};
    rule.weights = {9.0 / 40.0, w1, w1, w1, w2, w2, w2};
    rule.degree = 5;
    return rule;
  }

  // Collapsed (Duffy) product: L2 = xi (1 - eta), L3 = eta, Jacobian (1 - eta).
  const int n = (degree + 2) / 2 + 1;
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double l2 = x[i] * (1.0 - x[j]);
      const double l3 = x[j];
      rule.points.emplace_back(1.0 - l2 - l3, l2, l3);
      rule.weights.push_back(2.0 * w[i] * w[j] * (1.0 - x[j]));
    }
  }
  rule.degree = 2 * n - 2;
  return rule;
}

}  // namespace mrplate
