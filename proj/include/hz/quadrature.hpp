#ifndef HZ_QUADRATURE_HPP
#define HZ_QUADRATURE_HPP

#include <array>
#include <vector>

namespace hz {

// Reference-normalized rules: weights sum to 1, so
//   integral over K = area(K) * sum_q w_q f(x_q)   (triangle)
//   integral over F = |F|     * sum_q w_q f(x_q)   (edge)

struct TriQuadPoint {
  std::array<double, 3> bary;
  double w;
};

struct TriangleRule {
  std::vector<TriQuadPoint> points;
  // exact for polynomials of total degree <= degree (collapsed Gauss product rule)
  static const TriangleRule& exact_for(int degree);
};

struct EdgeQuadPoint {
  double s; // parameter in (0,1) along the edge
  double w;
};

struct EdgeRule {
  std::vector<EdgeQuadPoint> points;
  static const EdgeRule& exact_for(int degree);
};

// Gauss-Legendre nodes/weights on [0,1], weights sum to 1.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace hz

#endif
