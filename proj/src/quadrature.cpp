#include "hz/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hz {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: n must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration on P_n over [-1,1], then map to [0,1].
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p0 = 0, p1 = 0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    p0 = 1.0;
    p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[n - 1 - i] = 0.5 * (x + 1.0);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp); // = (2/((1-x^2)dp^2)) / 2
  }
}

const TriangleRule& TriangleRule::exact_for(int degree) {
  if (degree < 0) throw std::invalid_argument("TriangleRule: negative degree");
  static std::map<int, TriangleRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;

  // Duffy collapse of a tensor Gauss rule: x = u, y = v(1-u), Jacobian (1-u).
  // The (1-u) factor raises the u-degree by one, hence n = ceil((degree+2)/2).
  int n = (degree + 3) / 2;
  std::vector<double> gu, wu;
  gauss_legendre_01(n, gu, wu);
  TriangleRule rule;
  rule.points.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double x = gu[i];
      double y = gu[j] * (1.0 - gu[i]);
      double w = 2.0 * wu[i] * wu[j] * (1.0 - gu[i]);
      rule.points.push_back({{1.0 - x - y, x, y}, w});
    }
  return cache.emplace(degree, std::move(rule)).first->second;
}

const EdgeRule& EdgeRule::exact_for(int degree) {
  if (degree < 0) throw std::invalid_argument("EdgeRule: negative degree");
  static std::map<int, EdgeRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;

  int n = degree / 2 + 1; // n-point Gauss exact through degree 2n-1
  std::vector<double> g, w;
  gauss_legendre_01(n, g, w);
  EdgeRule rule;
  rule.points.reserve(n);
  for (int i = 0; i < n; ++i) rule.points.push_back({g[i], w[i]});
  return cache.emplace(degree, std::move(rule)).first->second;
}

} // namespace hz
