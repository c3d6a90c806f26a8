#include "hz/lagrange.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace hz {

namespace {

// product over m < a of (d*l - m)/(a - m)
double factor(int d, int a, double l) {
  double v = 1.0;
  for (int m = 0; m < a; ++m) v *= (d * l - m) / double(a - m);
  return v;
}

// d/dl of the factor above (product rule)
double dfactor(int d, int a, double l) {
  double sum = 0.0;
  for (int m = 0; m < a; ++m) {
    double prod = double(d) / double(a - m);
    for (int mp = 0; mp < a; ++mp) {
      if (mp == m) continue;
      prod *= (d * l - mp) / double(a - mp);
    }
    sum += prod;
  }
  return sum;
}

} // namespace

double LagrangeBasis::eval(int p, const std::array<double, 3>& lam) const {
  const auto& a = nodes[p];
  return factor(degree, a[0], lam[0]) * factor(degree, a[1], lam[1]) * factor(degree, a[2], lam[2]);
}

std::array<double, 3> LagrangeBasis::bary_grad(int p, const std::array<double, 3>& lam) const {
  const auto& a = nodes[p];
  std::array<double, 3> f{factor(degree, a[0], lam[0]), factor(degree, a[1], lam[1]),
                          factor(degree, a[2], lam[2])};
  std::array<double, 3> g{};
  for (int i = 0; i < 3; ++i) {
    double d = dfactor(degree, a[i], lam[i]);
    g[i] = d * f[(i + 1) % 3] * f[(i + 2) % 3];
  }
  return g;
}

std::array<double, 2> LagrangeBasis::grad(int p, const std::array<double, 3>& lam,
                                          const ElementGeometry& geom) const {
  auto bg = bary_grad(p, lam);
  std::array<double, 2> g{0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    g[0] += bg[i] * geom.grad_lambda[i][0];
    g[1] += bg[i] * geom.grad_lambda[i][1];
  }
  return g;
}

std::array<double, 3> LagrangeBasis::node_bary(int p) const {
  const auto& a = nodes[p];
  if (degree == 0) return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return {double(a[0]) / degree, double(a[1]) / degree, double(a[2]) / degree};
}

int LagrangeBasis::node_vertex(int p) const {
  if (degree == 0) return -1;
  const auto& a = nodes[p];
  for (int i = 0; i < 3; ++i)
    if (a[i] == degree) return i;
  return -1;
}

int LagrangeBasis::node_edge(int p) const {
  if (degree == 0) return -1;
  const auto& a = nodes[p];
  int zero = -1, nzeros = 0;
  for (int i = 0; i < 3; ++i)
    if (a[i] == 0) {
      zero = i;
      ++nzeros;
    }
  return (nzeros == 1) ? zero : -1;
}

const LagrangeBasis& LagrangeBasis::get(int degree) {
  if (degree < 0) throw std::invalid_argument("LagrangeBasis: negative degree");
  static std::map<int, LagrangeBasis> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;
  LagrangeBasis b;
  b.degree = degree;
  for (int a0 = degree; a0 >= 0; --a0)
    for (int a1 = degree - a0; a1 >= 0; --a1)
      b.nodes.push_back({a0, a1, degree - a0 - a1});
  return cache.emplace(degree, std::move(b)).first->second;
}

} // namespace hz
