#include "hz/tensor.hpp"

#include <cmath>
#include <stdexcept>

#include "hz/lagrange.hpp"

namespace hz {

double SymTensor2::norm() const { return std::sqrt(dot(*this)); }

SymTensor2 compliance_apply(const SymTensor2& sigma, const LameParams& p) {
  if (!p.valid()) throw std::invalid_argument("compliance_apply: invalid Lame parameters");
  double c = p.trace_coef() * sigma.trace();
  SymTensor2 r{sigma.xx - c, sigma.xy, sigma.yy - c};
  return r * (0.5 / p.mu);
}

SymTensor2 edge_dyad_T(const ElementGeometry& g, int i, int j) {
  if (i == j || i < 0 || j > 2 || i > j) throw std::invalid_argument("edge_dyad_T: need 0 <= i < j <= 2");
  return SymTensor2::dyad(g.tangent(i, j));
}

SymTensor2 edge_dyad_N(const ElementGeometry& g, int i, int j) {
  if (i == j || i < 0 || j > 2 || i > j) throw std::invalid_argument("edge_dyad_N: need 0 <= i < j <= 2");
  auto t = g.tangent(i, j);
  double di = g.normal[i][0] * t[0] + g.normal[i][1] * t[1];
  double dj = g.normal[j][0] * t[0] + g.normal[j][1] * t[1];
  if (std::abs(di) < 1e-14 || std::abs(dj) < 1e-14)
    throw std::runtime_error("edge_dyad_N: degenerate element geometry");
  SymTensor2 s = SymTensor2::sym_outer(g.normal[i], g.normal[j]); // (nu_i nu_j^T + nu_j nu_i^T)/2
  return s * (1.0 / (di * dj));
}

SymTensor2 ConnectionEK::eval(const std::array<double, 3>& lam) const {
  const LagrangeBasis& mono = LagrangeBasis::get(k - 2); // reuse multi-index enumeration
  static const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  SymTensor2 out;
  for (int p = 0; p < 3; ++p) {
    int i = pairs[p][0], j = pairs[p][1];
    double qv = 0.0;
    for (size_t m = 0; m < q[p].size(); ++m) {
      const auto& a = mono.nodes[m];
      qv += q[p][m] * std::pow(lam[0], a[0]) * std::pow(lam[1], a[1]) * std::pow(lam[2], a[2]);
    }
    out += (lam[i] * lam[j] * qv) * edge_dyad_T(geom, i, j);
  }
  return out;
}

ConnectionEK connection_EK(const ElementGeometry& g, int k,
                           const std::array<std::vector<double>, 3>& q) {
  if (k < 2) throw std::invalid_argument("connection_EK: requires k >= 2");
  size_t nmono = static_cast<size_t>((k - 1) * k / 2); // dim P_{k-2}
  for (const auto& qi : q)
    if (qi.size() != nmono) throw std::invalid_argument("connection_EK: coefficient size mismatch");
  return ConnectionEK{k, g, q};
}

} // namespace hz
