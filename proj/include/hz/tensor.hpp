#ifndef HZ_TENSOR_HPP
#define HZ_TENSOR_HPP

#include <array>
#include <vector>

#include "hz/mesh.hpp"

namespace hz {

// Symmetric 2x2 tensor; symmetry is structural (single xy entry).
struct SymTensor2 {
  double xx = 0.0, xy = 0.0, yy = 0.0;

  double trace() const { return xx + yy; }
  // Frobenius inner product A:B
  double dot(const SymTensor2& o) const { return xx * o.xx + 2.0 * xy * o.xy + yy * o.yy; }
  double norm() const;

  std::array<double, 2> apply(const std::array<double, 2>& v) const {
    return {xx * v[0] + xy * v[1], xy * v[0] + yy * v[1]};
  }

  SymTensor2 operator+(const SymTensor2& o) const { return {xx + o.xx, xy + o.xy, yy + o.yy}; }
  SymTensor2 operator-(const SymTensor2& o) const { return {xx - o.xx, xy - o.xy, yy - o.yy}; }
  SymTensor2 operator*(double s) const { return {xx * s, xy * s, yy * s}; }
  SymTensor2& operator+=(const SymTensor2& o) {
    xx += o.xx;
    xy += o.xy;
    yy += o.yy;
    return *this;
  }

  static SymTensor2 identity() { return {1.0, 0.0, 1.0}; }
  static SymTensor2 dyad(const std::array<double, 2>& v) {
    return {v[0] * v[0], v[0] * v[1], v[1] * v[1]};
  }
  // sym(a b^T) = (a b^T + b a^T)/2
  static SymTensor2 sym_outer(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return {a[0] * b[0], 0.5 * (a[0] * b[1] + a[1] * b[0]), a[1] * b[1]};
  }
};

inline SymTensor2 operator*(double s, const SymTensor2& t) { return t * s; }

// Lame constants; lambda may be the distinguished incompressible limit.
struct LameParams {
  double mu = 0.5;
  double lambda = 0.0;
  bool lambda_infinite = false;

  static LameParams infinite(double mu_) { return {mu_, 0.0, true}; }
  // lambda/(2 lambda + 2 mu), with the limit value 1/2 at lambda = infinity
  double trace_coef() const { return lambda_infinite ? 0.5 : lambda / (2.0 * lambda + 2.0 * mu); }
  bool valid() const { return mu > 0.0 && (lambda_infinite || lambda >= 0.0); }
};

// A sigma = (1/2mu)(sigma - c tr(sigma) I)
SymTensor2 compliance_apply(const SymTensor2& sigma, const LameParams& p);

// T_{i,j} = t t^T for the edge from vertex i to vertex j
SymTensor2 edge_dyad_T(const ElementGeometry& g, int i, int j);

// N_{i,j} = (nu_i nu_j^T + nu_j nu_i^T) / (2 (nu_i.t)(nu_j.t)), dual to T
SymTensor2 edge_dyad_N(const ElementGeometry& g, int i, int j);

// Pointwise evaluator of sum_{i<j} lambda_i lambda_j q_ij(lambda) T_{i,j}
// with q_ij in P_{k-2} given in the homogeneous barycentric monomial basis
// of degree k-2 (monomials enumerated like LagrangeBasis::get(k-2).nodes).
struct ConnectionEK {
  int k = 2;
  ElementGeometry geom;
  std::array<std::vector<double>, 3> q; // pair order (0,1), (0,2), (1,2)

  SymTensor2 eval(const std::array<double, 3>& lam) const;
};

ConnectionEK connection_EK(const ElementGeometry& g, int k,
                           const std::array<std::vector<double>, 3>& q);

} // namespace hz

#endif
