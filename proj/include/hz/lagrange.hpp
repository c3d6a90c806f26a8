#ifndef HZ_LAGRANGE_HPP
#define HZ_LAGRANGE_HPP

#include <array>
#include <vector>

#include "hz/mesh.hpp"

namespace hz {

// Equispaced Lagrange basis on a triangle, expressed in barycentric
// coordinates (geometry independent). Node p has multi-index (a0,a1,a2) with
// a0+a1+a2 = degree and sits at the point (a0*x0 + a1*x1 + a2*x2)/degree.
// Degree 0 is the single constant function.
struct LagrangeBasis {
  int degree = 0;
  std::vector<std::array<int, 3>> nodes;

  int size() const { return static_cast<int>(nodes.size()); }

  double eval(int p, const std::array<double, 3>& lam) const;
  // derivative w.r.t. each barycentric coordinate
  std::array<double, 3> bary_grad(int p, const std::array<double, 3>& lam) const;
  // physical gradient on an element
  std::array<double, 2> grad(int p, const std::array<double, 3>& lam, const ElementGeometry& g) const;

  std::array<double, 3> node_bary(int p) const;

  // local vertex index if p is a vertex node, else -1
  int node_vertex(int p) const;
  // local face index (opposite vertex) if p is an edge-interior node, else -1
  int node_edge(int p) const;

  static const LagrangeBasis& get(int degree);
};

} // namespace hz

#endif
