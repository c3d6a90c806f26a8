#ifndef HZ_DOFMAP_HPP
#define HZ_DOFMAP_HPP

#include <vector>

#include "hz/lagrange.hpp"
#include "hz/mesh.hpp"
#include "hz/tensor.hpp"

namespace hz {

// d_B(k) = 3(k+1)(k+2)/2 - 9 - 6(k-1): element-local stress components
// (edge-node tangential components plus all components at interior nodes).
int stress_bubble_dofs(int k);
int count_stress_dofs(const Mesh& mesh, int k);

// One stress basis function restricted to an element: the scalar Lagrange
// function of `node` times the constant tensor `frame`.
struct StressElementDof {
  int global = -1;
  int node = -1;
  SymTensor2 frame;
  // coefficient of the frame in the expansion of a tensor value at the node
  // (frames at a node are Frobenius-orthogonal; inv_norm2 = 1/(frame:frame))
  double inv_norm2 = 1.0;
};

// Hu-Zhang stress space: piecewise P_k symmetric tensors, continuous at
// vertices, with continuous normal trace across edges. Global blocks:
//   [0, 3#V)                          vertex dofs, canonical tensor frame
//   [3#V, 3#V + 2(k-1)#E)             shared edge dofs (nu nu^T, sym(nu t^T))
//   [.., + d_B(k)#T)                  element-local dofs (edge t t^T + interior)
struct StressDofMap {
  int k = 1;
  const LagrangeBasis* basis = nullptr;
  int num_vertex_dofs = 0;
  int num_edge_dofs = 0;
  int num_bubble_dofs = 0;
  int total = 0;
  std::vector<std::vector<StressElementDof>> element_dofs;

  int vertex_block() const { return 0; }
  int edge_block() const { return num_vertex_dofs; }
  int bubble_block() const { return num_vertex_dofs + num_edge_dofs; }
};

StressDofMap build_stress_dofmap(const Mesh& mesh, int k);

// Discontinuous vector Lagrange space of the given polynomial degree
// (degree = k-1 for the displacement space V_h, k+1 for the postprocessing
// space). Dofs are element-private: element block of 2*dim P_degree each.
struct DispDofMap {
  int degree = 0;
  const LagrangeBasis* basis = nullptr;
  int per_element = 0;
  int total = 0;

  int dof(int t, int node, int comp) const { return t * per_element + 2 * node + comp; }
};

DispDofMap build_disp_dofmap(const Mesh& mesh, int degree);

// Conforming P1 vector space with homogeneous Dirichlet data: two dofs per
// interior vertex, boundary vertices eliminated.
struct AuxDofMap {
  std::vector<int> vertex_index; // -1 for boundary vertices
  int num_interior = 0;
  int total = 0;

  int dof(int v, int comp) const { return vertex_index[v] < 0 ? -1 : 2 * vertex_index[v] + comp; }
};

AuxDofMap build_aux_dofmap(const Mesh& mesh);

} // namespace hz

#endif
