#include "hz/dofmap.hpp"

#include <stdexcept>

namespace hz {

namespace {

const SymTensor2 kCanonical[3] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
// frame:frame for the canonical basis {e_xx, e_xy, e_yy} (e_xy has Frobenius norm^2 = 2)
const double kCanonicalInvNorm2[3] = {1.0, 0.5, 1.0};

} // namespace

int stress_bubble_dofs(int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("stress_bubble_dofs: k must be in 1..3");
  return 3 * (k + 1) * (k + 2) / 2 - 9 - 6 * (k - 1);
}

int count_stress_dofs(const Mesh& mesh, int k) {
  return 3 * mesh.num_vertices() + 2 * (k - 1) * mesh.num_edges() +
         stress_bubble_dofs(k) * mesh.num_triangles();
}

StressDofMap build_stress_dofmap(const Mesh& mesh, int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("build_stress_dofmap: k must be in 1..3");
  StressDofMap map;
  map.k = k;
  map.basis = &LagrangeBasis::get(k);
  map.num_vertex_dofs = 3 * mesh.num_vertices();
  map.num_edge_dofs = 2 * (k - 1) * mesh.num_edges();
  const int dB = stress_bubble_dofs(k);
  map.num_bubble_dofs = dB * mesh.num_triangles();
  map.total = map.num_vertex_dofs + map.num_edge_dofs + map.num_bubble_dofs;

  const LagrangeBasis& basis = *map.basis;
  map.element_dofs.resize(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    auto& dofs = map.element_dofs[t];
    dofs.reserve(3 * basis.size());
    int bubble = 0;
    for (int p = 0; p < basis.size(); ++p) {
      int v = basis.node_vertex(p);
      int face = basis.node_edge(p);
      if (v >= 0) {
        int gv = mesh.tris[t][v];
        for (int c = 0; c < 3; ++c)
          dofs.push_back({3 * gv + c, p, kCanonical[c], kCanonicalInvNorm2[c]});
      } else if (face >= 0) {
        int e = mesh.tri_edge[t][face];
        // global edge frame
        std::array<double, 2> nu = mesh.edge_normal[e];
        const auto& lo = mesh.vertices[mesh.edges[e][0]];
        const auto& hi = mesh.vertices[mesh.edges[e][1]];
        double len = mesh.edge_length[e];
        std::array<double, 2> tg = {(hi[0] - lo[0]) / len, (hi[1] - lo[1]) / len};
        SymTensor2 nn = SymTensor2::dyad(nu);
        SymTensor2 nt = SymTensor2::sym_outer(nu, tg);
        SymTensor2 tt = SymTensor2::dyad(tg);
        // slot along the edge, counted from the lower-indexed vertex
        const auto& a = basis.nodes[p];
        int li = (face + 1) % 3, lj = (face + 2) % 3;
        int ghi = mesh.edges[e][1];
        int a_hi = (mesh.tris[t][li] == ghi) ? a[li] : a[lj];
        int slot = a_hi - 1;
        int shared = map.edge_block() + 2 * (k - 1) * e + 2 * slot;
        dofs.push_back({shared + 0, p, nn, 1.0});
        dofs.push_back({shared + 1, p, nt, 2.0}); // sym(nu t^T):sym(nu t^T) = 1/2
        dofs.push_back({map.bubble_block() + dB * t + bubble++, p, tt, 1.0});
      } else {
        for (int c = 0; c < 3; ++c)
          dofs.push_back(
              {map.bubble_block() + dB * t + bubble++, p, kCanonical[c], kCanonicalInvNorm2[c]});
      }
    }
    if (bubble != dB) throw std::runtime_error("build_stress_dofmap: bubble count mismatch");
  }
  return map;
}

DispDofMap build_disp_dofmap(const Mesh& mesh, int degree) {
  if (degree < 0) throw std::invalid_argument("build_disp_dofmap: negative degree");
  DispDofMap map;
  map.degree = degree;
  map.basis = &LagrangeBasis::get(degree);
  map.per_element = 2 * map.basis->size();
  map.total = map.per_element * mesh.num_triangles();
  return map;
}

AuxDofMap build_aux_dofmap(const Mesh& mesh) {
  AuxDofMap map;
  map.vertex_index.assign(mesh.num_vertices(), -1);
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (!mesh.vertex_on_boundary[v]) map.vertex_index[v] = map.num_interior++;
  map.total = 2 * map.num_interior;
  return map;
}

} // namespace hz
