#ifndef HZ_MESH_HPP
#define HZ_MESH_HPP

#include <array>
#include <iosfwd>
#include <vector>

namespace hz {

// Per-element geometry for a straight triangle with CCW vertices.
struct ElementGeometry {
  std::array<std::array<double, 2>, 3> vertex;
  std::array<std::array<double, 2>, 3> grad_lambda; // gradient of barycentric coordinate i
  std::array<std::array<double, 2>, 3> normal;      // outward unit normal of face i (opposite vertex i)
  double area = 0.0;
  double diameter = 0.0;

  // unit tangent of edge x_i x_j, oriented from vertex i to vertex j
  std::array<double, 2> tangent(int i, int j) const;
  std::array<double, 3> barycentric(const std::array<double, 2>& x) const;
  std::array<double, 2> point(const std::array<double, 3>& lambda) const;
};

// Immutable after construction. Edges store a fixed global unit normal nu_F
// (the 90 degree CCW rotation of the lo->hi edge vector); tri_edge_sign makes
// sign * nu_F the outward normal of the triangle on that face.
struct Mesh {
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> tris;            // CCW vertex indices
  std::vector<std::array<int, 2>> edges;           // (lo, hi), lo < hi
  std::vector<std::array<double, 2>> edge_normal;
  std::vector<double> edge_length;
  std::vector<std::array<int, 3>> tri_edge;        // edge index of face opposite local vertex i
  std::vector<std::array<int, 3>> tri_edge_sign;   // +1/-1
  std::vector<std::array<int, 2>> edge_tri;        // adjacent triangles, [1] = -1 on boundary
  std::vector<char> vertex_on_boundary;
  std::vector<char> edge_on_boundary;
  int level = 0;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(tris.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

// Uniform triangulation of (-1,1)^2: N x N cells, each split along the
// bottom-left to top-right diagonal.
Mesh build_square_mesh(int N);

// Red refinement: every triangle is split into 4 similar children at the edge
// midpoints. New vertices are appended after the parent vertices, one per
// parent edge, in parent edge order.
Mesh refine_uniform(const Mesh& mesh);

ElementGeometry element_geometry(const Mesh& mesh, int t);

// Plain-text node/element/edge listing, one entity per line, 0-based indices.
void dump_mesh(const Mesh& mesh, std::ostream& out);

struct MeshHierarchy {
  std::vector<Mesh> meshes; // coarse -> fine
  // For level l >= 1, per fine vertex: the coarse parent vertex, or -1 when the
  // vertex is a parent-edge midpoint (then parent_edge[l-1][v] is set).
  std::vector<std::vector<int>> parent_vertex;
  std::vector<std::vector<int>> parent_edge;

  const Mesh& finest() const { return meshes.back(); }
  int levels() const { return static_cast<int>(meshes.size()); }
};

// Halves N while it stays even and above coarsest_n, then refines back up.
MeshHierarchy build_mesh_hierarchy(int N, int coarsest_n = 2);

} // namespace hz

#endif
