#include "hz/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace hz {

namespace {

double tri_area(const std::array<double, 2>& a, const std::array<double, 2>& b,
                const std::array<double, 2>& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

// Builds edges, adjacency, orientation signs and boundary flags from
// vertices/tris. Edge indices follow first-encounter order over triangles.
void finalize_topology(Mesh& m) {
  const int nt = m.num_triangles();
  m.edges.clear();
  m.tri_edge.assign(nt, {-1, -1, -1});
  m.tri_edge_sign.assign(nt, {0, 0, 0});
  std::map<std::pair<int, int>, int> edge_index;
  for (int t = 0; t < nt; ++t) {
    const auto& tv = m.tris[t];
    if (tri_area(m.vertices[tv[0]], m.vertices[tv[1]], m.vertices[tv[2]]) <= 0.0)
      throw std::runtime_error("mesh: triangle " + std::to_string(t) + " is not CCW");
    for (int i = 0; i < 3; ++i) {
      int a = tv[(i + 1) % 3], b = tv[(i + 2) % 3]; // face opposite vertex i
      auto key = std::minmax(a, b);
      auto [it, inserted] = edge_index.insert({key, static_cast<int>(m.edges.size())});
      if (inserted) m.edges.push_back({key.first, key.second});
      m.tri_edge[t][i] = it->second;
    }
  }
  const int ne = m.num_edges();
  m.edge_normal.resize(ne);
  m.edge_length.resize(ne);
  m.edge_tri.assign(ne, {-1, -1});
  for (int e = 0; e < ne; ++e) {
    const auto& lo = m.vertices[m.edges[e][0]];
    const auto& hi = m.vertices[m.edges[e][1]];
    double dx = hi[0] - lo[0], dy = hi[1] - lo[1];
    double len = std::sqrt(dx * dx + dy * dy);
    m.edge_length[e] = len;
    m.edge_normal[e] = {-dy / len, dx / len}; // 90 deg CCW rotation of lo->hi
  }
  for (int t = 0; t < nt; ++t)
    for (int i = 0; i < 3; ++i) {
      int e = m.tri_edge[t][i];
      if (m.edge_tri[e][0] < 0)
        m.edge_tri[e][0] = t;
      else if (m.edge_tri[e][1] < 0)
        m.edge_tri[e][1] = t;
      else
        throw std::runtime_error("mesh: edge with more than two adjacent triangles");
    }
  // orientation signs from geometry
  for (int t = 0; t < nt; ++t) {
    ElementGeometry g = element_geometry(m, t);
    for (int i = 0; i < 3; ++i) {
      int e = m.tri_edge[t][i];
      double d = g.normal[i][0] * m.edge_normal[e][0] + g.normal[i][1] * m.edge_normal[e][1];
      if (std::abs(std::abs(d) - 1.0) > 1e-12)
        throw std::runtime_error("mesh: edge normal not aligned with face normal");
      m.tri_edge_sign[t][i] = d > 0 ? 1 : -1;
    }
  }
  m.edge_on_boundary.assign(ne, 0);
  m.vertex_on_boundary.assign(m.num_vertices(), 0);
  for (int e = 0; e < ne; ++e)
    if (m.edge_tri[e][1] < 0) {
      m.edge_on_boundary[e] = 1;
      m.vertex_on_boundary[m.edges[e][0]] = 1;
      m.vertex_on_boundary[m.edges[e][1]] = 1;
    }
}

} // namespace

std::array<double, 2> ElementGeometry::tangent(int i, int j) const {
  double dx = vertex[j][0] - vertex[i][0];
  double dy = vertex[j][1] - vertex[i][1];
  double len = std::sqrt(dx * dx + dy * dy);
  return {dx / len, dy / len};
}

std::array<double, 3> ElementGeometry::barycentric(const std::array<double, 2>& x) const {
  std::array<double, 3> lam{};
  for (int i = 0; i < 3; ++i) {
    // affine: lambda_i(vertex_0) + grad_lambda_i . (x - vertex_0)
    double l0 = (i == 0) ? 1.0 : 0.0;
    lam[i] = l0 + grad_lambda[i][0] * (x[0] - vertex[0][0]) + grad_lambda[i][1] * (x[1] - vertex[0][1]);
  }
  return lam;
}

std::array<double, 2> ElementGeometry::point(const std::array<double, 3>& lambda) const {
  return {lambda[0] * vertex[0][0] + lambda[1] * vertex[1][0] + lambda[2] * vertex[2][0],
          lambda[0] * vertex[0][1] + lambda[1] * vertex[1][1] + lambda[2] * vertex[2][1]};
}

Mesh build_square_mesh(int N) {
  if (N < 1) throw std::invalid_argument("build_square_mesh: N must be >= 1");
  Mesh m;
  m.level = 0;
  const int nv1 = N + 1;
  m.vertices.reserve(static_cast<size_t>(nv1) * nv1);
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= N; ++i)
      m.vertices.push_back({-1.0 + 2.0 * i / N, -1.0 + 2.0 * j / N});
  auto vid = [nv1](int i, int j) { return j * nv1 + i; };
  m.tris.reserve(static_cast<size_t>(2) * N * N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      m.tris.push_back({a, b, c}); // diagonal a-c
      m.tris.push_back({a, c, d});
    }
  finalize_topology(m);
  return m;
}

Mesh refine_uniform(const Mesh& mesh) {
  Mesh f;
  f.level = mesh.level + 1;
  f.vertices = mesh.vertices;
  f.vertices.reserve(mesh.vertices.size() + mesh.edges.size());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto& a = mesh.vertices[mesh.edges[e][0]];
    const auto& b = mesh.vertices[mesh.edges[e][1]];
    f.vertices.push_back({0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])});
  }
  const int nv = mesh.num_vertices();
  f.tris.reserve(4 * mesh.tris.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tv = mesh.tris[t];
    // midpoint of face i (opposite vertex i)
    std::array<int, 3> mid{};
    for (int i = 0; i < 3; ++i) mid[i] = nv + mesh.tri_edge[t][i];
    f.tris.push_back({tv[0], mid[2], mid[1]});
    f.tris.push_back({tv[1], mid[0], mid[2]});
    f.tris.push_back({tv[2], mid[1], mid[0]});
    f.tris.push_back({mid[0], mid[1], mid[2]});
  }
  finalize_topology(f);
  return f;
}

ElementGeometry element_geometry(const Mesh& mesh, int t) {
  if (t < 0 || t >= mesh.num_triangles()) throw std::out_of_range("element_geometry: bad index");
  ElementGeometry g;
  for (int i = 0; i < 3; ++i) g.vertex[i] = mesh.vertices[mesh.tris[t][i]];
  g.area = tri_area(g.vertex[0], g.vertex[1], g.vertex[2]);
  if (g.area <= 0.0) throw std::runtime_error("element_geometry: degenerate element");
  double inv2A = 0.5 / g.area;
  for (int i = 0; i < 3; ++i) {
    const auto& pj = g.vertex[(i + 1) % 3];
    const auto& pk = g.vertex[(i + 2) % 3];
    g.grad_lambda[i] = {(pj[1] - pk[1]) * inv2A, (pk[0] - pj[0]) * inv2A};
    double n = std::sqrt(g.grad_lambda[i][0] * g.grad_lambda[i][0] +
                         g.grad_lambda[i][1] * g.grad_lambda[i][1]);
    g.normal[i] = {-g.grad_lambda[i][0] / n, -g.grad_lambda[i][1] / n};
  }
  g.diameter = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto& a = g.vertex[i];
    const auto& b = g.vertex[(i + 1) % 3];
    g.diameter = std::max(g.diameter, std::hypot(b[0] - a[0], b[1] - a[1]));
  }
  return g;
}

void dump_mesh(const Mesh& mesh, std::ostream& out) {
  out << "vertices " << mesh.num_vertices() << "\n";
  for (int v = 0; v < mesh.num_vertices(); ++v)
    out << v << " " << mesh.vertices[v][0] << " " << mesh.vertices[v][1] << " "
        << int(mesh.vertex_on_boundary[v]) << "\n";
  out << "triangles " << mesh.num_triangles() << "\n";
  for (int t = 0; t < mesh.num_triangles(); ++t)
    out << t << " " << mesh.tris[t][0] << " " << mesh.tris[t][1] << " " << mesh.tris[t][2] << "\n";
  out << "edges " << mesh.num_edges() << "\n";
  for (int e = 0; e < mesh.num_edges(); ++e)
    out << e << " " << mesh.edges[e][0] << " " << mesh.edges[e][1] << " "
        << int(mesh.edge_on_boundary[e]) << "\n";
}

MeshHierarchy build_mesh_hierarchy(int N, int coarsest_n) {
  if (N < 1) throw std::invalid_argument("build_mesh_hierarchy: N must be >= 1");
  std::vector<int> ns{N};
  while (ns.back() % 2 == 0 && ns.back() / 2 >= coarsest_n) ns.push_back(ns.back() / 2);
  std::reverse(ns.begin(), ns.end());

  MeshHierarchy h;
  h.meshes.push_back(build_square_mesh(ns[0]));
  for (size_t l = 1; l < ns.size(); ++l) {
    const Mesh& coarse = h.meshes.back();
    Mesh fine = refine_uniform(coarse);
    std::vector<int> pv(fine.num_vertices(), -1), pe(fine.num_vertices(), -1);
    for (int v = 0; v < fine.num_vertices(); ++v) {
      if (v < coarse.num_vertices())
        pv[v] = v;
      else
        pe[v] = v - coarse.num_vertices();
    }
    h.parent_vertex.push_back(std::move(pv));
    h.parent_edge.push_back(std::move(pe));
    h.meshes.push_back(std::move(fine));
  }
  return h;
}

} // namespace hz
