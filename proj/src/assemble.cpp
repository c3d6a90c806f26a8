#include "hz/assemble.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace hz {

namespace {

// strain of the vector basis function L e_c (physical gradient g)
SymTensor2 basis_strain(const std::array<double, 2>& g, int c) {
  if (c == 0) return {g[0], 0.5 * g[1], 0.0};
  return {0.0, 0.5 * g[0], g[1]};
}

struct EdgeSide {
  int tri;
  double sign; // jump weight: orientation sign on interior edges, +1 on boundary
};

std::vector<EdgeSide> edge_sides(const Mesh& mesh, int e) {
  std::vector<EdgeSide> sides;
  for (int s = 0; s < 2; ++s) {
    int t = mesh.edge_tri[e][s];
    if (t < 0) continue;
    double sign = 1.0;
    if (!mesh.edge_on_boundary[e]) {
      for (int i = 0; i < 3; ++i)
        if (mesh.tri_edge[t][i] == e) sign = mesh.tri_edge_sign[t][i];
    }
    sides.push_back({t, sign});
  }
  return sides;
}

std::array<double, 2> edge_point(const Mesh& mesh, int e, double s) {
  const auto& lo = mesh.vertices[mesh.edges[e][0]];
  const auto& hi = mesh.vertices[mesh.edges[e][1]];
  return {lo[0] + s * (hi[0] - lo[0]), lo[1] + s * (hi[1] - lo[1])};
}

} // namespace

SpMat assemble_weighted_mass(const Mesh& mesh, const StressDofMap& smap, const LameParams& params) {
  if (!params.valid()) throw std::invalid_argument("assemble_weighted_mass: invalid parameters");
  const LagrangeBasis& basis = *smap.basis;
  const TriangleRule& rule = TriangleRule::exact_for(2 * smap.k);
  const int nb = basis.size();
  std::vector<Triplet> trips;
  trips.reserve(mesh.num_triangles() * smap.element_dofs[0].size() * smap.element_dofs[0].size());
  Eigen::MatrixXd scalar_mass(nb, nb);
  std::vector<double> values(nb);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    ElementGeometry g = element_geometry(mesh, t);
    scalar_mass.setZero();
    for (const auto& qp : rule.points) {
      for (int p = 0; p < nb; ++p) values[p] = basis.eval(p, qp.bary);
      for (int p = 0; p < nb; ++p)
        for (int q = 0; q < nb; ++q) scalar_mass(p, q) += qp.w * values[p] * values[q];
    }
    scalar_mass *= g.area;
    const auto& dofs = smap.element_dofs[t];
    for (const auto& a : dofs)
      for (const auto& b : dofs) {
        double w = compliance_apply(b.frame, params).dot(a.frame);
        double v = w * scalar_mass(a.node, b.node);
        if (v != 0.0) trips.emplace_back(a.global, b.global, v);
      }
  }
  return matrix_from_triplets(smap.total, smap.total, trips);
}

SpMat assemble_div(const Mesh& mesh, const StressDofMap& smap, const DispDofMap& dmap) {
  const LagrangeBasis& sbasis = *smap.basis;
  const LagrangeBasis& dbasis = *dmap.basis;
  const TriangleRule& rule = TriangleRule::exact_for(2 * smap.k);
  std::vector<Triplet> trips;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    ElementGeometry g = element_geometry(mesh, t);
    const auto& dofs = smap.element_dofs[t];
    // int (E grad L_p) . (L_q e_c)
    Eigen::MatrixXd mixed0(sbasis.size(), dbasis.size()); // x-component of grad against L_q
    Eigen::MatrixXd mixed1(sbasis.size(), dbasis.size());
    mixed0.setZero();
    mixed1.setZero();
    for (const auto& qp : rule.points) {
      for (int p = 0; p < sbasis.size(); ++p) {
        auto gp = sbasis.grad(p, qp.bary, g);
        for (int q = 0; q < dbasis.size(); ++q) {
          double lq = dbasis.eval(q, qp.bary);
          mixed0(p, q) += qp.w * gp[0] * lq;
          mixed1(p, q) += qp.w * gp[1] * lq;
        }
      }
    }
    mixed0 *= g.area;
    mixed1 *= g.area;
    for (const auto& a : dofs) {
      // div(L E) = E grad L
      for (int q = 0; q < dbasis.size(); ++q) {
        double gx0 = mixed0(a.node, q), gx1 = mixed1(a.node, q);
        double vx = a.frame.xx * gx0 + a.frame.xy * gx1;
        double vy = a.frame.xy * gx0 + a.frame.yy * gx1;
        if (vx != 0.0) trips.emplace_back(dmap.dof(t, q, 0), a.global, vx);
        if (vy != 0.0) trips.emplace_back(dmap.dof(t, q, 1), a.global, vy);
      }
    }
  }
  return matrix_from_triplets(dmap.total, smap.total, trips);
}

SpMat assemble_jump_penalty(const Mesh& mesh, const DispDofMap& dmap) {
  const LagrangeBasis& basis = *dmap.basis;
  const EdgeRule& rule = EdgeRule::exact_for(2 * dmap.degree + 2);
  std::vector<Triplet> trips;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    auto sides = edge_sides(mesh, e);
    std::vector<ElementGeometry> geo;
    for (const auto& s : sides) geo.push_back(element_geometry(mesh, s.tri));
    // h_F^{-1} int_F [u].[v] = sum_q w_q [u].[v](x_q), since h_F = |F|
    for (const auto& qp : rule.points) {
      auto x = edge_point(mesh, e, qp.s);
      for (size_t ia = 0; ia < sides.size(); ++ia) {
        auto la = geo[ia].barycentric(x);
        for (size_t ib = 0; ib < sides.size(); ++ib) {
          auto lb = geo[ib].barycentric(x);
          for (int p = 0; p < basis.size(); ++p) {
            double va = sides[ia].sign * basis.eval(p, la);
            if (va == 0.0) continue;
            for (int q = 0; q < basis.size(); ++q) {
              double vb = sides[ib].sign * basis.eval(q, lb);
              if (vb == 0.0) continue;
              double v = qp.w * va * vb;
              for (int c = 0; c < 2; ++c)
                trips.emplace_back(dmap.dof(sides[ia].tri, p, c), dmap.dof(sides[ib].tri, q, c), v);
            }
          }
        }
      }
    }
  }
  return matrix_from_triplets(dmap.total, dmap.total, trips);
}

SpMat assemble_stabilization(const Mesh& mesh, const DispDofMap& dmap, int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("assemble_stabilization: k must be in 1..3");
  if (k >= 3) return SpMat(dmap.total, dmap.total); // eta = 0 for k >= n+1
  return assemble_jump_penalty(mesh, dmap);
}

SpMat assemble_disp_mass(const Mesh& mesh, const DispDofMap& dmap) {
  const LagrangeBasis& basis = *dmap.basis;
  const TriangleRule& rule = TriangleRule::exact_for(2 * dmap.degree);
  std::vector<Triplet> trips;
  const int nb = basis.size();
  Eigen::MatrixXd local(nb, nb);
  std::vector<double> values(nb);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    ElementGeometry g = element_geometry(mesh, t);
    local.setZero();
    for (const auto& qp : rule.points) {
      for (int p = 0; p < nb; ++p) values[p] = basis.eval(p, qp.bary);
      for (int p = 0; p < nb; ++p)
        for (int q = 0; q < nb; ++q) local(p, q) += qp.w * values[p] * values[q];
    }
    local *= g.area;
    for (int p = 0; p < nb; ++p)
      for (int q = 0; q < nb; ++q)
        for (int c = 0; c < 2; ++c)
          trips.emplace_back(dmap.dof(t, p, c), dmap.dof(t, q, c), local(p, q));
  }
  return matrix_from_triplets(dmap.total, dmap.total, trips);
}

SpMat assemble_strain_gram(const Mesh& mesh, const DispDofMap& dmap) {
  const LagrangeBasis& basis = *dmap.basis;
  const TriangleRule& rule = TriangleRule::exact_for(std::max(0, 2 * dmap.degree - 2));
  std::vector<Triplet> trips;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    ElementGeometry g = element_geometry(mesh, t);
    for (const auto& qp : rule.points) {
      std::vector<std::array<double, 2>> grads(basis.size());
      for (int p = 0; p < basis.size(); ++p) grads[p] = basis.grad(p, qp.bary, g);
      for (int p = 0; p < basis.size(); ++p)
        for (int cp = 0; cp < 2; ++cp) {
          SymTensor2 ea = basis_strain(grads[p], cp);
          for (int q = 0; q < basis.size(); ++q)
            for (int cq = 0; cq < 2; ++cq) {
              SymTensor2 eb = basis_strain(grads[q], cq);
              double v = g.area * qp.w * ea.dot(eb);
              if (v != 0.0) trips.emplace_back(dmap.dof(t, p, cp), dmap.dof(t, q, cq), v);
            }
        }
    }
  }
  return matrix_from_triplets(dmap.total, dmap.total, trips);
}

SpMat assemble_aux_stiffness(const Mesh& mesh, const AuxDofMap& amap, double mu) {
  if (mu <= 0.0) throw std::invalid_argument("assemble_aux_stiffness: mu must be positive");
  std::vector<Triplet> trips;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    ElementGeometry g = element_geometry(mesh, t);
    for (int i = 0; i < 3; ++i) {
      for (int ci = 0; ci < 2; ++ci) {
        int r = amap.dof(mesh.tris[t][i], ci);
        if (r < 0) continue;
        SymTensor2 ei = basis_strain(g.grad_lambda[i], ci);
        for (int j = 0; j < 3; ++j)
          for (int cj = 0; cj < 2; ++cj) {
            int c = amap.dof(mesh.tris[t][j], cj);
            if (c < 0) continue;
            SymTensor2 ej = basis_strain(g.grad_lambda[j], cj);
            double v = 2.0 * mu * g.area * ei.dot(ej);
            if (v != 0.0) trips.emplace_back(r, c, v);
          }
      }
    }
  }
  return matrix_from_triplets(amap.total, amap.total, trips);
}

SpMat assemble_prolongation(const Mesh& mesh, const AuxDofMap& amap, const DispDofMap& dmap,
                            int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("assemble_prolongation: k must be in 1..3");
  std::vector<Triplet> trips;
  const LagrangeBasis& basis = *dmap.basis;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) {
      int v = mesh.tris[t][i];
      if (amap.vertex_index[v] < 0) continue;
      if (k == 1) {
        // P0 value = mean of the linear hat over the triangle
        for (int c = 0; c < 2; ++c)
          trips.emplace_back(dmap.dof(t, 0, c), amap.dof(v, c), 1.0 / 3.0);
      } else {
        for (int p = 0; p < basis.size(); ++p) {
          double value = basis.node_bary(p)[i]; // hat function at the Lagrange node
          if (value == 0.0) continue;
          for (int c = 0; c < 2; ++c) trips.emplace_back(dmap.dof(t, p, c), amap.dof(v, c), value);
        }
      }
    }
  }
  return matrix_from_triplets(dmap.total, amap.total, trips);
}

Vec assemble_load(const Mesh& mesh, const DispDofMap& dmap, const VectorField& f) {
  const LagrangeBasis& basis = *dmap.basis;
  const TriangleRule& rule = TriangleRule::exact_for(dmap.degree + 12);
  Vec load = Vec::Zero(dmap.total);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    ElementGeometry g = element_geometry(mesh, t);
    for (const auto& qp : rule.points) {
      auto x = g.point(qp.bary);
      auto fv = f(x[0], x[1]);
      for (int p = 0; p < basis.size(); ++p) {
        double lp = basis.eval(p, qp.bary);
        load[dmap.dof(t, p, 0)] -= g.area * qp.w * lp * fv[0];
        load[dmap.dof(t, p, 1)] -= g.area * qp.w * lp * fv[1];
      }
    }
  }
  return load;
}

SpMat assemble_1h_gram(const Mesh& mesh, const DispDofMap& dmap) {
  SpMat G = assemble_strain_gram(mesh, dmap);
  SpMat J = assemble_jump_penalty(mesh, dmap);
  SpMat out = G + J;
  out.makeCompressed();
  return out;
}

SpMat assemble_0h_gram(const Mesh& mesh, const StressDofMap& smap) {
  const LagrangeBasis& basis = *smap.basis;
  // L2 part: unweighted tensor mass
  std::vector<Triplet> trips;
  const TriangleRule& rule = TriangleRule::exact_for(2 * smap.k);
  const int nb = basis.size();
  Eigen::MatrixXd scalar_mass(nb, nb);
  std::vector<double> values(nb);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    ElementGeometry g = element_geometry(mesh, t);
    scalar_mass.setZero();
    for (const auto& qp : rule.points) {
      for (int p = 0; p < nb; ++p) values[p] = basis.eval(p, qp.bary);
      for (int p = 0; p < nb; ++p)
        for (int q = 0; q < nb; ++q) scalar_mass(p, q) += qp.w * values[p] * values[q];
    }
    scalar_mass *= g.area;
    const auto& dofs = smap.element_dofs[t];
    for (const auto& a : dofs)
      for (const auto& b : dofs) {
        double v = a.frame.dot(b.frame) * scalar_mass(a.node, b.node);
        if (v != 0.0) trips.emplace_back(a.global, b.global, v);
      }
  }
  // edge part: h_F |F| sum_q w (tau nu).(sigma nu), trace from the first adjacent element
  const EdgeRule& erule = EdgeRule::exact_for(2 * smap.k);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    int t = mesh.edge_tri[e][0];
    ElementGeometry g = element_geometry(mesh, t);
    const auto& dofs = smap.element_dofs[t];
    const auto& nu = mesh.edge_normal[e];
    double hF = mesh.edge_length[e];
    for (const auto& qp : erule.points) {
      auto x = edge_point(mesh, e, qp.s);
      auto lam = g.barycentric(x);
      for (const auto& a : dofs) {
        double la = basis.eval(a.node, lam);
        if (la == 0.0) continue;
        auto an = a.frame.apply(nu);
        for (const auto& b : dofs) {
          double lb = basis.eval(b.node, lam);
          if (lb == 0.0) continue;
          auto bn = b.frame.apply(nu);
          double v = hF * hF * qp.w * la * lb * (an[0] * bn[0] + an[1] * bn[1]);
          if (v != 0.0) trips.emplace_back(a.global, b.global, v);
        }
      }
    }
  }
  return matrix_from_triplets(smap.total, smap.total, trips);
}

BlockSystem build_block_system(const Mesh& mesh, int k, const LameParams& params,
                               const VectorField& f, int level) {
  if (k < 1 || k > 3) throw std::invalid_argument("build_block_system: k must be in 1..3");
  BlockSystem sys;
  sys.k = k;
  sys.params = params;
  sys.level = level;
  sys.stress = build_stress_dofmap(mesh, k);
  sys.disp = build_disp_dofmap(mesh, k - 1);
  sys.M = assemble_weighted_mass(mesh, sys.stress, params);
  sys.B = assemble_div(mesh, sys.stress, sys.disp);
  sys.C = assemble_stabilization(mesh, sys.disp, k);
  sys.Mu = assemble_disp_mass(mesh, sys.disp);
  sys.f = assemble_load(mesh, sys.disp, f);
  return sys;
}

SymTensor2 eval_stress(const Mesh& mesh, const StressDofMap& smap, const Vec& coeffs, int t,
                       const std::array<double, 3>& lam) {
  (void)mesh;
  const LagrangeBasis& basis = *smap.basis;
  SymTensor2 out;
  for (const auto& d : smap.element_dofs[t]) out += (coeffs[d.global] * basis.eval(d.node, lam)) * d.frame;
  return out;
}

std::array<double, 2> eval_disp(const DispDofMap& dmap, const Vec& coeffs, int t,
                                const std::array<double, 3>& lam) {
  const LagrangeBasis& basis = *dmap.basis;
  std::array<double, 2> out{0.0, 0.0};
  for (int p = 0; p < basis.size(); ++p) {
    double lp = basis.eval(p, lam);
    out[0] += coeffs[dmap.dof(t, p, 0)] * lp;
    out[1] += coeffs[dmap.dof(t, p, 1)] * lp;
  }
  return out;
}

std::array<std::array<double, 2>, 2> eval_disp_grad(const DispDofMap& dmap, const Vec& coeffs,
                                                    int t, const std::array<double, 3>& lam,
                                                    const ElementGeometry& geom) {
  const LagrangeBasis& basis = *dmap.basis;
  std::array<std::array<double, 2>, 2> out{{{0.0, 0.0}, {0.0, 0.0}}};
  for (int p = 0; p < basis.size(); ++p) {
    auto gp = basis.grad(p, lam, geom);
    for (int c = 0; c < 2; ++c) {
      double coef = coeffs[dmap.dof(t, p, c)];
      out[c][0] += coef * gp[0];
      out[c][1] += coef * gp[1];
    }
  }
  return out;
}

Vec interpolate_stress(const Mesh& mesh, const StressDofMap& smap, const TensorField& sigma) {
  const LagrangeBasis& basis = *smap.basis;
  Vec coeffs = Vec::Zero(smap.total);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    ElementGeometry g = element_geometry(mesh, t);
    for (const auto& d : smap.element_dofs[t]) {
      auto x = g.point(basis.node_bary(d.node));
      SymTensor2 s = sigma(x[0], x[1]);
      coeffs[d.global] = d.inv_norm2 * s.dot(d.frame);
    }
  }
  return coeffs;
}

Vec l2_project_disp(const Mesh& mesh, const DispDofMap& dmap, const VectorField& u) {
  const LagrangeBasis& basis = *dmap.basis;
  const TriangleRule& rule = TriangleRule::exact_for(dmap.degree + 12);
  const int nb = basis.size();
  Vec coeffs = Vec::Zero(dmap.total);
  Eigen::MatrixXd mass(nb, nb);
  Eigen::VectorXd rhs0(nb), rhs1(nb);
  std::vector<double> values(nb);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    ElementGeometry g = element_geometry(mesh, t);
    mass.setZero();
    rhs0.setZero();
    rhs1.setZero();
    for (const auto& qp : rule.points) {
      auto x = g.point(qp.bary);
      auto uv = u(x[0], x[1]);
      for (int p = 0; p < nb; ++p) values[p] = basis.eval(p, qp.bary);
      for (int p = 0; p < nb; ++p) {
        rhs0[p] += qp.w * values[p] * uv[0];
        rhs1[p] += qp.w * values[p] * uv[1];
        for (int q = 0; q < nb; ++q) mass(p, q) += qp.w * values[p] * values[q];
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(mass);
    Eigen::VectorXd c0 = lu.solve(rhs0), c1 = lu.solve(rhs1);
    for (int p = 0; p < nb; ++p) {
      coeffs[dmap.dof(t, p, 0)] = c0[p];
      coeffs[dmap.dof(t, p, 1)] = c1[p];
    }
  }
  return coeffs;
}

Vec l2_project_disp_field(const Mesh& mesh, const DispDofMap& target, const DispDofMap& source,
                          const Vec& coeffs) {
  const LagrangeBasis& tb = *target.basis;
  const TriangleRule& rule = TriangleRule::exact_for(target.degree + source.degree);
  const int nb = tb.size();
  Vec out = Vec::Zero(target.total);
  Eigen::MatrixXd mass(nb, nb);
  Eigen::VectorXd rhs0(nb), rhs1(nb);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    mass.setZero();
    rhs0.setZero();
    rhs1.setZero();
    for (const auto& qp : rule.points) {
      auto uv = eval_disp(source, coeffs, t, qp.bary);
      for (int p = 0; p < nb; ++p) {
        double vp = tb.eval(p, qp.bary);
        rhs0[p] += qp.w * vp * uv[0];
        rhs1[p] += qp.w * vp * uv[1];
        for (int q = 0; q < nb; ++q) mass(p, q) += qp.w * vp * tb.eval(q, qp.bary);
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(mass);
    Eigen::VectorXd c0 = lu.solve(rhs0), c1 = lu.solve(rhs1);
    for (int p = 0; p < nb; ++p) {
      out[target.dof(t, p, 0)] = c0[p];
      out[target.dof(t, p, 1)] = c1[p];
    }
  }
  return out;
}

} // namespace hz
