#include "hz/precond.hpp"

#include <stdexcept>

namespace hz {

namespace {

void gs_sweep(const SpMat& A, const Vec& b, Vec& x, bool backward) {
  const Eigen::Index n = A.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index i = backward ? n - 1 - k : k;
    double diag = 0.0, sum = b[i];
    for (SpMat::InnerIterator it(A, i); it; ++it) {
      if (it.col() == i)
        diag = it.value();
      else
        sum -= it.value() * x[it.col()];
    }
    if (diag == 0.0) throw std::runtime_error("gauss_seidel: zero diagonal entry");
    x[i] = sum / diag;
  }
}

} // namespace

Vec gauss_seidel(const SpMat& A, const Vec& b, Vec x, int sweeps, SweepDirection dir) {
  if (A.rows() != A.cols() || A.rows() != b.size() || b.size() != x.size())
    throw std::invalid_argument("gauss_seidel: shape mismatch");
  for (int s = 0; s < sweeps; ++s) {
    switch (dir) {
    case SweepDirection::forward: gs_sweep(A, b, x, false); break;
    case SweepDirection::backward: gs_sweep(A, b, x, true); break;
    case SweepDirection::symmetric:
      gs_sweep(A, b, x, false);
      gs_sweep(A, b, x, true);
      break;
    }
  }
  return x;
}

Vec jacobi(const SpMat& A, const Vec& b, Vec x, int sweeps) {
  const double omega = 2.0 / 3.0;
  Vec d = sparse_diagonal(A);
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (d[i] == 0.0) throw std::runtime_error("jacobi: zero diagonal entry");
  for (int s = 0; s < sweeps; ++s) {
    Vec r = b - A * x;
    x += omega * r.cwiseQuotient(d);
  }
  return x;
}

Vec VCycle::cycle(size_t level, const Vec& b) const {
  if (level == 0) return coarse_factor.solve(b);
  Vec x = gauss_seidel(A[level], b, Vec::Zero(b.size()), pre, SweepDirection::forward);
  Vec r = b - A[level] * x;
  Vec rc = P[level - 1].transpose() * r;
  Vec xc = cycle(level - 1, rc);
  x += P[level - 1] * xc;
  x = gauss_seidel(A[level], b, std::move(x), post, SweepDirection::backward);
  return x;
}

Vec VCycle::apply(const Vec& b) const {
  if (A.empty()) throw std::invalid_argument("VCycle: empty hierarchy");
  return cycle(A.size() - 1, b);
}

LinearOperator VCycle::op() const {
  return {dim(), [this](const Vec& r) { return apply(r); }};
}

VCycle build_aux_vcycle(const MeshHierarchy& hierarchy, double mu, int pre, int post) {
  if (hierarchy.meshes.empty()) throw std::invalid_argument("build_aux_vcycle: empty hierarchy");
  VCycle v;
  v.pre = pre;
  v.post = post;
  std::vector<AuxDofMap> maps;
  for (const auto& mesh : hierarchy.meshes) {
    maps.push_back(build_aux_dofmap(mesh));
    v.A.push_back(assemble_aux_stiffness(mesh, maps.back(), mu));
  }
  for (size_t l = 1; l < hierarchy.meshes.size(); ++l) {
    const Mesh& fine = hierarchy.meshes[l];
    const AuxDofMap& fm = maps[l];
    const AuxDofMap& cm = maps[l - 1];
    std::vector<Triplet> trips;
    for (int vtx = 0; vtx < fine.num_vertices(); ++vtx) {
      if (fm.vertex_index[vtx] < 0) continue;
      int pv = hierarchy.parent_vertex[l - 1][vtx];
      if (pv >= 0) {
        if (cm.vertex_index[pv] >= 0)
          for (int c = 0; c < 2; ++c) trips.emplace_back(fm.dof(vtx, c), cm.dof(pv, c), 1.0);
      } else {
        int pe = hierarchy.parent_edge[l - 1][vtx];
        const Mesh& coarse = hierarchy.meshes[l - 1];
        for (int end = 0; end < 2; ++end) {
          int cv = coarse.edges[pe][end];
          if (cm.vertex_index[cv] >= 0)
            for (int c = 0; c < 2; ++c) trips.emplace_back(fm.dof(vtx, c), cm.dof(cv, c), 0.5);
        }
      }
    }
    v.P.push_back(matrix_from_triplets(maps[l].total, maps[l - 1].total, trips));
  }
  v.coarse_factor.compute(to_dense(v.A.front()));
  return v;
}

Vec SchurOperator::apply(const Vec& v) const {
  Vec bt = B->transpose() * v;
  Vec out = scale * (*B * Vec(Dinv.cwiseProduct(bt)));
  if (C) out += *C * v;
  return out;
}

LinearOperator SchurOperator::op() const {
  return {B->rows(), [this](const Vec& v) { return apply(v); }};
}

SpMat assemble_schur(const SpMat& B, const Vec& Dinv, const SpMat& C, double scale) {
  SpMat Bt = SpMat(B.transpose());
  SpMat BD = B * Dinv.asDiagonal();
  SpMat S = SpMat(BD * Bt) * scale + C;
  S.makeCompressed();
  return S;
}

Vec AuxSpacePrecond::smooth(const Vec& rhs, Vec x, bool transposed) const {
  if (sweeps <= 0) return x;
  if (smoother == SmootherType::jacobi) return jacobi(S, rhs, std::move(x), sweeps);
  return gauss_seidel(S, rhs, std::move(x), sweeps,
                      transposed ? SweepDirection::backward : SweepDirection::forward);
}

Vec AuxSpacePrecond::coarse_apply(const Vec& rc) const {
  if (coarse_exact) return coarse_factor.solve(rc);
  return coarse->apply(rc);
}

Vec AuxSpacePrecond::apply(const Vec& r) const {
  if (mode == AuxMode::additive) {
    Vec x = Vec::Zero(r.size());
    if (sweeps > 0) {
      if (smoother == SmootherType::jacobi)
        x = jacobi(S, r, std::move(x), sweeps);
      else
        x = gauss_seidel(S, r, std::move(x), sweeps, SweepDirection::symmetric);
    }
    x += Pi * coarse_apply(Vec(Pi.transpose() * r));
    return x;
  }
  // multiplicative: pre-smooth, coarse correction, post-smooth
  Vec x = smooth(r, Vec::Zero(r.size()), false);
  Vec res = r - S * x;
  x += Pi * coarse_apply(Vec(Pi.transpose() * res));
  res = r - S * x;
  x += smooth(res, Vec::Zero(r.size()), true);
  return x;
}

LinearOperator AuxSpacePrecond::op() const {
  return {S.rows(), [this](const Vec& r) { return apply(r); }};
}

PrecondBundle build_precond_bundle(const MeshHierarchy& hierarchy, const BlockSystem& sys,
                                   const PrecondConfig& cfg) {
  const Mesh& mesh = hierarchy.finest();
  PrecondBundle bundle;
  LameParams p0{sys.params.mu, 0.0, false}; // D comes from the lambda = 0 mass
  SpMat M0 = assemble_weighted_mass(mesh, sys.stress, p0);
  Vec d = sparse_diagonal(M0);
  bundle.Dinv = d.cwiseInverse();
  bundle.Stilde = assemble_schur(sys.B, bundle.Dinv, sys.C, cfg.schur_scale);

  AuxSpacePrecond X;
  X.mode = cfg.mode;
  X.smoother = cfg.smoother;
  X.sweeps = cfg.smoother_sweeps;
  X.S = bundle.Stilde;
  AuxDofMap amap = build_aux_dofmap(mesh);
  X.Pi = assemble_prolongation(mesh, amap, sys.disp, sys.k);
  if (cfg.coarse_exact) {
    X.coarse_exact = true;
    X.coarse_factor.compute(to_dense(assemble_aux_stiffness(mesh, amap, sys.params.mu)));
  } else {
    X.coarse = std::make_shared<VCycle>(
        build_aux_vcycle(hierarchy, sys.params.mu, cfg.vcycle_pre, cfg.vcycle_post));
  }
  bundle.X = std::move(X);
  return bundle;
}

Vec block_diag_apply(const PrecondBundle& P, const BlockSystem& sys, const Vec& r) {
  const Eigen::Index ns = sys.stress_dofs();
  Vec out(r.size());
  out.head(ns) = P.Dinv.cwiseProduct(r.head(ns));
  out.tail(sys.disp_dofs()) = P.X.apply(r.tail(sys.disp_dofs()));
  return out;
}

Vec block_tri_apply(const PrecondBundle& P, const BlockSystem& sys, const Vec& r) {
  const Eigen::Index ns = sys.stress_dofs();
  const Eigen::Index nu = sys.disp_dofs();
  Vec y1 = P.Dinv.cwiseProduct(r.head(ns));
  Vec t = sys.B * y1 - r.tail(nu);
  Vec y2 = P.X.apply(t);
  Vec out(r.size());
  out.head(ns) = y1 - P.Dinv.cwiseProduct(Vec(sys.B.transpose() * y2));
  out.tail(nu) = y2;
  return out;
}

LinearOperator block_diag_op(const PrecondBundle& P, const BlockSystem& sys) {
  return {sys.total_dofs(), [&P, &sys](const Vec& r) { return block_diag_apply(P, sys, r); }};
}

LinearOperator block_tri_op(const PrecondBundle& P, const BlockSystem& sys) {
  return {sys.total_dofs(), [&P, &sys](const Vec& r) { return block_tri_apply(P, sys, r); }};
}

LinearOperator saddle_operator(const BlockSystem& sys) {
  return {sys.total_dofs(), [&sys](const Vec& x) {
            const Eigen::Index ns = sys.stress_dofs();
            const Eigen::Index nu = sys.disp_dofs();
            Vec y(x.size());
            y.head(ns) = sys.M * x.head(ns) + sys.B.transpose() * x.tail(nu);
            y.tail(nu) = sys.B * x.head(ns) - sys.C * x.tail(nu);
            return y;
          }};
}

Vec stacked_rhs(const BlockSystem& sys) {
  Vec b = Vec::Zero(sys.total_dofs());
  b.tail(sys.disp_dofs()) = sys.f;
  return b;
}

} // namespace hz
