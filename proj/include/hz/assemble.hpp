#ifndef HZ_ASSEMBLE_HPP
#define HZ_ASSEMBLE_HPP

#include <functional>

#include "hz/dofmap.hpp"
#include "hz/linalg.hpp"
#include "hz/mesh.hpp"
#include "hz/quadrature.hpp"
#include "hz/tensor.hpp"

namespace hz {

using VectorField = std::function<std::array<double, 2>(double, double)>;
using TensorField = std::function<SymTensor2(double, double)>;

// entry (r,c) = integral of (A phi_c) : phi_r, exact quadrature; symmetric.
SpMat assemble_weighted_mass(const Mesh& mesh, const StressDofMap& smap, const LameParams& params);

// entry (r,c) = integral of div(phi_c) . psi_r (elementwise divergence).
SpMat assemble_div(const Mesh& mesh, const StressDofMap& smap, const DispDofMap& dmap);

// sum_F h_F^{-1} int_F [u].[v]; boundary faces use [w] = w.
SpMat assemble_jump_penalty(const Mesh& mesh, const DispDofMap& dmap);

// stabilization c(.,.): equals the jump penalty for k <= 2, zero for k >= 3.
SpMat assemble_stabilization(const Mesh& mesh, const DispDofMap& dmap, int k);

SpMat assemble_disp_mass(const Mesh& mesh, const DispDofMap& dmap);

// int eps_h(u) : eps_h(v), elementwise strains.
SpMat assemble_strain_gram(const Mesh& mesh, const DispDofMap& dmap);

// 2 mu (eps(u), eps(v)) on the conforming P1 space with boundary vertices removed.
SpMat assemble_aux_stiffness(const Mesh& mesh, const AuxDofMap& amap, double mu);

// Aux -> displacement transfer: natural inclusion for k >= 2, elementwise
// averaging (L2 projection onto P0 vectors) for k = 1.
SpMat assemble_prolongation(const Mesh& mesh, const AuxDofMap& amap, const DispDofMap& dmap, int k);

// entry r = -(f, psi_r)
Vec assemble_load(const Mesh& mesh, const DispDofMap& dmap, const VectorField& f);

// Gram matrix of |v|_{1,h}^2 = ||eps_h v||^2 + sum_F h_F^{-1} ||[v]||_F^2.
SpMat assemble_1h_gram(const Mesh& mesh, const DispDofMap& dmap);

// Gram matrix of ||tau||_{0,h}^2 = ||tau||_0^2 + sum_F h_F ||tau nu_F||_F^2
// (edge traces taken from the first adjacent element; single-valued on the space).
SpMat assemble_0h_gram(const Mesh& mesh, const StressDofMap& smap);

// The assembled saddle system (basic): [[M, B^T],[B, -C]] [sigma; u] = [0; f].
struct BlockSystem {
  SpMat M;  // stress mass weighted by the compliance tensor at params.lambda
  SpMat B;  // displacement rows x stress columns
  SpMat C;  // stabilization (zero matrix for k >= 3)
  SpMat Mu; // displacement mass
  Vec f;    // load vector, entries -(f, psi)
  LameParams params;
  int k = 1;
  int level = 0;
  StressDofMap stress;
  DispDofMap disp;

  Eigen::Index stress_dofs() const { return M.rows(); }
  Eigen::Index disp_dofs() const { return B.rows(); }
  Eigen::Index total_dofs() const { return M.rows() + B.rows(); }
};

BlockSystem build_block_system(const Mesh& mesh, int k, const LameParams& params,
                               const VectorField& f, int level = 0);

// Field evaluation and interpolation helpers.
SymTensor2 eval_stress(const Mesh& mesh, const StressDofMap& smap, const Vec& coeffs, int t,
                       const std::array<double, 3>& lam);
std::array<double, 2> eval_disp(const DispDofMap& dmap, const Vec& coeffs, int t,
                                const std::array<double, 3>& lam);
// gradient d u_i / d x_j
std::array<std::array<double, 2>, 2> eval_disp_grad(const DispDofMap& dmap, const Vec& coeffs,
                                                    int t, const std::array<double, 3>& lam,
                                                    const ElementGeometry& geom);

// Nodal interpolation into the stress space (exact on the space itself).
Vec interpolate_stress(const Mesh& mesh, const StressDofMap& smap, const TensorField& sigma);

// Elementwise L2 projection onto the displacement space.
Vec l2_project_disp(const Mesh& mesh, const DispDofMap& dmap, const VectorField& u);

// Elementwise L2 projection of a discrete field from one (finer-degree) space
// onto another; used for Q_h u* checks.
Vec l2_project_disp_field(const Mesh& mesh, const DispDofMap& target, const DispDofMap& source,
                          const Vec& coeffs);

} // namespace hz

#endif
