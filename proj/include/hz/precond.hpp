#ifndef HZ_PRECOND_HPP
#define HZ_PRECOND_HPP

#include <Eigen/Cholesky>
#include <memory>

#include "hz/assemble.hpp"
#include "hz/krylov.hpp"
#include "hz/linalg.hpp"
#include "hz/mesh.hpp"

namespace hz {

enum class SweepDirection { forward, backward, symmetric };

// Gauss-Seidel sweeps in natural dof order; throws on a zero diagonal entry.
Vec gauss_seidel(const SpMat& A, const Vec& b, Vec x, int sweeps, SweepDirection dir);

// Damped Jacobi sweeps (omega = 2/3).
Vec jacobi(const SpMat& A, const Vec& b, Vec x, int sweeps);

// Geometric V-cycle on the conforming P1 elasticity hierarchy. One forward
// Gauss-Seidel pre-sweep and one backward post-sweep per level by default;
// the coarsest level is solved densely.
struct VCycle {
  std::vector<SpMat> A;  // stiffness per level, coarse -> fine
  std::vector<SpMat> P;  // P[l]: level l -> level l+1 transfer
  Eigen::LDLT<DenseMat> coarse_factor;
  int pre = 1, post = 1;

  Vec apply(const Vec& b) const; // one cycle from a zero initial guess
  Eigen::Index dim() const { return A.back().rows(); }
  LinearOperator op() const;

private:
  Vec cycle(size_t level, const Vec& b) const;
};

VCycle build_aux_vcycle(const MeshHierarchy& hierarchy, double mu, int pre = 1, int post = 1);

// v -> scale * B D^{-1} B^T v + C v, matrix-free.
struct SchurOperator {
  const SpMat* B = nullptr;
  const SpMat* C = nullptr;
  Vec Dinv;
  double scale = 1.0;

  Vec apply(const Vec& v) const;
  LinearOperator op() const;
};

// Explicit sparse S~ = scale * B D^{-1} B^T + C (the smoother needs entries).
SpMat assemble_schur(const SpMat& B, const Vec& Dinv, const SpMat& C, double scale = 1.0);

enum class AuxMode { additive, multiplicative };
enum class SmootherType { gauss_seidel, jacobi };

// Auxiliary space preconditioner X for the Schur complement:
//   additive:        X r = R r + Pi Bc Pi^t r
//   multiplicative:  I - X S = (I - R^t S)(I - Pi Bc Pi^t S)(I - R S)
// where R is `sweeps` smoother applications on the assembled S~ and Bc is a
// V-cycle (or exact solve) on the conforming P1 elasticity problem.
struct AuxSpacePrecond {
  AuxMode mode = AuxMode::multiplicative;
  SmootherType smoother = SmootherType::gauss_seidel;
  int sweeps = 3;
  SpMat S;
  SpMat Pi;
  std::shared_ptr<VCycle> coarse;
  bool coarse_exact = false;
  Eigen::LDLT<DenseMat> coarse_factor; // aux stiffness, when coarse_exact

  Vec apply(const Vec& r) const;
  LinearOperator op() const;

private:
  Vec smooth(const Vec& rhs, Vec x, bool transposed) const;
  Vec coarse_apply(const Vec& rc) const;
};

struct PrecondConfig {
  int smoother_sweeps = 3;
  int vcycle_pre = 1;
  int vcycle_post = 1;
  double schur_scale = 1.0;
  AuxMode mode = AuxMode::multiplicative;
  SmootherType smoother = SmootherType::gauss_seidel;
  bool coarse_exact = false;
};

// Everything the outer preconditioners need for one (mesh, k) level. D is the
// diagonal of the lambda = 0 weighted mass matrix, so the whole bundle is
// independent of lambda.
struct PrecondBundle {
  Vec Dinv;
  SpMat Stilde;
  AuxSpacePrecond X;
};

PrecondBundle build_precond_bundle(const MeshHierarchy& hierarchy, const BlockSystem& sys,
                                   const PrecondConfig& cfg);

// Stacked operators on [stress; displacement] residuals.
//   diagonal:   (D^{-1} r1, X r2)
//   triangular: y1 = D^{-1} r1; y2 = X(B y1 - r2); z = (y1 - D^{-1} B^T y2, y2)
Vec block_diag_apply(const PrecondBundle& P, const BlockSystem& sys, const Vec& r);
Vec block_tri_apply(const PrecondBundle& P, const BlockSystem& sys, const Vec& r);

LinearOperator block_diag_op(const PrecondBundle& P, const BlockSystem& sys);
LinearOperator block_tri_op(const PrecondBundle& P, const BlockSystem& sys);

// [[M, B^T],[B, -C]] on stacked vectors.
LinearOperator saddle_operator(const BlockSystem& sys);
Vec stacked_rhs(const BlockSystem& sys);

} // namespace hz

#endif
