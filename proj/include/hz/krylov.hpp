#ifndef HZ_KRYLOV_HPP
#define HZ_KRYLOV_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hz/linalg.hpp"

namespace hz {

// Black-box square operator.
struct LinearOperator {
  Eigen::Index n = 0;
  std::function<Vec(const Vec&)> apply;

  Vec operator()(const Vec& x) const { return apply(x); }

  static LinearOperator identity(Eigen::Index n);
  static LinearOperator from_matrix(const SpMat& A);
  static LinearOperator from_dense(const DenseMat& A);
  static LinearOperator diagonal(const Vec& d);
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history; // unpreconditioned relative residuals
  double seconds = 0.0;
  std::string config;
};

// Preconditioned MINRES for symmetric A with SPD preconditioner P (applied as
// an approximate inverse). Stops on the recomputed true relative residual
// ||b - A x|| / ||b|| < tol. Throws on a nonpositive preconditioned inner
// product (non-SPD preconditioner).
std::pair<Vec, SolveReport> minres(const LinearOperator& A, const LinearOperator& P, const Vec& b,
                                   double tol, int maxit, const Vec* x0 = nullptr);

// Restarted GMRES with right preconditioning (preserves the unpreconditioned
// residual in the stopping test). Stagnation over a full restart cycle ends
// the iteration with converged = false.
std::pair<Vec, SolveReport> gmres_restart(const LinearOperator& A, const LinearOperator& P,
                                          const Vec& b, int restart, double tol, int maxit);

// Ritz estimates of the extreme generalized eigenvalues of X S (both operators
// symmetric positive definite). Lanczos with full reorthogonalization.
std::pair<double, double> lanczos_extreme_eigs(const LinearOperator& S, const LinearOperator& X,
                                               int iters, unsigned seed = 20160515);

// Dense LU with partial pivoting; throws if singular to working precision.
Vec dense_solve(const DenseMat& A, const Vec& b);

} // namespace hz

#endif
