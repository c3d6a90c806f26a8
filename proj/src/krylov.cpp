#include "hz/krylov.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hz {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

LinearOperator LinearOperator::identity(Eigen::Index n) {
  return {n, [](const Vec& x) { return x; }};
}

LinearOperator LinearOperator::from_matrix(const SpMat& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("LinearOperator: matrix not square");
  return {A.rows(), [A](const Vec& x) { return Vec(A * x); }};
}

LinearOperator LinearOperator::from_dense(const DenseMat& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("LinearOperator: matrix not square");
  return {A.rows(), [A](const Vec& x) { return Vec(A * x); }};
}

LinearOperator LinearOperator::diagonal(const Vec& d) {
  return {d.size(), [d](const Vec& x) { return Vec(d.cwiseProduct(x)); }};
}

std::pair<Vec, SolveReport> minres(const LinearOperator& A, const LinearOperator& P, const Vec& b,
                                   double tol, int maxit, const Vec* x0) {
  auto t0 = Clock::now();
  SolveReport rep;
  rep.config = "minres tol=" + std::to_string(tol);
  const Eigen::Index n = b.size();
  Vec x = x0 ? *x0 : Vec(Vec::Zero(n));
  double bnorm = b.norm();
  if (bnorm == 0.0) {
    rep.converged = true;
    rep.seconds = elapsed(t0);
    return {Vec(Vec::Zero(n)), rep};
  }

  Vec v_prev = Vec::Zero(n);
  Vec v = x0 ? Vec(b - A(x)) : b;
  Vec z = P(v);
  double gamma_prev = 1.0;
  double gamma = std::sqrt(z.dot(v));
  if (!(gamma > 0.0)) {
    if (v.norm() / bnorm < tol) { // x0 already solves the system
      rep.converged = true;
      rep.seconds = elapsed(t0);
      return {x, rep};
    }
    throw std::runtime_error("minres: preconditioned inner product <= 0 (preconditioner not SPD)");
  }
  rep.residual_history.push_back(v.norm() / bnorm);
  if (rep.residual_history.back() < tol) {
    rep.converged = true;
    rep.seconds = elapsed(t0);
    return {x, rep};
  }

  double eta = gamma;
  double s_prev = 0.0, s = 0.0, c_prev = 1.0, c = 1.0;
  Vec w_prev = Vec::Zero(n), w = Vec::Zero(n);

  for (int it = 1; it <= maxit; ++it) {
    Vec zhat = z / gamma;
    Vec Az = A(zhat);
    double delta = zhat.dot(Az);
    Vec v_next = Az - (delta / gamma) * v - (gamma / gamma_prev) * v_prev;
    Vec z_next = P(v_next);
    double inner = z_next.dot(v_next);
    if (inner < -1e-13 * v_next.norm() * z_next.norm())
      throw std::runtime_error("minres: preconditioned inner product <= 0 (preconditioner not SPD)");
    double gamma_next = std::sqrt(std::max(inner, 0.0));

    double a0 = c * delta - c_prev * s * gamma;
    double a1 = std::sqrt(a0 * a0 + gamma_next * gamma_next);
    double a2 = s * delta + c_prev * c * gamma;
    double a3 = s_prev * gamma;
    if (a1 == 0.0) break; // exact breakdown; residual check below decides
    double c_next = a0 / a1;
    double s_next = gamma_next / a1;
    Vec w_next = (zhat - a3 * w_prev - a2 * w) / a1;
    x += (c_next * eta) * w_next;
    eta = -s_next * eta;

    rep.iterations = it;
    double relres = (b - A(x)).norm() / bnorm;
    rep.residual_history.push_back(relres);
    if (relres < tol) {
      rep.converged = true;
      break;
    }
    if (gamma_next == 0.0) break; // Krylov space exhausted

    v_prev.swap(v);
    v.swap(v_next);
    z.swap(z_next);
    gamma_prev = gamma;
    gamma = gamma_next;
    s_prev = s;
    s = s_next;
    c_prev = c;
    c = c_next;
    w_prev.swap(w);
    w.swap(w_next);
  }
  rep.seconds = elapsed(t0);
  return {x, rep};
}

std::pair<Vec, SolveReport> gmres_restart(const LinearOperator& A, const LinearOperator& P,
                                          const Vec& b, int restart, double tol, int maxit) {
  auto t0 = Clock::now();
  if (restart < 1) throw std::invalid_argument("gmres_restart: restart must be >= 1");
  SolveReport rep;
  rep.config = "gmres restart=" + std::to_string(restart) + " tol=" + std::to_string(tol);
  const Eigen::Index n = b.size();
  Vec x = Vec::Zero(n);
  double bnorm = b.norm();
  if (bnorm == 0.0) {
    rep.converged = true;
    rep.seconds = elapsed(t0);
    return {x, rep};
  }

  double prev_cycle_res = std::numeric_limits<double>::max();
  while (rep.iterations < maxit) {
    Vec r = b - A(x);
    double beta = r.norm();
    double relres = beta / bnorm;
    if (rep.residual_history.empty()) rep.residual_history.push_back(relres);
    if (relres < tol) {
      rep.converged = true;
      break;
    }
    if (relres >= prev_cycle_res * (1.0 - 1e-14)) break; // stagnated over a full cycle
    prev_cycle_res = relres;

    std::vector<Vec> V;
    V.push_back(r / beta);
    DenseMat H = DenseMat::Zero(restart + 1, restart);
    Vec g = Vec::Zero(restart + 1);
    g[0] = beta;
    std::vector<double> cs(restart), sn(restart);
    int j = 0;
    bool lucky = false;
    for (; j < restart && rep.iterations < maxit; ++j) {
      Vec w = A(P(V[j]));
      for (int i = 0; i <= j; ++i) { // modified Gram-Schmidt
        H(i, j) = V[i].dot(w);
        w -= H(i, j) * V[i];
      }
      H(j + 1, j) = w.norm();
      if (H(j + 1, j) > 1e-14 * bnorm) {
        V.push_back(w / H(j + 1, j));
      } else {
        lucky = true;
      }
      for (int i = 0; i < j; ++i) {
        double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      double denom = std::hypot(H(j, j), H(j + 1, j));
      cs[j] = H(j, j) / denom;
      sn[j] = H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      ++rep.iterations;
      rep.residual_history.push_back(std::abs(g[j + 1]) / bnorm);
      if (lucky || std::abs(g[j + 1]) / bnorm < tol) {
        ++j;
        break;
      }
    }
    // back substitution on the j x j triangular system
    Vec y = Vec::Zero(j);
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int l = i + 1; l < j; ++l) s -= H(i, l) * y[l];
      y[i] = s / H(i, i);
    }
    Vec update = Vec::Zero(n);
    for (int i = 0; i < j; ++i) update += y[i] * V[i];
    x += P(update);

    double true_rel = (b - A(x)).norm() / bnorm;
    rep.residual_history.back() = true_rel;
    if (true_rel < tol) {
      rep.converged = true;
      break;
    }
    if (lucky) break; // exact Krylov termination: no further progress possible
  }
  rep.seconds = elapsed(t0);
  return {x, rep};
}

std::pair<double, double> lanczos_extreme_eigs(const LinearOperator& S, const LinearOperator& X,
                                               int iters, unsigned seed) {
  if (iters < 2) throw std::invalid_argument("lanczos_extreme_eigs: iters must be >= 2");
  const Eigen::Index n = S.n;
  iters = static_cast<int>(std::min<Eigen::Index>(iters, n));

  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  Vec u(n); // u_j = X^{-1} q_j, maintained without inverting X
  for (Eigen::Index i = 0; i < n; ++i) u[i] = dist(gen);
  Vec q = X(u);
  double norm0 = std::sqrt(u.dot(q));
  if (!(norm0 > 0.0)) throw std::runtime_error("lanczos_extreme_eigs: X is not positive definite");
  u /= norm0;
  q /= norm0;

  std::vector<Vec> Q{q}, U{u};
  std::vector<double> alpha, beta; // beta[j] couples q_j and q_{j+1}
  for (int j = 0; j < iters; ++j) {
    Vec Sq = S(Q[j]);
    double a = Q[j].dot(Sq);
    alpha.push_back(a);
    Vec unew = Sq - a * U[j];
    if (j > 0) unew -= beta[j - 1] * U[j - 1];
    Vec qnew = X(unew);
    // full reorthogonalization in the X^{-1} inner product
    for (size_t i = 0; i < Q.size(); ++i) {
      double proj = qnew.dot(U[i]);
      qnew -= proj * Q[i];
      unew -= proj * U[i];
    }
    double b2 = qnew.dot(unew);
    double bj = std::sqrt(std::max(b2, 0.0));
    if (j + 1 == iters) break;
    if (bj < 1e-14 * std::max(1.0, std::abs(a))) break; // invariant subspace found
    beta.push_back(bj);
    Q.push_back(qnew / bj);
    U.push_back(unew / bj);
  }

  const int m = static_cast<int>(alpha.size());
  DenseMat T = DenseMat::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<DenseMat> es(T);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

Vec dense_solve(const DenseMat& A, const Vec& b) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw std::invalid_argument("dense_solve: shape mismatch");
  Eigen::PartialPivLU<DenseMat> lu(A);
  Vec x = lu.solve(b);
  double denom = A.cwiseAbs().maxCoeff() * std::max(1.0, x.norm()) + b.norm();
  if (denom == 0.0) return x;
  if (!x.allFinite() || (A * x - b).norm() > 1e-8 * denom)
    throw std::runtime_error("dense_solve: matrix singular to working precision");
  return x;
}

} // namespace hz
