#pragma once

#include <memory>

#include "trilasso/common.hpp"
#include "trilasso/loss.hpp"
#include "trilasso/penalty.hpp"

namespace trilasso {

struct XUpdateOptions {
  double cg_tolerance = 1e-10;  // relative residual
  Index cg_max_iter = 0;        // 0 means 10 * n * d
  // Ridge systems whose assembled factor would exceed this many nonzeros fall
  // back to matrix-free CG.
  Index factor_nnz_budget = 20'000'000;
  bool force_cg = false;
};

/// Solves the ADMM X-update
///
///   (H + rho Q^T Q) X = b + Q^T (rho Z - U),
///
/// the stationarity condition of f(X) + <U, QX - Z> + rho/2 ||QX - Z||^2.
/// The factorization depends only on (loss, Q, rho) and is built once.
/// Clustering factors the n x n matrix 2I + rho Q^T Q and reuses it for every
/// column; ridge couples the d x d row curvature with rho Q^T Q across rows
/// and factors the n*d system (or runs Jacobi-preconditioned CG).
class XUpdateSolver {
 public:
  XUpdateSolver(const LossModel& loss, const PenaltyMatrix& q, double rho,
                XUpdateOptions options = {});
  ~XUpdateSolver();
  XUpdateSolver(XUpdateSolver&&) noexcept;
  XUpdateSolver& operator=(XUpdateSolver&&) noexcept;

  /// `guess` seeds CG; ignored by the factorized paths.
  Matrix solve(const Matrix& z, const Matrix& u, const Matrix* guess = nullptr) const;

  /// Frobenius norm of grad f(X) + Q^T U + rho Q^T (QX - Z).
  double stationarity_residual(const Matrix& x, const Matrix& z, const Matrix& u) const;

  bool uses_cg() const;
  Index last_cg_iterations() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper around XUpdateSolver.
Matrix admm_x_update(const LossModel& loss, const PenaltyMatrix& q, const Matrix& z,
                     const Matrix& u, double rho);

}  // namespace trilasso
