#pragma once

#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "trilasso/common.hpp"
#include "trilasso/penalty.hpp"

namespace trilasso {

enum class LossKind { clustering, ridge };

std::string to_string(LossKind kind);
LossKind parse_loss_kind(const std::string& name);

/// Separable convex quadratic loss f(X) = sum_i f_i(X_i).
///
///   clustering: f_i(x) = ||x - A_i||^2
///   ridge:      f_i(x) = (1/n) (A_i x^T - y_i)^2 + (gamma/n) ||x||^2
///
/// Both are written as f_i(x) = 1/2 x^T H_i x - b_i^T x + c_i, which is all the
/// solvers need: gradients, Hessian solves, the Fenchel conjugate and primal
/// recovery. The ridge loss keeps the 1/n factor throughout, so alpha values
/// tuned against an unnormalized ridge loss need rescaling.
///
/// Immutable after construction; safe to share across threads.
class LossModel {
 public:
  static LossModel clustering(Matrix data);
  static LossModel ridge(Matrix data, Vector responses, double gamma);

  LossKind kind() const { return kind_; }
  Index rows() const { return data_.rows(); }
  Index cols() const { return data_.cols(); }
  const Matrix& data() const { return data_; }
  const Vector& responses() const { return responses_; }
  double gamma() const { return gamma_; }

  double value(const Matrix& x) const;
  Matrix gradient(const Matrix& x) const;

  /// Row-wise Hessian action H_i v_i.
  Matrix hessian_apply(const Matrix& v) const;
  /// Row-wise H_i^{-1} r_i.
  Matrix hessian_solve(const Matrix& r) const;
  /// d x d Hessian block of row i.
  Matrix hessian_block(Index i) const;
  /// Linear term b, one row per instance.
  const Matrix& linear_term() const { return linear_; }

  /// argmin f.
  const Matrix& minimizer() const { return minimizer_; }

  /// Fenchel conjugate without its additive constant:
  /// f*(theta) = conjugate_value(theta) + conjugate_offset().
  double conjugate_value(const Matrix& theta) const;
  /// grad f*(theta), i.e. the maximizer of <theta, x> - f(x).
  Matrix conjugate_gradient(const Matrix& theta) const;
  /// The dropped constant, equal to -min f.
  double conjugate_offset() const { return offset_; }

  /// Spectral bounds of the block Hessian.
  double min_curvature() const { return min_curv_; }
  double max_curvature() const { return max_curv_; }

 private:
  LossModel() = default;
  void finalize();
  void check_shape(const Matrix& x, const char* what) const;

  LossKind kind_ = LossKind::clustering;
  Matrix data_;
  Vector responses_;
  double gamma_ = 0.0;
  Matrix linear_;
  Matrix minimizer_;
  std::vector<Eigen::LLT<Matrix>> blocks_;  // ridge only
  double offset_ = 0.0;
  double min_curv_ = 2.0;
  double max_curv_ = 2.0;
};

/// The ridge loss in column-stacked vector form:
///   f(vec X) = (1/n) (vec(X)^T Omega vec(X) - 2 Phi vec(X) + y^T y)
/// with Delta = (1_{1xd} kron I_n) diag(vec A), Omega = Delta^T Delta + gamma I
/// and Phi = y^T Delta. Omega is never assembled; it is block diagonal under
/// the row permutation and its inverse reuses the loss's cached factors.
class RidgeConjugate {
 public:
  explicit RidgeConjugate(const LossModel& loss);

  Vector delta_apply(const Vector& vec_x) const;        // n
  Vector delta_transpose_apply(const Vector& r) const;  // n*d
  Vector omega_apply(const Vector& vec_x) const;
  Vector omega_solve(const Vector& vec_r) const;
  const Vector& phi() const { return phi_; }  // Phi^T, length n*d

  /// (n/4) theta^T Omega^{-1} theta + Phi Omega^{-1} theta, the conjugate of
  /// the 1/n-scaled ridge loss with its constant dropped.
  double conjugate_value(const Vector& vec_theta) const;

 private:
  const LossModel* loss_;
  Vector phi_;
};

Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Index rows, Index cols);

/// f(X) + ||QX||_{1,2}.
double objective(const LossModel& loss, const Matrix& x, const PenaltyMatrix& q);

/// Solve grad f(X) + Q^T lambda = 0 for X.
Matrix recover_primal(const LossModel& loss, const PenaltyMatrix& q, const Matrix& lambda);

}  // namespace trilasso
