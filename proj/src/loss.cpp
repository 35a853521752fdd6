#include "trilasso/loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trilasso {

std::string to_string(LossKind kind) { return kind == LossKind::clustering ? "clustering" : "ridge"; }

LossKind parse_loss_kind(const std::string& name) {
  if (name == "clustering") return LossKind::clustering;
  if (name == "ridge") return LossKind::ridge;
  throw Error("unknown loss '" + name + "' (expected clustering or ridge)");
}

LossModel LossModel::clustering(Matrix data) {
  if (data.rows() < 1 || data.cols() < 1) throw Error("clustering loss needs a non-empty data matrix");
  if (!data.allFinite()) throw Error("clustering loss: data contains non-finite values");
  LossModel loss;
  loss.kind_ = LossKind::clustering;
  loss.data_ = std::move(data);
  loss.finalize();
  return loss;
}

LossModel LossModel::ridge(Matrix data, Vector responses, double gamma) {
  if (data.rows() < 1 || data.cols() < 1) throw Error("ridge loss needs a non-empty data matrix");
  if (responses.size() != data.rows()) throw Error("ridge loss: response length does not match data");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw Error("ridge loss needs gamma > 0 (the per-row curvature is rank-deficient otherwise)");
  if (!data.allFinite() || !responses.allFinite()) throw Error("ridge loss: non-finite input");
  LossModel loss;
  loss.kind_ = LossKind::ridge;
  loss.data_ = std::move(data);
  loss.responses_ = std::move(responses);
  loss.gamma_ = gamma;
  loss.finalize();
  return loss;
}

void LossModel::finalize() {
  const Index n = rows(), d = cols();
  if (kind_ == LossKind::clustering) {
    linear_ = 2.0 * data_;
    minimizer_ = data_;
    min_curv_ = max_curv_ = 2.0;
  } else {
    const double scale = 2.0 / static_cast<double>(n);
    linear_.resize(n, d);
    blocks_.reserve(static_cast<std::size_t>(n));
    double max_sq = 0.0, min_sq = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      const Vector a = data_.row(i).transpose();
      Matrix h = scale * (a * a.transpose());
      h.diagonal().array() += scale * gamma_;
      blocks_.emplace_back(h);
      if (blocks_.back().info() != Eigen::Success) throw Error("ridge loss: Hessian block not positive definite");
      linear_.row(i) = scale * responses_(i) * a.transpose();
      max_sq = std::max(max_sq, a.squaredNorm());
      min_sq = std::min(min_sq, a.squaredNorm());
    }
    minimizer_ = hessian_solve(linear_);
    min_curv_ = scale * (gamma_ + (d == 1 ? min_sq : 0.0));
    max_curv_ = scale * (gamma_ + max_sq);
  }
  offset_ = -value(minimizer_);
}

void LossModel::check_shape(const Matrix& x, const char* what) const {
  if (x.rows() != rows() || x.cols() != cols())
    throw Error(std::string(what) + ": expected " + std::to_string(rows()) + "x" + std::to_string(cols()) +
                ", got " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
}

double LossModel::value(const Matrix& x) const {
  check_shape(x, "loss value");
  if (kind_ == LossKind::clustering) return (x - data_).squaredNorm();
  const double n = static_cast<double>(rows());
  const Vector pred = (data_.array() * x.array()).rowwise().sum();
  return ((pred - responses_).squaredNorm() + gamma_ * x.squaredNorm()) / n;
}

Matrix LossModel::gradient(const Matrix& x) const {
  check_shape(x, "loss gradient");
  if (kind_ == LossKind::clustering) return 2.0 * (x - data_);
  return hessian_apply(x) - linear_;
}

Matrix LossModel::hessian_apply(const Matrix& v) const {
  check_shape(v, "Hessian action");
  if (kind_ == LossKind::clustering) return 2.0 * v;
  const double scale = 2.0 / static_cast<double>(rows());
  const Vector proj = (data_.array() * v.array()).rowwise().sum();
  return scale * (data_.array().colwise() * proj.array()).matrix() + scale * gamma_ * v;
}

Matrix LossModel::hessian_solve(const Matrix& r) const {
  check_shape(r, "Hessian solve");
  if (kind_ == LossKind::clustering) return 0.5 * r;
  Matrix out(r.rows(), r.cols());
  for (Index i = 0; i < r.rows(); ++i) out.row(i) = blocks_[i].solve(r.row(i).transpose()).transpose();
  return out;
}

Matrix LossModel::hessian_block(Index i) const {
  if (kind_ == LossKind::clustering) return 2.0 * Matrix::Identity(cols(), cols());
  return blocks_.at(static_cast<std::size_t>(i)).reconstructedMatrix();
}

double LossModel::conjugate_value(const Matrix& theta) const {
  check_shape(theta, "conjugate value");
  const Matrix h_inv_theta = hessian_solve(theta);
  return (h_inv_theta.array() * (0.5 * theta + linear_).array()).sum();
}

Matrix LossModel::conjugate_gradient(const Matrix& theta) const {
  check_shape(theta, "conjugate gradient");
  return hessian_solve(theta + linear_);
}

RidgeConjugate::RidgeConjugate(const LossModel& loss) : loss_(&loss) {
  if (loss.kind() != LossKind::ridge) throw Error("RidgeConjugate needs a ridge loss");
  phi_ = delta_transpose_apply(loss.responses());
}

Vector RidgeConjugate::delta_apply(const Vector& vec_x) const {
  const Matrix x = unvec(vec_x, loss_->rows(), loss_->cols());
  return (loss_->data().array() * x.array()).rowwise().sum();
}

Vector RidgeConjugate::delta_transpose_apply(const Vector& r) const {
  if (r.size() != loss_->rows()) throw Error("Delta^T: length mismatch");
  return vec((loss_->data().array().colwise() * r.array()).matrix());
}

Vector RidgeConjugate::omega_apply(const Vector& vec_x) const {
  return delta_transpose_apply(delta_apply(vec_x)) + loss_->gamma() * vec_x;
}

Vector RidgeConjugate::omega_solve(const Vector& vec_r) const {
  // Omega = (n/2) H in permuted block form.
  const double scale = 2.0 / static_cast<double>(loss_->rows());
  return scale * vec(loss_->hessian_solve(unvec(vec_r, loss_->rows(), loss_->cols())));
}

double RidgeConjugate::conjugate_value(const Vector& vec_theta) const {
  const Vector w = omega_solve(vec_theta);
  return 0.25 * static_cast<double>(loss_->rows()) * vec_theta.dot(w) + phi_.dot(w);
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw Error("unvec: length mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

double objective(const LossModel& loss, const Matrix& x, const PenaltyMatrix& q) {
  if (q.cols() != loss.rows()) throw Error("objective: Q has " + std::to_string(q.cols()) + " columns for " + std::to_string(loss.rows()) + " instances");
  if (!x.allFinite()) throw Error("objective: X contains non-finite values");
  return loss.value(x) + q.norm12(x);
}

Matrix recover_primal(const LossModel& loss, const PenaltyMatrix& q, const Matrix& lambda) {
  if (lambda.rows() != q.rows() || lambda.cols() != loss.cols())
    throw Error("recover_primal: lambda must be " + std::to_string(q.rows()) + "x" + std::to_string(loss.cols()));
  // grad f(X) = -Q^T lambda  <=>  X = grad f*(-Q^T lambda).
  return loss.conjugate_gradient(-q.apply_transpose(lambda));
}

}  // namespace trilasso
