#include "trilasso/x_update.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <optional>
#include <sstream>

namespace trilasso {

struct XUpdateSolver::Impl {
  const LossModel* loss;
  const PenaltyMatrix* q;
  double rho;
  XUpdateOptions options;
  SparseMatrix qtq;
  std::optional<Eigen::SimplicialLDLT<SparseMatrix>> factor;
  bool cg = false;
  Vector jacobi;  // inverse diagonal, column-stacked
  mutable Index cg_iterations = 0;

  Matrix rhs(const Matrix& z, const Matrix& u) const {
    return loss->linear_term() + q->apply_transpose(rho * z - u);
  }

  Matrix apply_system(const Matrix& x) const {
    return loss->hessian_apply(x) + rho * (qtq * x);
  }

  Matrix solve_cg(const Matrix& b, const Matrix* guess) const;
};

XUpdateSolver::XUpdateSolver(const LossModel& loss, const PenaltyMatrix& q, double rho,
                             XUpdateOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw Error("rho must be positive and finite");
  if (q.cols() != loss.rows())
    throw Error("X-update: Q has " + std::to_string(q.cols()) + " columns for " + std::to_string(loss.rows()) + " instances");
  Impl& s = *impl_;
  s.loss = &loss;
  s.q = &q;
  s.rho = rho;
  s.options = options;
  s.qtq = q.transpose() * q.matrix();

  const Index n = loss.rows(), d = loss.cols();
  if (loss.kind() == LossKind::clustering && !options.force_cg) {
    SparseMatrix sys = rho * s.qtq;
    for (Index i = 0; i < n; ++i) sys.coeffRef(i, i) += 2.0;
    s.factor.emplace(sys);
    if (s.factor->info() != Eigen::Success) throw Error("X-update: factorization of 2I + rho Q^T Q failed");
    return;
  }

  // Ridge: assemble in column-stacked coordinates (i, k) -> i + n k.
  const Index est_nnz = n * d * d + d * s.qtq.nonZeros();
  s.cg = options.force_cg || est_nnz * 4 > options.factor_nnz_budget;
  if (s.cg) {
    s.jacobi.resize(n * d);
    const Vector qtq_diag = s.qtq.diagonal();
    for (Index i = 0; i < n; ++i) {
      const Matrix h = loss.hessian_block(i);
      for (Index k = 0; k < d; ++k) s.jacobi(i + n * k) = 1.0 / (h(k, k) + rho * qtq_diag(i));
    }
    return;
  }
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(est_nnz));
  for (Index i = 0; i < n; ++i) {
    const Matrix h = loss.hessian_block(i);
    for (Index k = 0; k < d; ++k)
      for (Index l = 0; l < d; ++l) triplets.emplace_back(i + n * k, i + n * l, h(k, l));
  }
  for (Index col = 0; col < s.qtq.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(s.qtq, col); it; ++it)
      for (Index k = 0; k < d; ++k) triplets.emplace_back(it.row() + n * k, it.col() + n * k, rho * it.value());
  SparseMatrix sys(n * d, n * d);
  sys.setFromTriplets(triplets.begin(), triplets.end());
  s.factor.emplace(sys);
  if (s.factor->info() != Eigen::Success) throw Error("X-update: factorization of the ridge system failed");
}

XUpdateSolver::~XUpdateSolver() = default;
XUpdateSolver::XUpdateSolver(XUpdateSolver&&) noexcept = default;
XUpdateSolver& XUpdateSolver::operator=(XUpdateSolver&&) noexcept = default;

Matrix XUpdateSolver::Impl::solve_cg(const Matrix& b, const Matrix* guess) const {
  const Index n = b.rows(), d = b.cols();
  const Index cap = options.cg_max_iter > 0 ? options.cg_max_iter : 10 * n * d;
  const Eigen::Map<const Matrix> precond(jacobi.data(), n, d);
  Matrix x = guess ? *guess : Matrix::Zero(n, d);
  Matrix r = b - apply_system(x);
  const double b_norm = std::max(b.norm(), std::numeric_limits<double>::min());
  Matrix z = precond.cwiseProduct(r);
  Matrix p = z;
  double rz = (r.array() * z.array()).sum();
  cg_iterations = 0;
  while (r.norm() > options.cg_tolerance * b_norm) {
    if (cg_iterations >= cap) {
      const double kappa = precond.maxCoeff() / precond.minCoeff();
      std::ostringstream msg;
      msg << "X-update: CG did not reach relative residual " << options.cg_tolerance << " in " << cap
          << " iterations (residual " << r.norm() / b_norm << ", diagonal condition estimate " << kappa << ")";
      throw Error(msg.str());
    }
    const Matrix ap = apply_system(p);
    const double alpha = rz / (p.array() * ap.array()).sum();
    x += alpha * p;
    r -= alpha * ap;
    z = precond.cwiseProduct(r);
    const double rz_next = (r.array() * z.array()).sum();
    p = z + (rz_next / rz) * p;
    rz = rz_next;
    ++cg_iterations;
  }
  return x;
}

Matrix XUpdateSolver::solve(const Matrix& z, const Matrix& u, const Matrix* guess) const {
  const Impl& s = *impl_;
  const Index n = s.loss->rows(), d = s.loss->cols();
  if (z.rows() != s.q->rows() || z.cols() != d || u.rows() != s.q->rows() || u.cols() != d)
    throw Error("X-update: Z and U must be " + std::to_string(s.q->rows()) + "x" + std::to_string(d));
  const Matrix b = s.rhs(z, u);
  if (s.cg) return s.solve_cg(b, guess);
  if (s.loss->kind() == LossKind::clustering && !s.options.force_cg) return s.factor->solve(b);
  return unvec(s.factor->solve(vec(b)), n, d);
}

double XUpdateSolver::stationarity_residual(const Matrix& x, const Matrix& z, const Matrix& u) const {
  const Impl& s = *impl_;
  const Matrix grad = s.loss->gradient(x) + s.q->apply_transpose(u + s.rho * (s.q->apply(x) - z));
  return grad.norm();
}

bool XUpdateSolver::uses_cg() const { return impl_->cg; }
Index XUpdateSolver::last_cg_iterations() const { return impl_->cg_iterations; }

Matrix admm_x_update(const LossModel& loss, const PenaltyMatrix& q, const Matrix& z, const Matrix& u,
                     double rho) {
  return XUpdateSolver(loss, q, rho).solve(z, u);
}

}  // namespace trilasso
