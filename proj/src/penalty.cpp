#include "trilasso/penalty.hpp"

#include <cmath>

#include "trilasso/kernels.hpp"

namespace trilasso {

PenaltyMatrix::PenaltyMatrix(const Graph& graph, double alpha)
    : cols_(graph.num_vertices()), alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error("alpha must be positive and finite");
  const Index m = graph.num_edges();
  rows_.reserve(static_cast<std::size_t>(m));
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * m));
  for (Index k = 0; k < m; ++k) {
    const Edge& e = graph.edges()[k];
    const double c = alpha * e.w * static_cast<double>(e.q);
    rows_.push_back({e.i, e.j, c});
    triplets.emplace_back(k, e.i, c);
    triplets.emplace_back(k, e.j, -c);
  }
  q_.resize(m, cols_);
  q_.setFromTriplets(triplets.begin(), triplets.end());
  q_.makeCompressed();
  qt_ = q_.transpose();
  qt_.makeCompressed();
}

Matrix PenaltyMatrix::apply(const Matrix& x) const {
  if (x.rows() != cols_) throw Error("QX: X has " + std::to_string(x.rows()) + " rows, expected " + std::to_string(cols_));
  // Two nonzeros per row: a direct difference is cheaper than a sparse product
  // and gives exactly c * (x_i - x_j).
  Matrix out(rows(), x.cols());
  for (Index c = 0; c < x.cols(); ++c)
    for (Index k = 0; k < rows(); ++k) {
      const Row& r = rows_[k];
      out(k, c) = r.coeff * (x(r.i, c) - x(r.j, c));
    }
  return out;
}

Matrix PenaltyMatrix::apply_transpose(const Matrix& u) const {
  if (u.rows() != rows()) throw Error("Q^T U: U has " + std::to_string(u.rows()) + " rows, expected " + std::to_string(rows()));
  return qt_ * u;
}

double PenaltyMatrix::norm12(const Matrix& x) const {
  const Matrix qx = apply(x);
  std::vector<double> sq(static_cast<std::size_t>(qx.rows()));
  kernels::active().row_sq_norms({qx.data(), static_cast<std::size_t>(qx.size())},
                                 static_cast<std::size_t>(qx.rows()), sq);
  double total = 0.0;
  for (double s : sq) total += std::sqrt(s);
  return total;
}

PenaltyMatrix build_penalty_matrix(const Graph& graph, double alpha) {
  return PenaltyMatrix(graph, alpha);
}

}  // namespace trilasso
