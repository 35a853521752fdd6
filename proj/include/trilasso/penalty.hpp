#pragma once

#include <vector>

#include "trilasso/common.hpp"
#include "trilasso/graph.hpp"

namespace trilasso {

/// Sparse m x n penalty matrix Q. Row k encodes edge k = (i, j) with +c at
/// column i and -c at column j, where c = alpha * w_ij * q_ij, so that
/// ||QX||_{1,2} = alpha * sum_k w_k q_k ||X_i - X_j||.
class PenaltyMatrix {
 public:
  struct Row {
    Index i;
    Index j;
    double coeff;
  };

  PenaltyMatrix() = default;
  PenaltyMatrix(const Graph& graph, double alpha);

  Index rows() const { return static_cast<Index>(rows_.size()); }
  Index cols() const { return cols_; }
  double alpha() const { return alpha_; }
  const std::vector<Row>& row_entries() const { return rows_; }

  const SparseMatrix& matrix() const { return q_; }
  const SparseMatrix& transpose() const { return qt_; }
  Matrix to_dense() const { return Matrix(q_); }

  Matrix apply(const Matrix& x) const;            // QX, m x d
  Matrix apply_transpose(const Matrix& u) const;  // Q^T U, n x d

  /// Sum of row l2 norms of QX.
  double norm12(const Matrix& x) const;

 private:
  Index cols_ = 0;
  double alpha_ = 0.0;
  std::vector<Row> rows_;
  SparseMatrix q_;
  SparseMatrix qt_;
};

PenaltyMatrix build_penalty_matrix(const Graph& graph, double alpha);

}  // namespace trilasso
