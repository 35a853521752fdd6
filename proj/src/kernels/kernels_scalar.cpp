#include <algorithm>
#include <cmath>

#include "trilasso/kernels.hpp"

namespace trilasso::kernels {
namespace {

void row_sq_norms(std::span<const double> m, std::size_t rows, std::span<double> out) {
  const std::size_t cols = rows == 0 ? 0 : m.size() / rows;
  std::fill_n(out.begin(), rows, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    const double* col = m.data() + c * rows;
    for (std::size_t r = 0; r < rows; ++r) out[r] = out[r] + col[r] * col[r];
  }
}

void group_shrink(std::span<double> m, std::size_t rows, double rho, std::span<double> scratch) {
  const std::size_t cols = rows == 0 ? 0 : m.size() / rows;
  row_sq_norms(m, rows, scratch);
  for (std::size_t r = 0; r < rows; ++r) {
    // 1/0 = inf drives the factor to -inf and the clamp returns 0.
    const double scaled = rho * std::sqrt(scratch[r]);
    scratch[r] = std::max(0.0, 1.0 - 1.0 / scaled);
  }
  for (std::size_t c = 0; c < cols; ++c) {
    double* col = m.data() + c * rows;
    for (std::size_t r = 0; r < rows; ++r) col[r] = col[r] * scratch[r];
  }
}

void project_unit_balls(std::span<double> m, std::size_t rows, std::span<double> scratch) {
  const std::size_t cols = rows == 0 ? 0 : m.size() / rows;
  row_sq_norms(m, rows, scratch);
  for (std::size_t r = 0; r < rows; ++r)
    scratch[r] = scratch[r] > 1.0 ? 1.0 / std::sqrt(scratch[r]) : 1.0;
  for (std::size_t c = 0; c < cols; ++c) {
    double* col = m.data() + c * rows;
    for (std::size_t r = 0; r < rows; ++r) col[r] = col[r] * scratch[r];
  }
}

void sq_dist_to_point(std::span<const double> m, std::size_t rows, std::span<const double> point,
                      std::span<double> out) {
  std::fill_n(out.begin(), rows, 0.0);
  for (std::size_t c = 0; c < point.size(); ++c) {
    const double* col = m.data() + c * rows;
    const double p = point[c];
    for (std::size_t r = 0; r < rows; ++r) {
      const double diff = col[r] - p;
      out[r] = out[r] + diff * diff;
    }
  }
}

void axpy_diff(std::span<double> y, std::span<const double> x, std::span<const double> z,
               double a) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = y[i] + a * (x[i] - z[i]);
}

double sq_diff_norm(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{"scalar",         row_sq_norms, group_shrink, project_unit_balls,
                                 sq_dist_to_point, axpy_diff,    sq_diff_norm};
  return table;
}

}  // namespace trilasso::kernels
