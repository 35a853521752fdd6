#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "trilasso/kernels.hpp"

namespace trilasso::kernels {
namespace {

constexpr std::size_t kLanes = 2;

void row_sq_norms(std::span<const double> m, std::size_t rows, std::span<double> out) {
  const std::size_t cols = rows == 0 ? 0 : m.size() / rows;
  const std::size_t vec_rows = rows - rows % kLanes;
  double* dst = out.data();
  std::fill_n(dst, rows, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    const double* col = m.data() + c * rows;
    std::size_t r = 0;
    for (; r < vec_rows; r += kLanes) {
      const float64x2_t x = vld1q_f64(col + r);
      vst1q_f64(dst + r, vaddq_f64(vld1q_f64(dst + r), vmulq_f64(x, x)));
    }
    for (; r < rows; ++r) dst[r] = dst[r] + col[r] * col[r];
  }
}

void scale_rows(double* m, std::size_t rows, std::size_t cols, const double* factor) {
  const std::size_t vec_rows = rows - rows % kLanes;
  for (std::size_t c = 0; c < cols; ++c) {
    double* col = m + c * rows;
    std::size_t r = 0;
    for (; r < vec_rows; r += kLanes)
      vst1q_f64(col + r, vmulq_f64(vld1q_f64(col + r), vld1q_f64(factor + r)));
    for (; r < rows; ++r) col[r] = col[r] * factor[r];
  }
}

void group_shrink(std::span<double> m, std::size_t rows, double rho, std::span<double> scratch) {
  const std::size_t cols = rows == 0 ? 0 : m.size() / rows;
  row_sq_norms(m, rows, scratch);
  const std::size_t vec_rows = rows - rows % kLanes;
  const float64x2_t vrho = vdupq_n_f64(rho);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t zero = vdupq_n_f64(0.0);
  double* f = scratch.data();
  std::size_t r = 0;
  for (; r < vec_rows; r += kLanes) {
    const float64x2_t scaled = vmulq_f64(vrho, vsqrtq_f64(vld1q_f64(f + r)));
    const float64x2_t factor = vsubq_f64(one, vdivq_f64(one, scaled));
    vst1q_f64(f + r, vmaxq_f64(factor, zero));
  }
  for (; r < rows; ++r) f[r] = std::max(0.0, 1.0 - 1.0 / (rho * std::sqrt(f[r])));
  scale_rows(m.data(), rows, cols, f);
}

void project_unit_balls(std::span<double> m, std::size_t rows, std::span<double> scratch) {
  const std::size_t cols = rows == 0 ? 0 : m.size() / rows;
  row_sq_norms(m, rows, scratch);
  const std::size_t vec_rows = rows - rows % kLanes;
  const float64x2_t one = vdupq_n_f64(1.0);
  double* f = scratch.data();
  std::size_t r = 0;
  for (; r < vec_rows; r += kLanes) {
    const float64x2_t s = vld1q_f64(f + r);
    const float64x2_t inv = vdivq_f64(one, vsqrtq_f64(s));
    vst1q_f64(f + r, vbslq_f64(vcgtq_f64(s, one), inv, one));
  }
  for (; r < rows; ++r) f[r] = f[r] > 1.0 ? 1.0 / std::sqrt(f[r]) : 1.0;
  scale_rows(m.data(), rows, cols, f);
}

void sq_dist_to_point(std::span<const double> m, std::size_t rows, std::span<const double> point,
                      std::span<double> out) {
  const std::size_t vec_rows = rows - rows % kLanes;
  double* dst = out.data();
  std::fill_n(dst, rows, 0.0);
  for (std::size_t c = 0; c < point.size(); ++c) {
    const double* col = m.data() + c * rows;
    const double p = point[c];
    const float64x2_t vp = vdupq_n_f64(p);
    std::size_t r = 0;
    for (; r < vec_rows; r += kLanes) {
      const float64x2_t diff = vsubq_f64(vld1q_f64(col + r), vp);
      vst1q_f64(dst + r, vaddq_f64(vld1q_f64(dst + r), vmulq_f64(diff, diff)));
    }
    for (; r < rows; ++r) {
      const double diff = col[r] - p;
      dst[r] = dst[r] + diff * diff;
    }
  }
}

void axpy_diff(std::span<double> y, std::span<const double> x, std::span<const double> z,
               double a) {
  const std::size_t n = y.size();
  const std::size_t vec_n = n - n % kLanes;
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i < vec_n; i += kLanes) {
    const float64x2_t diff = vsubq_f64(vld1q_f64(x.data() + i), vld1q_f64(z.data() + i));
    vst1q_f64(y.data() + i, vaddq_f64(vld1q_f64(y.data() + i), vmulq_f64(va, diff)));
  }
  for (; i < n; ++i) y[i] = y[i] + a * (x[i] - z[i]);
}

double sq_diff_norm(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t vec_n = n - n % kLanes;
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i < vec_n; i += kLanes) {
    const float64x2_t diff = vsubq_f64(vld1q_f64(a.data() + i), vld1q_f64(b.data() + i));
    acc = vaddq_f64(acc, vmulq_f64(diff, diff));
  }
  double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    const double diff = a[i] - b[i];
    total += diff * diff;
  }
  return total;
}

}  // namespace

const KernelTable* neon() {
  static const KernelTable table{"neon",           row_sq_norms, group_shrink, project_unit_balls,
                                 sq_dist_to_point, axpy_diff,    sq_diff_norm};
  return &table;
}

}  // namespace trilasso::kernels
