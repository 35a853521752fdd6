#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "trilasso/kernels.hpp"

namespace trilasso::kernels {
namespace {

constexpr std::size_t kLanes = 4;

void row_sq_norms(std::span<const double> m, std::size_t rows, std::span<double> out) {
  const std::size_t cols = rows == 0 ? 0 : m.size() / rows;
  const std::size_t vec_rows = rows - rows % kLanes;
  double* dst = out.data();
  std::fill_n(dst, rows, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    const double* col = m.data() + c * rows;
    std::size_t r = 0;
    for (; r < vec_rows; r += kLanes) {
      const __m256d x = _mm256_loadu_pd(col + r);
      const __m256d acc = _mm256_loadu_pd(dst + r);
      _mm256_storeu_pd(dst + r, _mm256_add_pd(acc, _mm256_mul_pd(x, x)));
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
      _mm256_storeu_pd(col + r, _mm256_mul_pd(_mm256_loadu_pd(col + r), _mm256_loadu_pd(factor + r)));
    for (; r < rows; ++r) col[r] = col[r] * factor[r];
  }
}

void group_shrink(std::span<double> m, std::size_t rows, double rho, std::span<double> scratch) {
  const std::size_t cols = rows == 0 ? 0 : m.size() / rows;
  row_sq_norms(m, rows, scratch);
  const std::size_t vec_rows = rows - rows % kLanes;
  const __m256d vrho = _mm256_set1_pd(rho);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  double* f = scratch.data();
  std::size_t r = 0;
  for (; r < vec_rows; r += kLanes) {
    const __m256d scaled = _mm256_mul_pd(vrho, _mm256_sqrt_pd(_mm256_loadu_pd(f + r)));
    const __m256d factor = _mm256_sub_pd(one, _mm256_div_pd(one, scaled));
    // max_pd(x, 0) yields 0 on NaN, as std::max(0.0, x) does.
    _mm256_storeu_pd(f + r, _mm256_max_pd(factor, zero));
  }
  for (; r < rows; ++r) f[r] = std::max(0.0, 1.0 - 1.0 / (rho * std::sqrt(f[r])));
  scale_rows(m.data(), rows, cols, f);
}

void project_unit_balls(std::span<double> m, std::size_t rows, std::span<double> scratch) {
  const std::size_t cols = rows == 0 ? 0 : m.size() / rows;
  row_sq_norms(m, rows, scratch);
  const std::size_t vec_rows = rows - rows % kLanes;
  const __m256d one = _mm256_set1_pd(1.0);
  double* f = scratch.data();
  std::size_t r = 0;
  for (; r < vec_rows; r += kLanes) {
    const __m256d s = _mm256_loadu_pd(f + r);
    const __m256d inv = _mm256_div_pd(one, _mm256_sqrt_pd(s));
    const __m256d outside = _mm256_cmp_pd(s, one, _CMP_GT_OQ);
    _mm256_storeu_pd(f + r, _mm256_blendv_pd(one, inv, outside));
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
    const __m256d vp = _mm256_set1_pd(p);
    std::size_t r = 0;
    for (; r < vec_rows; r += kLanes) {
      const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(col + r), vp);
      _mm256_storeu_pd(dst + r, _mm256_add_pd(_mm256_loadu_pd(dst + r), _mm256_mul_pd(diff, diff)));
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
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i < vec_n; i += kLanes) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(z.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_loadu_pd(y.data() + i), _mm256_mul_pd(va, diff)));
  }
  for (; i < n; ++i) y[i] = y[i] + a * (x[i] - z[i]);
}

double sq_diff_norm(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t vec_n = n - n % kLanes;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < vec_n; i += kLanes) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    const double diff = a[i] - b[i];
    total += diff * diff;
  }
  return total;
}

}  // namespace

const KernelTable* avx2() {
  static const KernelTable table{"avx2",           row_sq_norms, group_shrink, project_unit_balls,
                                 sq_dist_to_point, axpy_diff,    sq_diff_norm};
  return &table;
}

}  // namespace trilasso::kernels
