#pragma once

// Row-wise arithmetic kernels used by the solvers and the graph builder.
//
// All matrices handed to these kernels are column-major (Eigen's default), so
// a row-wise reduction becomes an element-wise accumulation over columns and
// vectorizes across rows. Each kernel exists as a scalar reference and,
// where the target supports it, an AVX2 or NEON variant. The row kernels
// perform the same IEEE operations in the same order in every variant and
// therefore agree bit-for-bit; only `sq_diff_norm` (a flat reduction) may
// differ in the last bits.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace trilasso::kernels {

struct KernelTable {
  std::string_view name;

  // out[r] = sum_c m(r, c)^2 for a rows x cols column-major matrix.
  void (*row_sq_norms)(std::span<const double> m, std::size_t rows, std::span<double> out);

  // Group soft-threshold in place: row r is scaled by
  // max(0, 1 - 1 / (rho * ||row_r||)). A zero row stays zero.
  void (*group_shrink)(std::span<double> m, std::size_t rows, double rho,
                       std::span<double> scratch);

  // Rows with l2 norm above 1 are rescaled onto the unit sphere.
  void (*project_unit_balls)(std::span<double> m, std::size_t rows, std::span<double> scratch);

  // out[r] = ||m(r, :) - point||^2.
  void (*sq_dist_to_point)(std::span<const double> m, std::size_t rows,
                           std::span<const double> point, std::span<double> out);

  // y += a * (x - z)
  void (*axpy_diff)(std::span<double> y, std::span<const double> x, std::span<const double> z,
                    double a);

  // sum_i (a_i - b_i)^2
  double (*sq_diff_norm)(std::span<const double> a, std::span<const double> b);
};

const KernelTable& scalar();

// Null when the variant was not compiled in for this target.
const KernelTable* avx2();
const KernelTable* neon();

// Every variant that can run on this CPU, scalar first.
std::vector<const KernelTable*> supported();

// Best variant the running CPU supports. Setting TRILASSO_SIMD=scalar in the
// environment pins the scalar reference.
const KernelTable& active();

}  // namespace trilasso::kernels
