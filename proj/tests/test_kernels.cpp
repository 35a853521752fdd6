#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "trilasso/kernels.hpp"

using trilasso::kernels::KernelTable;

namespace {

std::vector<double> random_values(std::size_t count, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> draw(0.0, scale);
  std::vector<double> v(count);
  for (auto& x : v) x = draw(rng);
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Row counts that exercise full vectors, tails and tiny inputs.
constexpr std::size_t kRows[] = {1, 2, 3, 4, 5, 7, 8, 13, 64, 101};
constexpr std::size_t kCols[] = {1, 2, 3, 5};

}  // namespace

TEST_CASE("scalar reference kernels on hand examples") {
  const KernelTable& k = trilasso::kernels::scalar();
  // 2 x 2 column-major: rows (3, 4) and (0.3, 0.4).
  std::vector<double> m{3.0, 0.3, 4.0, 0.4}, out(2), scratch(2);
  k.row_sq_norms(m, 2, out);
  CHECK(out[0] == doctest::Approx(25.0));
  CHECK(out[1] == doctest::Approx(0.25));

  auto shrunk = m;
  k.group_shrink(shrunk, 2, 1.0, scratch);
  CHECK(shrunk[0] == doctest::Approx(2.4));
  CHECK(shrunk[2] == doctest::Approx(3.2));
  CHECK(shrunk[1] == 0.0);
  CHECK(shrunk[3] == 0.0);

  auto projected = m;
  k.project_unit_balls(projected, 2, scratch);
  CHECK(projected[0] == doctest::Approx(0.6));
  CHECK(projected[2] == doctest::Approx(0.8));
  CHECK(projected[1] == 0.3);
  CHECK(projected[3] == 0.4);

  std::vector<double> point{3.0, 0.0};
  k.sq_dist_to_point(m, 2, point, out);
  CHECK(out[0] == doctest::Approx(16.0));

  std::vector<double> y{1.0, 1.0}, x{3.0, 5.0}, z{1.0, 1.0};
  k.axpy_diff(y, x, z, 0.5);
  CHECK(y[0] == doctest::Approx(2.0));
  CHECK(y[1] == doctest::Approx(3.0));
  CHECK(k.sq_diff_norm(x, z) == doctest::Approx(20.0));
}

TEST_CASE("zero rows stay zero under shrink and projection") {
  for (const KernelTable* k : trilasso::kernels::supported()) {
    CAPTURE(k->name);
    std::vector<double> m(12, 0.0), scratch(4);
    k->group_shrink(m, 4, 2.0, scratch);
    k->project_unit_balls(m, 4, scratch);
    for (double v : m) CHECK(v == 0.0);
  }
}

TEST_CASE("SIMD row kernels agree bit for bit with the scalar reference") {
  const KernelTable& ref = trilasso::kernels::scalar();
  const auto variants = trilasso::kernels::supported();
  MESSAGE("kernel variants on this CPU: " << variants.size() << ", active: " << trilasso::kernels::active().name);
  std::uint64_t seed = 1;
  for (const KernelTable* k : variants) {
    for (std::size_t rows : kRows) {
      for (std::size_t cols : kCols) {
        CAPTURE(k->name);
        CAPTURE(rows);
        CAPTURE(cols);
        const auto m = random_values(rows * cols, seed++, 1.5);
        std::vector<double> a(rows), b(rows), sa(rows), sb(rows);

        ref.row_sq_norms(m, rows, a);
        k->row_sq_norms(m, rows, b);
        CHECK(bit_equal(a, b));

        for (double rho : {0.3, 1.0, 7.0}) {
          auto ma = m, mb = m;
          ref.group_shrink(ma, rows, rho, sa);
          k->group_shrink(mb, rows, rho, sb);
          CHECK(bit_equal(ma, mb));
        }

        auto pa = m, pb = m;
        ref.project_unit_balls(pa, rows, sa);
        k->project_unit_balls(pb, rows, sb);
        CHECK(bit_equal(pa, pb));

        const auto point = random_values(cols, seed++, 1.0);
        ref.sq_dist_to_point(m, rows, point, a);
        k->sq_dist_to_point(m, rows, point, b);
        CHECK(bit_equal(a, b));

        const auto x = random_values(rows * cols, seed++, 1.0);
        const auto z = random_values(rows * cols, seed++, 1.0);
        auto ya = m, yb = m;
        ref.axpy_diff(ya, x, z, 0.7);
        k->axpy_diff(yb, x, z, 0.7);
        CHECK(bit_equal(ya, yb));

        // A reduction: summation order may differ.
        const double ra = ref.sq_diff_norm(x, z), rb = k->sq_diff_norm(x, z);
        CHECK(std::abs(ra - rb) <= 1e-13 * std::max(1.0, ra));
      }
    }
  }
}

TEST_CASE("shrink factor matches the closed form on random rows") {
  const auto& k = trilasso::kernels::active();
  const std::size_t rows = 50, cols = 3;
  const auto m = random_values(rows * cols, 99, 1.0);
  std::vector<double> out = m, scratch(rows);
  const double rho = 2.0;
  k.group_shrink(out, rows, rho, scratch);
  for (std::size_t r = 0; r < rows; ++r) {
    double norm = 0.0;
    for (std::size_t c = 0; c < cols; ++c) norm += m[r + c * rows] * m[r + c * rows];
    norm = std::sqrt(norm);
    const double factor = std::max(0.0, 1.0 - 1.0 / (rho * norm));
    for (std::size_t c = 0; c < cols; ++c) CHECK(out[r + c * rows] == doctest::Approx(factor * m[r + c * rows]).epsilon(1e-14));
  }
}
