#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "trilasso/admm.hpp"
#include "trilasso/dual.hpp"

using namespace trilasso;
using support::random_matrix;

namespace {

Matrix row(std::initializer_list<double> values) {
  Matrix m(1, static_cast<Index>(values.size()));
  Index c = 0;
  for (double v : values) m(0, c++) = v;
  return m;
}

}  // namespace

TEST_CASE("z update examples") {
  CHECK(z_update_from_product(row({0.3, 0.4}), Matrix::Zero(1, 2), 1.0).norm() == 0.0);
  const Matrix a = z_update_from_product(row({3, 4}), Matrix::Zero(1, 2), 1.0);
  CHECK(a(0, 0) == doctest::Approx(2.4));
  CHECK(a(0, 1) == doctest::Approx(3.2));
  const Matrix b = z_update_from_product(row({3, 4}), Matrix::Zero(1, 2), 2.0);
  CHECK(b(0, 0) == doctest::Approx(2.7));
  CHECK(b(0, 1) == doctest::Approx(3.6));
  // U enters as U / rho.
  const Matrix c = z_update_from_product(row({1, 2}), row({4, 4}), 2.0);
  CHECK(c(0, 0) == doctest::Approx(2.7));
  CHECK(c(0, 1) == doctest::Approx(3.6));
  CHECK(z_update_from_product(Matrix::Zero(2, 3), Matrix::Zero(2, 3), 1.0).norm() == 0.0);
}

TEST_CASE("z update satisfies the prox optimality condition") {
  const Matrix v = random_matrix(200, 3, 1, 0.8);
  for (double rho : {0.5, 1.0, 4.0}) {
    const Matrix z = z_update_from_product(v, Matrix::Zero(200, 3), rho);
    for (Index k = 0; k < 200; ++k) {
      const double nz = z.row(k).norm();
      if (nz > 0.0) {
        CHECK((z.row(k) / nz + rho * (z.row(k) - v.row(k))).norm() <= 1e-9);
      } else {
        CHECK(rho * v.row(k).norm() <= 1.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("u update") {
  const Graph g = support::five_vertex_graph();
  const PenaltyMatrix q(g, 1.0);
  AdmmState s;
  s.x = random_matrix(5, 2, 2);
  s.z = q.apply(s.x);
  s.u = random_matrix(5, 2, 3);
  s.rho = 1.5;
  CHECK((u_update(s, q) - s.u).norm() == 0.0);
  const Matrix r1 = random_matrix(5, 2, 4);
  s.z = q.apply(s.x) - r1;
  s.u.setZero();
  s.rho = 1.0;
  CHECK((u_update(s, q) - r1).norm() < 1e-14);

  // Two steps compose additively.
  s.rho = 2.0;
  s.u = random_matrix(5, 2, 5);
  const Matrix u0 = s.u;
  s.u = u_update(s, q);
  const Matrix r2 = random_matrix(5, 2, 6);
  s.z = q.apply(s.x) - r2;
  s.u = u_update(s, q);
  CHECK((s.u - (u0 + 2.0 * (r1 + r2))).norm() < 1e-12);
}

TEST_CASE("monitor H-norm arithmetic") {
  AdmmState a, b;
  a.x = random_matrix(2, 2, 7);
  b.x = random_matrix(2, 2, 8);  // X block carries zero weight
  a.z = Matrix::Zero(1, 2);
  b.z = row({1, 0});
  a.u = Matrix::Zero(1, 2);
  b.u = row({0, 2});
  CHECK(ConvergenceMonitor::h_norm_sq(a, b, 1.0) == doctest::Approx(5.0));
  ConvergenceMonitor m = monitor_step({}, a, a, 1.0);
  CHECK(m.trace().back() == 0.0);
}

TEST_CASE("no edges converges immediately to the minimizer") {
  const Matrix a = random_matrix(4, 2, 9);
  const Solution s = solve_admm(LossModel::clustering(a), PenaltyMatrix(Graph(4, {}), 1.0));
  CHECK(s.converged);
  CHECK(s.iterations <= 1);
  CHECK((s.x - a).norm() < 1e-14);
}

TEST_CASE("two points fuse at their mean") {
  Matrix a(2, 2);
  a << 0, 0, 2, 0;
  const PenaltyMatrix q(count_triangles(Graph(2, {{0, 1}})), 5.0);
  const Solution s = solve_admm(LossModel::clustering(a), q);
  REQUIRE(s.converged);
  CHECK(s.x(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.x(1, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(s.x(0, 1)) < 1e-6);
  CHECK(s.assignment.num_clusters == 1);

  // Below the fusion threshold (alpha < 2) the rows stay apart.
  const Solution apart = solve_admm(LossModel::clustering(a), PenaltyMatrix(count_triangles(Graph(2, {{0, 1}})), 0.5));
  CHECK(apart.x(0, 0) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(apart.x(1, 0) == doctest::Approx(1.75).epsilon(1e-6));
  CHECK(apart.assignment.num_clusters == 2);
}

TEST_CASE("ADMM fixed point is stationary with U as the dual") {
  const Graph g = support::random_connected_graph(10, 0.3, 10);
  const LossModel loss = LossModel::clustering(random_matrix(10, 2, 11));
  AdmmConfig cfg;
  cfg.tol_abs = 1e-10;
  cfg.tol_rel = 1e-9;
  cfg.max_iter = 50000;
  const Solution s = solve_admm(loss, PenaltyMatrix(g, 0.4), cfg);
  REQUIRE(s.converged);
  const PenaltyMatrix q(g, 0.4);
  CHECK((loss.gradient(s.x) + q.apply_transpose(s.dual)).norm() <= 10.0 * std::sqrt(double(q.rows() * 2)) * 1e-6);
  // Feasible multipliers of the row-norm penalty.
  CHECK(s.dual.rowwise().norm().maxCoeff() <= 1.0 + 1e-6);
}

TEST_CASE("ridge ADMM approaches the dual solution") {
  const Graph g = support::random_connected_graph(12, 0.3, 12);
  const LossModel loss = LossModel::ridge(random_matrix(12, 3, 13), random_matrix(12, 1, 14).col(0), 0.5);
  const PenaltyMatrix q(g, 0.05);
  DualConfig dc;
  dc.max_iter = 200000;
  const Solution d = solve_dual(loss, q, dc);
  REQUIRE(d.converged);
  // Fixed-rho ADMM converges sublinearly here; check progress rather than the stopping rule.
  AdmmConfig cfg;
  cfg.max_iter = 20000;
  const Solution a = solve_admm(loss, q, cfg);
  CHECK(support::rel_err(a.objective, d.objective) < 1e-5);
  CHECK((a.x - d.x).cwiseAbs().maxCoeff() < 1e-2);
  AdmmConfig short_cfg = cfg;
  short_cfg.max_iter = 200;
  CHECK(a.objective - d.objective < solve_admm(loss, q, short_cfg).objective - d.objective);
}

TEST_CASE("residual trend on a fixed instance") {
  const Graph g = support::random_connected_graph(10, 0.3, 15);
  const LossModel loss = LossModel::clustering(random_matrix(10, 2, 16));
  const PenaltyMatrix q(g, 0.5);
  auto residual_after = [&](int iters) {
    AdmmConfig cfg;
    cfg.max_iter = iters;
    cfg.tol_abs = 1e-300;
    cfg.tol_rel = 1e-300;
    return solve_admm(loss, q, cfg).primal_residual;
  };
  CHECK(residual_after(100) < residual_after(10));
}

TEST_CASE("stop modes") {
  const Graph g = support::random_connected_graph(10, 0.3, 17);
  const LossModel loss = LossModel::clustering(random_matrix(10, 2, 18));
  const PenaltyMatrix q(g, 0.5);
  AdmmConfig cfg;
  cfg.stop_mode = StopMode::cluster_stable;
  cfg.cluster_stable_window = 5;
  const Solution s = solve_admm(loss, q, cfg);
  CHECK(s.converged);
  CHECK(s.stop_reason == "cluster_stable");
  cfg.stop_mode = StopMode::both;
  const Solution b = solve_admm(loss, q, cfg);
  CHECK(b.converged);
  CHECK(b.iterations <= s.iterations);
  CHECK(parse_stop_mode("both") == StopMode::both);
  CHECK_THROWS_AS(parse_stop_mode("never"), Error);
}

TEST_CASE("max_iter exhaustion is flagged and runs are deterministic") {
  const Graph g = support::random_connected_graph(10, 0.3, 19);
  const LossModel loss = LossModel::clustering(random_matrix(10, 2, 20));
  AdmmConfig cfg;
  cfg.max_iter = 3;
  const Solution s = solve_admm(loss, PenaltyMatrix(g, 0.5), cfg);
  CHECK_FALSE(s.converged);
  CHECK(s.stop_reason == "max_iter");
  CHECK(s.iterations == 3);
  CHECK(s.monitor_trace.size() == 3);
  const Solution again = solve_admm(loss, PenaltyMatrix(g, 0.5), cfg);
  CHECK(std::memcmp(s.x.data(), again.x.data(), sizeof(double) * s.x.size()) == 0);
}

TEST_CASE("invalid configuration is rejected") {
  AdmmConfig cfg;
  cfg.rho = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.cluster_stable_window = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}
