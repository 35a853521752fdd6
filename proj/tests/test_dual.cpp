#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "trilasso/admm.hpp"
#include "trilasso/dual.hpp"

using namespace trilasso;
using support::random_matrix;

TEST_CASE("row-ball projection") {
  Matrix l(3, 2);
  l << 3, 4, 0.1, 0.2, 0, 0;
  const Matrix p = project_row_balls(l);
  CHECK(p(0, 0) == doctest::Approx(0.6));
  CHECK(p(0, 1) == doctest::Approx(0.8));
  CHECK(p(1, 0) == 0.1);
  CHECK(p(1, 1) == 0.2);
  CHECK(p.row(2).norm() == 0.0);
}

TEST_CASE("dual gradient at zero for clustering is -QA") {
  const Matrix a = random_matrix(5, 2, 1);
  const PenaltyMatrix q(support::five_vertex_graph(), 1.0);
  const LossModel loss = LossModel::clustering(a);
  CHECK((dual_gradient(loss, q, Matrix::Zero(5, 2)) + q.to_dense() * a).norm() < 1e-12);
}

TEST_CASE("dual gradient matches central differences") {
  const Graph g = support::random_connected_graph(9, 0.3, 2);
  const PenaltyMatrix q(g, 0.7);
  const LossModel losses[] = {LossModel::clustering(random_matrix(9, 3, 3)),
                              LossModel::ridge(random_matrix(9, 3, 4), random_matrix(9, 1, 5).col(0), 0.2)};
  for (const LossModel& loss : losses) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Matrix lambda = project_row_balls(random_matrix(q.rows(), 3, 10 + s));
      const Matrix dir = random_matrix(q.rows(), 3, 30 + s);
      const double analytic = (dual_gradient(loss, q, lambda).array() * dir.array()).sum();
      const double numeric =
          support::directional_fd([&](const Matrix& l) { return dual_objective(loss, q, l); }, lambda, dir);
      CHECK(support::rel_err(analytic, numeric) < 1e-6);
    }
  }
}

TEST_CASE("Lipschitz estimate") {
  const LossModel two = LossModel::clustering(random_matrix(2, 2, 6));
  const PenaltyMatrix single(count_triangles(Graph(2, {{0, 1}})), 1.0);
  const double l1 = estimate_lipschitz(two, single);
  CHECK(l1 >= 1.0);
  CHECK(l1 <= 1.05);
  const double l2 = estimate_lipschitz(two, PenaltyMatrix(count_triangles(Graph(2, {{0, 1}})), 2.0));
  CHECK(l2 / l1 == doctest::Approx(4.0).epsilon(1e-9));
  CHECK_THROWS_AS(estimate_lipschitz(two, PenaltyMatrix(Graph(2, {}), 1.0)), Error);
}

TEST_CASE("Lipschitz estimate against a dense eigen-decomposition") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Index n = 10 + 12 * static_cast<Index>(seed);
    const Graph g = support::random_connected_graph(n, 0.15, seed);
    const PenaltyMatrix q(g, 0.3 + seed);
    const LossModel clustering = LossModel::clustering(random_matrix(n, 2, 40 + seed));
    // Clustering: grad D is Lipschitz with constant sigma_max(Q)^2 / 2.
    const double sigma = Eigen::JacobiSVD<Matrix>(q.to_dense()).singularValues()(0);
    const double est = estimate_lipschitz(clustering, q);
    CHECK(est >= sigma * sigma / 2.0);
    CHECK(est <= 1.01 * sigma * sigma / 2.0);

    // Ridge: the largest eigenvalue of (I_d kron Q) H^-1 (I_d kron Q)^T, built densely.
    const Index d = 2;
    const LossModel ridge = LossModel::ridge(random_matrix(n, d, 50 + seed), random_matrix(n, 1, 60 + seed).col(0), 0.3);
    const Index m = q.rows();
    Matrix op(m * d, m * d);
    for (Index col = 0; col < m * d; ++col) {
      Matrix e = Matrix::Zero(m, d);
      e(col % m, col / m) = 1.0;
      const Matrix image = q.apply(ridge.hessian_solve(q.apply_transpose(e)));
      op.col(col) = Eigen::Map<const Vector>(image.data(), image.size());
    }
    const double top = Eigen::SelfAdjointEigenSolver<Matrix>(op).eigenvalues().maxCoeff();
    const double rest = estimate_lipschitz(ridge, q);
    CHECK(rest >= top);
    CHECK(rest <= 1.01 * top);
  }
}

TEST_CASE("no edges returns the minimizer") {
  const Matrix a = random_matrix(4, 2, 7);
  const Solution s = solve_dual(LossModel::clustering(a), PenaltyMatrix(Graph(4, {}), 1.0));
  CHECK(s.converged);
  CHECK((s.x - a).norm() < 1e-14);
}

TEST_CASE("two-point instance agrees with ADMM") {
  Matrix a(2, 2);
  a << 0, 0, 2, 0;
  const PenaltyMatrix q(count_triangles(Graph(2, {{0, 1}})), 0.5);
  const LossModel loss = LossModel::clustering(a);
  const Solution d = solve_dual(loss, q);
  const Solution p = solve_admm(loss, q);
  CHECK((d.x - p.x).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("feasibility, monotone objective and weak duality along the run") {
  const Graph g = support::random_connected_graph(15, 0.3, 8);
  const PenaltyMatrix q(g, 0.6);
  const LossModel loss = LossModel::clustering(random_matrix(15, 3, 9));
  for (StepMode mode : {StepMode::fixed_lipschitz, StepMode::backtracking}) {
    DualConfig cfg;
    cfg.step_mode = mode;
    const Solution s = solve_dual(loss, q, cfg);
    REQUIRE(s.converged);
    CHECK(s.dual.rowwise().norm().maxCoeff() <= 1.0 + 1e-12);
    for (std::size_t t = 1; t < s.objective_trace.size(); ++t)
      CHECK(s.objective_trace[t] <= s.objective_trace[t - 1] + 1e-12);
    for (double dual_value : s.objective_trace)
      CHECK(s.objective >= -(dual_value + loss.conjugate_offset()) - 1e-9);
    CHECK(s.duality_gap <= 1e-4 * std::max(1.0, std::abs(s.objective)));
    CHECK(s.primal_residual <= 1e-8);
  }
}

TEST_CASE("budget and shape checks") {
  const PenaltyMatrix q(support::five_vertex_graph(), 1.0);
  const LossModel loss = LossModel::clustering(random_matrix(5, 2, 10));
  DualConfig cfg;
  cfg.max_problem_size = 4;
  CHECK_THROWS_AS(solve_dual(loss, q, cfg), Error);
  const Matrix wrong = Matrix::Zero(3, 2);
  CHECK_THROWS_AS(solve_dual(loss, q, {}, &wrong), Error);
  CHECK(parse_step_mode("backtracking") == StepMode::backtracking);
}

TEST_CASE("warm start from a converged lambda finishes quickly") {
  const Graph g = support::random_connected_graph(12, 0.3, 11);
  const PenaltyMatrix q(g, 0.4);
  const LossModel loss = LossModel::clustering(random_matrix(12, 2, 12));
  const Solution cold = solve_dual(loss, q);
  const Solution warm = solve_dual(loss, q, {}, &cold.dual);
  CHECK(warm.iterations <= 2);
  CHECK(support::rel_err(cold.objective, warm.objective) < 1e-9);
}
