#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "trilasso/x_update.hpp"

using namespace trilasso;
using support::random_matrix;

namespace {

// The X-update minimizes f(X) + <U, QX - Z> + rho/2 ||QX - Z||^2.
double augmented(const LossModel& loss, const PenaltyMatrix& q, const Matrix& x, const Matrix& z, const Matrix& u,
                 double rho) {
  const Matrix r = q.apply(x) - z;
  return loss.value(x) + (u.array() * r.array()).sum() + 0.5 * rho * r.squaredNorm();
}

void check_minimizer(const LossModel& loss, const PenaltyMatrix& q, double rho, XUpdateOptions options) {
  const XUpdateSolver solver(loss, q, rho, options);
  const Matrix z = random_matrix(q.rows(), loss.cols(), 1);
  const Matrix u = random_matrix(q.rows(), loss.cols(), 2);
  const Matrix x = solver.solve(z, u);
  CHECK(solver.stationarity_residual(x, z, u) <= 1e-8);
  const double at = augmented(loss, q, x, z, u, rho);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Matrix pert = 1e-3 * random_matrix(x.rows(), x.cols(), 10 + s);
    CHECK(augmented(loss, q, x + pert, z, u, rho) >= at - 1e-12);
  }
}

}  // namespace

TEST_CASE("clustering X-update is stationary and minimal") {
  const Graph g = support::random_connected_graph(12, 0.3, 3);
  const PenaltyMatrix q(g, 0.8);
  check_minimizer(LossModel::clustering(random_matrix(12, 3, 4)), q, 1.0, {});
  check_minimizer(LossModel::clustering(random_matrix(12, 3, 4)), q, 3.5, {});
}

TEST_CASE("ridge X-update: factorized and CG paths") {
  const Graph g = support::random_connected_graph(15, 0.25, 5);
  const PenaltyMatrix q(g, 0.3);
  const LossModel loss = LossModel::ridge(random_matrix(15, 4, 6), random_matrix(15, 1, 7).col(0), 0.05);
  check_minimizer(loss, q, 1.0, {});
  XUpdateOptions cg;
  cg.force_cg = true;
  check_minimizer(loss, q, 1.0, cg);

  const XUpdateSolver direct(loss, q, 1.0), iterative(loss, q, 1.0, cg);
  CHECK_FALSE(direct.uses_cg());
  CHECK(iterative.uses_cg());
  const Matrix z = random_matrix(q.rows(), 4, 8), u = random_matrix(q.rows(), 4, 9);
  CHECK((direct.solve(z, u) - iterative.solve(z, u)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(iterative.last_cg_iterations() > 0);
}

TEST_CASE("tiny nnz budget switches ridge to CG") {
  const Graph g = support::random_connected_graph(10, 0.3, 10);
  const PenaltyMatrix q(g, 0.3);
  const LossModel loss = LossModel::ridge(random_matrix(10, 3, 11), random_matrix(10, 1, 12).col(0), 0.05);
  XUpdateOptions small;
  small.factor_nnz_budget = 10;
  CHECK(XUpdateSolver(loss, q, 1.0, small).uses_cg());
}

TEST_CASE("no edges gives the loss minimizer") {
  const Matrix a = random_matrix(4, 2, 13);
  const LossModel loss = LossModel::clustering(a);
  const PenaltyMatrix q(Graph(4, {}), 1.0);
  const Matrix x = admm_x_update(loss, q, Matrix::Zero(0, 2), Matrix::Zero(0, 2), 1.0);
  CHECK((x - a).norm() < 1e-14);
}
