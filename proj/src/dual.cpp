#include "trilasso/dual.hpp"

#include <cmath>
#include <random>

#include "trilasso/clusters.hpp"
#include "trilasso/kernels.hpp"

namespace trilasso {

StepMode parse_step_mode(const std::string& name) {
  if (name == "fixed_lipschitz" || name == "fixed") return StepMode::fixed_lipschitz;
  if (name == "backtracking") return StepMode::backtracking;
  throw Error("unknown step mode '" + name + "' (expected fixed_lipschitz or backtracking)");
}

void DualConfig::validate() const {
  if (max_iter < 1) throw Error("dual: max_iter must be positive");
  if (!(tol > 0.0)) throw Error("dual: tol must be positive");
  if (power_iterations < 1) throw Error("dual: power_iterations must be positive");
}

double dual_objective(const LossModel& loss, const PenaltyMatrix& q, const Matrix& lambda) {
  return loss.conjugate_value(-q.apply_transpose(lambda));
}

Matrix dual_gradient(const LossModel& loss, const PenaltyMatrix& q, const Matrix& lambda) {
  return -q.apply(loss.conjugate_gradient(-q.apply_transpose(lambda)));
}

void project_row_balls_inplace(Matrix& lambda) {
  std::vector<double> scratch(static_cast<std::size_t>(lambda.rows()));
  kernels::active().project_unit_balls({lambda.data(), static_cast<std::size_t>(lambda.size())},
                                       static_cast<std::size_t>(lambda.rows()), scratch);
}

Matrix project_row_balls(Matrix lambda) {
  project_row_balls_inplace(lambda);
  return lambda;
}

double estimate_lipschitz(const LossModel& loss, const PenaltyMatrix& q, int iterations) {
  if (q.rows() == 0) throw Error("estimate_lipschitz: Q has no rows");
  const Index m = q.rows(), d = loss.cols();
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  Matrix v(m, d);
  for (Index c = 0; c < d; ++c)
    for (Index r = 0; r < m; ++r) v(r, c) = unif(rng);
  v.normalize();
  auto apply = [&](const Matrix& w) { return q.apply(loss.hessian_solve(q.apply_transpose(w))); };
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const Matrix w = apply(v);
    const double rayleigh = (v.array() * w.array()).sum();
    const double norm = w.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw Error("estimate_lipschitz: power iteration collapsed (Q is zero or degenerate)");
    v = w / norm;
    const bool settled = std::abs(rayleigh - estimate) <= 1e-12 * rayleigh;
    estimate = rayleigh;
    if (settled) break;
  }
  return 1.005 * estimate;
}

double duality_gap(const LossModel& loss, const PenaltyMatrix& q, const Matrix& x, const Matrix& lambda) {
  const double primal = objective(loss, x, q);
  const double dual_value = -(dual_objective(loss, q, lambda) + loss.conjugate_offset());
  return primal - dual_value;
}

Solution solve_dual(const LossModel& loss, const PenaltyMatrix& q, const DualConfig& config,
                    const Matrix* warm_lambda) {
  config.validate();
  if (q.cols() != loss.rows()) throw Error("dual: Q does not match the loss");
  const Index m = q.rows(), d = loss.cols();
  if (m * d > config.max_problem_size)
    throw Error("dual: m*d = " + std::to_string(m * d) + " exceeds the configured budget of " +
                std::to_string(config.max_problem_size) + " (graph partitioning is not supported)");

  Solution sol;
  sol.method = Method::dual;
  Matrix lambda = Matrix::Zero(m, d);
  if (warm_lambda) {
    if (warm_lambda->rows() != m || warm_lambda->cols() != d) throw Error("dual: warm start has the wrong shape");
    lambda = project_row_balls(*warm_lambda);
  }

  if (m == 0) {
    sol.converged = true;
    sol.stop_reason = "no_edges";
  } else {
    const auto& kern = kernels::active();
    auto gradient_mapping = [&](const Matrix& lam, const Matrix& grad, double lip) {
      Matrix step = lam - grad / lip;
      project_row_balls_inplace(step);
      return lip * std::sqrt(kern.sq_diff_norm({lam.data(), static_cast<std::size_t>(lam.size())},
                                               {step.data(), static_cast<std::size_t>(step.size())}));
    };

    double lip = estimate_lipschitz(loss, q, config.power_iterations);
    if (config.step_mode == StepMode::backtracking) lip *= 0.25;
    Matrix y = lambda;
    double momentum = 1.0;
    double current = dual_objective(loss, q, lambda);
    sol.stop_reason = "max_iter";

    // Projected step from `from` with backtracking on the quadratic upper model.
    auto prox_step = [&](const Matrix& from, const Matrix& grad, double from_value) {
      while (true) {
        Matrix cand = from - grad / lip;
        project_row_balls_inplace(cand);
        const double value = dual_objective(loss, q, cand);
        if (config.step_mode == StepMode::fixed_lipschitz) return std::pair{std::move(cand), value};
        const Matrix diff = cand - from;
        const double model = from_value + (grad.array() * diff.array()).sum() + 0.5 * lip * diff.squaredNorm();
        if (value <= model + 1e-12 * std::abs(from_value)) return std::pair{std::move(cand), value};
        lip *= 2.0;
      }
    };

    for (int it = 0; it < config.max_iter; ++it) {
      const Matrix grad_y = dual_gradient(loss, q, y);
      auto [cand, cand_value] = prox_step(y, grad_y, dual_objective(loss, q, y));
      if (cand_value > current) {
        // Momentum overshot: restart from the current point.
        y = lambda;
        momentum = 1.0;
        std::tie(cand, cand_value) = prox_step(lambda, dual_gradient(loss, q, lambda), current);
      }
      const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
      y = cand + ((momentum - 1.0) / next_momentum) * (cand - lambda);
      momentum = next_momentum;
      lambda = std::move(cand);
      current = cand_value;
      sol.objective_trace.push_back(current);
      sol.iterations = it + 1;
      if (!lambda.allFinite()) throw DivergenceError("dual: non-finite iterate at iteration " + std::to_string(it + 1));

      sol.dual_residual = gradient_mapping(lambda, dual_gradient(loss, q, lambda), lip);
      if (sol.dual_residual <= config.tol) {
        sol.converged = true;
        sol.stop_reason = "gradient_mapping";
        break;
      }
    }
  }

  sol.x = recover_primal(loss, q, lambda);
  sol.primal_residual = (loss.gradient(sol.x) + q.apply_transpose(lambda)).norm();
  sol.objective = objective(loss, sol.x, q);
  sol.duality_gap = duality_gap(loss, q, sol.x, lambda);
  sol.dual = std::move(lambda);
  sol.assignment = extract_clusters(sol.x, q);
  return sol;
}

}  // namespace trilasso
