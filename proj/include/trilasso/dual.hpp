#pragma once

#include "trilasso/common.hpp"
#include "trilasso/loss.hpp"
#include "trilasso/penalty.hpp"
#include "trilasso/solution.hpp"

namespace trilasso {

enum class StepMode { fixed_lipschitz, backtracking };

StepMode parse_step_mode(const std::string& name);

struct DualConfig {
  int max_iter = 20000;
  double tol = 1e-7;  // gradient-mapping norm
  StepMode step_mode = StepMode::fixed_lipschitz;
  int power_iterations = 100;
  // Instances with m * d above this are refused rather than partitioned.
  Index max_problem_size = 20'000'000;

  void validate() const;
};

/// D(lambda) = f*(-Q^T lambda), constant-free conjugate.
double dual_objective(const LossModel& loss, const PenaltyMatrix& q, const Matrix& lambda);

/// grad D(lambda) = -Q grad f*(-Q^T lambda), m x d.
Matrix dual_gradient(const LossModel& loss, const PenaltyMatrix& q, const Matrix& lambda);

/// Rows with l2 norm above 1 are scaled back onto the unit sphere.
Matrix project_row_balls(Matrix lambda);
void project_row_balls_inplace(Matrix& lambda);

/// Largest eigenvalue of lambda -> Q H^{-1} Q^T lambda (the Lipschitz constant
/// of grad D) by power iteration, inflated by 0.5% so that it bounds the true
/// value once the iteration has settled.
double estimate_lipschitz(const LossModel& loss, const PenaltyMatrix& q, int iterations = 100);

/// Accelerated projected gradient on D over the product of unit balls with
/// function-value restart, followed by primal recovery. Throws when the
/// instance exceeds config.max_problem_size; exhausting max_iter returns the
/// last iterate flagged as not converged.
Solution solve_dual(const LossModel& loss, const PenaltyMatrix& q, const DualConfig& config = {},
                    const Matrix* warm_lambda = nullptr);

/// Gap between the primal objective at X and the dual value at lambda, with
/// the conjugate's dropped constant restored.
double duality_gap(const LossModel& loss, const PenaltyMatrix& q, const Matrix& x, const Matrix& lambda);

}  // namespace trilasso
