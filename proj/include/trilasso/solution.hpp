#pragma once

#include <limits>
#include <string>
#include <vector>

#include "trilasso/clusters.hpp"
#include "trilasso/common.hpp"

namespace trilasso {

enum class Method { admm, dual };

std::string to_string(Method method);
Method parse_method(const std::string& name);

/// Result of either solver.
struct Solution {
  Method method = Method::admm;
  Matrix x;       // n x d primal solution
  Matrix z;       // m x d split variable (ADMM only)
  Matrix dual;    // m x d: U for ADMM, lambda for the dual method
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;
  // ADMM: ||QX - Z|| and rho ||Q^T (Z^t - Z^{t-1})||.
  // Dual: recovery stationarity ||grad f(X) + Q^T lambda|| and the gradient-mapping norm.
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double duality_gap = std::numeric_limits<double>::quiet_NaN();  // dual method only
  std::vector<double> monitor_trace;  // ADMM: ||w^t - w^{t+1}||_H^2 per iteration
  std::vector<double> objective_trace;  // dual: D(lambda) per iteration
  ClusterAssignment assignment;
};

}  // namespace trilasso
