#include "trilasso/cluster_path.hpp"

namespace trilasso {

void PathSchedule::validate() const {
  if (!(alpha_init > 0.0)) throw Error("path: alpha_init must be positive");
  if (!(step_init >= 1.0)) throw Error("path: step_init must be >= 1");
  if (!(step_increment >= 0.0)) throw Error("path: step_increment must be >= 0");
  if (num_points < 1) throw Error("path: num_points must be >= 1");
}

std::vector<double> PathSchedule::alphas() const {
  validate();
  std::vector<double> out;
  double alpha = alpha_init, step = step_init;
  for (int k = 0; k < num_points; ++k) {
    out.push_back(alpha);
    alpha *= step;
    step += step_increment;
  }
  return out;
}

Solution solve(const LossModel& loss, const PenaltyMatrix& q, const SolverOptions& options, const Matrix* warm) {
  Solution sol = options.method == Method::admm ? solve_admm(loss, q, options.admm, warm)
                                                : solve_dual(loss, q, options.dual, warm);
  sol.assignment = extract_clusters(sol.x, q, options.fuse_tol);
  return sol;
}

ClusterPath cluster_path(const LossModel& loss, const Graph& graph, const PathSchedule& schedule,
                         const SolverOptions& options) {
  ClusterPath path;
  Matrix warm;
  for (double alpha : schedule.alphas()) {
    if (!path.points.empty() && !(alpha > path.points.back().alpha)) continue;
    const PenaltyMatrix q(graph, alpha);
    Solution sol;
    try {
      sol = solve(loss, q, options, options.warm_start && warm.size() > 0 ? &warm : nullptr);
    } catch (const Error& e) {
      path.truncated = true;
      path.failure = "alpha " + std::to_string(alpha) + ": " + e.what();
      break;
    }
    warm = options.method == Method::admm ? sol.x : sol.dual;
    path.points.push_back({alpha, sol.assignment, sol.x, sol.converged, sol.iterations});
  }
  return path;
}

}  // namespace trilasso
