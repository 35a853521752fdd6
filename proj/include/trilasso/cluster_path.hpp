#pragma once

#include <vector>

#include "trilasso/admm.hpp"
#include "trilasso/clusters.hpp"
#include "trilasso/dual.hpp"
#include "trilasso/graph.hpp"
#include "trilasso/loss.hpp"

namespace trilasso {

/// Multiplicative alpha schedule: alpha_{k+1} = alpha_k * s_k, s_{k+1} = s_k + step_increment.
struct PathSchedule {
  double alpha_init = 100.0;
  double step_init = 1.0;
  double step_increment = 2.0;
  int num_points = 10;

  void validate() const;
  /// The raw sequence; repeats are possible when step_init is 1.
  std::vector<double> alphas() const;
};

struct PathPoint {
  double alpha = 0.0;
  ClusterAssignment assignment;
  Matrix x;
  bool converged = false;
  int iterations = 0;
};

struct ClusterPath {
  std::vector<PathPoint> points;  // alphas strictly increasing
  bool truncated = false;         // a solve failed; later points are missing
  std::string failure;
};

struct SolverOptions {
  Method method = Method::admm;
  bool warm_start = true;  // cluster paths only
  double fuse_tol = kDefaultFuseTolerance;
  AdmmConfig admm;
  DualConfig dual;
};

/// Solve along the schedule, rebuilding Q at each alpha. Schedule values that
/// do not exceed the previous recorded alpha are skipped so the path stays
/// strictly increasing.
ClusterPath cluster_path(const LossModel& loss, const Graph& graph, const PathSchedule& schedule,
                         const SolverOptions& options = {});

/// One solve with either method; `warm` is X for ADMM and lambda for the dual.
Solution solve(const LossModel& loss, const PenaltyMatrix& q, const SolverOptions& options,
               const Matrix* warm = nullptr);

}  // namespace trilasso
