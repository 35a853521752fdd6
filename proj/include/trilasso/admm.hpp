#pragma once

#include <optional>
#include <vector>

#include "trilasso/common.hpp"
#include "trilasso/loss.hpp"
#include "trilasso/penalty.hpp"
#include "trilasso/solution.hpp"
#include "trilasso/x_update.hpp"

namespace trilasso {

enum class StopMode {
  residual,        // primal and dual residuals below their thresholds
  cluster_stable,  // cluster assignment unchanged for a window of iterations
  both,            // whichever of the two fires first
};

StopMode parse_stop_mode(const std::string& name);

struct AdmmConfig {
  double rho = 1.0;
  int max_iter = 5000;
  double tol_abs = 1e-8;
  double tol_rel = 1e-6;
  StopMode stop_mode = StopMode::residual;
  int cluster_stable_window = 10;
  double fuse_tol = kDefaultFuseTolerance;
  XUpdateOptions x_update;

  void validate() const;
};

/// One ADMM iterate; the stacked w = (vec X; vec Z; vec U).
struct AdmmState {
  Matrix x;
  Matrix z;
  Matrix u;
  double rho = 1.0;
  int t = 0;
};

/// X^0 = warm start (or argmin f), Z^0 = Q X^0, U^0 = 0.
AdmmState initial_admm_state(const LossModel& loss, const PenaltyMatrix& q, double rho,
                             const Matrix* warm_x = nullptr);

/// Row-wise group soft-threshold of v = QX + U / rho:
/// z_k = max(0, 1 - 1 / ||rho v_k||) v_k.
Matrix z_update(const PenaltyMatrix& q, const Matrix& x, const Matrix& u, double rho);
/// Same, starting from a precomputed QX.
Matrix z_update_from_product(const Matrix& qx, const Matrix& u, double rho);

/// U + rho (QX - Z).
Matrix u_update(const AdmmState& state, const PenaltyMatrix& q);

/// Records ||w^t - w^{t+1}||_H^2 with H = blockdiag(0, rho I, I / rho).
class ConvergenceMonitor {
 public:
  static double h_norm_sq(const AdmmState& a, const AdmmState& b, double rho);

  void step(const AdmmState& prev, const AdmmState& next, double rho);
  void record(double value) { trace_.push_back(value); }
  const std::vector<double>& trace() const { return trace_; }

  /// First t where trace[t] > ||w0 - w_ref||_H^2 / (t + 1) * (1 + rel_slack),
  /// or nullopt when the bound holds throughout.
  std::optional<std::size_t> first_bound_violation(const AdmmState& w0, const AdmmState& w_ref,
                                                   double rho, double rel_slack = 0.0) const;

 private:
  std::vector<double> trace_;
};

ConvergenceMonitor monitor_step(ConvergenceMonitor monitor, const AdmmState& w_prev,
                                const AdmmState& w_next, double rho);

/// Convex-loss ADMM for min f(X) + ||QX||_{1,2}. Throws DivergenceError on a
/// non-finite iterate; exhausting max_iter returns the last iterate flagged
/// as not converged.
Solution solve_admm(const LossModel& loss, const PenaltyMatrix& q, const AdmmConfig& config = {},
                    const Matrix* warm_x = nullptr);

}  // namespace trilasso
