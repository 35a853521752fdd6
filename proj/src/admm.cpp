#include "trilasso/admm.hpp"

#include <cmath>

#include "trilasso/clusters.hpp"
#include "trilasso/kernels.hpp"

namespace trilasso {
namespace {

std::span<double> flat(Matrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }
std::span<const double> flat(const Matrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }

}  // namespace

StopMode parse_stop_mode(const std::string& name) {
  if (name == "residual") return StopMode::residual;
  if (name == "cluster_stable" || name == "cluster-stable") return StopMode::cluster_stable;
  if (name == "both") return StopMode::both;
  throw Error("unknown stop mode '" + name + "' (expected residual, cluster_stable or both)");
}

void AdmmConfig::validate() const {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw Error("ADMM: rho must be positive");
  if (max_iter < 1) throw Error("ADMM: max_iter must be positive");
  if (!(tol_abs >= 0.0) || !(tol_rel >= 0.0)) throw Error("ADMM: tolerances must be non-negative");
  if (cluster_stable_window < 1) throw Error("ADMM: cluster_stable_window must be >= 1");
  if (!(fuse_tol > 0.0)) throw Error("ADMM: fuse_tol must be positive");
}

AdmmState initial_admm_state(const LossModel& loss, const PenaltyMatrix& q, double rho,
                             const Matrix* warm_x) {
  AdmmState s;
  s.x = warm_x ? *warm_x : loss.minimizer();
  if (s.x.rows() != loss.rows() || s.x.cols() != loss.cols()) throw Error("ADMM: warm start has the wrong shape");
  s.z = q.apply(s.x);
  s.u = Matrix::Zero(q.rows(), loss.cols());
  s.rho = rho;
  return s;
}

Matrix z_update_from_product(const Matrix& qx, const Matrix& u, double rho) {
  if (!(rho > 0.0)) throw Error("z_update: rho must be positive");
  Matrix v = qx + u / rho;
  std::vector<double> scratch(static_cast<std::size_t>(v.rows()));
  kernels::active().group_shrink(flat(v), static_cast<std::size_t>(v.rows()), rho, scratch);
  return v;
}

Matrix z_update(const PenaltyMatrix& q, const Matrix& x, const Matrix& u, double rho) {
  return z_update_from_product(q.apply(x), u, rho);
}

Matrix u_update(const AdmmState& state, const PenaltyMatrix& q) {
  const Matrix qx = q.apply(state.x);
  Matrix u = state.u;
  kernels::active().axpy_diff(flat(u), flat(qx), flat(state.z), state.rho);
  return u;
}

double ConvergenceMonitor::h_norm_sq(const AdmmState& a, const AdmmState& b, double rho) {
  const auto& k = kernels::active();
  return rho * k.sq_diff_norm(flat(a.z), flat(b.z)) + k.sq_diff_norm(flat(a.u), flat(b.u)) / rho;
}

void ConvergenceMonitor::step(const AdmmState& prev, const AdmmState& next, double rho) {
  trace_.push_back(h_norm_sq(prev, next, rho));
}

std::optional<std::size_t> ConvergenceMonitor::first_bound_violation(const AdmmState& w0,
                                                                     const AdmmState& w_ref,
                                                                     double rho,
                                                                     double rel_slack) const {
  const double initial_gap = h_norm_sq(w0, w_ref, rho);
  for (std::size_t t = 0; t < trace_.size(); ++t)
    if (trace_[t] > initial_gap / static_cast<double>(t + 1) * (1.0 + rel_slack)) return t;
  return std::nullopt;
}

ConvergenceMonitor monitor_step(ConvergenceMonitor monitor, const AdmmState& w_prev,
                                const AdmmState& w_next, double rho) {
  monitor.step(w_prev, w_next, rho);
  return monitor;
}

Solution solve_admm(const LossModel& loss, const PenaltyMatrix& q, const AdmmConfig& config,
                    const Matrix* warm_x) {
  config.validate();
  const double rho = config.rho;
  const Index n = loss.rows(), d = loss.cols(), m = q.rows();
  const XUpdateSolver x_solver(loss, q, rho, config.x_update);
  const auto& kern = kernels::active();

  AdmmState state = initial_admm_state(loss, q, rho, warm_x);
  ConvergenceMonitor monitor;
  const bool use_residual = config.stop_mode != StopMode::cluster_stable;
  const bool use_clusters = config.stop_mode != StopMode::residual;
  ClusterAssignment previous;
  int stable = 0;

  Solution sol;
  sol.method = Method::admm;
  sol.stop_reason = "max_iter";
  const double sqrt_md = std::sqrt(static_cast<double>(m * d));
  const double sqrt_nd = std::sqrt(static_cast<double>(n * d));
  std::vector<double> scratch(static_cast<std::size_t>(m));

  for (int it = 0; it < config.max_iter; ++it) {
    AdmmState next;
    next.rho = rho;
    next.t = state.t + 1;
    next.x = x_solver.solve(state.z, state.u, &state.x);
    const Matrix qx = q.apply(next.x);

    next.z = qx + state.u / rho;
    kern.group_shrink(flat(next.z), static_cast<std::size_t>(m), rho, scratch);
    next.u = state.u;
    kern.axpy_diff(flat(next.u), flat(qx), flat(next.z), rho);

    if (!next.x.allFinite() || !next.z.allFinite() || !next.u.allFinite())
      throw DivergenceError("ADMM diverged at iteration " + std::to_string(next.t) +
                            " (non-finite iterate; try a different rho, currently " + std::to_string(rho) + ")");

    sol.primal_residual = std::sqrt(kern.sq_diff_norm(flat(qx), flat(next.z)));
    sol.dual_residual = rho * q.apply_transpose(next.z - state.z).norm();
    monitor.step(state, next, rho);
    state = std::move(next);
    sol.iterations = state.t;

    if (use_residual) {
      const double eps_pri = sqrt_md * config.tol_abs + config.tol_rel * std::max(qx.norm(), state.z.norm());
      const double eps_dual = sqrt_nd * config.tol_abs + config.tol_rel * q.apply_transpose(state.u).norm();
      if (sol.primal_residual <= eps_pri && sol.dual_residual <= eps_dual) {
        sol.converged = true;
        sol.stop_reason = "residual";
        break;
      }
    }
    if (use_clusters) {
      ClusterAssignment current = extract_clusters(state.x, q, config.fuse_tol);
      stable = (it > 0 && current.labels == previous.labels) ? stable + 1 : 0;
      previous = std::move(current);
      if (stable >= config.cluster_stable_window) {
        sol.converged = true;
        sol.stop_reason = "cluster_stable";
        break;
      }
    }
  }

  sol.x = std::move(state.x);
  sol.z = std::move(state.z);
  sol.dual = std::move(state.u);
  sol.objective = objective(loss, sol.x, q);
  sol.monitor_trace = monitor.trace();
  sol.assignment = extract_clusters(sol.x, q, config.fuse_tol);
  return sol;
}

}  // namespace trilasso
