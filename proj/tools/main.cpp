// trilasso command-line driver.
//
// Exit codes: 0 success (or converged), 2 solver did not converge (artifacts
// are still written), 1 usage or I/O error.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "trilasso/admm.hpp"
#include "trilasso/cluster_path.hpp"
#include "trilasso/dual.hpp"
#include "trilasso/io.hpp"
#include "trilasso/netgen.hpp"
#include "trilasso/tasks.hpp"

namespace {

using namespace trilasso;
using io::Json;
using io::Path;

constexpr int kExitNotConverged = 2;

struct DataOptions {
  std::string path;
  std::string response;
  std::string impute;
  double impute_sigma = 1.0;
  bool standardize = false;

  void add_to(CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--data", path, "Data CSV (header row, one instance per row)");
    if (required) opt->required();
    cmd->add_option("--response", response, "Name of the response column");
    cmd->add_option("--impute", impute, "Fill missing values: mean, zero or gaussian");
    cmd->add_option("--impute-sigma", impute_sigma, "Standard deviation for --impute gaussian");
    cmd->add_flag("--standardize", standardize, "Scale features to zero mean and unit variance");
  }

  Dataset load(std::uint64_t seed) const {
    Dataset data = io::read_data_csv(path, response.empty() ? std::nullopt : std::optional(response));
    if (data.has_missing()) {
      if (impute.empty())
        throw Error(path + ": missing values present; pass --impute mean|zero|gaussian");
      data = impute_missing(data, {parse_impute_policy(impute), impute_sigma, seed});
    }
    if (standardize) data = trilasso::standardize(data);
    return data;
  }

  Json json() const {
    return {{"data", path}, {"response", response}, {"impute", impute},
            {"impute_sigma", impute_sigma}, {"standardize", standardize}};
  }
};

struct SolverFlags {
  std::string method = "admm";
  double rho = 1.0;
  int admm_max_iter = 5000;
  double tol_abs = 1e-8;
  double tol_rel = 1e-6;
  std::string stop_mode = "residual";
  int window = 10;
  int dual_max_iter = 20000;
  double dual_tol = 1e-7;
  std::string step_mode = "fixed_lipschitz";
  double fuse_tol = kDefaultFuseTolerance;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--method", method, "admm or dual")->capture_default_str();
    cmd->add_option("--rho", rho, "ADMM penalty parameter")->capture_default_str();
    cmd->add_option("--max-iter", admm_max_iter, "ADMM iteration cap")->capture_default_str();
    cmd->add_option("--tol-abs", tol_abs, "ADMM absolute tolerance")->capture_default_str();
    cmd->add_option("--tol-rel", tol_rel, "ADMM relative tolerance")->capture_default_str();
    cmd->add_option("--stop-mode", stop_mode, "residual, cluster_stable or both")->capture_default_str();
    cmd->add_option("--stable-window", window, "Iterations of unchanged clusters for cluster_stable")
        ->capture_default_str();
    cmd->add_option("--dual-max-iter", dual_max_iter, "Dual iteration cap")->capture_default_str();
    cmd->add_option("--dual-tol", dual_tol, "Dual gradient-mapping tolerance")->capture_default_str();
    cmd->add_option("--step-mode", step_mode, "fixed_lipschitz or backtracking")->capture_default_str();
    cmd->add_option("--fuse-tol", fuse_tol, "Relative fusion tolerance")->capture_default_str();
  }

  SolverOptions resolve() const {
    SolverOptions o;
    o.method = parse_method(method);
    o.fuse_tol = fuse_tol;
    o.admm.rho = rho;
    o.admm.max_iter = admm_max_iter;
    o.admm.tol_abs = tol_abs;
    o.admm.tol_rel = tol_rel;
    o.admm.stop_mode = parse_stop_mode(stop_mode);
    o.admm.cluster_stable_window = window;
    o.admm.fuse_tol = fuse_tol;
    o.admm.validate();
    o.dual.max_iter = dual_max_iter;
    o.dual.tol = dual_tol;
    o.dual.step_mode = parse_step_mode(step_mode);
    o.dual.validate();
    return o;
  }

  Json json() const {
    return {{"method", method},       {"rho", rho},
            {"max_iter", admm_max_iter}, {"tol_abs", tol_abs},
            {"tol_rel", tol_rel},     {"stop_mode", stop_mode},
            {"stable_window", window}, {"dual_max_iter", dual_max_iter},
            {"dual_tol", dual_tol},   {"step_mode", step_mode},
            {"fuse_tol", fuse_tol}};
  }
};

struct LossFlags {
  std::string kind = "clustering";
  double gamma = 0.01;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--loss", kind, "clustering or ridge")->capture_default_str();
    cmd->add_option("--gamma", gamma, "Ridge regularization")->capture_default_str();
  }

  LossModel build(const Dataset& data) const {
    if (parse_loss_kind(kind) == LossKind::clustering) return LossModel::clustering(data.instances);
    if (!data.responses) throw Error("ridge loss needs --response");
    return LossModel::ridge(data.instances, *data.responses, gamma);
  }
};

Graph load_graph(const std::string& path, Index expected_vertices, int q_override) {
  Graph g = io::read_graph(Path(path));
  if (expected_vertices >= 0 && g.num_vertices() != expected_vertices)
    throw Error(path + ": graph has " + std::to_string(g.num_vertices()) + " vertices but the data has " +
                std::to_string(expected_vertices) + " rows");
  return q_override > 0 ? override_multiplicity(std::move(g), q_override) : g;
}

void write_config(const Path& where, const std::string& command, Json params, std::uint64_t seed) {
  Json j;
  j["command"] = command;
  j["seed"] = seed;
  j["parameters"] = std::move(params);
  io::write_json(where, j);
}

Path config_next_to(const Path& out) { return Path(out.string() + ".config.json"); }

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : ",") + p;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangle lasso: graph-regularized clustering and regression"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --seed appear after the subcommand
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();

  int status = 0;

  // build-graph
  auto* bg = app.add_subcommand("build-graph", "Build a KNN graph from data or import an edge list");
  DataOptions bg_data;
  bg_data.add_to(bg, false);
  std::string bg_edges, bg_out;
  Index bg_vertices = -1;
  int bg_k = 10;
  double bg_varrho = 0.0;
  int bg_q = 0;
  bg->add_option("--edges", bg_edges, "Edge list 'i j [w]' instead of --data");
  bg->add_option("--vertices", bg_vertices, "Vertex count for --edges (default: largest index + 1)");
  bg->add_option("--k", bg_k, "Neighbours per instance")->capture_default_str();
  bg->add_option("--varrho", bg_varrho, "Gaussian weight scale; 0 gives uniform weights")->capture_default_str();
  bg->add_option("--q-override", bg_q, "Force every multiplicity to this value (1: network lasso)");
  bg->add_option("--out", bg_out, "Output graph file")->required();
  bg->callback([&] {
    Graph g;
    if (!bg_edges.empty() == !bg_data.path.empty()) throw CLI::ValidationError("pass exactly one of --data and --edges");
    if (!bg_edges.empty()) {
      g = io::read_graph(Path(bg_edges), bg_vertices >= 0 ? std::optional(bg_vertices) : std::nullopt);
    } else {
      g = build_knn_graph(bg_data.load(seed), bg_k, bg_varrho);
    }
    if (bg_q > 0) g = override_multiplicity(std::move(g), bg_q);
    io::write_graph(Path(bg_out), g);
    Json p = bg_data.json();
    p.update({{"edges", bg_edges}, {"vertices", bg_vertices}, {"k", bg_k}, {"varrho", bg_varrho},
              {"q_override", bg_q}, {"out", bg_out}, {"num_edges", g.num_edges()}});
    write_config(config_next_to(bg_out), "build-graph", p, seed);
  });

  // solve
  auto* sv = app.add_subcommand("solve", "Solve one triangle lasso instance");
  DataOptions sv_data;
  sv_data.add_to(sv);
  LossFlags sv_loss;
  sv_loss.add_to(sv);
  SolverFlags sv_solver;
  sv_solver.add_to(sv);
  std::string sv_graph, sv_out;
  double sv_alpha = 1.0;
  int sv_q = 0;
  bool sv_dump_dual = false;
  sv->add_option("--graph", sv_graph, "Graph file")->required();
  sv->add_option("--alpha", sv_alpha, "Penalty strength")->capture_default_str();
  sv->add_option("--q-override", sv_q, "Force every multiplicity to this value (1: network lasso)");
  sv->add_flag("--dump-dual", sv_dump_dual, "Also write the dual variable as dual.csv");
  sv->add_option("--out-dir", sv_out, "Output directory")->required();
  sv->callback([&] {
    const SolverOptions opts = sv_solver.resolve();
    const Dataset data = sv_data.load(seed);
    const Graph g = load_graph(sv_graph, data.rows(), sv_q);
    const LossModel loss = sv_loss.build(data);
    const PenaltyMatrix q(g, sv_alpha);
    const Solution sol = solve(loss, q, opts);
    const Path dir(sv_out);
    io::write_matrix_csv(dir / "x.csv", sol.x);
    if (sol.z.size() > 0) io::write_matrix_csv(dir / "z.csv", sol.z, "z");
    if (sv_dump_dual) io::write_matrix_csv(dir / "dual.csv", sol.dual, "u");
    io::write_json(dir / "assignment.json", io::to_json(sol.assignment));
    io::write_json(dir / "solution.json", io::to_json(sol));
    Json p = sv_data.json();
    p.update(sv_solver.json());
    p.update({{"graph", sv_graph}, {"loss", sv_loss.kind}, {"gamma", sv_loss.gamma}, {"alpha", sv_alpha},
              {"q_override", sv_q}});
    write_config(dir / "config.json", "solve", p, seed);
    std::cout << "objective " << io::format_number(sol.objective) << ", " << sol.assignment.num_clusters
              << " clusters, " << sol.iterations << " iterations, " << sol.stop_reason << '\n';
    if (!sol.converged) status = kExitNotConverged;
  });

  // cluster-path
  auto* cp = app.add_subcommand("cluster-path", "Solve along an increasing alpha schedule");
  DataOptions cp_data;
  cp_data.add_to(cp);
  LossFlags cp_loss;
  cp_loss.add_to(cp);
  SolverFlags cp_solver;
  cp_solver.add_to(cp);
  PathSchedule cp_sched;
  std::string cp_graph, cp_out;
  int cp_q = 0;
  bool cp_cold = false;
  cp->add_option("--graph", cp_graph, "Graph file")->required();
  cp->add_option("--alpha-init", cp_sched.alpha_init, "First alpha")->capture_default_str();
  cp->add_option("--step-init", cp_sched.step_init, "Initial multiplicative step")->capture_default_str();
  cp->add_option("--step-increment", cp_sched.step_increment, "Added to the step after each point")
      ->capture_default_str();
  cp->add_option("--points", cp_sched.num_points, "Schedule length")->capture_default_str();
  cp->add_option("--q-override", cp_q, "Force every multiplicity to this value (1: network lasso)");
  cp->add_flag("--cold-start", cp_cold, "Solve every point from scratch");
  cp->add_option("--out-dir", cp_out, "Output directory")->required();
  cp->callback([&] {
    SolverOptions opts = cp_solver.resolve();
    opts.warm_start = !cp_cold;
    cp_sched.validate();
    const Dataset data = cp_data.load(seed);
    const Graph g = load_graph(cp_graph, data.rows(), cp_q);
    const ClusterPath path = cluster_path(cp_loss.build(data), g, cp_sched, opts);
    const Path dir(cp_out);
    io::write_cluster_path(dir / "path.csv", path);
    Json summary = Json::array();
    bool all_converged = true;
    for (const auto& pt : path.points) {
      summary.push_back({{"alpha", pt.alpha}, {"num_clusters", pt.assignment.num_clusters},
                         {"iterations", pt.iterations}, {"converged", pt.converged}});
      all_converged = all_converged && pt.converged;
    }
    io::write_json(dir / "path.json",
                   {{"points", summary}, {"truncated", path.truncated}, {"failure", path.failure}});
    Json p = cp_data.json();
    p.update(cp_solver.json());
    p.update({{"graph", cp_graph}, {"loss", cp_loss.kind}, {"gamma", cp_loss.gamma},
              {"alpha_init", cp_sched.alpha_init}, {"step_init", cp_sched.step_init},
              {"step_increment", cp_sched.step_increment}, {"points", cp_sched.num_points},
              {"q_override", cp_q}, {"warm_start", !cp_cold}});
    write_config(dir / "config.json", "cluster-path", p, seed);
    if (path.truncated) {
      std::cerr << "path truncated: " << path.failure << '\n';
      status = 1;
    } else if (!all_converged) {
      status = kExitNotConverged;
    }
  });

  // predict
  auto* pr = app.add_subcommand("predict", "Nearest-neighbour weight transfer and MSE");
  DataOptions pr_data;
  pr_data.add_to(pr);
  SolverFlags pr_solver;
  pr_solver.add_to(pr);
  RidgeCvConfig pr_cv;
  std::string pr_solution, pr_val, pr_out;
  int pr_q = 0;
  pr->add_option("--solution", pr_solution, "Fitted weights (x.csv) for the --data instances; skips cross-validation");
  pr->add_option("--val", pr_val, "Validation CSV for --solution");
  pr->add_option("--folds", pr_cv.folds, "Cross-validation folds")->capture_default_str();
  pr->add_option("--k", pr_cv.knn_k, "KNN neighbours for the per-fold graph")->capture_default_str();
  pr->add_option("--varrho", pr_cv.varrho, "Gaussian weight scale")->capture_default_str();
  pr->add_option("--gamma", pr_cv.gamma, "Ridge regularization")->capture_default_str();
  pr->add_option("--alpha", pr_cv.alpha, "Penalty strength")->capture_default_str();
  pr->add_option("--q-override", pr_q, "Force every multiplicity to this value (1: network lasso)");
  pr->add_option("--out-dir", pr_out, "Output directory")->required();
  pr->callback([&] {
    const Dataset data = pr_data.load(seed);
    PredictionReport report;
    if (!pr_solution.empty()) {
      if (pr_val.empty()) throw CLI::ValidationError("--solution needs --val");
      DataOptions val_opts = pr_data;
      val_opts.path = pr_val;
      val_opts.standardize = false;
      Dataset val = val_opts.load(seed);
      // Validation features go through the training transform.
      if (pr_data.standardize) val.instances = apply_standardization(data, val.instances);
      report = predict_nn_transfer(io::read_matrix_csv(Path(pr_solution)), data, val, LossKind::ridge);
    } else {
      pr_cv.solver = pr_solver.resolve();
      pr_cv.seed = seed;
      if (pr_q > 0) pr_cv.q_override = pr_q;
      report = cross_validate_ridge(data, pr_cv);
    }
    const Path dir(pr_out);
    Json r;
    r["mse"] = report.mse;
    r["per_instance_errors"] = report.per_instance_errors;
    r["fold_ids"] = report.fold_ids;
    io::write_json(dir / "prediction.json", r);
    Json p = pr_data.json();
    p.update(pr_solver.json());
    p.update({{"solution", pr_solution}, {"val", pr_val}, {"folds", pr_cv.folds}, {"k", pr_cv.knn_k},
              {"varrho", pr_cv.varrho}, {"gamma", pr_cv.gamma}, {"alpha", pr_cv.alpha}, {"q_override", pr_q}});
    write_config(dir / "config.json", "predict", p, seed);
    std::cout << "mse " << io::format_number(report.mse) << '\n';
  });

  // communities
  auto* cm = app.add_subcommand("communities", "Community detection by convex clustering over the graph");
  SolverFlags cm_solver;
  cm_solver.add_to(cm);
  std::string cm_graph, cm_features, cm_truth, cm_out;
  double cm_alpha = 0.1, cm_fraction = 0.0;
  int cm_per_community = 0;
  cm->add_option("--graph", cm_graph, "Graph file")->required();
  cm->add_option("--features", cm_features, "Vertex features CSV (default: normalized adjacency rows)");
  cm->add_option("--truth", cm_truth, "Ground-truth communities, one per line");
  cm->add_option("--alpha", cm_alpha, "Penalty strength")->capture_default_str();
  cm->add_option("--perturb-fraction", cm_fraction, "Add cross-community edges: fraction of each community (<= 0.01)");
  cm->add_option("--perturb-edges", cm_per_community, "Add this many cross-community edges per community");
  cm->add_option("--out-dir", cm_out, "Output directory")->required();
  cm->callback([&] {
    const SolverOptions opts = cm_solver.resolve();
    Graph g = io::read_graph(Path(cm_graph));
    std::optional<io::Communities> truth;
    if (!cm_truth.empty()) truth = io::read_communities(Path(cm_truth));
    if (cm_fraction > 0.0 || cm_per_community > 0) {
      if (!truth) throw CLI::ValidationError("perturbation needs --truth");
      g = cm_fraction > 0.0 ? perturb_graph(g, *truth, cm_fraction, seed)
                            : perturb_graph_count(g, *truth, cm_per_community, seed);
    }
    const Matrix features = cm_features.empty() ? adjacency_features(g) : io::read_matrix_csv(Path(cm_features));
    const CommunityReport report = detect_communities(g, features, cm_alpha, opts, truth ? &*truth : nullptr);
    const Path dir(cm_out);
    io::write_communities(dir / "communities.txt", report.detected);
    Json r;
    r["num_communities"] = report.detected.size();
    r["f1_mean"] = report.f1_mean;
    r["f1_per_community"] = report.f1_per_community;
    r["converged"] = report.solution.converged;
    io::write_json(dir / "communities.json", r);
    Json p = cm_solver.json();
    p.update({{"graph", cm_graph}, {"features", cm_features}, {"truth", cm_truth}, {"alpha", cm_alpha},
              {"perturb_fraction", cm_fraction}, {"perturb_edges", cm_per_community}});
    write_config(dir / "config.json", "communities", p, seed);
    std::cout << report.detected.size() << " communities";
    if (truth) std::cout << ", mean F1 " << io::format_number(report.f1_mean);
    std::cout << '\n';
    if (!report.solution.converged) status = kExitNotConverged;
  });

  // bench
  auto* bn = app.add_subcommand("bench", "Time both solvers on the synthetic preset over network families");
  int bn_n = 100;
  std::vector<int> bn_degrees{4, 8, 16};
  std::vector<std::string> bn_kinds{"random", "small_world", "scale_free", "c3"};
  std::vector<std::string> bn_methods{"admm", "dual"};
  std::string bn_out;
  bn->add_option("--n", bn_n, "Instances (a multiple of 5)")->capture_default_str();
  bn->add_option("--degrees", bn_degrees, "Average degrees")->delimiter(',')->capture_default_str();
  bn->add_option("--kinds", bn_kinds, "Network kinds")->delimiter(',')->capture_default_str();
  bn->add_option("--methods", bn_methods, "Solvers")->delimiter(',')->capture_default_str();
  bn->add_option("--out", bn_out, "Timing CSV")->required();
  bn->callback([&] {
    if (bn_n < 5 || bn_n % 5 != 0) throw CLI::ValidationError("--n must be a positive multiple of 5");
    ExperimentPreset preset = default_experiment_preset();
    preset.data.per_mean_count = bn_n / 5;
    preset.data.seed = seed;
    const Dataset data = gaussian_mixture(preset.data);
    const LossModel loss = LossModel::ridge(data.instances, *data.responses, preset.gamma);
    std::ofstream out(bn_out);
    if (!out) throw Error("cannot open '" + bn_out + "' for writing");
    out << "kind,avg_degree,method,seconds,iterations,converged,objective\n";
    for (const auto& kind : bn_kinds) {
      for (int degree : bn_degrees) {
        const Graph g = gen_network(parse_network_kind(kind), bn_n, degree, seed);
        const PenaltyMatrix q(g, preset.alpha);
        for (const auto& m : bn_methods) {
          SolverOptions opts;
          opts.method = parse_method(m);
          const auto t0 = std::chrono::steady_clock::now();
          const Solution sol = solve(loss, q, opts);
          const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          out << kind << ',' << degree << ',' << m << ',' << io::format_number(secs) << ',' << sol.iterations << ','
              << (sol.converged ? 1 : 0) << ',' << io::format_number(sol.objective) << '\n';
        }
      }
    }
    write_config(config_next_to(bn_out), "bench",
                 {{"n", bn_n}, {"degrees", bn_degrees}, {"kinds", join(bn_kinds)}, {"methods", join(bn_methods)},
                  {"gamma", preset.gamma}, {"alpha", preset.alpha}, {"out", bn_out}},
                 seed);
  });

  // gen
  auto* gen = app.add_subcommand("gen", "Synthetic data and networks");
  gen->require_subcommand(1);

  auto* gg = gen->add_subcommand("gaussian", "Gaussian mixture with the mean as response");
  SyntheticSpec gg_spec;
  double gg_corrupt = 0.0;
  std::string gg_out;
  gg->add_option("--means", gg_spec.means, "Component means")->delimiter(',')->capture_default_str();
  gg->add_option("--sigma", gg_spec.sigma, "Standard deviation")->capture_default_str();
  gg->add_option("--count", gg_spec.per_mean_count, "Instances per mean")->capture_default_str();
  gg->add_option("--dim", gg_spec.dim, "Features")->capture_default_str();
  gg->add_option("--zero-fraction", gg_corrupt, "Fraction of entries set to zero")->capture_default_str();
  gg->add_option("--out", gg_out, "Output CSV")->required();
  gg->callback([&] {
    gg_spec.seed = seed;
    Dataset data = gaussian_mixture(gg_spec);
    if (gg_corrupt > 0.0) data = zero_corrupt(data, gg_corrupt, seed + 1);
    io::write_data_csv(Path(gg_out), data);
    write_config(config_next_to(gg_out), "gen gaussian",
                 {{"means", gg_spec.means}, {"sigma", gg_spec.sigma}, {"count", gg_spec.per_mean_count},
                  {"dim", gg_spec.dim}, {"zero_fraction", gg_corrupt}, {"out", gg_out}},
                 seed);
  });

  auto* gn = gen->add_subcommand("network", "Random, small-world, scale-free or c3 network");
  std::string gn_kind = "random", gn_out;
  Index gn_n = 100;
  int gn_degree = 4;
  gn->add_option("--kind", gn_kind, "random, small_world, scale_free or c3")->capture_default_str();
  gn->add_option("--n", gn_n, "Vertices")->capture_default_str();
  gn->add_option("--degree", gn_degree, "Average degree")->capture_default_str();
  gn->add_option("--out", gn_out, "Output graph file")->required();
  gn->callback([&] {
    io::write_graph(Path(gn_out), gen_network(parse_network_kind(gn_kind), gn_n, gn_degree, seed));
    write_config(config_next_to(gn_out), "gen network",
                 {{"kind", gn_kind}, {"n", gn_n}, {"degree", gn_degree}, {"out", gn_out}}, seed);
  });

  auto* gp = gen->add_subcommand("planted", "Two planted blocks with ground truth");
  int gp_block = 20;
  double gp_in = 0.9, gp_out_p = 0.05;
  std::string gp_out, gp_truth;
  gp->add_option("--block", gp_block, "Vertices per block")->capture_default_str();
  gp->add_option("--p-in", gp_in, "Within-block edge probability")->capture_default_str();
  gp->add_option("--p-out", gp_out_p, "Cross-block edge probability")->capture_default_str();
  gp->add_option("--out", gp_out, "Output graph file")->required();
  gp->add_option("--truth", gp_truth, "Output community file")->required();
  gp->callback([&] {
    const auto [g, truth] = planted_two_clique(gp_block, gp_in, gp_out_p, seed);
    io::write_graph(Path(gp_out), g);
    io::write_communities(Path(gp_truth), truth);
    write_config(config_next_to(gp_out), "gen planted",
                 {{"block", gp_block}, {"p_in", gp_in}, {"p_out", gp_out_p}, {"out", gp_out}, {"truth", gp_truth}},
                 seed);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return status;
}
