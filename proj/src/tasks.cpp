#include "trilasso/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "trilasso/kernels.hpp"

namespace trilasso {

PredictionReport predict_nn_transfer(const Matrix& train_solution, const Dataset& train, const Dataset& val,
                                     LossKind kind) {
  if (val.rows() == 0) throw Error("predict: empty validation set");
  if (train.rows() == 0) throw Error("predict: empty training set");
  if (train_solution.rows() != train.rows())
    throw Error("predict: solution has " + std::to_string(train_solution.rows()) + " rows for " +
                std::to_string(train.rows()) + " training instances");
  if (train.cols() != val.cols()) throw Error("predict: feature counts differ");
  if (kind == LossKind::ridge && (!val.responses || train_solution.cols() != val.cols()))
    throw Error("predict: ridge transfer needs validation responses and d-dimensional weights");
  if (kind == LossKind::clustering && train_solution.cols() != val.cols())
    throw Error("predict: clustering transfer needs d-dimensional centroids");

  const auto& kern = kernels::active();
  const auto n_train = static_cast<std::size_t>(train.rows());
  std::vector<double> dist(n_train);
  PredictionReport report;
  for (Index v = 0; v < val.rows(); ++v) {
    const Vector point = val.instances.row(v).transpose();
    kern.sq_dist_to_point({train.instances.data(), static_cast<std::size_t>(train.instances.size())}, n_train,
                          {point.data(), static_cast<std::size_t>(point.size())}, dist);
    // min_element keeps the first minimum, i.e. the lowest index.
    const auto nn = static_cast<Index>(std::min_element(dist.begin(), dist.end()) - dist.begin());
    double err = 0.0;
    if (kind == LossKind::ridge) {
      const double r = val.instances.row(v).dot(train_solution.row(nn)) - (*val.responses)(v);
      err = r * r;
    } else {
      err = (val.instances.row(v) - train_solution.row(nn)).squaredNorm();
    }
    report.per_instance_errors.push_back(err);
  }
  report.mse = std::accumulate(report.per_instance_errors.begin(), report.per_instance_errors.end(), 0.0) /
               static_cast<double>(report.per_instance_errors.size());
  return report;
}

std::vector<Fold> kfold_split(Index n, int k, std::uint64_t seed) {
  if (k < 2) throw Error("kfold: need at least 2 folds");
  if (n < k) throw Error("kfold: " + std::to_string(k) + " folds for " + std::to_string(n) + " instances");
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Fold> folds(static_cast<std::size_t>(k));
  const Index base = n / k, extra = n % k;
  Index pos = 0;
  for (int f = 0; f < k; ++f) {
    const Index size = base + (f < extra ? 1 : 0);
    folds[f].val.assign(order.begin() + pos, order.begin() + pos + size);
    pos += size;
  }
  for (int f = 0; f < k; ++f) {
    std::sort(folds[f].val.begin(), folds[f].val.end());
    for (int g = 0; g < k; ++g)
      if (g != f) folds[f].train.insert(folds[f].train.end(), folds[g].val.begin(), folds[g].val.end());
  }
  for (auto& fold : folds) std::sort(fold.train.begin(), fold.train.end());
  return folds;
}

Dataset subset(const Dataset& data, std::span<const Index> rows) {
  Dataset out;
  out.instances.resize(static_cast<Index>(rows.size()), data.cols());
  if (data.responses) out.responses = Vector(static_cast<Index>(rows.size()));
  if (data.has_missing()) out.missing.resize(static_cast<Index>(rows.size()), data.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto dst = static_cast<Index>(r);
    out.instances.row(dst) = data.instances.row(rows[r]);
    if (data.responses) (*out.responses)(dst) = (*data.responses)(rows[r]);
    if (data.has_missing()) out.missing.row(dst) = data.missing.row(rows[r]);
  }
  out.feature_means = data.feature_means;
  out.feature_stds = data.feature_stds;
  return out;
}

PredictionReport cross_validate_ridge(const Dataset& data, const RidgeCvConfig& config) {
  if (!data.responses) throw Error("cross-validation: dataset has no responses");
  if (data.has_missing()) throw Error("missing values present; choose an imputation policy");
  PredictionReport report;
  report.per_instance_errors.assign(static_cast<std::size_t>(data.rows()), 0.0);
  report.fold_ids.assign(static_cast<std::size_t>(data.rows()), -1);
  const auto folds = kfold_split(data.rows(), config.folds, config.seed);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const Dataset train = subset(data, folds[f].train);
    const Dataset val = subset(data, folds[f].val);
    Graph graph = build_knn_graph(train, config.knn_k, config.varrho);
    if (config.q_override) graph = override_multiplicity(std::move(graph), *config.q_override);
    const LossModel loss = LossModel::ridge(train.instances, *train.responses, config.gamma);
    const PenaltyMatrix q(graph, config.alpha);
    const Solution sol = solve(loss, q, config.solver);
    const PredictionReport part = predict_nn_transfer(sol.x, train, val, LossKind::ridge);
    for (std::size_t v = 0; v < folds[f].val.size(); ++v) {
      report.per_instance_errors[folds[f].val[v]] = part.per_instance_errors[v];
      report.fold_ids[folds[f].val[v]] = static_cast<int>(f);
    }
  }
  report.mse = std::accumulate(report.per_instance_errors.begin(), report.per_instance_errors.end(), 0.0) /
               static_cast<double>(data.rows());
  return report;
}

double f1_score(std::span<const Index> detected, std::span<const Index> truth) {
  if (truth.empty()) throw Error("f1: empty truth set");
  if (detected.empty()) return 0.0;
  const std::set<Index> t(truth.begin(), truth.end());
  const std::set<Index> d(detected.begin(), detected.end());
  std::size_t common = 0;
  for (Index v : d) common += t.count(v);
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / static_cast<double>(d.size());
  const double recall = static_cast<double>(common) / static_cast<double>(t.size());
  return 2.0 * precision * recall / (precision + recall);
}

std::vector<double> best_match_f1(const std::vector<VertexSet>& detected, const std::vector<VertexSet>& truth) {
  const std::size_t nd = detected.size(), nt = truth.size();
  std::vector<std::vector<double>> score(nd, std::vector<double>(nt));
  for (std::size_t a = 0; a < nd; ++a)
    for (std::size_t b = 0; b < nt; ++b) score[a][b] = f1_score(detected[a], truth[b]);
  std::vector<double> out(nt, 0.0);
  std::vector<bool> used_d(nd, false), used_t(nt, false);
  for (std::size_t round = 0; round < std::min(nd, nt); ++round) {
    double best = -1.0;
    std::size_t ba = 0, bb = 0;
    for (std::size_t a = 0; a < nd; ++a)
      for (std::size_t b = 0; b < nt; ++b)
        if (!used_d[a] && !used_t[b] && score[a][b] > best) {
          best = score[a][b];
          ba = a;
          bb = b;
        }
    used_d[ba] = used_t[bb] = true;
    out[bb] = best;
  }
  return out;
}

std::vector<VertexSet> communities_from_labels(std::span<const int> labels) {
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  std::vector<VertexSet> out(static_cast<std::size_t>(k));
  for (std::size_t v = 0; v < labels.size(); ++v) out[labels[v]].push_back(static_cast<Index>(v));
  return out;
}

Matrix adjacency_features(const Graph& graph) {
  const Index n = graph.num_vertices();
  Matrix f = Matrix::Zero(n, n);
  for (const Edge& e : graph.edges()) f(e.i, e.j) = f(e.j, e.i) = 1.0;
  for (Index v = 0; v < n; ++v) {
    const double norm = f.row(v).norm();
    if (norm > 0.0) f.row(v) /= norm;
  }
  return f;
}

CommunityReport detect_communities(const Graph& graph, const Matrix& features, double alpha,
                                   const SolverOptions& solver, const std::vector<VertexSet>* truth) {
  if (features.rows() != graph.num_vertices())
    throw Error("communities: " + std::to_string(features.rows()) + " feature rows for " +
                std::to_string(graph.num_vertices()) + " vertices");
  CommunityReport report;
  const LossModel loss = LossModel::clustering(features);
  const PenaltyMatrix q(graph, alpha);
  report.solution = solve(loss, q, solver);
  report.detected = communities_from_labels(report.solution.assignment.labels);
  if (truth && !truth->empty()) {
    report.f1_per_community = best_match_f1(report.detected, *truth);
    report.f1_mean = std::accumulate(report.f1_per_community.begin(), report.f1_per_community.end(), 0.0) /
                     static_cast<double>(report.f1_per_community.size());
  }
  return report;
}

namespace {

Graph add_cross_edges(const Graph& graph, const std::vector<VertexSet>& truth,
                      const std::vector<int>& counts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges = graph.edges();
  const Index n = graph.num_vertices();
  for (std::size_t c = 0; c < truth.size(); ++c) {
    if (counts[c] == 0) continue;
    if (truth[c].empty()) throw Error("perturb: community " + std::to_string(c) + " is empty");
    const std::set<Index> members(truth[c].begin(), truth[c].end());
    std::vector<Index> outside;
    for (Index v = 0; v < n; ++v)
      if (!members.count(v)) outside.push_back(v);
    if (outside.empty()) throw Error("perturb: community " + std::to_string(c) + " has no non-member vertex");
    for (int k = 0; k < counts[c]; ++k) {
      std::uniform_int_distribution<std::size_t> pick_in(0, truth[c].size() - 1), pick_out(0, outside.size() - 1);
      const Index u = truth[c][pick_in(rng)];
      const Index v = outside[pick_out(rng)];
      edges.push_back({u, v, 1.0, 0, 1});
    }
  }
  // The constructor drops pairs that already exist.
  return count_triangles(Graph(n, std::move(edges)));
}

}  // namespace

Graph perturb_graph(const Graph& graph, const std::vector<VertexSet>& truth, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 0.01)) throw Error("perturb: fraction must lie in (0, 0.01]");
  std::vector<int> counts;
  for (const auto& c : truth) counts.push_back(static_cast<int>(std::floor(fraction * static_cast<double>(c.size()))));
  return add_cross_edges(graph, truth, counts, seed);
}

Graph perturb_graph_count(const Graph& graph, const std::vector<VertexSet>& truth, int per_community,
                          std::uint64_t seed) {
  if (per_community < 0) throw Error("perturb: negative edge count");
  return add_cross_edges(graph, truth, std::vector<int>(truth.size(), per_community), seed);
}

}  // namespace trilasso
