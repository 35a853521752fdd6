#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trilasso/cluster_path.hpp"
#include "trilasso/dataset.hpp"
#include "trilasso/graph.hpp"
#include "trilasso/loss.hpp"

namespace trilasso {

struct PredictionReport {
  double mse = 0.0;
  std::vector<double> per_instance_errors;
  std::vector<int> fold_ids;  // filled by cross-validation
};

/// Each validation instance borrows the weight row of its Euclidean nearest
/// training instance (ties to the lowest index). Ridge: prediction A_val X_nn^T
/// against y. Clustering: squared distance between A_val and X_nn.
PredictionReport predict_nn_transfer(const Matrix& train_solution, const Dataset& train, const Dataset& val,
                                     LossKind kind);

struct Fold {
  std::vector<Index> train;
  std::vector<Index> val;
};

/// Seeded shuffle, then contiguous folds; the first n mod k folds get one
/// extra element. Indices within each fold are sorted.
std::vector<Fold> kfold_split(Index n, int k, std::uint64_t seed);

Dataset subset(const Dataset& data, std::span<const Index> rows);

struct RidgeCvConfig {
  int folds = 5;
  int knn_k = 10;
  double varrho = 0.0;
  double gamma = 0.01;
  double alpha = 0.01;
  std::optional<int> q_override;  // 1 gives the network lasso
  std::uint64_t seed = 0;
  SolverOptions solver;
};

/// k-fold ridge pipeline: per fold, KNN graph on the training instances,
/// triangle-lasso ridge fit, nearest-neighbour transfer to the held-out fold.
PredictionReport cross_validate_ridge(const Dataset& data, const RidgeCvConfig& config);

using VertexSet = std::vector<Index>;

/// 2 precision recall / (precision + recall); 0 when there is no overlap.
double f1_score(std::span<const Index> detected, std::span<const Index> truth);

/// Greedy best-match: repeatedly pair the unmatched (detected, truth) couple
/// with the highest F1; unmatched truth communities score 0. Returns one score
/// per truth community.
std::vector<double> best_match_f1(const std::vector<VertexSet>& detected, const std::vector<VertexSet>& truth);

struct CommunityReport {
  std::vector<VertexSet> detected;
  double f1_mean = 0.0;             // NaN-free; 0 without truth
  std::vector<double> f1_per_community;
  Solution solution;
};

/// Row i of the adjacency matrix scaled to unit norm; isolated vertices get a zero row.
Matrix adjacency_features(const Graph& graph);

/// Convex clustering of the vertex features over the graph at alpha; the
/// clusters are the communities. Scored against `truth` when given.
CommunityReport detect_communities(const Graph& graph, const Matrix& features, double alpha,
                                   const SolverOptions& solver = {},
                                   const std::vector<VertexSet>* truth = nullptr);

/// For each truth community C, floor(fraction |C|) times: join a random member
/// of C to a random non-member. fraction must lie in (0, 0.01].
Graph perturb_graph(const Graph& graph, const std::vector<VertexSet>& truth, double fraction, std::uint64_t seed);

/// Same rule with an explicit number of added edges per community.
Graph perturb_graph_count(const Graph& graph, const std::vector<VertexSet>& truth, int per_community,
                          std::uint64_t seed);

std::vector<VertexSet> communities_from_labels(std::span<const int> labels);

}  // namespace trilasso
