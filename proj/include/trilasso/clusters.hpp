#pragma once

#include <span>
#include <vector>

#include "trilasso/common.hpp"
#include "trilasso/graph.hpp"
#include "trilasso/penalty.hpp"

namespace trilasso {

struct ClusterAssignment {
  std::vector<int> labels;  // 0..num_clusters-1, numbered by first appearance
  int num_clusters = 0;
  std::vector<bool> fused_edges;

  friend bool operator==(const ClusterAssignment&, const ClusterAssignment&) = default;
};

constexpr double kDefaultFuseTolerance = 1e-3;

/// Edge (i, j) is fused when ||X_i - X_j|| <= tol * max(1, (||X_i|| + ||X_j||) / 2).
/// Clusters are the connected components of the fused edges, so identical rows
/// that share no path of fused edges stay apart.
ClusterAssignment extract_clusters(const Matrix& x, const Graph& graph,
                                   double tol_fuse = kDefaultFuseTolerance);
ClusterAssignment extract_clusters(const Matrix& x, const PenaltyMatrix& q,
                                   double tol_fuse = kDefaultFuseTolerance);

/// Connected components restricted to the given fused flags.
ClusterAssignment components_from_edges(Index num_vertices,
                                        std::span<const std::pair<Index, Index>> edges,
                                        std::vector<bool> fused);

/// Plain Rand index over all vertex pairs.
double rand_index(std::span<const int> labels_a, std::span<const int> labels_b);

/// Fraction of instances whose cluster's majority truth label matches theirs.
double purity(std::span<const int> labels, std::span<const int> truth);

}  // namespace trilasso
