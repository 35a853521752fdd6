#pragma once

#include <optional>
#include <vector>

#include "trilasso/common.hpp"
#include "trilasso/dataset.hpp"

namespace trilasso {

struct Edge {
  Index i = 0;
  Index j = 0;
  double w = 1.0;  // edge weight
  int t = 0;       // common neighbours of i and j
  int q = 1;       // multiplicity in the triangle-expanded penalty

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph with per-edge penalty metadata. Edges are stored
/// with i < j; their order defines the row order of the penalty matrix.
class Graph {
 public:
  Graph() = default;

  /// Normalizes each edge to i < j and drops repeated pairs (first one wins).
  /// Throws on self-loops, out-of-range endpoints or negative weights.
  Graph(Index num_vertices, std::vector<Edge> edges);

  Index num_vertices() const { return num_vertices_; }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Edge>& mutable_edges() { return edges_; }

  /// Sorted neighbour lists.
  std::vector<std::vector<Index>> adjacency() const;

  std::optional<Index> find_edge(Index i, Index j) const;

 private:
  Index num_vertices_ = 0;
  std::vector<Edge> edges_;
};

/// Fill t = |N(i) n N(j)| and q = 1 + 2t for every edge.
///
/// Expanding the triangle regularizer, each common neighbour k of (i, j)
/// contributes ||X_i - X_j|| to the g terms of edges (i, k) and (j, k), on top
/// of the edge's own term; hence the odd multiplicity.
Graph count_triangles(Graph graph);

/// Force q = value on every edge (value 1 gives the plain network lasso).
Graph override_multiplicity(Graph graph, int value);

/// Symmetric k-nearest-neighbour graph: (i, j) is an edge when either is among
/// the other's k nearest instances (Euclidean; ties go to the lower index).
/// Weights are exp(-varrho * ||a_i - a_j||^2). Triangle counts are filled in.
Graph build_knn_graph(const Dataset& data, int k, double varrho = 0.0);

/// Number of connected components.
Index count_components(const Graph& graph);

}  // namespace trilasso
