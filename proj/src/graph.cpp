#include "trilasso/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "trilasso/kernels.hpp"

namespace trilasso {

Graph::Graph(Index num_vertices, std::vector<Edge> edges) : num_vertices_(num_vertices) {
  if (num_vertices < 0) throw Error("negative vertex count");
  std::set<std::pair<Index, Index>> seen;
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.i == e.j) throw Error("self-loop on vertex " + std::to_string(e.i));
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i < 0 || e.j >= num_vertices)
      throw Error("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                  ") out of range for " + std::to_string(num_vertices) + " vertices");
    if (!(e.w >= 0.0) || !std::isfinite(e.w)) throw Error("edge weight must be finite and >= 0");
    if (e.q < 1) throw Error("edge multiplicity must be positive");
    if (!seen.insert({e.i, e.j}).second) continue;
    edges_.push_back(e);
  }
}

std::vector<std::vector<Index>> Graph::adjacency() const {
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(num_vertices_));
  for (const Edge& e : edges_) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::optional<Index> Graph::find_edge(Index i, Index j) const {
  if (i > j) std::swap(i, j);
  for (std::size_t k = 0; k < edges_.size(); ++k)
    if (edges_[k].i == i && edges_[k].j == j) return static_cast<Index>(k);
  return std::nullopt;
}

Graph count_triangles(Graph graph) {
  const auto adj = graph.adjacency();
  for (Edge& e : graph.mutable_edges()) {
    const auto& a = adj[e.i];
    const auto& b = adj[e.j];
    int common = 0;
    // Merge-intersect the sorted lists.
    for (std::size_t x = 0, y = 0; x < a.size() && y < b.size();) {
      if (a[x] < b[y]) {
        ++x;
      } else if (b[y] < a[x]) {
        ++y;
      } else {
        ++common;
        ++x;
        ++y;
      }
    }
    e.t = common;
    e.q = 1 + 2 * common;
  }
  return graph;
}

Graph override_multiplicity(Graph graph, int value) {
  if (value < 1) throw Error("multiplicity override must be a positive integer");
  for (Edge& e : graph.mutable_edges()) e.q = value;
  return graph;
}

Graph build_knn_graph(const Dataset& data, int k, double varrho) {
  data.validate();
  if (data.has_missing()) throw Error("missing values present; choose an imputation policy");
  const Index n = data.rows();
  const Index d = data.cols();
  if (k < 1 || k >= n)
    throw Error("k must satisfy 1 <= k < n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  if (!(varrho >= 0.0)) throw Error("varrho must be non-negative");

  const auto& kern = kernels::active();
  const Matrix& a = data.instances;
  std::span<const double> cols(a.data(), static_cast<std::size_t>(a.size()));
  Vector dist(n);
  std::vector<double> point(static_cast<std::size_t>(d));
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::map<std::pair<Index, Index>, double> pairs;  // -> squared distance

  for (Index i = 0; i < n; ++i) {
    for (Index c = 0; c < d; ++c) point[c] = a(i, c);
    kern.sq_dist_to_point(cols, static_cast<std::size_t>(n), point,
                          std::span<double>(dist.data(), static_cast<std::size_t>(n)));
    if (!dist.allFinite()) throw Error("non-finite distance from instance " + std::to_string(i));
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    order.erase(order.begin() + i);
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](Index x, Index y) {
      return dist(x) < dist(y) || (dist(x) == dist(y) && x < y);
    });
    for (int r = 0; r < k; ++r) {
      const Index j = order[r];
      pairs.emplace(std::pair{std::min(i, j), std::max(i, j)}, dist(j));
    }
  }

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [ij, d2] : pairs) edges.push_back({ij.first, ij.second, std::exp(-varrho * d2), 0, 1});
  return count_triangles(Graph(n, std::move(edges)));
}

Index count_components(const Graph& graph) {
  std::vector<Index> parent(static_cast<std::size_t>(graph.num_vertices()));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Index components = graph.num_vertices();
  for (const Edge& e : graph.edges()) {
    const Index a = find(e.i), b = find(e.j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

}  // namespace trilasso
