#include "trilasso/clusters.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace trilasso {

ClusterAssignment components_from_edges(Index num_vertices,
                                        std::span<const std::pair<Index, Index>> edges,
                                        std::vector<bool> fused) {
  std::vector<Index> parent(static_cast<std::size_t>(num_vertices));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!fused[k]) continue;
    const Index a = find(edges[k].first), b = find(edges[k].second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  ClusterAssignment out;
  out.labels.assign(static_cast<std::size_t>(num_vertices), -1);
  std::vector<int> root_label(static_cast<std::size_t>(num_vertices), -1);
  for (Index v = 0; v < num_vertices; ++v) {
    const Index r = find(v);
    if (root_label[r] < 0) root_label[r] = out.num_clusters++;
    out.labels[v] = root_label[r];
  }
  out.fused_edges = std::move(fused);
  return out;
}

namespace {

ClusterAssignment extract(const Matrix& x, std::span<const std::pair<Index, Index>> edges,
                          Index n, double tol_fuse) {
  if (!(tol_fuse > 0.0)) throw Error("fusion tolerance must be positive");
  if (x.rows() != n) throw Error("extract_clusters: X has " + std::to_string(x.rows()) + " rows for " + std::to_string(n) + " vertices");
  const Vector norms = x.rowwise().norm();
  std::vector<bool> fused(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [i, j] = edges[k];
    const double gap = (x.row(i) - x.row(j)).norm();
    fused[k] = gap <= tol_fuse * std::max(1.0, 0.5 * (norms(i) + norms(j)));
  }
  return components_from_edges(n, edges, std::move(fused));
}

}  // namespace

ClusterAssignment extract_clusters(const Matrix& x, const Graph& graph, double tol_fuse) {
  std::vector<std::pair<Index, Index>> edges;
  edges.reserve(graph.edges().size());
  for (const Edge& e : graph.edges()) edges.emplace_back(e.i, e.j);
  return extract(x, edges, graph.num_vertices(), tol_fuse);
}

ClusterAssignment extract_clusters(const Matrix& x, const PenaltyMatrix& q, double tol_fuse) {
  std::vector<std::pair<Index, Index>> edges;
  edges.reserve(q.row_entries().size());
  for (const auto& r : q.row_entries()) edges.emplace_back(r.i, r.j);
  return extract(x, edges, q.cols(), tol_fuse);
}

double rand_index(std::span<const int> labels_a, std::span<const int> labels_b) {
  if (labels_a.size() != labels_b.size()) throw Error("rand_index: label vectors differ in length");
  const std::size_t n = labels_a.size();
  if (n < 2) return 1.0;
  // Pair counting through the contingency table.
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> ca, cb;
  for (std::size_t i = 0; i < n; ++i) {
    joint[{labels_a[i], labels_b[i]}] += 1;
    ca[labels_a[i]] += 1;
    cb[labels_b[i]] += 1;
  }
  auto pairs = [](double c) { return c * (c - 1) / 2; };
  double same_both = 0, same_a = 0, same_b = 0;
  for (const auto& [_, c] : joint) same_both += pairs(c);
  for (const auto& [_, c] : ca) same_a += pairs(c);
  for (const auto& [_, c] : cb) same_b += pairs(c);
  const double total = pairs(static_cast<double>(n));
  const double agree = total - same_a - same_b + 2 * same_both;
  return agree / total;
}

double purity(std::span<const int> labels, std::span<const int> truth) {
  if (labels.size() != truth.size()) throw Error("purity: label vectors differ in length");
  if (labels.empty()) return 1.0;
  std::map<int, std::map<int, int>> counts;
  for (std::size_t i = 0; i < labels.size(); ++i) ++counts[labels[i]][truth[i]];
  int correct = 0;
  for (const auto& [_, by_truth] : counts) {
    int best = 0;
    for (const auto& [__, c] : by_truth) best = std::max(best, c);
    correct += best;
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

}  // namespace trilasso
