#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "trilasso/graph.hpp"

namespace support {

using trilasso::Edge;
using trilasso::Graph;
using trilasso::Index;
using trilasso::Matrix;

// The five-vertex example graph, 0-based.
inline Graph five_vertex_graph() {
  return trilasso::count_triangles(Graph(5, {{0, 1}, {0, 3}, {0, 4}, {2, 3}, {3, 4}}));
}

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> draw(0.0, scale);
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m(r, c) = draw(rng);
  return m;
}

// A path 0-1-...-(n-1) plus each remaining pair with probability p.
inline Graph random_connected_graph(Index n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 2; j < n; ++j)
      if (coin(rng)) edges.push_back({i, j});
  return trilasso::count_triangles(Graph(n, std::move(edges)));
}

inline Graph complete_graph(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) edges.push_back({i, j});
  return trilasso::count_triangles(Graph(n, std::move(edges)));
}

// Central difference of f along direction dir.
inline double directional_fd(const std::function<double(const Matrix&)>& f, const Matrix& at, const Matrix& dir,
                             double h = 1e-5) {
  return (f(at + h * dir) - f(at - h * dir)) / (2.0 * h);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace support
