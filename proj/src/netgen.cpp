#include "trilasso/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace trilasso {

void SyntheticSpec::validate() const {
  if (means.empty()) throw Error("synthetic: need at least one mean");
  if (!(sigma > 0.0)) throw Error("synthetic: sigma must be positive");
  if (per_mean_count < 1) throw Error("synthetic: per_mean_count must be positive");
  if (dim < 1) throw Error("synthetic: dim must be positive");
}

Dataset gaussian_mixture(const SyntheticSpec& spec) {
  spec.validate();
  const Index n = static_cast<Index>(spec.means.size()) * spec.per_mean_count;
  Matrix a(n, spec.dim);
  Vector y(n);
  std::mt19937_64 rng(spec.seed);
  Index row = 0;
  for (double mu : spec.means) {
    std::normal_distribution<double> draw(mu, spec.sigma);
    for (int k = 0; k < spec.per_mean_count; ++k, ++row) {
      for (int c = 0; c < spec.dim; ++c) a(row, c) = draw(rng);
      y(row) = mu;
    }
  }
  return make_dataset(std::move(a), std::move(y));
}

Dataset zero_corrupt(const Dataset& data, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw Error("zero_corrupt: fraction must lie in [0, 1]");
  Dataset out = data;
  const auto total = static_cast<std::size_t>(data.instances.size());
  std::vector<std::size_t> cells(total);
  std::iota(cells.begin(), cells.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(cells.begin(), cells.end(), rng);
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(total)));
  for (std::size_t k = 0; k < count; ++k) out.instances.data()[cells[k]] = 0.0;
  return out;
}

std::string to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::random: return "random";
    case NetworkKind::small_world: return "small_world";
    case NetworkKind::scale_free: return "scale_free";
    case NetworkKind::c3: return "c3";
  }
  return "?";
}

NetworkKind parse_network_kind(const std::string& name) {
  if (name == "random") return NetworkKind::random;
  if (name == "small_world") return NetworkKind::small_world;
  if (name == "scale_free") return NetworkKind::scale_free;
  if (name == "c3") return NetworkKind::c3;
  throw Error("unknown network kind '" + name + "' (expected random, small_world, scale_free or c3)");
}

namespace {

using PairSet = std::set<std::pair<Index, Index>>;

void add_pair(PairSet& set, Index a, Index b) {
  if (a == b) return;
  set.insert({std::min(a, b), std::max(a, b)});
}

void erdos_renyi(PairSet& set, Index n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(std::clamp(p, 0.0, 1.0));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (coin(rng)) set.insert({i, j});
}

void small_world(PairSet& set, Index n, int avg_degree, std::mt19937_64& rng) {
  const int half = std::max(1, avg_degree / 2);
  if (2 * half >= n) throw Error("small_world: avg_degree too large for n");
  for (Index i = 0; i < n; ++i)
    for (int s = 1; s <= half; ++s) add_pair(set, i, (i + s) % n);
  std::bernoulli_distribution rewire(0.1);
  std::uniform_int_distribution<Index> pick(0, n - 1);
  for (Index i = 0; i < n; ++i) {
    for (int s = 1; s <= half; ++s) {
      const Index j = (i + s) % n;
      const std::pair<Index, Index> key{std::min(i, j), std::max(i, j)};
      if (!rewire(rng) || !set.count(key)) continue;
      // Keep the edge when i is already joined to everyone.
      for (int attempt = 0; attempt < 4 * n; ++attempt) {
        const Index k = pick(rng);
        if (k == i || set.count({std::min(i, k), std::max(i, k)})) continue;
        set.erase(key);
        add_pair(set, i, k);
        break;
      }
    }
  }
}

void scale_free(PairSet& set, Index n, int avg_degree, std::mt19937_64& rng) {
  const int m = std::max(1, avg_degree / 2);
  if (m >= n) throw Error("scale_free: avg_degree too large for n");
  // Seed with a clique on m + 1 vertices; `ends` lists every edge endpoint so
  // that uniform picks from it are degree-proportional.
  std::vector<Index> ends;
  for (Index i = 0; i <= m; ++i)
    for (Index j = i + 1; j <= m; ++j) {
      set.insert({i, j});
      ends.push_back(i);
      ends.push_back(j);
    }
  for (Index v = m + 1; v < n; ++v) {
    std::set<Index> targets;
    std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
    while (static_cast<int>(targets.size()) < m) targets.insert(ends[pick(rng)]);
    for (Index t : targets) {
      set.insert({t, v});
      ends.push_back(t);
      ends.push_back(v);
    }
  }
}

}  // namespace

Graph gen_network(NetworkKind kind, Index n, int avg_degree, std::uint64_t seed) {
  if (n < 2) throw Error("gen_network: need at least 2 vertices");
  if (avg_degree < 1 || avg_degree >= n)
    throw Error("gen_network: avg_degree must lie in [1, n)");
  std::mt19937_64 rng(seed);
  PairSet set;
  const double p = static_cast<double>(avg_degree) / static_cast<double>(n - 1);
  switch (kind) {
    case NetworkKind::random:
      erdos_renyi(set, n, p, rng);
      break;
    case NetworkKind::small_world:
      small_world(set, n, avg_degree, rng);
      break;
    case NetworkKind::scale_free:
      scale_free(set, n, avg_degree, rng);
      break;
    case NetworkKind::c3: {
      erdos_renyi(set, n, p, rng);
      const Index clique = std::min<Index>(n, std::max<Index>(4, n / 10));
      for (Index i = 0; i < clique; ++i)
        for (Index j = i + 1; j < clique; ++j) set.insert({i, j});
      break;
    }
  }
  std::vector<Edge> edges;
  edges.reserve(set.size());
  for (const auto& [i, j] : set) edges.push_back({i, j, 1.0, 0, 1});
  return count_triangles(Graph(n, std::move(edges)));
}

std::pair<Graph, std::vector<VertexSet>> planted_two_clique(int n_per_block, double p_in, double p_out,
                                                            std::uint64_t seed) {
  if (n_per_block < 1) throw Error("planted: n_per_block must be positive");
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0))
    throw Error("planted: probabilities must lie in [0, 1]");
  if (p_in < p_out) throw Error("planted: p_in must be at least p_out");
  const Index n = 2 * static_cast<Index>(n_per_block);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const bool same = (i < n_per_block) == (j < n_per_block);
      if (unif(rng) < (same ? p_in : p_out)) edges.push_back({i, j, 1.0, 0, 1});
    }
  std::vector<VertexSet> truth(2);
  for (Index v = 0; v < n; ++v) truth[v < n_per_block ? 0 : 1].push_back(v);
  return {count_triangles(Graph(n, std::move(edges))), std::move(truth)};
}

ExperimentPreset default_experiment_preset() { return {}; }

}  // namespace trilasso
