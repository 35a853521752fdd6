#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "trilasso/dataset.hpp"
#include "trilasso/graph.hpp"
#include "trilasso/tasks.hpp"

namespace trilasso {

struct SyntheticSpec {
  std::vector<double> means{-5.0, -3.0, 0.0, 3.0, 5.0};
  double sigma = 1.0;
  int per_mean_count = 20;
  int dim = 5;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Instances grouped by mean in the order of `means`; every entry of a group
/// is drawn from N(mu, sigma^2) and the response is mu.
Dataset gaussian_mixture(const SyntheticSpec& spec);

/// Zero a uniformly chosen `fraction` of the instance entries (rounded down).
Dataset zero_corrupt(const Dataset& data, double fraction, std::uint64_t seed);

enum class NetworkKind { random, small_world, scale_free, c3 };

std::string to_string(NetworkKind kind);
NetworkKind parse_network_kind(const std::string& name);

/// random: each pair independently with p = avg_degree / (n - 1).
/// small_world: ring lattice with avg_degree / 2 neighbours per side, each
///   lattice edge rewired with probability 0.1.
/// scale_free: preferential attachment with avg_degree / 2 edges per new vertex.
/// c3: a random graph plus a clique on the first max(4, n / 10) vertices.
/// Triangle counts are filled in.
Graph gen_network(NetworkKind kind, Index n, int avg_degree, std::uint64_t seed);

/// Two equal blocks; within-block pairs join with p_in, cross pairs with p_out.
std::pair<Graph, std::vector<VertexSet>> planted_two_clique(int n_per_block, double p_in, double p_out,
                                                            std::uint64_t seed);

/// Parameters of the efficiency experiments.
struct ExperimentPreset {
  SyntheticSpec data;
  double gamma = 0.01;
  double alpha = 0.01;
};

ExperimentPreset default_experiment_preset();

}  // namespace trilasso
