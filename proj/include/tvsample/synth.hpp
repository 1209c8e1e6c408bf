#pragma once

#include <utility>
#include <vector>

#include "tvsample/graph.hpp"
#include "tvsample/rng.hpp"

namespace tvsample {

/// Assortative planted partition model: pairs inside a cluster are joined
/// with probability p_intra, pairs across clusters with q_inter.
struct AppmSpec {
  std::vector<std::size_t> cluster_sizes;
  double p_intra = 0.0;
  double q_inter = 0.0;

  std::size_t node_count() const;
  void validate() const;
};

/// The four-cluster setup used throughout the experiments:
/// sizes 10/20/30/40, p = 0.3, q = 0.05.
AppmSpec default_appm_spec();

struct AppmDraw {
  Graph graph;
  Partition partition;
};

/// Independent Bernoulli trial per node pair. Nodes are labeled in
/// contiguous cluster blocks.
AppmDraw generate_appm(const AppmSpec& spec, Rng& rng);
AppmDraw generate_appm(const AppmSpec& spec, const RngSeed& seed);

/// Redraws until the graph is connected; throws std::runtime_error after
/// max_attempts failures.
AppmDraw generate_connected_appm(const AppmSpec& spec, Rng& rng, int max_attempts = 1000);

/// p(N_r - 1) + q(N - N_r)
double expected_degree(const AppmSpec& spec, ClusterId cluster);

/// q N_r (N - N_r)
double expected_cut_size(const AppmSpec& spec, ClusterId cluster);

/// Expected number of edges of a draw.
double expected_edge_count(const AppmSpec& spec);

/// One coefficient per cluster, uniform on [0, 1).
GraphSignal random_clustered_signal(const Partition& part, Rng& rng);
GraphSignal random_clustered_signal(const Partition& part, const RngSeed& seed);

bool is_connected(const Graph& g);

}  // namespace tvsample
