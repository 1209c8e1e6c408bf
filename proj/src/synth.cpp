#include "tvsample/synth.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace tvsample {

std::size_t AppmSpec::node_count() const {
  return std::accumulate(cluster_sizes.begin(), cluster_sizes.end(), std::size_t{0});
}

void AppmSpec::validate() const {
  if (cluster_sizes.empty()) throw std::invalid_argument("AppmSpec: at least one cluster required");
  for (auto n : cluster_sizes) {
    if (n == 0) throw std::invalid_argument("AppmSpec: cluster sizes must be positive");
  }
  if (!(p_intra >= 0.0 && p_intra <= 1.0)) {
    throw std::invalid_argument("AppmSpec: p must lie in [0,1]");
  }
  if (!(q_inter >= 0.0 && q_inter <= 1.0)) {
    throw std::invalid_argument("AppmSpec: q must lie in [0,1]");
  }
}

AppmSpec default_appm_spec() { return AppmSpec{{10, 20, 30, 40}, 0.3, 0.05}; }

AppmDraw generate_appm(const AppmSpec& spec, Rng& rng) {
  spec.validate();
  Partition part = Partition::from_sizes(spec.cluster_sizes);
  const std::size_t n = part.node_count();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const double prob = part.cluster_of(i) == part.cluster_of(j) ? spec.p_intra : spec.q_inter;
      if (unit(rng) < prob) pairs.emplace_back(i, j);
    }
  }
  return AppmDraw{Graph(n, pairs), std::move(part)};
}

AppmDraw generate_appm(const AppmSpec& spec, const RngSeed& seed) {
  Rng rng = seed.engine();
  return generate_appm(spec, rng);
}

AppmDraw generate_connected_appm(const AppmSpec& spec, Rng& rng, int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    AppmDraw draw = generate_appm(spec, rng);
    if (is_connected(draw.graph)) return draw;
  }
  throw std::runtime_error("no connected APPM draw in " + std::to_string(max_attempts) +
                           " attempts");
}

namespace {

void check_cluster(const AppmSpec& spec, ClusterId cluster) {
  spec.validate();
  if (cluster >= spec.cluster_sizes.size()) {
    throw std::out_of_range("unknown cluster id " + std::to_string(cluster));
  }
}

}  // namespace

double expected_degree(const AppmSpec& spec, ClusterId cluster) {
  check_cluster(spec, cluster);
  const double nr = static_cast<double>(spec.cluster_sizes[cluster]);
  const double n = static_cast<double>(spec.node_count());
  return spec.p_intra * (nr - 1.0) + spec.q_inter * (n - nr);
}

double expected_cut_size(const AppmSpec& spec, ClusterId cluster) {
  check_cluster(spec, cluster);
  const double nr = static_cast<double>(spec.cluster_sizes[cluster]);
  const double n = static_cast<double>(spec.node_count());
  return spec.q_inter * nr * (n - nr);
}

double expected_edge_count(const AppmSpec& spec) {
  spec.validate();
  const double n = static_cast<double>(spec.node_count());
  double intra_pairs = 0.0;
  double sum_sq = 0.0;
  for (auto size : spec.cluster_sizes) {
    const double nr = static_cast<double>(size);
    intra_pairs += nr * (nr - 1.0) / 2.0;
    sum_sq += nr * nr;
  }
  return spec.p_intra * intra_pairs + spec.q_inter * (n * n - sum_sq) / 2.0;
}

GraphSignal random_clustered_signal(const Partition& part, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> coeffs(part.cluster_count());
  for (auto& a : coeffs) a = unit(rng);
  return clustered_signal<double>(part, coeffs);
}

GraphSignal random_clustered_signal(const Partition& part, const RngSeed& seed) {
  Rng rng = seed.engine();
  return random_clustered_signal(part, rng);
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

}  // namespace tvsample
