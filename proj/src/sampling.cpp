#include "tvsample/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

namespace tvsample {

SamplingSet::SamplingSet(std::vector<NodeId> nodes, std::size_t budget)
    : nodes_(std::move(nodes)), budget_(budget) {
  std::sort(nodes_.begin(), nodes_.end());
  if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
    throw std::invalid_argument("SamplingSet: duplicate node ids");
  }
  if (nodes_.size() > budget_) {
    throw std::invalid_argument("SamplingSet: more nodes than budget");
  }
}

SamplingSet::SamplingSet(std::vector<NodeId> nodes) : SamplingSet(nodes, nodes.size()) {}

bool SamplingSet::contains(NodeId i) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), i);
}

void SamplingSet::check_against(const Graph& g) const {
  if (!nodes_.empty() && nodes_.back() >= g.node_count()) {
    throw std::invalid_argument("sampling set contains unknown node " +
                                std::to_string(nodes_.back()));
  }
}

void WalkConfig::validate(const Graph& g) const {
  if (length < 1) throw std::invalid_argument("walk length must be at least 1");
  if (budget < 1) throw std::invalid_argument("sampling budget must be at least 1");
  if (budget > g.node_count()) {
    throw std::invalid_argument("sampling budget " + std::to_string(budget) +
                                " exceeds node count " + std::to_string(g.node_count()));
  }
}

std::vector<NodeId> random_walk(const Graph& g, NodeId seed_node, std::size_t length, Rng& rng) {
  if (!g.has_node(seed_node)) {
    throw std::invalid_argument("random_walk: invalid seed node " + std::to_string(seed_node));
  }
  if (length < 1) throw std::invalid_argument("random_walk: length must be at least 1");
  std::vector<NodeId> path;
  path.reserve(length);
  NodeId v = seed_node;
  path.push_back(v);
  for (std::size_t step = 1; step < length; ++step) {
    const auto nbrs = g.neighbors(v);
    if (!nbrs.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
      v = nbrs[pick(rng)];
    }
    path.push_back(v);
  }
  return path;
}

namespace {

NodeId walk_endpoint(const Graph& g, NodeId v, std::size_t length, Rng& rng) {
  for (std::size_t step = 1; step < length; ++step) {
    const auto nbrs = g.neighbors(v);
    if (nbrs.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
    v = nbrs[pick(rng)];
  }
  return v;
}

}  // namespace

SamplingSet random_walk_sampling(const Graph& g, const WalkConfig& cfg, Rng& rng) {
  cfg.validate(g);
  std::uniform_int_distribution<NodeId> seed_dist(0, static_cast<NodeId>(g.node_count() - 1));
  std::vector<char> taken(g.node_count(), 0);
  std::vector<NodeId> nodes;
  nodes.reserve(cfg.budget);
  const std::size_t max_walks = 100 * cfg.budget;
  for (std::size_t walk = 0; walk < max_walks && nodes.size() < cfg.budget; ++walk) {
    const NodeId end = walk_endpoint(g, seed_dist(rng), cfg.length, rng);
    if (!taken[end]) {
      taken[end] = 1;
      nodes.push_back(end);
    }
  }
  if (nodes.size() < cfg.budget) {
    throw SamplingError("sampling budget unreachable: " + std::to_string(nodes.size()) + " of " +
                        std::to_string(cfg.budget) + " distinct endpoints after " +
                        std::to_string(max_walks) + " walks");
  }
  return SamplingSet(std::move(nodes), cfg.budget);
}

SamplingSet random_walk_sampling(const Graph& g, const WalkConfig& cfg, const RngSeed& seed) {
  Rng rng = seed.engine();
  return random_walk_sampling(g, cfg, rng);
}

SamplingSet uniform_sampling(const Graph& g, std::size_t budget, Rng& rng) {
  WalkConfig{1, budget}.validate(g);
  std::vector<NodeId> all(g.node_count());
  std::iota(all.begin(), all.end(), NodeId{0});
  std::vector<NodeId> picked;
  picked.reserve(budget);
  std::sample(all.begin(), all.end(), std::back_inserter(picked), budget, rng);
  return SamplingSet(std::move(picked), budget);
}

SamplingSet uniform_sampling(const Graph& g, std::size_t budget, const RngSeed& seed) {
  Rng rng = seed.engine();
  return uniform_sampling(g, budget, rng);
}

Eigen::VectorXd stationary_distribution(const Graph& g) {
  if (g.edge_count() == 0) {
    throw std::invalid_argument("stationary distribution undefined on an edgeless graph");
  }
  Eigen::VectorXd pi(static_cast<Eigen::Index>(g.node_count()));
  const double total = 2.0 * static_cast<double>(g.edge_count());
  for (NodeId i = 0; i < g.node_count(); ++i) {
    pi[i] = static_cast<double>(g.degree(i)) / total;
  }
  return pi;
}

double sampling_probability_estimate(const AppmSpec& spec, ClusterId cluster) {
  const double edges = expected_edge_count(spec);
  if (!(edges > 0.0)) {
    throw std::invalid_argument("sampling probability undefined: expected edge count is zero");
  }
  return expected_degree(spec, cluster) / (2.0 * edges);
}

NullspaceReport check_nullspace_condition(const Graph& g, const Partition& part,
                                          const SamplingSet& m) {
  m.check_against(g);
  NullspaceReport report;
  auto check_endpoint = [&](EdgeId e, NodeId node) {
    const ClusterId c = part.cluster_of(node);
    std::size_t sampled = 0;
    std::size_t same_cluster = 0;
    for (NodeId w : g.neighbors(node)) {
      if (part.cluster_of(w) != c) continue;
      ++same_cluster;
      if (m.contains(w)) ++sampled;
    }
    if (sampled < 2) {
      report.violations.push_back(NullspaceViolation{e, node, c, sampled, same_cluster < 2});
    }
  };
  for (EdgeId e : boundary_edges(g, part)) {
    const Edge& edge = g.edge(e);
    check_endpoint(e, edge.tail);
    check_endpoint(e, edge.head);
  }
  report.satisfied = report.violations.empty();
  return report;
}

}  // namespace tvsample
