#pragma once

#include <stdexcept>
#include <vector>

#include "tvsample/graph.hpp"
#include "tvsample/rng.hpp"
#include "tvsample/synth.hpp"

namespace tvsample {

/// Thrown when a sampler cannot collect the requested number of distinct
/// nodes within its walk cap.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Observed node set, stored sorted ascending.
class SamplingSet {
 public:
  SamplingSet() = default;
  /// Throws on duplicates or an empty budget.
  SamplingSet(std::vector<NodeId> nodes, std::size_t budget);
  explicit SamplingSet(std::vector<NodeId> nodes);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t budget() const { return budget_; }
  bool empty() const { return nodes_.empty(); }
  bool contains(NodeId i) const;

  /// Throws std::invalid_argument if any node is outside g.
  void check_against(const Graph& g) const;

 private:
  std::vector<NodeId> nodes_;
  std::size_t budget_ = 0;
};

struct WalkConfig {
  std::size_t length = 10;
  std::size_t budget = 10;

  void validate(const Graph& g) const;
};

/// Nodes (v_1 = seed, ..., v_L). Each step moves to a uniformly chosen
/// neighbor; an isolated node repeats itself.
std::vector<NodeId> random_walk(const Graph& g, NodeId seed_node, std::size_t length, Rng& rng);

/// Random walk sampling: start walks at uniformly drawn seed nodes and keep
/// each walk's final node until `budget` distinct nodes are collected. Gives
/// up with SamplingError after 100 * budget walks.
SamplingSet random_walk_sampling(const Graph& g, const WalkConfig& cfg, Rng& rng);
SamplingSet random_walk_sampling(const Graph& g, const WalkConfig& cfg, const RngSeed& seed);

/// `budget` distinct nodes uniformly without replacement.
SamplingSet uniform_sampling(const Graph& g, std::size_t budget, Rng& rng);
SamplingSet uniform_sampling(const Graph& g, std::size_t budget, const RngSeed& seed);

/// d_i / (2|E|). Throws on an edgeless graph.
Eigen::VectorXd stationary_distribution(const Graph& g);

/// Predicted probability that a given node of `cluster` ends up as a walk
/// endpoint: expected degree over twice the expected edge count.
double sampling_probability_estimate(const AppmSpec& spec, ClusterId cluster);

struct NullspaceViolation {
  EdgeId edge;
  NodeId node;        // endpoint whose neighborhood was checked
  ClusterId cluster;  // cluster of that endpoint
  std::size_t achieved;
  /// Endpoint has fewer than two same-cluster neighbors in the graph, so no
  /// sampling set can fix this check.
  bool structural;
};

struct NullspaceReport {
  bool satisfied = true;
  std::vector<NullspaceViolation> violations;
};

/// For every boundary edge {i, j}, requires at least two sampled
/// same-cluster neighbors of i and of j.
NullspaceReport check_nullspace_condition(const Graph& g, const Partition& part,
                                          const SamplingSet& m);

}  // namespace tvsample
