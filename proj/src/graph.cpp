#include "tvsample/graph.hpp"

#include <algorithm>

namespace tvsample {

Graph::Graph(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> pairs)
    : node_count_(node_count) {
  edges_.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    if (a >= node_count || b >= node_count) {
      throw std::invalid_argument("Graph: edge {" + std::to_string(a) + "," + std::to_string(b) +
                                  "} out of range for " + std::to_string(node_count) + " nodes");
    }
    if (a == b) throw std::invalid_argument("Graph: self-loop at node " + std::to_string(a));
    edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  std::vector<std::size_t> deg(node_count, 0);
  for (const auto& e : edges_) {
    ++deg[e.tail];
    ++deg[e.head];
  }
  offsets_.assign(node_count + 1, 0);
  for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Lexicographic edge order yields ascending neighbor lists: every (t, i)
  // with t < i precedes every (i, h).
  for (const auto& e : edges_) {
    adjacency_[fill[e.tail]++] = e.head;
    adjacency_[fill[e.head]++] = e.tail;
  }
  max_degree_ = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

void Graph::check_node(NodeId i) const {
  if (i >= node_count_) {
    throw std::out_of_range("node " + std::to_string(i) + " out of range for " +
                            std::to_string(node_count_) + " nodes");
  }
}

std::span<const NodeId> Graph::neighbors(NodeId i) const {
  check_node(i);
  return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

std::size_t Graph::degree(NodeId i) const {
  check_node(i);
  return offsets_[i + 1] - offsets_[i];
}

std::ptrdiff_t Graph::find_edge(NodeId i, NodeId j) const {
  const Edge key{std::min(i, j), std::max(i, j)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return it - edges_.begin();
}

Partition::Partition(std::vector<ClusterId> cluster_of) : cluster_of_(std::move(cluster_of)) {
  if (cluster_of_.empty()) throw std::invalid_argument("Partition: no nodes");
  const ClusterId k = *std::max_element(cluster_of_.begin(), cluster_of_.end()) + 1;
  clusters_.resize(k);
  for (std::size_t i = 0; i < cluster_of_.size(); ++i) {
    clusters_[cluster_of_[i]].push_back(static_cast<NodeId>(i));
  }
  for (ClusterId c = 0; c < k; ++c) {
    if (clusters_[c].empty()) {
      throw std::invalid_argument("Partition: cluster " + std::to_string(c) + " is empty");
    }
  }
}

Partition Partition::from_sizes(std::span<const std::size_t> sizes) {
  std::vector<ClusterId> assignment;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] == 0) throw std::invalid_argument("Partition: cluster sizes must be positive");
    assignment.insert(assignment.end(), sizes[c], static_cast<ClusterId>(c));
  }
  return Partition(std::move(assignment));
}

Eigen::SparseMatrix<double> incidence_matrix(const Graph& g) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    triplets.emplace_back(static_cast<int>(e), static_cast<int>(edge.head), 1.0);
    triplets.emplace_back(static_cast<int>(e), static_cast<int>(edge.tail), -1.0);
  }
  Eigen::SparseMatrix<double> d(static_cast<Eigen::Index>(g.edge_count()),
                                static_cast<Eigen::Index>(g.node_count()));
  d.setFromTriplets(triplets.begin(), triplets.end());
  return d;
}

namespace {

void check_cover(const Graph& g, const Partition& part) {
  if (part.node_count() != g.node_count()) {
    throw std::invalid_argument("partition covers " + std::to_string(part.node_count()) +
                                " nodes but graph has " + std::to_string(g.node_count()));
  }
}

}  // namespace

std::vector<EdgeId> boundary_edges(const Graph& g, const Partition& part) {
  check_cover(g, part);
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    if (part.cluster_of(edge.tail) != part.cluster_of(edge.head)) {
      out.push_back(static_cast<EdgeId>(e));
    }
  }
  return out;
}

std::vector<std::size_t> cut_sizes(const Graph& g, const Partition& part) {
  check_cover(g, part);
  std::vector<std::size_t> cuts(part.cluster_count(), 0);
  for (const auto& edge : g.edges()) {
    const auto a = part.cluster_of(edge.tail);
    const auto b = part.cluster_of(edge.head);
    if (a != b) {
      ++cuts[a];
      ++cuts[b];
    }
  }
  return cuts;
}

std::size_t cut_size(const Graph& g, const Partition& part, ClusterId cluster) {
  if (cluster >= part.cluster_count()) {
    throw std::out_of_range("unknown cluster id " + std::to_string(cluster));
  }
  return cut_sizes(g, part)[cluster];
}

}  // namespace tvsample
