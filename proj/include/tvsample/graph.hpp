#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace tvsample {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using ClusterId = std::uint32_t;

template <typename Scalar>
using Signal = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Real value per node.
using GraphSignal = Signal<double>;
/// Real value per edge, indexed by edge id.
using EdgeSignal = Signal<double>;

/// Oriented edge: tail is always the smaller endpoint.
struct Edge {
  NodeId tail;
  NodeId head;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph with stable edge ids.
///
/// Edges are normalized to (min, max), deduplicated, and sorted
/// lexicographically; the position in that order is the edge id. Neighbor
/// lists are kept in CSR form, sorted ascending. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Throws std::invalid_argument on self-loops or out-of-range endpoints.
  /// Duplicate pairs (in either direction) collapse to one edge.
  Graph(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> pairs);
  Graph(std::size_t node_count, std::initializer_list<std::pair<NodeId, NodeId>> pairs)
      : Graph(node_count, std::span<const std::pair<NodeId, NodeId>>(pairs.begin(), pairs.size())) {}

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }

  std::span<const NodeId> neighbors(NodeId i) const;
  std::size_t degree(NodeId i) const;
  std::size_t max_degree() const { return max_degree_; }

  /// Edge id of {i, j}, or -1 if absent.
  std::ptrdiff_t find_edge(NodeId i, NodeId j) const;

  bool has_node(NodeId i) const { return i < node_count_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

 private:
  void check_node(NodeId i) const;

  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::size_t max_degree_ = 0;
};

inline std::size_t degree(const Graph& g, NodeId i) { return g.degree(i); }

/// Disjoint clusters covering nodes 0..N-1; cluster ids are dense from 0.
class Partition {
 public:
  Partition() = default;

  /// Throws if a cluster id in 0..max is left empty.
  explicit Partition(std::vector<ClusterId> cluster_of);

  /// Contiguous blocks: first sizes[0] nodes in cluster 0, and so on.
  static Partition from_sizes(std::span<const std::size_t> sizes);

  std::size_t node_count() const { return cluster_of_.size(); }
  std::size_t cluster_count() const { return clusters_.size(); }
  ClusterId cluster_of(NodeId i) const { return cluster_of_.at(i); }
  const std::vector<ClusterId>& assignment() const { return cluster_of_; }
  const std::vector<NodeId>& members(ClusterId c) const { return clusters_.at(c); }
  std::size_t cluster_size(ClusterId c) const { return members(c).size(); }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.cluster_of_ == b.cluster_of_;
  }

 private:
  std::vector<ClusterId> cluster_of_;
  std::vector<std::vector<NodeId>> clusters_;
};

namespace detail {

inline void check_length(Eigen::Index got, std::size_t want, const char* what) {
  if (got < 0 || static_cast<std::size_t>(got) != want) {
    throw std::invalid_argument(std::string(what) + ": length " + std::to_string(got) +
                                " does not match expected " + std::to_string(want));
  }
}

}  // namespace detail

/// (Dx)[e] = x[head(e)] - x[tail(e)].
template <typename Derived>
Signal<typename Derived::Scalar> incidence_apply(const Graph& g,
                                                 const Eigen::MatrixBase<Derived>& x) {
  detail::check_length(x.size(), g.node_count(), "incidence_apply");
  const auto& edges = g.edges();
  Signal<typename Derived::Scalar> out(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[static_cast<Eigen::Index>(e)] = x[edges[e].head] - x[edges[e].tail];
  }
  return out;
}

/// (D^T y)[i] = sum of y over edges with head i minus sum over edges with tail i.
template <typename Derived>
Signal<typename Derived::Scalar> incidence_transpose_apply(const Graph& g,
                                                           const Eigen::MatrixBase<Derived>& y) {
  detail::check_length(y.size(), g.edge_count(), "incidence_transpose_apply");
  const auto& edges = g.edges();
  Signal<typename Derived::Scalar> out =
      Signal<typename Derived::Scalar>::Zero(static_cast<Eigen::Index>(g.node_count()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto v = y[static_cast<Eigen::Index>(e)];
    out[edges[e].head] += v;
    out[edges[e].tail] -= v;
  }
  return out;
}

/// Sum over edges of |x[j] - x[i]|.
template <typename Derived>
typename Derived::Scalar total_variation(const Graph& g, const Eigen::MatrixBase<Derived>& x) {
  detail::check_length(x.size(), g.node_count(), "total_variation");
  using std::abs;
  typename Derived::Scalar tv(0);
  for (const auto& e : g.edges()) tv += abs(x[e.head] - x[e.tail]);
  return tv;
}

/// Signed node-edge incidence matrix, |E| x N, one +1 (head) and one -1
/// (tail) per row.
Eigen::SparseMatrix<double> incidence_matrix(const Graph& g);

/// Edges whose endpoints lie in different clusters, ascending edge id.
std::vector<EdgeId> boundary_edges(const Graph& g, const Partition& part);

/// Number of edges with exactly one endpoint in `cluster`.
std::size_t cut_size(const Graph& g, const Partition& part, ClusterId cluster);

/// Cut size of every cluster in one pass.
std::vector<std::size_t> cut_sizes(const Graph& g, const Partition& part);

/// x[i] = coefficients[cluster_of(i)].
template <typename Scalar = double>
Signal<Scalar> clustered_signal(const Partition& part, std::span<const Scalar> coefficients) {
  if (coefficients.size() != part.cluster_count()) {
    throw std::invalid_argument("clustered_signal: expected " +
                                std::to_string(part.cluster_count()) + " coefficients, got " +
                                std::to_string(coefficients.size()));
  }
  Signal<Scalar> x(static_cast<Eigen::Index>(part.node_count()));
  for (std::size_t i = 0; i < part.node_count(); ++i) {
    x[static_cast<Eigen::Index>(i)] = coefficients[part.cluster_of(static_cast<NodeId>(i))];
  }
  return x;
}

inline GraphSignal clustered_signal(const Partition& part, std::initializer_list<double> coefficients) {
  return clustered_signal<double>(part, std::span<const double>(coefficients.begin(), coefficients.size()));
}

}  // namespace tvsample
