#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tvsample/graph.hpp"
#include "tvsample/rng.hpp"
#include "tvsample/sampling.hpp"

namespace tvsample {

/// Malformed input file. Carries the offending line number when known.
class FormatError : public std::invalid_argument {
 public:
  FormatError(const std::string& what, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using ExternalId = std::uint64_t;

/// Dense node id <-> external id. Dense ids follow ascending external id.
class NodeIdMap {
 public:
  NodeIdMap() = default;
  explicit NodeIdMap(std::vector<ExternalId> sorted_external);
  static NodeIdMap identity(std::size_t n);

  std::size_t size() const { return external_.size(); }
  ExternalId external(NodeId dense) const { return external_.at(dense); }
  std::optional<NodeId> dense(ExternalId ext) const;
  /// Throws FormatError for ids not in the map.
  NodeId require(ExternalId ext, std::size_t line = 0) const;
  bool is_identity() const;
  const std::vector<ExternalId>& externals() const { return external_; }

  /// Map restricted to the given dense nodes (ascending), renumbered densely.
  NodeIdMap restrict(const std::vector<NodeId>& dense_nodes) const;

 private:
  std::vector<ExternalId> external_;
  std::unordered_map<ExternalId, NodeId> dense_;
};

struct EdgeListOptions {
  /// Drop nodes that end up without any edge (e.g. self-loop-only ids).
  bool drop_isolated = false;
};

struct ParsedGraph {
  Graph graph;
  NodeIdMap ids;
  std::size_t self_loops_dropped = 0;
  std::size_t isolated_dropped = 0;
};

/// SNAP-style edge list: two whitespace-separated non-negative integer ids
/// per line, '#' starts a comment line. Either direction of a pair yields the
/// same undirected edge. A "# Nodes: N" header whose ids all lie in [0, N)
/// keeps the identity mapping, so isolated nodes survive a round trip.
ParsedGraph parse_edge_list(std::istream& in, const EdgeListOptions& opts = {});
ParsedGraph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& opts = {});

/// Writes "# Nodes: N Edges: E" followed by one "tail head" line per edge,
/// in external ids.
void write_edge_list(std::ostream& out, const Graph& g, const NodeIdMap& ids);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// node_id,value rows; every node exactly once.
GraphSignal read_signal(std::istream& in, const NodeIdMap& ids);
/// node_id,value rows for any subset of nodes, sorted by dense id.
std::vector<std::pair<NodeId, double>> read_signal_values(std::istream& in, const NodeIdMap& ids);
void write_signal(std::ostream& out, const GraphSignal& x, const NodeIdMap& ids);

/// node_id,cluster_id rows; every node exactly once.
Partition read_partition(std::istream& in, const NodeIdMap& ids);
void write_partition(std::ostream& out, const Partition& part, const NodeIdMap& ids);

/// node_id rows, distinct.
SamplingSet read_sampling_set(std::istream& in, const NodeIdMap& ids);
void write_sampling_set(std::ostream& out, const SamplingSet& m, const NodeIdMap& ids);

/// Subgraph with the original dense id of each retained node.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> original;
};

/// Runs one walk of `walk_length` nodes from a uniform seed node and returns
/// the subgraph induced by the walk's nodes and all their neighbors.
Subgraph extract_subgraph(const Graph& g, std::size_t walk_length, Rng& rng);
Subgraph extract_subgraph(const Graph& g, std::size_t walk_length, const RngSeed& seed);

/// Output files that only appear once every one of them has been written.
/// Content goes to temporaries next to the targets; commit() renames them
/// into place. Uncommitted temporaries are removed on destruction.
class OutputBatch {
 public:
  OutputBatch() = default;
  OutputBatch(const OutputBatch&) = delete;
  OutputBatch& operator=(const OutputBatch&) = delete;
  ~OutputBatch();

  void add(const std::filesystem::path& target, std::string content);
  void commit();

 private:
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged_;
  bool committed_ = false;
};

}  // namespace tvsample
