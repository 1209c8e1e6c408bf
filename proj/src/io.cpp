#include "tvsample/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace tvsample {

namespace fs = std::filesystem;

FormatError::FormatError(const std::string& what, std::size_t line)
    : std::invalid_argument(line ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

NodeIdMap::NodeIdMap(std::vector<ExternalId> sorted_external) : external_(std::move(sorted_external)) {
  dense_.reserve(external_.size());
  for (std::size_t i = 0; i < external_.size(); ++i) {
    if (i > 0 && external_[i] <= external_[i - 1]) {
      throw std::invalid_argument("NodeIdMap: external ids must be strictly ascending");
    }
    dense_.emplace(external_[i], static_cast<NodeId>(i));
  }
}

NodeIdMap NodeIdMap::identity(std::size_t n) {
  std::vector<ExternalId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  return NodeIdMap(std::move(ids));
}

std::optional<NodeId> NodeIdMap::dense(ExternalId ext) const {
  auto it = dense_.find(ext);
  if (it == dense_.end()) return std::nullopt;
  return it->second;
}

NodeId NodeIdMap::require(ExternalId ext, std::size_t line) const {
  auto d = dense(ext);
  if (!d) throw FormatError("unknown node id " + std::to_string(ext), line);
  return *d;
}

bool NodeIdMap::is_identity() const {
  return external_.empty() || external_.back() == external_.size() - 1;
}

NodeIdMap NodeIdMap::restrict(const std::vector<NodeId>& dense_nodes) const {
  std::vector<ExternalId> ids;
  ids.reserve(dense_nodes.size());
  for (NodeId d : dense_nodes) ids.push_back(external(d));
  return NodeIdMap(std::move(ids));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

ExternalId parse_id(std::string_view token, std::size_t line) {
  ExternalId v = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw FormatError("invalid node id '" + std::string(token) + "'", line);
  }
  return v;
}

double parse_value(std::string_view token, std::size_t line) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw FormatError("invalid number '" + std::string(token) + "'", line);
  }
  if (!std::isfinite(v)) throw FormatError("non-finite value", line);
  return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::size_t> nodes_header(std::string_view comment) {
  const auto pos = comment.find("Nodes:");
  if (pos == std::string_view::npos) return std::nullopt;
  auto rest = trim(comment.substr(pos + 6));
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
  if (ec != std::errc() || ptr == rest.data()) return std::nullopt;
  return n;
}

/// Data rows of a headed CSV file, split on commas and trimmed. Blank lines
/// and '#' comments are skipped.
struct CsvRow {
  std::size_t line;
  std::vector<std::string> cells;
};

std::vector<CsvRow> read_csv(std::istream& in, const std::vector<std::string>& header) {
  std::vector<CsvRow> rows;
  std::string raw;
  std::size_t line = 0;
  bool saw_header = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      cells.emplace_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!saw_header) {
      if (cells != header) {
        std::string want;
        for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
        throw FormatError("expected header '" + want + "'", line);
      }
      saw_header = true;
      continue;
    }
    if (cells.size() != header.size()) {
      throw FormatError("expected " + std::to_string(header.size()) + " columns, got " +
                            std::to_string(cells.size()),
                        line);
    }
    rows.push_back(CsvRow{line, std::move(cells)});
  }
  if (!saw_header) throw FormatError("missing header row");
  return rows;
}

}  // namespace

ParsedGraph parse_edge_list(std::istream& in, const EdgeListOptions& opts) {
  std::vector<std::pair<ExternalId, ExternalId>> raw_edges;
  std::vector<ExternalId> ids;
  std::optional<std::size_t> declared_nodes;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '#') {
      if (!declared_nodes) declared_nodes = nodes_header(s);
      continue;
    }
    const auto tokens = split_ws(s);
    if (tokens.size() != 2) {
      throw FormatError("expected two node ids, got " + std::to_string(tokens.size()) + " fields",
                        line);
    }
    const ExternalId a = parse_id(tokens[0], line);
    const ExternalId b = parse_id(tokens[1], line);
    raw_edges.emplace_back(a, b);
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  ParsedGraph out;
  if (declared_nodes && *declared_nodes > 0 && (ids.empty() || ids.back() < *declared_nodes)) {
    out.ids = NodeIdMap::identity(*declared_nodes);
  } else {
    out.ids = NodeIdMap(std::move(ids));
  }
  if (out.ids.size() == 0) throw FormatError("empty edge list");

  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(raw_edges.size());
  for (const auto& [a, b] : raw_edges) {
    if (a == b) {
      ++out.self_loops_dropped;
      continue;
    }
    pairs.emplace_back(*out.ids.dense(a), *out.ids.dense(b));
  }
  out.graph = Graph(out.ids.size(), pairs);

  if (opts.drop_isolated) {
    std::vector<NodeId> kept;
    std::vector<NodeId> remap(out.graph.node_count(), 0);
    for (NodeId i = 0; i < out.graph.node_count(); ++i) {
      if (out.graph.degree(i) > 0) {
        remap[i] = static_cast<NodeId>(kept.size());
        kept.push_back(i);
      }
    }
    out.isolated_dropped = out.graph.node_count() - kept.size();
    if (kept.empty()) throw FormatError("edge list has no edges after dropping isolated nodes");
    if (out.isolated_dropped > 0) {
      for (auto& [a, b] : pairs) {
        a = remap[a];
        b = remap[b];
      }
      out.ids = out.ids.restrict(kept);
      out.graph = Graph(kept.size(), pairs);
    }
  }
  return out;
}

ParsedGraph load_edge_list(const fs::path& path, const EdgeListOptions& opts) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return parse_edge_list(in, opts);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const Graph& g, const NodeIdMap& ids) {
  if (ids.size() != g.node_count()) throw std::invalid_argument("write_edge_list: id map size mismatch");
  out << "# Undirected graph\n";
  out << "# Nodes: " << g.node_count() << " Edges: " << g.edge_count() << '\n';
  out << "# FromNodeId\tToNodeId\n";
  for (const auto& e : g.edges()) out << ids.external(e.tail) << '\t' << ids.external(e.head) << '\n';
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<std::pair<NodeId, double>> read_signal_values(std::istream& in, const NodeIdMap& ids) {
  std::vector<std::pair<NodeId, double>> values;
  std::vector<char> seen(ids.size(), 0);
  for (const auto& row : read_csv(in, {"node_id", "value"})) {
    const NodeId i = ids.require(parse_id(row.cells[0], row.line), row.line);
    if (seen[i]) throw FormatError("node " + row.cells[0] + " listed twice", row.line);
    seen[i] = 1;
    values.emplace_back(i, parse_value(row.cells[1], row.line));
  }
  std::sort(values.begin(), values.end());
  return values;
}

GraphSignal read_signal(std::istream& in, const NodeIdMap& ids) {
  const auto values = read_signal_values(in, ids);
  if (values.size() != ids.size()) {
    throw FormatError("signal covers " + std::to_string(values.size()) + " of " +
                      std::to_string(ids.size()) + " nodes");
  }
  GraphSignal x(static_cast<Eigen::Index>(ids.size()));
  for (const auto& [i, v] : values) x[i] = v;
  return x;
}

void write_signal(std::ostream& out, const GraphSignal& x, const NodeIdMap& ids) {
  detail::check_length(x.size(), ids.size(), "write_signal");
  out << "node_id,value\n";
  for (NodeId i = 0; i < ids.size(); ++i) out << ids.external(i) << ',' << format_double(x[i]) << '\n';
}

Partition read_partition(std::istream& in, const NodeIdMap& ids) {
  std::vector<ClusterId> cluster_of(ids.size(), 0);
  std::vector<char> seen(ids.size(), 0);
  std::size_t count = 0;
  for (const auto& row : read_csv(in, {"node_id", "cluster_id"})) {
    const NodeId i = ids.require(parse_id(row.cells[0], row.line), row.line);
    if (seen[i]) throw FormatError("node " + row.cells[0] + " listed twice", row.line);
    seen[i] = 1;
    ++count;
    const auto c = parse_id(row.cells[1], row.line);
    if (c > std::numeric_limits<ClusterId>::max()) throw FormatError("cluster id too large", row.line);
    cluster_of[i] = static_cast<ClusterId>(c);
  }
  if (count != ids.size()) {
    throw FormatError("partition covers " + std::to_string(count) + " of " +
                      std::to_string(ids.size()) + " nodes");
  }
  return Partition(std::move(cluster_of));
}

void write_partition(std::ostream& out, const Partition& part, const NodeIdMap& ids) {
  if (part.node_count() != ids.size()) throw std::invalid_argument("write_partition: size mismatch");
  out << "node_id,cluster_id\n";
  for (NodeId i = 0; i < ids.size(); ++i) out << ids.external(i) << ',' << part.cluster_of(i) << '\n';
}

SamplingSet read_sampling_set(std::istream& in, const NodeIdMap& ids) {
  std::vector<NodeId> nodes;
  std::vector<char> seen(ids.size(), 0);
  for (const auto& row : read_csv(in, {"node_id"})) {
    const NodeId i = ids.require(parse_id(row.cells[0], row.line), row.line);
    if (seen[i]) throw FormatError("node " + row.cells[0] + " listed twice", row.line);
    seen[i] = 1;
    nodes.push_back(i);
  }
  return SamplingSet(std::move(nodes));
}

void write_sampling_set(std::ostream& out, const SamplingSet& m, const NodeIdMap& ids) {
  out << "node_id\n";
  for (NodeId i : m.nodes()) out << ids.external(i) << '\n';
}

Subgraph extract_subgraph(const Graph& g, std::size_t walk_length, Rng& rng) {
  if (g.node_count() == 0) throw std::invalid_argument("extract_subgraph: empty graph");
  std::uniform_int_distribution<NodeId> seed_dist(0, static_cast<NodeId>(g.node_count() - 1));
  const auto path = random_walk(g, seed_dist(rng), walk_length, rng);

  std::vector<char> keep(g.node_count(), 0);
  for (NodeId v : path) {
    keep[v] = 1;
    for (NodeId w : g.neighbors(v)) keep[w] = 1;
  }
  Subgraph sub;
  std::vector<NodeId> remap(g.node_count(), 0);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (keep[i]) {
      remap[i] = static_cast<NodeId>(sub.original.size());
      sub.original.push_back(i);
    }
  }
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (const auto& e : g.edges()) {
    if (keep[e.tail] && keep[e.head]) pairs.emplace_back(remap[e.tail], remap[e.head]);
  }
  sub.graph = Graph(sub.original.size(), pairs);
  return sub;
}

Subgraph extract_subgraph(const Graph& g, std::size_t walk_length, const RngSeed& seed) {
  Rng rng = seed.engine();
  return extract_subgraph(g, walk_length, rng);
}

OutputBatch::~OutputBatch() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& [tmp, target] : staged_) fs::remove(tmp, ec);
}

void OutputBatch::add(const fs::path& target, std::string content) {
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(staged_.size());
  staged_.emplace_back(tmp, target);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
}

void OutputBatch::commit() {
  for (const auto& [tmp, target] : staged_) fs::rename(tmp, target);
  committed_ = true;
}

}  // namespace tvsample
