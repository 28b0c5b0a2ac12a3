#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace walkpred {

using NodeId = std::uint32_t;

// Unordered node pair stored with u <= v. u == v is a self-loop / self-pair.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  bool is_loop() const noexcept { return u == v; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected graph with optional self-loops.
///
/// Nodes carry string labels mapped to dense indices in [0, n). The edge set
/// is kept sorted and duplicate-free; adjacency lists hold the non-loop
/// neighbours in ascending order and self-loops are tracked separately.
class Network {
 public:
  Network() = default;

  // Throws ContractError on duplicate labels or out-of-range endpoints.
  // Duplicate edges (in either orientation) collapse to one.
  Network(std::vector<std::string> labels, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t self_loop_count() const noexcept { return loop_count_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(NodeId i) const { return labels_.at(i); }
  // Index of a label, or -1 when absent.
  std::int64_t index_of(const std::string& label) const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }

  // Neighbours of i other than i itself, ascending.
  std::span<const NodeId> neighbors(NodeId i) const noexcept {
    return {adjacency_[i].data(), adjacency_[i].size()};
  }
  bool has_self_loop(NodeId i) const noexcept { return self_loop_[i] != 0; }
  bool has_edge(NodeId i, NodeId j) const;

  // k_i = sum_j A_ij; a self-loop contributes 1.
  std::size_t degree(NodeId i) const noexcept { return adjacency_[i].size() + self_loop_[i]; }
  // Degree with self-loops ignored.
  std::size_t simple_degree(NodeId i) const noexcept { return adjacency_[i].size(); }

  // Same node set, subset of the edges.
  Network with_edges(std::vector<Edge> edges) const { return Network(labels_, std::move(edges)); }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::uint8_t> self_loop_;
  std::size_t loop_count_ = 0;
};

struct ParseOptions {
  // '\0' splits on any run of spaces/tabs; otherwise split on exactly this character.
  char delimiter = '\0';
  std::string comment_prefix = "#";
};

// One edge per line, two labels per line. Labels are numbered in order of
// first appearance. Throws ParseError (with line number) on a malformed line
// or when the input holds no edges.
Network parse_edge_list(std::istream& in, const ParseOptions& options = {});
Network parse_edge_list_file(const std::string& path, const ParseOptions& options = {});

// Tab-separated, one line per edge in index order, self-loops as "x\tx".
void write_edge_list(std::ostream& out, const Network& net);

Eigen::MatrixXd build_adjacency(const Network& net);
Eigen::MatrixXd build_laplacian(const Network& net);
Eigen::VectorXd degree_vector(const Network& net);

struct NetworkStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double mean_degree = 0.0;    // 2m / n
  double density = 0.0;        // non-loop edges over n(n-1)/2
  double clustering = 0.0;     // mean local clustering, loops ignored
  double assortativity = 0.0;  // Pearson degree correlation, loops ignored; NaN if undefined
  std::size_t self_loops = 0;
};

NetworkStats compute_stats(const Network& net);

struct CcdfPoint {
  std::size_t degree;
  double fraction;  // share of nodes with degree >= this value
};

// One point per distinct degree, ascending.
std::vector<CcdfPoint> degree_ccdf(const Network& net);

// FNV-1a over labels and edge set; stable across runs and platforms.
std::uint64_t content_hash(const Network& net);

}  // namespace walkpred
