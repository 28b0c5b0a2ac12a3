#include "walkpred/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "walkpred/error.hpp"

namespace walkpred {

Network::Network(std::vector<std::string> labels, std::vector<Edge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  const std::size_t n = labels_.size();
  if (n > std::numeric_limits<NodeId>::max()) throw ContractError("too many nodes");
  index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(labels_[i], static_cast<NodeId>(i)).second)
      throw ContractError("duplicate node label '" + labels_[i] + "'");
  }

  for (const Edge& e : edges_) {
    if (e.v >= n) throw ContractError("edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  adjacency_.assign(n, {});
  self_loop_.assign(n, 0);
  for (const Edge& e : edges_) {
    if (e.is_loop()) {
      self_loop_[e.u] = 1;
      ++loop_count_;
    } else {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

std::int64_t Network::index_of(const std::string& label) const {
  auto it = index_.find(label);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

bool Network::has_edge(NodeId i, NodeId j) const {
  if (i == j) return has_self_loop(i);
  const auto& nbrs = adjacency_[i];
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> tokens;
  if (delimiter == '\0') {
    std::size_t pos = 0;
    while (pos < line.size()) {
      pos = line.find_first_not_of(" \t", pos);
      if (pos == std::string::npos) break;
      std::size_t end = line.find_first_of(" \t", pos);
      if (end == std::string::npos) end = line.size();
      tokens.push_back(line.substr(pos, end - pos));
      pos = end;
    }
  } else {
    std::size_t start = 0;
    for (;;) {
      std::size_t end = line.find(delimiter, start);
      tokens.push_back(line.substr(start, end == std::string::npos ? std::string::npos : end - start));
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  return tokens;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

Network parse_edge_list(std::istream& in, const ParseOptions& options) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> index;
  std::vector<Edge> edges;

  auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    if (!options.comment_prefix.empty() && line.rfind(options.comment_prefix, 0) == 0) continue;

    auto tokens = split_line(line, options.delimiter);
    if (tokens.size() != 2)
      throw ParseError("expected 2 node labels, found " + std::to_string(tokens.size()), line_no);
    if (tokens[0].empty() || tokens[1].empty()) throw ParseError("empty node label", line_no);
    NodeId a = intern(tokens[0]);
    NodeId b = intern(tokens[1]);
    edges.emplace_back(a, b);
  }
  if (in.bad()) throw IoError("read failure");
  if (edges.empty()) throw ParseError("edge list contains no edges");
  return Network(std::move(labels), std::move(edges));
}

Network parse_edge_list_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return parse_edge_list(in, options);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const Network& net) {
  for (const Edge& e : net.edges()) out << net.label(e.u) << '\t' << net.label(e.v) << '\n';
}

Eigen::MatrixXd build_adjacency(const Network& net) {
  const auto n = static_cast<Eigen::Index>(net.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : net.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

Eigen::MatrixXd build_laplacian(const Network& net) {
  Eigen::MatrixXd l = -build_adjacency(net);
  for (NodeId i = 0; i < net.node_count(); ++i) l(i, i) += static_cast<double>(net.degree(i));
  return l;
}

Eigen::VectorXd degree_vector(const Network& net) {
  Eigen::VectorXd k(static_cast<Eigen::Index>(net.node_count()));
  for (NodeId i = 0; i < net.node_count(); ++i) k(i) = static_cast<double>(net.degree(i));
  return k;
}

namespace {

double mean_clustering(const Network& net) {
  const std::size_t n = net.node_count();
  std::vector<std::uint8_t> mark(n, 0);
  double total = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    auto nbrs = net.neighbors(i);
    const std::size_t d = nbrs.size();
    if (d < 2) continue;
    for (NodeId j : nbrs) mark[j] = 1;
    std::size_t links = 0;
    for (NodeId j : nbrs) {
      for (NodeId l : net.neighbors(j)) {
        if (l > j && mark[l]) ++links;
      }
    }
    for (NodeId j : nbrs) mark[j] = 0;
    total += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return total / static_cast<double>(n);
}

double degree_assortativity(const Network& net) {
  // Each non-loop edge contributes both orientations.
  double sum = 0.0, sum_sq = 0.0, sum_prod = 0.0;
  std::size_t samples = 0;
  for (const Edge& e : net.edges()) {
    if (e.is_loop()) continue;
    const double x = static_cast<double>(net.simple_degree(e.u));
    const double y = static_cast<double>(net.simple_degree(e.v));
    sum += x + y;
    sum_sq += x * x + y * y;
    sum_prod += 2.0 * x * y;
    samples += 2;
  }
  if (samples == 0) return std::numeric_limits<double>::quiet_NaN();
  const double s = static_cast<double>(samples);
  const double mean = sum / s;
  const double var = sum_sq / s - mean * mean;
  if (var <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (sum_prod / s - mean * mean) / var;
}

}  // namespace

NetworkStats compute_stats(const Network& net) {
  NetworkStats s;
  s.nodes = net.node_count();
  s.edges = net.edge_count();
  s.self_loops = net.self_loop_count();
  if (s.nodes == 0) return s;
  const double n = static_cast<double>(s.nodes);
  s.mean_degree = 2.0 * static_cast<double>(s.edges) / n;
  const double pairs = n * (n - 1.0) / 2.0;
  s.density = pairs > 0.0 ? static_cast<double>(s.edges - s.self_loops) / pairs : 0.0;
  s.clustering = mean_clustering(net);
  s.assortativity = degree_assortativity(net);
  return s;
}

std::vector<CcdfPoint> degree_ccdf(const Network& net) {
  std::map<std::size_t, std::size_t> histogram;
  for (NodeId i = 0; i < net.node_count(); ++i) ++histogram[net.degree(i)];
  std::vector<CcdfPoint> out;
  out.reserve(histogram.size());
  const double n = static_cast<double>(net.node_count());
  std::size_t at_least = net.node_count();
  for (const auto& [k, count] : histogram) {
    out.push_back({k, static_cast<double>(at_least) / n});
    at_least -= count;
  }
  return out;
}

std::uint64_t content_hash(const Network& net) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix_byte = [&h](unsigned char b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  auto mix_u64 = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(x >> (8 * i)));
  };
  mix_u64(net.node_count());
  for (const auto& label : net.labels()) {
    mix_u64(label.size());
    for (unsigned char c : label) mix_byte(c);
  }
  mix_u64(net.edge_count());
  for (const Edge& e : net.edges()) mix_u64((static_cast<std::uint64_t>(e.u) << 32) | e.v);
  return h;
}

}  // namespace walkpred
