#include "walkpred/scores.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

#include "json.hpp"

#include "walkpred/error.hpp"

namespace walkpred {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Crw: return "CRW";
    case Method::QrwA: return "QRW-A";
    case Method::QrwL: return "QRW-L";
    case Method::L3: return "L3";
    case Method::Pa: return "PA";
    case Method::Cn: return "CN";
    case Method::Aa: return "AA";
    case Method::Spm: return "SPM";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Method m : kAllMethods) {
    std::string name(method_name(m));
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    if (name == lower) return m;
  }
  return std::nullopt;
}

bool is_walk_method(Method m) { return m == Method::Crw || m == Method::QrwA || m == Method::QrwL; }

CandidateSet CandidateSet::from_pairs(const Network& net, std::vector<Edge> pairs) {
  std::vector<Edge> sorted = pairs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ContractError("duplicate candidate pair");
  for (const Edge& p : pairs) {
    if (p.v >= net.node_count()) throw ContractError("candidate endpoint out of range");
    if (net.has_edge(p.u, p.v))
      throw ContractError("candidate (" + net.label(p.u) + ", " + net.label(p.v) + ") is a training edge");
  }
  return CandidateSet(std::move(pairs));
}

CandidateSet CandidateSet::all_non_edges(const Network& net, bool include_self_pairs) {
  const std::size_t n = net.node_count();
  std::vector<Edge> pairs;
  pairs.reserve(n * (n + 1) / 2 - std::min(net.edge_count(), n * (n + 1) / 2));
  for (NodeId i = 0; i < n; ++i) {
    if (include_self_pairs && !net.has_self_loop(i)) pairs.emplace_back(i, i);
    auto nbrs = net.neighbors(i);
    auto it = std::upper_bound(nbrs.begin(), nbrs.end(), i);
    for (NodeId j = i + 1; j < n; ++j) {
      if (it != nbrs.end() && *it == j) {
        ++it;
        continue;
      }
      pairs.emplace_back(i, j);
    }
  }
  return CandidateSet(std::move(pairs));
}

std::vector<std::size_t> ranking(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  });
  return order;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

namespace {

std::vector<std::size_t> ranked_rows(const ScoreTable& table, std::size_t top_k) {
  auto order = ranking(table.scores);
  if (top_k > 0 && top_k < order.size()) order.resize(top_k);
  return order;
}

}  // namespace

void write_scores_csv(std::ostream& out, const Network& net, const ScoreTable& table, std::size_t top_k) {
  const std::string method(method_name(table.method));
  const std::string t = table.time ? format_number(*table.time) : "";
  out << "src_label,dst_label,score,method,t\n";
  for (std::size_t row : ranked_rows(table, top_k)) {
    const Edge& p = (*table.candidates)[row];
    out << net.label(p.u) << ',' << net.label(p.v) << ',' << format_number(table.scores[row]) << ',' << method
        << ',' << t << '\n';
  }
}

void write_scores_json(std::ostream& out, const Network& net, const ScoreTable& table, std::size_t top_k) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t row : ranked_rows(table, top_k)) {
    const Edge& p = (*table.candidates)[row];
    rows.push_back({{"src_label", net.label(p.u)}, {"dst_label", net.label(p.v)}, {"score", table.scores[row]}});
  }
  nlohmann::json doc{{"method", method_name(table.method)}, {"scores", std::move(rows)}};
  doc["t"] = table.time ? nlohmann::json(*table.time) : nlohmann::json(nullptr);
  out << doc.dump(2) << '\n';
}

}  // namespace walkpred
