#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "walkpred/network.hpp"

namespace walkpred {

enum class Method : std::uint8_t { Crw, QrwA, QrwL, L3, Pa, Cn, Aa, Spm };

inline constexpr Method kAllMethods[] = {Method::QrwA, Method::QrwL, Method::Crw, Method::L3,
                                         Method::Pa,   Method::Cn,   Method::Aa,  Method::Spm};

// Display name ("CRW", "QRW-A", ...).
std::string_view method_name(Method m);
// Accepts display names and CLI spellings, case-insensitive ("crw", "qrw-a").
std::optional<Method> parse_method(std::string_view text);
bool is_walk_method(Method m);

/// Unordered node pairs to be scored, none of which is an edge of the network
/// they were built against. Self-pairs (i, i) are allowed.
class CandidateSet {
 public:
  CandidateSet() = default;

  // Validates: no duplicates, no pair that is an edge of net. Throws ContractError.
  static CandidateSet from_pairs(const Network& net, std::vector<Edge> pairs);

  // Every non-adjacent pair (i <= j) in row-major order. Self-pairs are
  // included for loop-free nodes when include_self_pairs is set.
  static CandidateSet all_non_edges(const Network& net, bool include_self_pairs);

  std::size_t size() const noexcept { return pairs_.size(); }
  const Edge& operator[](std::size_t i) const noexcept { return pairs_[i]; }
  const std::vector<Edge>& pairs() const noexcept { return pairs_; }

 private:
  explicit CandidateSet(std::vector<Edge> pairs) : pairs_(std::move(pairs)) {}
  std::vector<Edge> pairs_;
};

// Score per candidate, aligned with the candidate order.
struct ScoreTable {
  Method method = Method::Crw;
  std::optional<double> time;  // walk time; empty for baselines
  std::shared_ptr<const CandidateSet> candidates;
  std::vector<double> scores;

  double score(std::size_t i) const { return scores[i]; }
};

// Candidate indices sorted by descending score, ties by ascending index.
std::vector<std::size_t> ranking(std::span<const double> scores);

// Columns src_label,dst_label,score,method,t. Rows follow ranking(); top_k = 0 keeps all.
void write_scores_csv(std::ostream& out, const Network& net, const ScoreTable& table, std::size_t top_k = 0);
void write_scores_json(std::ostream& out, const Network& net, const ScoreTable& table, std::size_t top_k = 0);

// Shortest decimal text that round-trips to the same double.
std::string format_number(double x);

}  // namespace walkpred
