#include "walkpred/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "walkpred/error.hpp"

namespace walkpred {

namespace {

struct Positive {
  double score;
  std::size_t index;
};

// Positives in ranking order (score descending, index ascending) and the negative count.
std::vector<Positive> ranked_positives(std::span<const double> scores, std::span<const std::uint8_t> labels,
                                       std::size_t& negatives) {
  if (scores.size() != labels.size()) throw ContractError("scores and labels differ in length");
  std::vector<Positive> pos;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) throw NumericError("non-finite score at index " + std::to_string(i));
    if (labels[i]) pos.push_back({scores[i], i});
  }
  negatives = scores.size() - pos.size();
  if (pos.empty() || negatives == 0) throw DomainError("metric undefined without both positives and negatives");
  std::sort(pos.begin(), pos.end(), [](const Positive& a, const Positive& b) {
    return a.score > b.score || (a.score == b.score && a.index < b.index);
  });
  return pos;
}

double deterministic_ap(std::span<const double> scores, std::span<const std::uint8_t> labels,
                        const std::vector<Positive>& pos) {
  // before[q]: negatives ranked ahead of positive q, via a difference array.
  std::vector<std::uint64_t> before(pos.size() + 1, 0);
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (labels[j]) continue;
    const double s = scores[j];
    auto first = std::partition_point(pos.begin(), pos.end(), [&](const Positive& p) {
      return !(s > p.score || (s == p.score && j < p.index));
    });
    ++before[static_cast<std::size_t>(first - pos.begin())];
  }
  double sum = 0.0;
  std::uint64_t negatives_ahead = 0;
  for (std::size_t q = 0; q < pos.size(); ++q) {
    negatives_ahead += before[q];
    const auto hits = static_cast<double>(q + 1);
    sum += hits / (hits + static_cast<double>(negatives_ahead));
  }
  return sum / static_cast<double>(pos.size());
}

double tie_averaged_ap(std::span<const double> scores, std::span<const std::uint8_t> labels,
                       const std::vector<Positive>& pos) {
  // Distinct positive scores, descending, with their multiplicities.
  std::vector<double> levels;
  std::vector<std::uint64_t> level_pos;
  for (const Positive& p : pos) {
    if (levels.empty() || levels.back() != p.score) {
      levels.push_back(p.score);
      level_pos.push_back(0);
    }
    ++level_pos.back();
  }
  const std::size_t g_count = levels.size();
  // greater_start[g]: negatives scoring above level g (difference array); equal[g]: tied negatives.
  std::vector<std::uint64_t> greater(g_count + 1, 0), equal(g_count, 0);
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (labels[j]) continue;
    const double s = scores[j];
    // First level with score <= s.
    auto it = std::partition_point(levels.begin(), levels.end(), [&](double level) { return level > s; });
    auto g = static_cast<std::size_t>(it - levels.begin());
    if (g < g_count && levels[g] == s) {
      ++equal[g];
      ++g;
    }
    ++greater[g];
  }
  double sum = 0.0;
  std::uint64_t pos_ahead = 0, neg_ahead = 0;
  for (std::size_t g = 0; g < g_count; ++g) {
    neg_ahead += greater[g];
    const double h = static_cast<double>(level_pos[g]);
    const auto size = level_pos[g] + equal[g];
    const double ahead = static_cast<double>(pos_ahead + neg_ahead);
    const double base = static_cast<double>(pos_ahead) + 1.0;
    double group = 0.0;
    if (size == 1) {
      group = base / (ahead + 1.0);
    } else {
      // A positive at slot r has on average (r-1)(h-1)/(size-1) tied positives before it.
      const double slope = (h - 1.0) / static_cast<double>(size - 1);
      for (std::uint64_t r = 1; r <= size; ++r) {
        group += (base + static_cast<double>(r - 1) * slope) / (ahead + static_cast<double>(r));
      }
      group *= h / static_cast<double>(size);
    }
    sum += group;
    pos_ahead += level_pos[g];
  }
  return sum / static_cast<double>(pos.size());
}

}  // namespace

double auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  std::size_t negatives = 0;
  const auto pos = ranked_positives(scores, labels, negatives);
  std::vector<double> ascending(pos.size());
  std::transform(pos.rbegin(), pos.rend(), ascending.begin(), [](const Positive& p) { return p.score; });

  // twice_u: 2 per (pos, neg) pair won by the positive, 1 per tie.
  std::uint64_t twice_u = 0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (labels[j]) continue;
    auto [lo, hi] = std::equal_range(ascending.begin(), ascending.end(), scores[j]);
    twice_u += 2 * static_cast<std::uint64_t>(ascending.end() - hi) + static_cast<std::uint64_t>(hi - lo);
  }
  return static_cast<double>(twice_u) /
         (2.0 * static_cast<double>(pos.size()) * static_cast<double>(negatives));
}

double average_precision(std::span<const double> scores, std::span<const std::uint8_t> labels, ApTies ties) {
  std::size_t negatives = 0;
  const auto pos = ranked_positives(scores, labels, negatives);
  return ties == ApTies::Deterministic ? deterministic_ap(scores, labels, pos) : tie_averaged_ap(scores, labels, pos);
}

}  // namespace walkpred
