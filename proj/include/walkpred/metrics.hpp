#pragma once

#include <cstdint>
#include <span>

namespace walkpred {

// labels[i] != 0 marks a positive. Both metrics raise DomainError when either
// class is empty and NumericError on a non-finite score.

// Mann-Whitney estimate of P(score_pos > score_neg), ties credited 1/2.
// Computed from exact integer pair counts.
double auc(std::span<const double> scores, std::span<const std::uint8_t> labels);

enum class ApTies : std::uint8_t {
  // Descending score, equal scores ordered by ascending index.
  Deterministic,
  // Expectation over a uniformly random order within each group of equal scores.
  Averaged,
};

// Mean over positives of (positives ranked so far) / (rank).
double average_precision(std::span<const double> scores, std::span<const std::uint8_t> labels,
                         ApTies ties = ApTies::Deterministic);

}  // namespace walkpred
