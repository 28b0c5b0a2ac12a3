#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "walkpred/metrics.hpp"
#include "walkpred/predictor.hpp"

namespace walkpred {

struct SplitSpec {
  double fraction = 0.1;  // share of edges removed, in (0, 1)
  std::size_t trial = 0;
  std::uint64_t master_seed = 0;
};

// Deterministic function of (master seed, fraction, trial).
std::uint64_t trial_seed(const SplitSpec& spec);

struct SplitOptions {
  // Score self-pairs (i, i) of loop-free nodes as candidates.
  bool include_self_pairs = true;
  // Let self-loops be drawn as positives. Requires include_self_pairs.
  bool remove_self_loops = true;
};

/// One train/test split of the edge-removal protocol.
///
/// The candidate set is every non-edge of the training graph; a candidate is
/// positive when it is an edge of the original network. Negatives are
/// therefore the non-edges of the original network.
struct EvaluationSplit {
  Network training;
  std::vector<Edge> positives;
  std::shared_ptr<const CandidateSet> candidates;
  std::vector<std::uint8_t> labels;  // aligned with *candidates
  std::size_t negative_count = 0;
  std::uint64_t seed = 0;
};

// Removes round-half-up(fraction * eligible edges) edges uniformly at random.
// Throws ConfigError when the fraction lies outside (0, 1) or selects no edges.
EvaluationSplit make_split(const Network& net, const SplitSpec& spec, const SplitOptions& options = {});

double auc(const ScoreTable& scores, const EvaluationSplit& split);
double average_precision(const ScoreTable& scores, const EvaluationSplit& split, ApTies ties = ApTies::Deterministic);

struct ExperimentConfig {
  std::string dataset_id;
  std::vector<Method> methods;
  std::vector<double> fractions{0.1};
  std::size_t trials = 20;
  std::uint64_t master_seed = 0;
  std::optional<double> time;  // walk time override; default 1/<k> of each training graph
  double spm_hold_out = 0.1;
  std::size_t spm_repetitions = 10;
  bool l3_normalized = true;
  SplitOptions split;
  unsigned threads = 1;
  const DecompositionCache* cache = nullptr;
  std::ostream* progress = nullptr;  // per-trial progress lines; may be null
};

void validate(const ExperimentConfig& config);

struct TrialResult {
  Method method;
  double fraction;
  std::size_t trial;
  std::uint64_t seed;
  double walk_time;  // NaN for baselines
  double auc;
  double ap;
  double ap_tie_averaged;
  double seconds;
};

struct Summary {
  double mean_auc, std_auc;
  double mean_ap, std_ap;
  double mean_ap_tie_averaged, std_ap_tie_averaged;
};

struct EvaluationReport {
  std::string dataset_id;
  std::uint64_t master_seed = 0;
  std::size_t trials = 0;
  std::vector<Method> methods;
  std::vector<double> fractions;
  // Ordered by fraction, then trial, then method (configuration order).
  std::vector<TrialResult> results;

  std::vector<TrialResult> select(Method method, double fraction) const;
  // Mean and sample standard deviation over trials.
  Summary summarize(Method method, double fraction) const;
};

// Each (fraction, trial) unit draws one split shared by every method. Units run
// on config.threads workers; results do not depend on the worker count. The
// first failing unit aborts the experiment and its exception is rethrown.
EvaluationReport run_experiment(const Network& net, const ExperimentConfig& config);

}  // namespace walkpred
