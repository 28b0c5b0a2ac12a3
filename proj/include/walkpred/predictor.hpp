#pragma once

#include <memory>
#include <optional>

#include "walkpred/baselines.hpp"
#include "walkpred/decomposition_cache.hpp"
#include "walkpred/walk_predictors.hpp"

namespace walkpred {

struct PredictorOptions {
  std::optional<double> time;  // walk time; 1/<k> of the scored network when empty
  SpmOptions spm;
  bool l3_normalized = true;
  const DecompositionCache* cache = nullptr;
};

/// Scores candidates of one network with any of the eight methods.
///
/// Spectral decompositions are computed on first use and shared by every walk
/// method that needs the same operator.
class Predictor {
 public:
  Predictor(const Network& net, PredictorOptions options);

  ScoreTable score(Method method, std::shared_ptr<const CandidateSet> candidates);

  // Time the walk methods will use.
  double walk_time() const;

  // Drops the decomposition of the given operator to bound peak memory.
  void release(SpectralSource source);

 private:
  const SpectralDecomposition& decomposition(SpectralSource source);

  const Network& net_;
  PredictorOptions options_;
  std::optional<SpectralDecomposition> laplacian_;
  std::optional<SpectralDecomposition> adjacency_;
};

}  // namespace walkpred
