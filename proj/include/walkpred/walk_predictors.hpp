#pragma once

#include <memory>
#include <optional>

#include "walkpred/scores.hpp"
#include "walkpred/spectral.hpp"

namespace walkpred {

// 1 / <k> with <k> = 2m / n. DomainError on an edgeless graph.
double default_time(const Network& net);

WalkKind walk_kind(Method m);
Method walk_method(WalkKind w);
// Operator whose spectrum drives the walk: L for CRW and QRW-L, A for QRW-A.
SpectralSource walk_source(Method m);

/// Turns transition probabilities into link scores.
///
/// Distinct pairs score P_ij (k_i + k_j); a self-pair (i, i) scores half the
/// probability mass that stays on i's training neighbourhood,
/// 0.5 * sum_{u in N(i)} P_iu. Degrees and neighbourhoods come from net, which
/// must be the graph P was built on. A candidate that is an edge of net raises
/// ContractError.
ScoreTable score_pairs(const TransitionMatrix& p, const Eigen::VectorXd& degrees, const Network& net,
                       std::shared_ptr<const CandidateSet> candidates);

// Scores with an existing decomposition; source must match the method.
ScoreTable score_walk(const SpectralDecomposition& dec, Method method, double t, const Network& net,
                      std::shared_ptr<const CandidateSet> candidates);

// Full pipeline: decompose, propagate to t (default 1/<k>), score.
ScoreTable predict(const Network& net, Method method, std::optional<double> t,
                   std::shared_ptr<const CandidateSet> candidates);

}  // namespace walkpred
