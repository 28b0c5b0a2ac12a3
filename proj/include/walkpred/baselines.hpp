#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "walkpred/scores.hpp"

namespace walkpred {

// Neighbourhood baselines work on the loop-free graph: self-loops are dropped
// from neighbourhoods and from the degrees used as weights. Every baseline
// gives self-pair candidates a score of 0.

// |N(u) ∩ N(v)|.
ScoreTable common_neighbours(const Network& net, std::shared_ptr<const CandidateSet> candidates);

// sum over shared neighbours z of 1 / ln k_z.
ScoreTable adamic_adar(const Network& net, std::shared_ptr<const CandidateSet> candidates);

// k_u * k_v with k the full degree (a self-loop counts once).
ScoreTable preferential_attachment(const Network& net, std::shared_ptr<const CandidateSet> candidates);

// sum over paths x-u-v-y of 1 / sqrt(k_u k_v); plain path count when normalized is false.
ScoreTable l3_score(const Network& net, std::shared_ptr<const CandidateSet> candidates, bool normalized = true);

struct SpmOptions {
  double hold_out_fraction = 0.1;
  std::size_t repetitions = 10;
  std::uint64_t seed = 0;
};

// Throws ConfigError unless 0 < p < 1, r >= 1 and r * p * m >= 1.
void validate(const SpmOptions& options, const Network& net);

// One perturbation set per repetition, each of ceil(p * m) training edges.
std::vector<std::vector<Edge>> spm_sample_holdouts(const Network& net, const SpmOptions& options);

// First-order structural perturbation of the remaining graph: eigendecompose
// A_R, shift each eigenvalue by x_k^T dA x_k and rebuild
// sum_k (lambda_k + dlambda_k) x_k x_k^T.
Eigen::MatrixXd spm_perturbed_matrix(const Network& remaining, const std::vector<Edge>& holdout);

// Mean of the perturbed matrices over the given hold-out sets, read at the candidates.
ScoreTable spm_score_with_holdouts(const Network& net, std::shared_ptr<const CandidateSet> candidates,
                                   const std::vector<std::vector<Edge>>& holdouts);

ScoreTable spm_score(const Network& net, std::shared_ptr<const CandidateSet> candidates, const SpmOptions& options);

}  // namespace walkpred
