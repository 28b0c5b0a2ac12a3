#include "walkpred/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

#include "walkpred/error.hpp"
#include "walkpred/rng.hpp"
#include "walkpred/spectral.hpp"

namespace walkpred {

namespace {

ScoreTable empty_table(Method method, std::shared_ptr<const CandidateSet> candidates) {
  ScoreTable table{method, std::nullopt, candidates, {}};
  table.scores.assign(candidates->size(), 0.0);
  return table;
}

// Calls fn(x, indices) once per node x that is the smaller endpoint of at
// least one distinct-node candidate, with the candidate indices of that row.
template <typename Fn>
void for_each_candidate_row(const CandidateSet& candidates, std::size_t n, Fn&& fn) {
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const Edge& p : candidates.pairs())
    if (!p.is_loop()) ++offsets[p.u + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::size_t> rows(offsets[n]);
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Edge& p = candidates[c];
    if (!p.is_loop()) rows[fill[p.u]++] = c;
  }
  for (NodeId x = 0; x < n; ++x) {
    if (offsets[x] == offsets[x + 1]) continue;
    fn(x, std::span<const std::size_t>(rows.data() + offsets[x], offsets[x + 1] - offsets[x]));
  }
}

// Row accumulator: dense values plus the list of touched slots.
struct SparseRow {
  std::vector<double> value;
  std::vector<NodeId> touched;

  explicit SparseRow(std::size_t n) : value(n, 0.0) {}
  void add(NodeId i, double x) {
    if (value[i] == 0.0) touched.push_back(i);
    value[i] += x;
  }
  void clear() {
    for (NodeId i : touched) value[i] = 0.0;
    touched.clear();
  }
};

void check_candidates(const Network& net, const CandidateSet& candidates) {
  for (const Edge& p : candidates.pairs()) {
    if (p.v >= net.node_count()) throw ContractError("candidate endpoint out of range");
    if (net.has_edge(p.u, p.v))
      throw ContractError("candidate (" + net.label(p.u) + ", " + net.label(p.v) + ") is a training edge");
  }
}

// Accumulates, for row x, sum over z in N(x) of weight(z) into every y in N(z).
template <typename Weight>
ScoreTable two_hop_score(Method method, const Network& net, std::shared_ptr<const CandidateSet> candidates,
                         Weight&& weight) {
  check_candidates(net, *candidates);
  ScoreTable table = empty_table(method, candidates);
  SparseRow row(net.node_count());
  for_each_candidate_row(*candidates, net.node_count(), [&](NodeId x, std::span<const std::size_t> cands) {
    for (NodeId z : net.neighbors(x)) {
      const auto nbrs = net.neighbors(z);
      if (nbrs.size() < 2) continue;  // z only leads back to x
      const double w = weight(z);
      for (NodeId y : nbrs) {
        if (y != x) row.add(y, w);
      }
    }
    for (std::size_t c : cands) table.scores[c] = row.value[(*candidates)[c].v];
    row.clear();
  });
  return table;
}

}  // namespace

ScoreTable common_neighbours(const Network& net, std::shared_ptr<const CandidateSet> candidates) {
  return two_hop_score(Method::Cn, net, std::move(candidates), [](NodeId) { return 1.0; });
}

ScoreTable adamic_adar(const Network& net, std::shared_ptr<const CandidateSet> candidates) {
  return two_hop_score(Method::Aa, net, std::move(candidates), [&net](NodeId z) {
    const std::size_t k = net.simple_degree(z);
    if (k < 2) throw std::logic_error("Adamic-Adar: shared neighbour with degree < 2");
    return 1.0 / std::log(static_cast<double>(k));
  });
}

ScoreTable preferential_attachment(const Network& net, std::shared_ptr<const CandidateSet> candidates) {
  check_candidates(net, *candidates);
  ScoreTable table = empty_table(Method::Pa, candidates);
  for (std::size_t c = 0; c < candidates->size(); ++c) {
    const Edge& p = (*candidates)[c];
    if (!p.is_loop())
      table.scores[c] = static_cast<double>(net.degree(p.u)) * static_cast<double>(net.degree(p.v));
  }
  return table;
}

ScoreTable l3_score(const Network& net, std::shared_ptr<const CandidateSet> candidates, bool normalized) {
  check_candidates(net, *candidates);
  ScoreTable table = empty_table(Method::L3, candidates);
  const std::size_t n = net.node_count();
  SparseRow second(n);  // weighted two-step mass x -> u -> v
  SparseRow third(n);
  for_each_candidate_row(*candidates, n, [&](NodeId x, std::span<const std::size_t> cands) {
    for (NodeId u : net.neighbors(x)) {
      const double ku = static_cast<double>(net.simple_degree(u));
      for (NodeId v : net.neighbors(u)) {
        const double kv = static_cast<double>(net.simple_degree(v));
        second.add(v, normalized ? 1.0 / std::sqrt(ku * kv) : 1.0);
      }
    }
    std::sort(second.touched.begin(), second.touched.end());
    for (NodeId v : second.touched) {
      const double w = second.value[v];
      for (NodeId y : net.neighbors(v)) third.add(y, w);
    }
    for (std::size_t c : cands) table.scores[c] = third.value[(*candidates)[c].v];
    second.clear();
    third.clear();
  });
  return table;
}

void validate(const SpmOptions& options, const Network& net) {
  if (!(options.hold_out_fraction > 0.0 && options.hold_out_fraction < 1.0))
    throw ConfigError("SPM hold-out fraction must lie in (0, 1)");
  if (options.repetitions < 1) throw ConfigError("SPM needs at least one repetition");
  const double expected =
      static_cast<double>(options.repetitions) * options.hold_out_fraction * static_cast<double>(net.edge_count());
  if (expected < 1.0) throw ConfigError("SPM perturbation would be empty (r * p * m < 1)");
}

std::vector<std::vector<Edge>> spm_sample_holdouts(const Network& net, const SpmOptions& options) {
  validate(options, net);
  const std::size_t m = net.edge_count();
  const auto count = static_cast<std::size_t>(std::ceil(options.hold_out_fraction * static_cast<double>(m)));
  std::vector<std::vector<Edge>> holdouts;
  holdouts.reserve(options.repetitions);
  for (std::size_t r = 0; r < options.repetitions; ++r) {
    std::mt19937_64 rng(mix_seed({options.seed, r}));
    std::vector<Edge> picked;
    picked.reserve(count);
    for (std::size_t i : sample_without_replacement(m, std::min(count, m), rng)) picked.push_back(net.edges()[i]);
    std::sort(picked.begin(), picked.end());
    holdouts.push_back(std::move(picked));
  }
  return holdouts;
}

Eigen::MatrixXd spm_perturbed_matrix(const Network& remaining, const std::vector<Edge>& holdout) {
  const SpectralDecomposition dec = decompose(remaining, SpectralSource::Adjacency);
  const Eigen::MatrixXd& x = dec.eigenvectors();
  Eigen::VectorXd shifted = dec.eigenvalues();
  for (Eigen::Index k = 0; k < x.cols(); ++k) {
    // Columns are unit length, so x_k^T x_k = 1.
    double delta = 0.0;
    for (const Edge& e : holdout) delta += e.is_loop() ? x(e.u, k) * x(e.u, k) : 2.0 * x(e.u, k) * x(e.v, k);
    shifted(k) += delta;
  }
  return weighted_gram(x, shifted);
}

ScoreTable spm_score_with_holdouts(const Network& net, std::shared_ptr<const CandidateSet> candidates,
                                   const std::vector<std::vector<Edge>>& holdouts) {
  check_candidates(net, *candidates);
  if (holdouts.empty()) throw ConfigError("SPM needs at least one repetition");
  ScoreTable table = empty_table(Method::Spm, candidates);
  for (auto holdout : holdouts) {
    std::sort(holdout.begin(), holdout.end());
    std::vector<Edge> kept;
    kept.reserve(net.edge_count());
    std::set_difference(net.edges().begin(), net.edges().end(), holdout.begin(), holdout.end(),
                        std::back_inserter(kept));
    const Eigen::MatrixXd perturbed = spm_perturbed_matrix(net.with_edges(std::move(kept)), holdout);
    for (std::size_t c = 0; c < candidates->size(); ++c) {
      const Edge& p = (*candidates)[c];
      if (!p.is_loop()) table.scores[c] += perturbed(p.u, p.v);
    }
  }
  const double reps = static_cast<double>(holdouts.size());
  for (double& s : table.scores) s /= reps;
  return table;
}

ScoreTable spm_score(const Network& net, std::shared_ptr<const CandidateSet> candidates, const SpmOptions& options) {
  return spm_score_with_holdouts(net, std::move(candidates), spm_sample_holdouts(net, options));
}

}  // namespace walkpred
