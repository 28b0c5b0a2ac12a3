#include "walkpred/walk_predictors.hpp"

#include "walkpred/error.hpp"

namespace walkpred {

double default_time(const Network& net) {
  if (net.edge_count() == 0) throw DomainError("default walk time undefined for an edgeless graph");
  const double mean_degree = 2.0 * static_cast<double>(net.edge_count()) / static_cast<double>(net.node_count());
  return 1.0 / mean_degree;
}

WalkKind walk_kind(Method m) {
  switch (m) {
    case Method::Crw: return WalkKind::Crw;
    case Method::QrwA: return WalkKind::QrwAdjacency;
    case Method::QrwL: return WalkKind::QrwLaplacian;
    default: throw ContractError(std::string(method_name(m)) + " is not a walk method");
  }
}

Method walk_method(WalkKind w) {
  switch (w) {
    case WalkKind::Crw: return Method::Crw;
    case WalkKind::QrwAdjacency: return Method::QrwA;
    case WalkKind::QrwLaplacian: return Method::QrwL;
  }
  return Method::Crw;
}

SpectralSource walk_source(Method m) {
  return walk_kind(m) == WalkKind::QrwAdjacency ? SpectralSource::Adjacency : SpectralSource::Laplacian;
}

ScoreTable score_pairs(const TransitionMatrix& p, const Eigen::VectorXd& degrees, const Network& net,
                       std::shared_ptr<const CandidateSet> candidates) {
  const auto& prob = p.probabilities;
  if (prob.rows() != static_cast<Eigen::Index>(net.node_count()) || degrees.size() != prob.rows())
    throw ContractError("transition matrix, degrees and network disagree on size");

  ScoreTable table{walk_method(p.walk), p.time, candidates, {}};
  table.scores.resize(candidates->size());
  for (std::size_t c = 0; c < candidates->size(); ++c) {
    const Edge& pair = (*candidates)[c];
    if (net.has_edge(pair.u, pair.v))
      throw ContractError("candidate (" + net.label(pair.u) + ", " + net.label(pair.v) + ") is a training edge");
    if (pair.is_loop()) {
      double mass = 0.0;
      for (NodeId u : net.neighbors(pair.u)) mass += prob(pair.u, u);
      table.scores[c] = 0.5 * mass;
    } else {
      table.scores[c] = prob(pair.u, pair.v) * (degrees(pair.u) + degrees(pair.v));
    }
  }
  return table;
}

ScoreTable score_walk(const SpectralDecomposition& dec, Method method, double t, const Network& net,
                      std::shared_ptr<const CandidateSet> candidates) {
  if (dec.source() != walk_source(method))
    throw ContractError(std::string(method_name(method)) + " needs a " + std::string(to_string(walk_source(method))) +
                        " decomposition");
  const TransitionMatrix p = method == Method::Crw ? crw_propagator(dec, t) : qrw_propagator(dec, t);
  return score_pairs(p, degree_vector(net), net, std::move(candidates));
}

ScoreTable predict(const Network& net, Method method, std::optional<double> t,
                   std::shared_ptr<const CandidateSet> candidates) {
  const double time = t ? *t : default_time(net);
  if (!(time >= 0.0)) throw DomainError("walk time must be >= 0");
  const auto dec = decompose(net, walk_source(method));
  return score_walk(dec, method, time, net, std::move(candidates));
}

}  // namespace walkpred
