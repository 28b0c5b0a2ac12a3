#include "walkpred/predictor.hpp"

#include "walkpred/error.hpp"

namespace walkpred {

Predictor::Predictor(const Network& net, PredictorOptions options) : net_(net), options_(std::move(options)) {
  if (options_.time && !(*options_.time >= 0.0)) throw DomainError("walk time must be >= 0");
}

double Predictor::walk_time() const { return options_.time ? *options_.time : default_time(net_); }

const SpectralDecomposition& Predictor::decomposition(SpectralSource source) {
  auto& slot = source == SpectralSource::Laplacian ? laplacian_ : adjacency_;
  if (!slot) slot = options_.cache ? options_.cache->get_or_compute(net_, source) : decompose(net_, source);
  return *slot;
}

void Predictor::release(SpectralSource source) {
  (source == SpectralSource::Laplacian ? laplacian_ : adjacency_).reset();
}

ScoreTable Predictor::score(Method method, std::shared_ptr<const CandidateSet> candidates) {
  switch (method) {
    case Method::Crw:
    case Method::QrwA:
    case Method::QrwL: {
      const double t = walk_time();
      return score_walk(decomposition(walk_source(method)), method, t, net_, std::move(candidates));
    }
    case Method::L3: return l3_score(net_, std::move(candidates), options_.l3_normalized);
    case Method::Pa: return preferential_attachment(net_, std::move(candidates));
    case Method::Cn: return common_neighbours(net_, std::move(candidates));
    case Method::Aa: return adamic_adar(net_, std::move(candidates));
    case Method::Spm: return spm_score(net_, std::move(candidates), options_.spm);
  }
  throw ContractError("unknown method");
}

}  // namespace walkpred
