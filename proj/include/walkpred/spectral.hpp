#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "walkpred/network.hpp"

namespace walkpred {

enum class SpectralSource : std::uint8_t { Adjacency = 0, Laplacian = 1 };

std::string_view to_string(SpectralSource source);

/// Eigendecomposition M = V diag(lambda) V^T of a real symmetric operator.
///
/// Eigenvalues ascend; eigenvectors are the columns of V. One decomposition
/// serves every walk time and every walk type built on the same operator.
class SpectralDecomposition {
 public:
  SpectralDecomposition(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors, SpectralSource source);

  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return eigenvectors_; }
  SpectralSource source() const noexcept { return source_; }
  Eigen::Index size() const noexcept { return eigenvalues_.size(); }

  // V diag(f(lambda)) V^T.
  template <typename F>
  Eigen::MatrixXd apply(F&& f) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  SpectralSource source_;
};

// Rejects non-symmetric input (DomainError, tolerance 1e-12) and eigensolver
// failure or an indefinite Laplacian (NumericError).
SpectralDecomposition decompose(const Eigen::MatrixXd& m, SpectralSource source);
SpectralDecomposition decompose(const Network& net, SpectralSource source);

enum class WalkKind : std::uint8_t { Crw, QrwAdjacency, QrwLaplacian };

std::string_view to_string(WalkKind walk);

struct TransitionMatrix {
  // Row u is the distribution at time t of a walker started at u.
  Eigen::MatrixXd probabilities;
  WalkKind walk = WalkKind::Crw;
  double time = 0.0;
};

// Entries in [-1e-12, 0) produced by round-off are clamped to zero.
inline constexpr double kClampTolerance = 1e-12;
// Row sums must match 1 to this tolerance or NumericError is raised.
inline constexpr double kRowSumTolerance = 1e-8;

// V diag(w) V^T assembled from symmetric rank-k updates; exactly symmetric.
Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& v, const Eigen::VectorXd& w);

// e^{-tL}; dec must come from a Laplacian. Throws DomainError for t < 0.
TransitionMatrix crw_propagator(const SpectralDecomposition& dec, double t);

// |e^{-itH}|^2 entrywise, H being the decomposed operator (A or L).
TransitionMatrix qrw_propagator(const SpectralDecomposition& dec, double t);

// e^{-tM} by scaling and squaring of a truncated Taylor series. Kept as a
// cross-check for the spectral route; O(n^3 log ||tM||).
Eigen::MatrixXd expm_taylor_reference(const Eigen::MatrixXd& m, double t);

// OpenBLAS worker count; the library pins it to 1 so results do not depend
// on how many BLAS threads run.
void set_blas_threads(int threads);

template <typename F>
Eigen::MatrixXd SpectralDecomposition::apply(F&& f) const {
  Eigen::VectorXd weights = eigenvalues_.unaryExpr(std::forward<F>(f));
  return eigenvectors_ * weights.asDiagonal() * eigenvectors_.transpose();
}

}  // namespace walkpred
