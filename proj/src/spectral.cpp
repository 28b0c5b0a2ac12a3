#include "walkpred/spectral.hpp"

#include <cmath>
#include <string>

#include <lapacke.h>

#include "walkpred/error.hpp"

extern "C" void openblas_set_num_threads(int);

namespace walkpred {

std::string_view to_string(SpectralSource source) {
  return source == SpectralSource::Adjacency ? "adjacency" : "laplacian";
}

std::string_view to_string(WalkKind walk) {
  switch (walk) {
    case WalkKind::Crw: return "CRW";
    case WalkKind::QrwAdjacency: return "QRW-A";
    case WalkKind::QrwLaplacian: return "QRW-L";
  }
  return "?";
}

void set_blas_threads(int threads) { openblas_set_num_threads(threads); }

SpectralDecomposition::SpectralDecomposition(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors,
                                             SpectralSource source)
    : eigenvalues_(std::move(eigenvalues)), eigenvectors_(std::move(eigenvectors)), source_(source) {
  if (eigenvectors_.rows() != eigenvalues_.size() || eigenvectors_.cols() != eigenvalues_.size())
    throw ContractError("eigenvector matrix does not match eigenvalue count");
}

SpectralDecomposition decompose(const Eigen::MatrixXd& m, SpectralSource source) {
  if (m.rows() != m.cols()) throw DomainError("matrix is not square");
  const Eigen::Index n = m.rows();
  if (n == 0) throw DomainError("empty matrix");
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) throw DomainError("matrix is not symmetric (max |M - M^T| = " + std::to_string(asym) + ")");

  Eigen::MatrixXd vectors = m;
  Eigen::VectorXd values(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n), vectors.data(),
                                         static_cast<lapack_int>(n), values.data());
  if (info != 0) throw NumericError("dsyevd failed with info = " + std::to_string(info));
  if (source == SpectralSource::Laplacian && values(0) < -1e-10)
    throw NumericError("Laplacian has negative eigenvalue " + std::to_string(values(0)));
  return SpectralDecomposition(std::move(values), std::move(vectors), source);
}

SpectralDecomposition decompose(const Network& net, SpectralSource source) {
  return decompose(source == SpectralSource::Adjacency ? build_adjacency(net) : build_laplacian(net), source);
}

// Positive and negative weights go through separate rank-k updates of the
// lower triangle, which is then mirrored.
Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& v, const Eigen::VectorXd& w) {
  const Eigen::Index n = v.rows();
  Eigen::Index positive = 0, negative = 0;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (w(k) > 0.0) ++positive;
    else if (w(k) < 0.0) ++negative;
  }
  Eigen::MatrixXd pos(n, positive), neg(n, negative);
  for (Eigen::Index k = 0, p = 0, q = 0; k < w.size(); ++k) {
    if (w(k) > 0.0) pos.col(p++) = v.col(k) * std::sqrt(w(k));
    else if (w(k) < 0.0) neg.col(q++) = v.col(k) * std::sqrt(-w(k));
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  if (positive > 0) out.selfadjointView<Eigen::Lower>().rankUpdate(pos, 1.0);
  if (negative > 0) out.selfadjointView<Eigen::Lower>().rankUpdate(neg, -1.0);
  out.triangularView<Eigen::StrictlyUpper>() = out.transpose();
  return out;
}

namespace {

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("walk time must be finite and >= 0, got " + std::to_string(t));
}

void check_row_sums(const Eigen::MatrixXd& p, WalkKind walk) {
  const double worst = (p.rowwise().sum().array() - 1.0).abs().maxCoeff();
  if (worst > kRowSumTolerance)
    throw NumericError(std::string(to_string(walk)) + " row sums deviate from 1 by " + std::to_string(worst));
}

}  // namespace

TransitionMatrix crw_propagator(const SpectralDecomposition& dec, double t) {
  check_time(t);
  if (dec.source() != SpectralSource::Laplacian) throw ContractError("CRW needs a Laplacian decomposition");
  Eigen::VectorXd w = (-t * dec.eigenvalues().array()).exp();
  TransitionMatrix out{weighted_gram(dec.eigenvectors(), w), WalkKind::Crw, t};
  auto& p = out.probabilities;
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      double& x = p(i, j);
      if (x < 0.0) {
        if (x < -kClampTolerance) throw NumericError("CRW probability " + std::to_string(x) + " below clamp tolerance");
        x = 0.0;
      }
    }
  }
  check_row_sums(p, out.walk);
  return out;
}

TransitionMatrix qrw_propagator(const SpectralDecomposition& dec, double t) {
  check_time(t);
  const Eigen::ArrayXd phase = t * dec.eigenvalues().array();
  // e^{-itH} = C - iS with C = V cos(t lambda) V^T, S = V sin(t lambda) V^T.
  Eigen::MatrixXd re = weighted_gram(dec.eigenvectors(), phase.cos().matrix());
  Eigen::MatrixXd im = weighted_gram(dec.eigenvectors(), phase.sin().matrix());
  const WalkKind walk =
      dec.source() == SpectralSource::Adjacency ? WalkKind::QrwAdjacency : WalkKind::QrwLaplacian;
  TransitionMatrix out{re.array().square() + im.array().square(), walk, t};
  check_row_sums(out.probabilities, walk);
  return out;
}

Eigen::MatrixXd expm_taylor_reference(const Eigen::MatrixXd& m, double t) {
  if (m.rows() != m.cols()) throw DomainError("matrix is not square");
  Eigen::MatrixXd x = -t * m;
  const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm)) throw DomainError("non-finite matrix in exponential");
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  x /= std::ldexp(1.0, squarings);

  const Eigen::Index n = m.rows();
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = term * x / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace walkpred
