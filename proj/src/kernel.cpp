#include "gff/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gff/errors.hpp"

namespace gff {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

Tolerance Tolerance::for_dims(Index rows, Index cols) {
  const Index dim = std::max<Index>({rows, cols, 1});
  return Tolerance{static_cast<double>(dim) * kEps, 1e-9};
}

Tolerance Tolerance::standard() { return for_dims(128, 128); }

SvdResult svd(const Matrix& m) {
  if (!m.allFinite()) {
    throw FactorizationError(m.rows(), m.cols(), "non-finite entry");
  }
  if (m.rows() == 0 || m.cols() == 0) {
    return SvdResult{Matrix::Zero(m.rows(), 0), {}, Matrix::Zero(0, m.cols())};
  }
  Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw FactorizationError(m.rows(), m.cols(), "SVD did not converge");
  }
  SvdResult out;
  out.u = dec.matrixU();
  out.vh = dec.matrixV().adjoint();
  const auto& s = dec.singularValues();
  out.sigma.assign(s.data(), s.data() + s.size());
  return out;
}

Matrix pseudo_inverse(const Matrix& m, const Tolerance& tol) {
  const SvdResult f = svd(m);
  const double cutoff = f.sigma.empty() ? 0.0 : tol.rank_rel * f.sigma.front();
  Matrix result = Matrix::Zero(m.cols(), m.rows());
  for (Index i = 0; i < static_cast<Index>(f.sigma.size()); ++i) {
    if (f.sigma[i] > cutoff) {
      result.noalias() +=
          (1.0 / f.sigma[i]) * (f.vh.row(i).adjoint() * f.u.col(i).adjoint());
    }
  }
  return result;
}

Matrix orthonormalize(const Matrix& span, const Tolerance& tol) {
  if (span.cols() == 0 || span.rows() == 0) {
    return Matrix::Zero(span.rows(), 0);
  }
  const SvdResult f = svd(span);
  const double cutoff = f.sigma.empty() ? 0.0 : tol.rank_rel * f.sigma.front();
  Index r = 0;
  while (r < static_cast<Index>(f.sigma.size()) && f.sigma[r] > cutoff) ++r;
  return f.u.leftCols(r);
}

Matrix projection_of(const Matrix& basis, const Tolerance& tol) {
  if (basis.cols() == 0) {
    return Matrix::Zero(basis.rows(), basis.rows());
  }
  const Index k = basis.cols();
  const double residual =
      (basis.adjoint() * basis - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
  if (!(residual <= tol.residual_abs)) {
    throw ValidationError(-1, "basis columns are not orthonormal (Gram residual " +
                                  std::to_string(residual) + ")");
  }
  return basis * basis.adjoint();
}

Spectrum eigh(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw ValidationError(-1, "eigh requires a square matrix, got " +
                                  std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()));
  }
  if (m.rows() == 0) return Spectrum{};
  if (!m.allFinite()) {
    throw FactorizationError(m.rows(), m.cols(), "non-finite entry");
  }
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw FactorizationError(m.rows(), m.cols(), "eigendecomposition did not converge");
  }
  Spectrum out;
  const auto& vals = solver.eigenvalues();
  out.eigenvalues.assign(vals.data(), vals.data() + vals.size());
  return out;
}

Matrix sqrt_psd(const Matrix& m, bool invert, const Tolerance& tol) {
  if (m.rows() != m.cols()) {
    throw ValidationError(-1, "sqrt_psd requires a square matrix");
  }
  if (m.rows() == 0) return m;
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw FactorizationError(m.rows(), m.cols(), "eigendecomposition did not converge");
  }
  const Eigen::VectorXd& vals = solver.eigenvalues();
  const double max_eig = vals.maxCoeff();
  if (invert && !(vals.minCoeff() > tol.rank_rel * std::max(max_eig, 0.0))) {
    throw SingularityError(vals.minCoeff(), max_eig);
  }
  Eigen::VectorXd mapped(vals.size());
  for (Index i = 0; i < vals.size(); ++i) {
    const double lambda = std::max(vals[i], 0.0);  // round-off clamp
    mapped[i] = invert ? 1.0 / std::sqrt(vals[i]) : std::sqrt(lambda);
  }
  return solver.eigenvectors() * mapped.asDiagonal() *
         solver.eigenvectors().adjoint();
}

Index numerical_rank(const Matrix& m, const Tolerance& tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const SvdResult f = svd(m);
  const double cutoff = f.sigma.empty() ? 0.0 : tol.rank_rel * f.sigma.front();
  Index r = 0;
  for (double s : f.sigma) {
    if (s > cutoff) ++r;
  }
  return r;
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const SvdResult f = svd(m);
  return f.sigma.empty() ? 0.0 : f.sigma.front();
}

}  // namespace gff
