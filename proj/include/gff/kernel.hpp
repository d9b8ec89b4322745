#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace gff {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Numerical cutoffs shared by every rank/residual decision.
struct Tolerance {
  double rank_rel;      // relative singular-value cutoff, in (0, 1)
  double residual_abs;  // absolute residual bound, in (0, 1)

  // max(rows, cols) * machine epsilon, the usual numerical-rank heuristic.
  static Tolerance for_dims(Index rows, Index cols);

  // Cutoffs sized for stacked desk-scale operators (dimensions up to 128).
  static Tolerance standard();
};

// Eigenvalues of a Hermitian matrix, sorted ascending.
struct Spectrum {
  std::vector<double> eigenvalues;

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
};

struct SvdResult {
  Matrix u;                   // orthonormal columns
  std::vector<double> sigma;  // nonnegative, descending
  Matrix vh;                  // orthonormal rows
};

// Thin singular value decomposition m = u * diag(sigma) * vh.
SvdResult svd(const Matrix& m);

// Moore-Penrose pseudo-inverse with singular values below
// rank_rel * sigma_max treated as zero. m * pinv(m) is the orthogonal
// projection onto the numerical column space, pinv(m) * m the projection
// onto the numerical row space.
Matrix pseudo_inverse(const Matrix& m, const Tolerance& tol = Tolerance::standard());

// Orthonormal basis of the numerical column space of span: an n x r matrix
// B with B^H B = I_r, r = numerical rank. An empty input yields n x 0.
Matrix orthonormalize(const Matrix& span, const Tolerance& tol = Tolerance::standard());

// P = B B^H for an orthonormal basis B; validates orthonormality first.
// A 0-column basis yields the zero projection.
Matrix projection_of(const Matrix& basis, const Tolerance& tol = Tolerance::standard());

// Eigenvalues of a Hermitian matrix. The input is symmetrized as
// (m + m^H) / 2 before factoring, so the result is real by construction.
Spectrum eigh(const Matrix& m);

// Spectral square root S^(1/2) of a Hermitian PSD matrix, or S^(-1/2) when
// invert is set. Inversion requires min eigenvalue > rank_rel * max.
Matrix sqrt_psd(const Matrix& m, bool invert = false,
                const Tolerance& tol = Tolerance::standard());

// Count of singular values above rank_rel * sigma_max; 0 for a zero matrix.
Index numerical_rank(const Matrix& m, const Tolerance& tol = Tolerance::standard());

// Largest singular value.
double operator_norm(const Matrix& m);

}  // namespace gff
