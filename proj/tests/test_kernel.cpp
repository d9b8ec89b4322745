#include <cmath>
#include <random>

#include <doctest.h>

#include "gff/errors.hpp"
#include "gff/kernel.hpp"
#include "support.hpp"

using gff::Complex;
using gff::Index;
using gff::Matrix;
using gff::Tolerance;
using gff::Vector;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("svd: pinned examples") {
  SUBCASE("identity") {
    const auto f = gff::svd(Matrix::Identity(2, 2));
    REQUIRE(f.sigma.size() == 2);
    CHECK(f.sigma[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.sigma[1] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("zero 3x2") {
    const auto f = gff::svd(Matrix::Zero(3, 2));
    REQUIRE(f.sigma.size() == 2);
    CHECK(f.sigma[0] == 0.0);
    CHECK(f.sigma[1] == 0.0);
  }
  SUBCASE("[[3,0],[4,0]]") {
    // m^H m = [[25, 0], [0, 0]], characteristic roots 25 and 0.
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 0) = 4.0;
    const auto f = gff::svd(m);
    REQUIRE(f.sigma.size() == 2);
    CHECK(f.sigma[0] == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(f.sigma[1] == doctest::Approx(0.0).epsilon(1e-13));
  }
  SUBCASE("non-finite input") {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(gff::svd(m), gff::FactorizationError);
  }
}

TEST_CASE("svd: reconstruction and orthonormality on random inputs") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    const Index rows = 1 + static_cast<Index>(rng() % 8);
    const Index cols = 1 + static_cast<Index>(rng() % 8);
    const Matrix m = testsupport::random_matrix(rng, rows, cols);
    const auto f = gff::svd(m);

    Matrix rebuilt = Matrix::Zero(rows, cols);
    for (Index i = 0; i < static_cast<Index>(f.sigma.size()); ++i) {
      rebuilt += f.sigma[i] * (f.u.col(i) * f.vh.row(i));
    }
    CHECK((rebuilt - m).norm() <= 1e-10 * std::max(1.0, m.norm()));

    const Index k = f.u.cols();
    CHECK((f.u.adjoint() * f.u - Matrix::Identity(k, k)).norm() <= 1e-12);
    CHECK((f.vh * f.vh.adjoint() - Matrix::Identity(k, k)).norm() <= 1e-12);
  }
}

TEST_CASE("pseudo_inverse: pinned examples") {
  SUBCASE("diag(2, 0)") {
    const Matrix p = gff::pseudo_inverse(diag2(2.0, 0.0));
    CHECK((p - diag2(0.5, 0.0)).norm() <= 1e-14);
  }
  SUBCASE("identity") {
    const Matrix p = gff::pseudo_inverse(Matrix::Identity(4, 4));
    CHECK((p - Matrix::Identity(4, 4)).norm() <= 1e-13);
  }
}

TEST_CASE("pseudo_inverse: least-squares oracle on full-column-rank input") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = testsupport::random_matrix(rng, 4, 3);
    const Matrix p = gff::pseudo_inverse(m);
    CHECK((p * m - Matrix::Identity(3, 3)).norm() <= 1e-10);

    // Column-by-column normal equations, solved by hand-rolled elimination.
    const Matrix gram = m.adjoint() * m;
    for (Index i = 0; i < 4; ++i) {
      Vector e = Vector::Zero(4);
      e[i] = 1.0;
      const Vector expected = testsupport::solve_dense(gram, m.adjoint() * e);
      CHECK((p.col(i) - expected).norm() <= 1e-9);
    }
  }
}

TEST_CASE("orthonormalize: pinned examples") {
  SUBCASE("scaled basis vector") {
    Matrix span = Matrix::Zero(2, 1);
    span(0, 0) = 2.0;
    const Matrix b = gff::orthonormalize(span);
    REQUIRE(b.cols() == 1);
    CHECK(std::abs(std::abs(b(0, 0)) - 1.0) <= 1e-14);  // up to unit phase
    CHECK(std::abs(b(1, 0)) <= 1e-14);
  }
  SUBCASE("rank collapse of duplicate columns") {
    Matrix span = Matrix::Zero(2, 2);
    span(0, 0) = 1.0;
    span(0, 1) = 1.0;
    CHECK(gff::orthonormalize(span).cols() == 1);
  }
  SUBCASE("projection onto span{e1, e2}") {
    Matrix span = Matrix::Zero(3, 2);
    span(0, 0) = 1.0;
    span(0, 1) = 1.0;
    span(1, 1) = 1.0;
    const Matrix b = gff::orthonormalize(span);
    REQUIRE(b.cols() == 2);
    Matrix expected = Matrix::Zero(3, 3);
    expected(0, 0) = 1.0;
    expected(1, 1) = 1.0;
    CHECK((b * b.adjoint() - expected).norm() <= 1e-13);
  }
  SUBCASE("empty input") {
    const Matrix b = gff::orthonormalize(Matrix(3, 0));
    CHECK(b.rows() == 3);
    CHECK(b.cols() == 0);
  }
}

TEST_CASE("projection_of: pinned examples") {
  SUBCASE("e1 in C^2") {
    Matrix basis = Matrix::Zero(2, 1);
    basis(0, 0) = 1.0;
    CHECK((gff::projection_of(basis) - diag2(1.0, 0.0)).norm() <= 1e-15);
  }
  SUBCASE("zero subspace") {
    CHECK(gff::projection_of(Matrix(2, 0)).isZero(0.0));
  }
  SUBCASE("diagonal line") {
    Matrix basis = Matrix::Zero(2, 1);
    basis(0, 0) = 1.0 / std::sqrt(2.0);
    basis(1, 0) = 1.0 / std::sqrt(2.0);
    Matrix expected(2, 2);
    expected << 0.5, 0.5, 0.5, 0.5;
    CHECK((gff::projection_of(basis) - expected).norm() <= 1e-14);
  }
  SUBCASE("rejects non-orthonormal input") {
    Matrix basis = Matrix::Zero(2, 1);
    basis(0, 0) = 1.0;
    basis(1, 0) = 1.0;  // norm sqrt(2)
    CHECK_THROWS_AS(gff::projection_of(basis), gff::ValidationError);
  }
  SUBCASE("idempotent and Hermitian") {
    std::mt19937_64 rng(303);
    const Matrix b = gff::orthonormalize(testsupport::random_matrix(rng, 6, 3));
    const Matrix p = gff::projection_of(b);
    CHECK((p - p.adjoint()).norm() <= 1e-12);
    CHECK((p * p - p).norm() <= 1e-12);
  }
}

TEST_CASE("eigh: pinned examples") {
  SUBCASE("diag(3, 1)") {
    const auto spec = gff::eigh(diag2(3.0, 1.0));
    REQUIRE(spec.eigenvalues.size() == 2);
    CHECK(spec.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spec.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));
  }
  SUBCASE("zero matrix") {
    const auto spec = gff::eigh(Matrix::Zero(3, 3));
    for (double v : spec.eigenvalues) CHECK(v == 0.0);
  }
  SUBCASE("[[1.5,.5],[.5,.5]]") {
    // Characteristic polynomial lambda^2 - 2 lambda + 0.5.
    Matrix m(2, 2);
    m << 1.5, 0.5, 0.5, 0.5;
    const auto spec = gff::eigh(m);
    const double lo = 1.0 - 1.0 / std::sqrt(2.0);
    const double hi = 1.0 + 1.0 / std::sqrt(2.0);
    CHECK(spec.eigenvalues[0] == doctest::Approx(lo).epsilon(1e-13));
    CHECK(spec.eigenvalues[1] == doctest::Approx(hi).epsilon(1e-13));
  }
  SUBCASE("rejects non-square") {
    CHECK_THROWS_AS(gff::eigh(Matrix::Zero(2, 3)), gff::ValidationError);
  }
}

TEST_CASE("sqrt_psd: pinned examples") {
  SUBCASE("identity") {
    CHECK((gff::sqrt_psd(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm() <=
          1e-13);
  }
  SUBCASE("diag(4, 9) inverted") {
    const Matrix r = gff::sqrt_psd(diag2(4.0, 9.0), true);
    CHECK((r - diag2(0.5, 1.0 / 3.0)).norm() <= 1e-14);
  }
  SUBCASE("squaring recovers a random PSD matrix") {
    std::mt19937_64 rng(404);
    const Matrix x = testsupport::random_matrix(rng, 4, 4);
    const Matrix psd = x.adjoint() * x;
    const Matrix root = gff::sqrt_psd(psd);
    CHECK((root * root - psd).norm() <= 1e-9 * std::max(1.0, psd.norm()));
    CHECK((root - root.adjoint()).norm() <= 1e-12);
  }
  SUBCASE("inverting a singular matrix fails") {
    CHECK_THROWS_AS(gff::sqrt_psd(diag2(1.0, 0.0), true), gff::SingularityError);
  }
}

TEST_CASE("numerical_rank: pinned examples") {
  CHECK(gff::numerical_rank(Matrix::Identity(3, 3)) == 3);
  CHECK(gff::numerical_rank(Matrix::Zero(4, 2)) == 0);
  Matrix ones(2, 2);
  ones << 1.0, 1.0, 1.0, 1.0;  // singular values sqrt2 * [sqrt2, 0]
  CHECK(gff::numerical_rank(ones) == 1);
}

TEST_CASE("pseudo-inverse identities hold on random matrices") {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 30; ++trial) {
    const Index rows = 1 + static_cast<Index>(rng() % 8);
    const Index cols = 1 + static_cast<Index>(rng() % 8);
    // Half the trials rank-deficient by construction.
    Matrix m;
    if (trial % 2 == 0) {
      m = testsupport::random_matrix(rng, rows, cols);
    } else {
      const Index r = 1 + static_cast<Index>(rng() % std::min(rows, cols));
      m = testsupport::random_matrix(rng, rows, r) *
          testsupport::random_matrix(rng, r, cols);
    }
    const Matrix p = gff::pseudo_inverse(m);

    // Moore-Penrose quadruple.
    CHECK((m * p * m - m).norm() <= 1e-9 * std::max(1.0, m.norm()));
    CHECK((p * m * p - p).norm() <= 1e-9 * std::max(1.0, p.norm()));
    CHECK(((m * p).adjoint() - m * p).norm() <= 1e-9);
    CHECK(((p * m).adjoint() - p * m).norm() <= 1e-9);

    // Adjoint commutes with the pseudo-inverse.
    CHECK((gff::pseudo_inverse(Matrix(m.adjoint())) - p.adjoint()).norm() <= 1e-9);

    // m p projects onto the column space, p m onto the row space.
    const Matrix col_basis = gff::orthonormalize(m);
    const Matrix row_basis = gff::orthonormalize(Matrix(m.adjoint()));
    CHECK((m * p - col_basis * col_basis.adjoint()).norm() <= 1e-9);
    CHECK((p * m - row_basis * row_basis.adjoint()).norm() <= 1e-9);
  }
}

TEST_CASE("pseudo-inverse range complements the null space") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 20; ++trial) {
    const Index rows = 2 + static_cast<Index>(rng() % 6);
    const Index cols = 2 + static_cast<Index>(rng() % 6);
    const Index r = 1 + static_cast<Index>(rng() % std::min(rows, cols));
    const Matrix m = testsupport::random_matrix(rng, rows, r) *
                     testsupport::random_matrix(rng, r, cols);
    const Matrix p = gff::pseudo_inverse(m);

    // Null-space basis from a full SVD, independent of the kernel's thin path.
    Eigen::JacobiSVD<Matrix> full(m, Eigen::ComputeFullV);
    const Index rank = gff::numerical_rank(m);
    const Matrix null_basis = full.matrixV().rightCols(cols - rank);

    Matrix joined(cols, rows + null_basis.cols());
    joined << p, null_basis;
    CHECK(gff::numerical_rank(joined) == cols);
    CHECK(gff::numerical_rank(p) + null_basis.cols() == cols);
  }
}

TEST_CASE("projection identity pi_uV u pi_V = u pi_V for invertible u") {
  std::mt19937_64 rng(707);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 7);
    Matrix u = testsupport::random_matrix(rng, n, n);
    while (gff::numerical_rank(u) < n) u = testsupport::random_matrix(rng, n, n);
    const Index k = 1 + static_cast<Index>(rng() % n);
    const Matrix v_basis = gff::orthonormalize(testsupport::random_matrix(rng, n, k));
    const Matrix p_v = gff::projection_of(v_basis);
    const Matrix p_uv = gff::projection_of(gff::orthonormalize(u * v_basis));
    CHECK((p_uv * u * p_v - u * p_v).norm() <= 1e-9 * std::max(1.0, u.norm()));
  }
}

TEST_CASE("eigh of a projection yields eigenvalues in {0, 1}") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 7);
    const Index k = static_cast<Index>(rng() % (n + 1));
    const Matrix basis = gff::orthonormalize(testsupport::random_matrix(rng, n, k));
    const auto spec = gff::eigh(gff::projection_of(basis));
    for (double lambda : spec.eigenvalues) {
      CHECK(std::min(std::abs(lambda), std::abs(lambda - 1.0)) <= 1e-9);
    }
  }
}

TEST_CASE("tolerance defaults") {
  const Tolerance t = Tolerance::standard();
  CHECK(t.rank_rel > 0.0);
  CHECK(t.rank_rel < 1.0);
  CHECK(t.residual_abs == 1e-9);
  const Tolerance td = Tolerance::for_dims(4, 6);
  CHECK(td.rank_rel == doctest::Approx(6.0 * std::numeric_limits<double>::epsilon()));
}
