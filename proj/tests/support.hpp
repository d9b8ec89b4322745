#pragma once

// Shared fixtures and test-side oracles. Oracles here are written against the
// raw definitions (dense assembly, hand-rolled elimination) so they stay
// independent of the library paths they check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "gff/engine.hpp"
#include "gff/frame.hpp"
#include "gff/generators.hpp"

namespace testsupport {

using gff::Complex;
using gff::GFusionFrame;
using gff::Index;
using gff::Matrix;
using gff::Member;
using gff::Vector;

inline Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) {
      m(r, c) = Complex{dist(rng), dist(rng)};
    }
  }
  return m;
}

inline Vector random_vector(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = Complex{dist(rng), dist(rng)};
  return v;
}

inline Vector random_unit_vector(std::mt19937_64& rng, Index n) {
  Vector v = random_vector(rng, n);
  return v / v.norm();
}

// Gaussian elimination with partial pivoting; oracle-side linear solve.
inline Vector solve_dense(Matrix a, Vector b) {
  const Index n = a.rows();
  for (Index col = 0; col < n; ++col) {
    Index pivot = col;
    for (Index r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    }
    if (pivot != col) {
      a.row(col).swap(a.row(pivot));
      std::swap(b(col), b(pivot));
    }
    for (Index r = col + 1; r < n; ++r) {
      const Complex factor = a(r, col) / a(col, col);
      a.row(r) -= factor * a.row(col);
      b(r) -= factor * b(col);
    }
  }
  Vector x(n);
  for (Index r = n - 1; r >= 0; --r) {
    Complex s = b(r);
    for (Index c = r + 1; c < n; ++c) s -= a(r, c) * x(c);
    x(r) = s / a(r, r);
  }
  return x;
}

// Dense block assembly of the synthesis matrix [v_j pi_{W_j} L_j^H]_j,
// written out from the definition.
inline Matrix oracle_synthesis_matrix(const GFusionFrame& frame) {
  Index total = 0;
  for (const auto& m : frame.members) total += m.op.rows();
  Matrix t(frame.ambient_dim, total);
  Index col = 0;
  for (const auto& m : frame.members) {
    const Matrix proj = m.basis * m.basis.adjoint();
    t.middleCols(col, m.op.rows()) = m.weight * proj * m.op.adjoint();
    col += m.op.rows();
  }
  return t;
}

// sum_j v_j^2 ||L_j pi_{W_j} f||^2, straight from the definition.
inline double oracle_frame_sum(const GFusionFrame& frame, const Vector& f) {
  double total = 0.0;
  for (const auto& m : frame.members) {
    const Vector block = m.op * (m.basis * (m.basis.adjoint() * f));
    total += m.weight * m.weight * block.squaredNorm();
  }
  return total;
}

// Parseval frame from the standard basis: W_j = span{e_j}, L_j = I, v_j = 1.
inline GFusionFrame onb_parseval_frame(Index n = 2) {
  GFusionFrame frame;
  frame.ambient_dim = n;
  for (Index j = 0; j < n; ++j) {
    Member mem;
    mem.basis = Matrix::Zero(n, 1);
    mem.basis(j, 0) = 1.0;
    mem.op = Matrix::Identity(n, n);
    mem.weight = 1.0;
    frame.members.push_back(mem);
  }
  return frame;
}

// Two subspaces of C^2, span{e1} and span{(e1+e2)/sqrt2}, with L = I, v = 1.
// Frame operator [[1.5, .5], [.5, .5]], bounds 1 -+ 1/sqrt2.
inline GFusionFrame two_subspace_frame() {
  GFusionFrame frame;
  frame.ambient_dim = 2;
  Member first;
  first.basis = Matrix::Zero(2, 1);
  first.basis(0, 0) = 1.0;
  first.op = Matrix::Identity(2, 2);
  first.weight = 1.0;
  Member second;
  second.basis = Matrix::Zero(2, 1);
  second.basis(0, 0) = 1.0 / std::sqrt(2.0);
  second.basis(1, 0) = 1.0 / std::sqrt(2.0);
  second.op = Matrix::Identity(2, 2);
  second.weight = 1.0;
  frame.members = {first, second};
  return frame;
}

// Three equiangular lines in R^2 (angles 0, 60, 120 degrees), L = I, v = 1.
// Tight: frame operator 1.5 I.
inline GFusionFrame equiangular_frame() {
  GFusionFrame frame;
  frame.ambient_dim = 2;
  const double angles[3] = {0.0, std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0};
  for (double a : angles) {
    Member mem;
    mem.basis = Matrix::Zero(2, 1);
    mem.basis(0, 0) = std::cos(a);
    mem.basis(1, 0) = std::sin(a);
    mem.op = Matrix::Identity(2, 2);
    mem.weight = 1.0;
    frame.members.push_back(mem);
  }
  return frame;
}

// Single proper subspace of C^2: annihilates e2, so not a frame.
inline GFusionFrame single_member_frame() {
  GFusionFrame frame;
  frame.ambient_dim = 2;
  Member mem;
  mem.basis = Matrix::Zero(2, 1);
  mem.basis(0, 0) = 1.0;
  mem.op = Matrix::Identity(2, 2);
  mem.weight = 1.0;
  frame.members = {mem};
  return frame;
}

// Deterministic desk-scale generator spec; dims are patched so that a frame
// is structurally reachable when ensure_frame is set.
inline gff::GeneratorSpec deterministic_spec(std::uint64_t i, Index max_dim = 10,
                                             bool ensure_frame = true) {
  gff::GeneratorSpec spec;
  spec.seed = 0x5EED0000ULL + i;
  spec.ambient_dim = 2 + static_cast<Index>(i % static_cast<std::uint64_t>(max_dim - 1));
  spec.member_count = 1 + static_cast<Index>((i / 5) % 8);
  spec.ensure_frame = ensure_frame;
  spec.weight_range = {0.5, 2.0};
  for (Index j = 0; j < spec.member_count; ++j) {
    spec.subspace_dims.push_back(
        1 + static_cast<Index>((i + static_cast<std::uint64_t>(2 * j)) %
                               static_cast<std::uint64_t>(spec.ambient_dim)));
    spec.codomain_dims.push_back(
        1 + static_cast<Index>((i + static_cast<std::uint64_t>(3 * j)) % 4));
  }
  if (ensure_frame) {
    // Guarantee sum_j min(k_j, m_j) >= n so generic draws can span H.
    const auto coverage = [&spec]() {
      Index c = 0;
      for (Index j = 0; j < spec.member_count; ++j) {
        c += std::min(spec.subspace_dims[j], spec.codomain_dims[j]);
      }
      return c;
    };
    for (Index j = 0; coverage() < spec.ambient_dim;
         j = (j + 1) % spec.member_count) {
      if (spec.subspace_dims[j] < spec.ambient_dim) ++spec.subspace_dims[j];
      spec.codomain_dims[j] = std::max(spec.codomain_dims[j], spec.subspace_dims[j]);
    }
  }
  return spec;
}

// Overcomplete variant: removing any one member still leaves full coverage.
inline gff::GeneratorSpec overcomplete_spec(std::uint64_t i, Index max_dim = 8) {
  gff::GeneratorSpec spec = deterministic_spec(i, max_dim, true);
  spec.member_count = std::max<Index>(spec.member_count, 3);
  spec.subspace_dims.resize(spec.member_count);
  spec.codomain_dims.resize(spec.member_count);
  const Index n = spec.ambient_dim;
  for (Index j = 0; j < spec.member_count; ++j) {
    spec.subspace_dims[j] = n;
    spec.codomain_dims[j] =
        std::max<Index>(1 + static_cast<Index>((i + static_cast<std::uint64_t>(j)) %
                                               static_cast<std::uint64_t>(n)),
                        (n + spec.member_count - 2) / (spec.member_count - 1));
  }
  return spec;
}

}  // namespace testsupport
