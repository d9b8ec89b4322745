#include "gff/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gff/errors.hpp"

namespace gff {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |lambda - 1| window for the fixed-point tests of the deletion conditions.
constexpr double kEigenvalueOneTol = 1e-8;

void require_vector_length(const Vector& f, Index n) {
  if (f.size() != n) {
    throw ShapeError("vector has length " + std::to_string(f.size()) +
                     ", ambient dimension is " + std::to_string(n));
  }
}

void require_conformant(const GFusionFrame& frame, const CoefficientFamily& coeffs) {
  if (!coeffs.conforms_to(frame)) {
    throw ShapeError("coefficient family does not match the frame's codomains");
  }
}

// Structural agreement between a frame and a dual built from it.
void require_matching_dual(const GFusionFrame& frame, const DualFrame& dual) {
  bool ok = frame.ambient_dim == dual.frame.ambient_dim &&
            frame.member_count() == dual.frame.member_count() &&
            dual.s_inverse.rows() == frame.ambient_dim &&
            dual.s_inverse.cols() == frame.ambient_dim;
  if (ok) {
    for (Index j = 0; j < frame.member_count(); ++j) {
      if (frame.members[j].codomain_dim() != dual.frame.members[j].codomain_dim() ||
          frame.members[j].weight != dual.frame.members[j].weight) {
        ok = false;
        break;
      }
    }
  }
  if (!ok) throw ShapeError("dual frame does not match the primal frame");
}

double smallest_singular_value(const Matrix& m) {
  const SvdResult f = svd(m);
  return f.sigma.empty() ? 0.0 : f.sigma.back();
}

FrameReport require_frame(const GFusionFrame& frame, const Tolerance& tol) {
  const FrameReport report = frame_bounds(frame, tol);
  if (!report.is_frame) {
    throw NotAFrameError(report.bounds.lower);
  }
  return report;
}

// Gate for the inversion-based operations: the family must be a frame and
// the frame operator must be invertible in double precision.
FrameReport require_invertible_frame(const GFusionFrame& frame, const Tolerance& tol) {
  const FrameReport report = require_frame(frame, tol);
  if (report.frame_operator_condition > kConditionLimit) {
    throw ConditioningError(report.frame_operator_condition);
  }
  return report;
}

Matrix hermitian_inverse(const Matrix& s, const Tolerance& tol) {
  const Matrix inv_half = sqrt_psd(s, /*invert=*/true, tol);
  return inv_half * inv_half;
}

}  // namespace

Matrix assembled_synthesis(const GFusionFrame& frame) {
  Matrix t(frame.ambient_dim, frame.total_codomain_dim());
  Index col = 0;
  for (const auto& mem : frame.members) {
    t.middleCols(col, mem.codomain_dim()) =
        mem.weight * (mem.projection() * mem.op.adjoint());
    col += mem.codomain_dim();
  }
  return t;
}

Matrix assembled_analysis(const GFusionFrame& frame) {
  Matrix t(frame.total_codomain_dim(), frame.ambient_dim);
  Index row = 0;
  for (const auto& mem : frame.members) {
    t.middleRows(row, mem.codomain_dim()) =
        mem.weight * (mem.op * mem.projection());
    row += mem.codomain_dim();
  }
  return t;
}

Vector synthesis(const GFusionFrame& frame, const CoefficientFamily& coeffs) {
  require_conformant(frame, coeffs);
  Vector out = Vector::Zero(frame.ambient_dim);
  for (Index j = 0; j < frame.member_count(); ++j) {
    const Member& mem = frame.members[j];
    out += mem.weight * (mem.projection() * (mem.op.adjoint() * coeffs.blocks[j]));
  }
  return out;
}

CoefficientFamily analysis(const GFusionFrame& frame, const Vector& f) {
  require_vector_length(f, frame.ambient_dim);
  CoefficientFamily out;
  out.blocks.reserve(frame.members.size());
  for (const auto& mem : frame.members) {
    out.blocks.push_back(mem.weight * (mem.op * (mem.projection() * f)));
  }
  return out;
}

Matrix frame_operator(const GFusionFrame& frame) {
  const Index n = frame.ambient_dim;
  Matrix s = Matrix::Zero(n, n);
  for (const auto& mem : frame.members) {
    const Matrix block = mem.op * mem.projection();  // L_j pi_{W_j}
    s += (mem.weight * mem.weight) * (block.adjoint() * block);
  }
  return s;
}

FrameReport frame_bounds(const GFusionFrame& frame, const Tolerance& tol) {
  const Matrix s = frame_operator(frame);
  const Spectrum spec = eigh(s);
  const double raw_min = spec.min();
  const double raw_max = spec.max();

  FrameReport report;
  report.bounds.lower = std::max(raw_min, 0.0);
  report.bounds.upper = std::max(raw_max, 0.0);
  report.is_bessel = true;  // finite families are always Bessel
  report.is_frame = report.bounds.lower > tol.rank_rel * report.bounds.upper;
  report.is_parseval =
      std::max(std::abs(raw_min - 1.0), std::abs(raw_max - 1.0)) <= tol.residual_abs;
  report.is_gf_complete = gf_complete(frame, tol);
  report.frame_operator_condition =
      report.bounds.lower > 0.0 ? report.bounds.upper / report.bounds.lower : kInf;
  return report;
}

Vector reconstruct(const GFusionFrame& frame, const Vector& f, const Tolerance& tol) {
  require_vector_length(f, frame.ambient_dim);
  const FrameReport report = require_invertible_frame(frame, tol);

  const Matrix s = frame_operator(frame);
  const Matrix s_inv = hermitian_inverse(s, tol);

  const Vector y = s_inv * f;
  Vector direct = Vector::Zero(frame.ambient_dim);
  Vector commuted_inner = Vector::Zero(frame.ambient_dim);
  for (const auto& mem : frame.members) {
    const Matrix proj = mem.projection();
    const double w2 = mem.weight * mem.weight;
    direct += w2 * (proj * (mem.op.adjoint() * (mem.op * (proj * y))));
    commuted_inner += w2 * (proj * (mem.op.adjoint() * (mem.op * (proj * f))));
  }
  const Vector commuted = s_inv * commuted_inner;

  const double scale = std::max(1.0, f.norm());
  const double agreement = (direct - commuted).norm();
  if (agreement > tol.residual_abs * report.frame_operator_condition * scale) {
    throw Error("reconstruction orderings disagree by " + std::to_string(agreement));
  }
  return direct;
}

GFusionFrame parsevalize(const GFusionFrame& frame, const Tolerance& tol) {
  require_invertible_frame(frame, tol);
  const Matrix s = frame_operator(frame);
  const Matrix s_inv_half = sqrt_psd(s, /*invert=*/true, tol);

  GFusionFrame out;
  out.ambient_dim = frame.ambient_dim;
  out.members.reserve(frame.members.size());
  for (const auto& mem : frame.members) {
    Member next;
    next.basis = orthonormalize(s_inv_half * mem.basis, tol);
    next.op = mem.op * mem.projection() * s_inv_half;
    next.weight = mem.weight;
    out.members.push_back(std::move(next));
  }
  return out;
}

DualFrame canonical_dual(const GFusionFrame& frame, const Tolerance& tol) {
  require_invertible_frame(frame, tol);
  const Matrix s = frame_operator(frame);

  DualFrame dual;
  dual.s_inverse = hermitian_inverse(s, tol);
  dual.frame.ambient_dim = frame.ambient_dim;
  dual.frame.members.reserve(frame.members.size());
  for (const auto& mem : frame.members) {
    Member next;
    next.basis = orthonormalize(dual.s_inverse * mem.basis, tol);
    next.op = mem.op * mem.projection() * dual.s_inverse;
    next.weight = mem.weight;
    dual.frame.members.push_back(std::move(next));
  }
  return dual;
}

std::pair<Vector, Vector> mixed_reconstruct(const GFusionFrame& frame,
                                            const DualFrame& dual, const Vector& f) {
  require_vector_length(f, frame.ambient_dim);
  require_matching_dual(frame, dual);

  Vector primal_side = Vector::Zero(frame.ambient_dim);
  Vector dual_side = Vector::Zero(frame.ambient_dim);
  for (Index j = 0; j < frame.member_count(); ++j) {
    const Member& mem = frame.members[j];
    const Member& dmem = dual.frame.members[j];
    const Matrix proj = mem.projection();
    const Matrix dproj = dmem.projection();
    const double w2 = mem.weight * mem.weight;
    primal_side += w2 * (proj * (mem.op.adjoint() * (dmem.op * (dproj * f))));
    dual_side += w2 * (dproj * (dmem.op.adjoint() * (mem.op * (proj * f))));
  }
  return {primal_side, dual_side};
}

CoefficientFamily minimal_norm_coefficients(const GFusionFrame& frame,
                                            const DualFrame& dual, const Vector& f,
                                            const Tolerance& tol) {
  require_vector_length(f, frame.ambient_dim);
  require_matching_dual(frame, dual);
  require_frame(frame, tol);

  CoefficientFamily out;
  out.blocks.reserve(frame.members.size());
  for (const auto& dmem : dual.frame.members) {
    out.blocks.push_back(dmem.weight * (dmem.op * (dmem.projection() * f)));
  }
  return out;
}

bool gf_complete(const GFusionFrame& frame, const Tolerance& tol) {
  const Index analysis_rank = numerical_rank(assembled_analysis(frame), tol);
  const Index synthesis_rank = numerical_rank(assembled_synthesis(frame), tol);
  if (analysis_rank != synthesis_rank) {
    throw Error("analysis/synthesis rank disagreement: " +
                std::to_string(analysis_rank) + " vs " +
                std::to_string(synthesis_rank));
  }
  return analysis_rank == frame.ambient_dim;
}

DeletionReport delete_member(const GFusionFrame& frame, Index j0, const Tolerance& tol) {
  if (j0 < 0 || j0 >= frame.member_count()) {
    throw IndexError("member index " + std::to_string(j0) + " out of range [0, " +
                     std::to_string(frame.member_count()) + ")");
  }
  const DualFrame dual = canonical_dual(frame, tol);

  const Member& mem = frame.members[j0];
  const Member& dmem = dual.frame.members[j0];
  const Matrix proj = mem.projection();
  const Matrix dproj = dmem.projection();
  const Index m0 = mem.codomain_dim();
  const Index n = frame.ambient_dim;

  // Fixed-point operators of the three deletion tests.
  const Matrix m1 = dmem.op * dproj * proj * mem.op.adjoint();  // on the codomain
  const Matrix m2 = proj * mem.op.adjoint() * dmem.op * dproj;  // on H
  const Matrix m3 = mem.op * proj * dproj * dmem.op.adjoint();  // on the codomain

  DeletionReport report;
  report.removed_index = j0;

  const bool weight_is_one = std::abs(mem.weight - 1.0) <= tol.residual_abs;
  report.cond1_holds =
      weight_is_one &&
      smallest_singular_value(m1 - Matrix::Identity(m0, m0)) <= kEigenvalueOneTol;
  report.cond2_holds =
      weight_is_one &&
      smallest_singular_value(m2 - Matrix::Identity(n, n)) <= kEigenvalueOneTol;
  report.cond3_holds =
      smallest_singular_value(Matrix::Identity(m0, m0) - m3) > tol.rank_rel;

  GFusionFrame remaining;
  remaining.ambient_dim = n;
  for (Index j = 0; j < frame.member_count(); ++j) {
    if (j != j0) remaining.members.push_back(frame.members[j]);
  }
  if (remaining.members.empty()) {
    report.remaining_bounds = FrameBounds{0.0, 0.0};
    report.remaining_gf_complete = false;
  } else {
    const FrameReport rem = frame_bounds(remaining, tol);
    report.remaining_bounds = rem.bounds;
    report.remaining_gf_complete = rem.is_gf_complete;
  }
  return report;
}

RangeSpaceReport range_space_bounds(const GFusionFrame& frame, const Tolerance& tol) {
  const Spectrum spec = eigh(frame_operator(frame));
  const Index dim = numerical_rank(assembled_analysis(frame), tol);

  RangeSpaceReport report;
  report.dim = dim;
  report.is_frame_sequence = dim > 0;
  if (dim > 0) {
    const Index n = frame.ambient_dim;
    report.bounds.lower = std::max(spec.eigenvalues[n - dim], 0.0);
    report.bounds.upper = std::max(spec.max(), 0.0);
  }
  return report;
}

InjectivityReport injectivity_check(const GFusionFrame& frame, const Tolerance& tol) {
  const Matrix stacked = assembled_analysis(frame);
  const Index n = frame.ambient_dim;

  // Injectivity straight from the singular spectrum of the stacked map.
  bool injective = false;
  if (stacked.rows() >= n) {
    const SvdResult f = svd(stacked);
    const double sigma_max = f.sigma.empty() ? 0.0 : f.sigma.front();
    injective = static_cast<Index>(f.sigma.size()) == n &&
                f.sigma.back() > tol.rank_rel * sigma_max;
  }

  const bool complete = gf_complete(frame, tol);
  if (complete != injective) {
    throw Error("injectivity and gf-completeness disagree");
  }

  InjectivityReport report;
  report.injective = injective;
  if (!injective) {
    // Null vector of the stacked map = eigenvector of S for its smallest
    // eigenvalue (S = stacked^H stacked).
    Eigen::SelfAdjointEigenSolver<Matrix> solver(frame_operator(frame));
    if (solver.info() != Eigen::Success) {
      throw FactorizationError(n, n, "eigendecomposition did not converge");
    }
    report.null_witness = solver.eigenvectors().col(0);
  }
  return report;
}

std::pair<GFusionFrame, TransformDiagnostics> transform_frame(const GFusionFrame& frame,
                                                              const Matrix& u,
                                                              const Tolerance& tol) {
  const Index n = frame.ambient_dim;
  if (u.rows() != n || u.cols() != n) {
    throw ShapeError("operator is " + std::to_string(u.rows()) + "x" +
                     std::to_string(u.cols()) + ", expected " + std::to_string(n) +
                     "x" + std::to_string(n));
  }
  require_frame(frame, tol);

  GFusionFrame image;
  image.ambient_dim = n;
  image.members.reserve(frame.members.size());
  for (const auto& mem : frame.members) {
    Member next;
    next.basis = orthonormalize(u * mem.basis, tol);
    // The composition through pi_{W_j} keeps u T = T_Gamma exact for any u;
    // it coincides with L_j u^H whenever L_j is supported on W_j.
    next.op = mem.op * mem.projection() * u.adjoint();
    next.weight = mem.weight;
    image.members.push_back(std::move(next));
  }

  TransformDiagnostics diag;
  const SvdResult uf = svd(u);
  diag.u_singular_values = uf.sigma;
  diag.u_rank = numerical_rank(u, tol);
  diag.range = range_space_bounds(image, tol);
  diag.synthesis_identity_residual =
      operator_norm(u * assembled_synthesis(frame) - assembled_synthesis(image));
  if (diag.synthesis_identity_residual > tol.residual_abs) {
    throw Error("transformed synthesis identity residual " +
                std::to_string(diag.synthesis_identity_residual));
  }
  return {std::move(image), diag};
}

bool pair_duality_check(const GFusionFrame& lam, const GFusionFrame& theta,
                        const Tolerance& tol) {
  if (lam.ambient_dim != theta.ambient_dim ||
      lam.member_count() != theta.member_count()) {
    throw ShapeError("families do not share ambient dimension and member count");
  }
  for (Index j = 0; j < lam.member_count(); ++j) {
    if (lam.members[j].codomain_dim() != theta.members[j].codomain_dim()) {
      throw ShapeError("member " + std::to_string(j) + " codomains differ");
    }
  }
  const Index n = lam.ambient_dim;
  const Matrix product = assembled_synthesis(theta) * assembled_analysis(lam);
  const bool holds = operator_norm(product - Matrix::Identity(n, n)) <= tol.residual_abs;
  if (holds) {
    const FrameReport rl = frame_bounds(lam, tol);
    const FrameReport rt = frame_bounds(theta, tol);
    if (rl.bounds.lower < 1.0 / rt.bounds.upper - tol.residual_abs ||
        rt.bounds.lower < 1.0 / rl.bounds.upper - tol.residual_abs) {
      throw Error("pair duality holds but the reciprocal bound estimate fails");
    }
  }
  return holds;
}

bool bessel_finite_subset_check(const GFusionFrame& frame,
                                const std::vector<Index>& subset,
                                const CoefficientFamily& coeffs, const Tolerance& tol) {
  require_conformant(frame, coeffs);
  for (Index j : subset) {
    if (j < 0 || j >= frame.member_count()) {
      throw IndexError("subset index " + std::to_string(j) + " out of range");
    }
  }
  Vector sum = Vector::Zero(frame.ambient_dim);
  double coeff_norm_sq = 0.0;
  for (Index j : subset) {
    const Member& mem = frame.members[j];
    sum += mem.weight * (mem.projection() * (mem.op.adjoint() * coeffs.blocks[j]));
    coeff_norm_sq += coeffs.blocks[j].squaredNorm();
  }
  const double upper = frame_bounds(frame, tol).bounds.upper;
  const double lhs = sum.squaredNorm();
  const double rhs = upper * coeff_norm_sq;
  return lhs <= rhs + tol.residual_abs * (1.0 + rhs);
}

}  // namespace gff
