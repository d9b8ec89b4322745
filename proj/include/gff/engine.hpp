#pragma once

#include <utility>
#include <vector>

#include "gff/frame.hpp"

namespace gff {

// Operations that invert the frame operator refuse instances whose condition
// number exceeds this guard.
inline constexpr double kConditionLimit = 1e12;

// Canonical dual (S^-1 W_j, L_j pi_{W_j} S^-1, v_j) with the inverse frame
// operator cached. The dual's own frame operator equals S^-1.
struct DualFrame {
  GFusionFrame frame;
  Matrix s_inverse;
};

// Outcome of removing member j0. cond1/cond2 are the fixed-point tests for
// the existence of g0 / f0 (they additionally require v_{j0} = 1); either
// one forces the remaining family to be gf-incomplete. cond3 tests bounded
// invertibility of I - L pi_W pi_W~ L~^H on the member codomain, which
// guarantees the remaining family is still a frame.
struct DeletionReport {
  Index removed_index = 0;
  bool cond1_holds = false;
  bool cond2_holds = false;
  bool cond3_holds = false;
  FrameBounds remaining_bounds;
  bool remaining_gf_complete = false;
};

// Frame bounds of the family restricted to V = span{pi_{W_j} L_j^H H_j}:
// the extreme nonzero eigenvalues of the frame operator, plus dim V.
struct RangeSpaceReport {
  FrameBounds bounds;
  Index dim = 0;
  bool is_frame_sequence = false;
};

struct InjectivityReport {
  bool injective = false;
  Vector null_witness;  // unit vector annihilated by every member; empty when injective
};

struct TransformDiagnostics {
  std::vector<double> u_singular_values;
  Index u_rank = 0;
  RangeSpaceReport range;
  double synthesis_identity_residual = 0.0;  // ||u T - T_Gamma||
};

// Block matrix [v_j pi_{W_j} L_j^H]_j, size n x (sum m_j).
Matrix assembled_synthesis(const GFusionFrame& frame);

// Stacked rows [v_j L_j pi_{W_j}]_j, size (sum m_j) x n; adjoint of the above.
Matrix assembled_analysis(const GFusionFrame& frame);

// sum_j v_j pi_{W_j} L_j^H f_j.
Vector synthesis(const GFusionFrame& frame, const CoefficientFamily& coeffs);

// Block j: v_j L_j pi_{W_j} f. Adjoint of synthesis.
CoefficientFamily analysis(const GFusionFrame& frame, const Vector& f);

// S = sum_j v_j^2 pi_{W_j} L_j^H L_j pi_{W_j}, Hermitian PSD.
Matrix frame_operator(const GFusionFrame& frame);

// Optimal bounds (extreme eigenvalues of S) and the derived flags.
FrameReport frame_bounds(const GFusionFrame& frame,
                         const Tolerance& tol = Tolerance::standard());

// sum_j v_j^2 pi_{W_j} L_j^H L_j pi_{W_j} S^-1 f; equals f for a frame.
// The commuted ordering is evaluated as well and checked for agreement.
Vector reconstruct(const GFusionFrame& frame, const Vector& f,
                   const Tolerance& tol = Tolerance::standard());

// (S^-1/2 W_j, L_j pi_{W_j} S^-1/2, v_j): a Parseval frame with the same
// weights; its frame operator is the identity.
GFusionFrame parsevalize(const GFusionFrame& frame,
                         const Tolerance& tol = Tolerance::standard());

DualFrame canonical_dual(const GFusionFrame& frame,
                         const Tolerance& tol = Tolerance::standard());

// Both mixed expansions
//   sum_j v_j^2 pi_{W_j} L_j^H L~_j pi_{W~_j} f   and
//   sum_j v_j^2 pi_{W~_j} L~_j^H L_j pi_{W_j} f;
// each reproduces f.
std::pair<Vector, Vector> mixed_reconstruct(const GFusionFrame& frame,
                                            const DualFrame& dual, const Vector& f);

// g_j = v_j L~_j pi_{W~_j} f, the expansion of f with the least direct-sum
// norm among all coefficient families synthesizing f.
CoefficientFamily minimal_norm_coefficients(const GFusionFrame& frame,
                                            const DualFrame& dual, const Vector& f,
                                            const Tolerance& tol = Tolerance::standard());

// True iff span{pi_{W_j} L_j^H H_j} = H, i.e. the stacked analysis matrix
// has full column rank. Cross-checked against the synthesis-side rank.
bool gf_complete(const GFusionFrame& frame, const Tolerance& tol = Tolerance::standard());

DeletionReport delete_member(const GFusionFrame& frame, Index j0,
                             const Tolerance& tol = Tolerance::standard());

RangeSpaceReport range_space_bounds(const GFusionFrame& frame,
                                    const Tolerance& tol = Tolerance::standard());

// True iff the analysis map has trivial null space; agrees with gf_complete
// by construction (both are computed and compared). A witness null vector is
// returned when the map is not injective.
InjectivityReport injectivity_check(const GFusionFrame& frame,
                                    const Tolerance& tol = Tolerance::standard());

// Image family Gamma = (u W_j, L_j pi_{W_j} u^H, v_j) under u in B(H).
// The composition through pi_{W_j} keeps the exact identity
// u T = T_Gamma for every u (pi_{uV} u pi_V = u pi_V); diagnostics carry the
// singular values and rank of u, its residual, and the range-space bounds
// of Gamma.
std::pair<GFusionFrame, TransformDiagnostics> transform_frame(
    const GFusionFrame& frame, const Matrix& u,
    const Tolerance& tol = Tolerance::standard());

// True iff T_theta * T_lam^H = I. When it holds, each family's lower bound
// is at least the reciprocal of the other's upper bound.
bool pair_duality_check(const GFusionFrame& lam, const GFusionFrame& theta,
                        const Tolerance& tol = Tolerance::standard());

// ||sum_{j in subset} v_j pi_{W_j} L_j^H f_j||^2 <= B sum_{j in subset} ||f_j||^2
// with B the upper frame bound. Always true; false signals an internal
// inconsistency.
bool bessel_finite_subset_check(const GFusionFrame& frame,
                                const std::vector<Index>& subset,
                                const CoefficientFamily& coeffs,
                                const Tolerance& tol = Tolerance::standard());

}  // namespace gff
