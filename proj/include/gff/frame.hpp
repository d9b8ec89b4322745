#pragma once

#include <string>
#include <vector>

#include "gff/kernel.hpp"

namespace gff {

// One indexed member (W_j, L_j, v_j): an orthonormal basis of the subspace
// W_j, the member operator L_j : H -> C^{m_j}, and a positive weight.
struct Member {
  Matrix basis;   // n x k_j, orthonormal columns spanning W_j (k_j may be 0)
  Matrix op;      // m_j x n
  double weight;  // v_j > 0

  Index subspace_dim() const { return basis.cols(); }
  Index codomain_dim() const { return op.rows(); }

  // pi_{W_j} = B B^H.
  Matrix projection() const { return basis * basis.adjoint(); }
};

// Finite indexed family over a shared ambient space C^n.
struct GFusionFrame {
  Index ambient_dim = 0;
  std::vector<Member> members;

  Index member_count() const { return static_cast<Index>(members.size()); }
  Index total_codomain_dim() const;
};

// Element of the direct-sum coefficient space: one vector per member,
// block j of length m_j.
struct CoefficientFamily {
  std::vector<Vector> blocks;

  double norm_sq() const;
  Vector stacked() const;
  bool conforms_to(const GFusionFrame& frame) const;

  static CoefficientFamily zeros_like(const GFusionFrame& frame);
  static CoefficientFamily from_stacked(const GFusionFrame& frame, const Vector& v);
};

struct FrameBounds {
  double lower = 0.0;  // A
  double upper = 0.0;  // B
};

struct FrameReport {
  FrameBounds bounds;
  bool is_bessel = false;
  bool is_frame = false;
  bool is_parseval = false;
  bool is_gf_complete = false;
  double frame_operator_condition = 0.0;  // B / A, +inf when A vanishes
};

// Checks every Member and GFusionFrame invariant; throws ValidationError
// carrying the offending member index.
void validate(const GFusionFrame& frame, const Tolerance& tol = Tolerance::standard());

// JSON frame file format (UTF-8):
//   {"ambient_dim": n, "members": [{"weight": v,
//     "subspace": [column...], "operator": [row...]}, ...]}
// where a column/row is an array of n complex entries and a complex entry is
// a two-element array [re, im] of finite numbers. Writers emit keys in the
// order shown; parse runs validate.
GFusionFrame parse_frame(const std::string& text);
std::string serialize_frame(const GFusionFrame& frame);

// Coefficient file: {"blocks": [[complex...], ...]}.
CoefficientFamily parse_coefficients(const std::string& text);
std::string serialize_coefficients(const CoefficientFamily& coeffs);

// Bare matrix file: an array of rows of complex entries.
Matrix parse_matrix(const std::string& text);
std::string serialize_matrix(const Matrix& m);

}  // namespace gff
