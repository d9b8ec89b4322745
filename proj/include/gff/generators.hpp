#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gff/frame.hpp"

namespace gff {

// Deterministic generator with a fully pinned algorithm so that a seed
// reproduces the same instance everywhere:
//   - stream: SplitMix64 (state += 0x9E3779B97F4A7C15; two xor-multiply
//     finalization rounds per output);
//   - uniform doubles: top 53 bits mapped to [0, 1);
//   - Gaussians: Box-Muller on (u1, u2) with u1 in (0, 1], pairs consumed
//     cosine first, sine cached.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double gaussian();
  Complex complex_gaussian();  // independent N(0,1) real and imaginary parts

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct GeneratorSpec {
  std::uint64_t seed = 0;
  Index ambient_dim = 0;
  Index member_count = 0;
  std::vector<Index> subspace_dims;  // k_j <= ambient_dim
  std::vector<Index> codomain_dims;  // m_j >= 1
  std::pair<double, double> weight_range{1.0, 1.0};
  bool ensure_frame = false;
};

void validate(const GeneratorSpec& spec);

// JSON form: {"seed": u64, "ambient_dim": n, "member_count": J,
//   "subspace_dims": [...], "codomain_dims": [...],
//   "weight_range": [lo, hi], "ensure_frame": bool}
GeneratorSpec parse_generator_spec(const std::string& text);

// Subspace bases are orthonormalized complex Gaussian matrices, operators are
// complex Gaussian, weights uniform in weight_range. With ensure_frame the
// draw is retried (up to 100 times) until lower > 1e-6 * upper.
GFusionFrame random_frame(const GeneratorSpec& spec,
                          const Tolerance& tol = Tolerance::standard());

// Classical frame {f_j}: members with W_j = H, operator row f_j^H, v_j = 1.
GFusionFrame from_classical_frame(const std::vector<Vector>& vectors);

// Fusion frame (W_j, v_j): members with L_j = I.
GFusionFrame from_fusion_frame(const std::vector<Matrix>& subspaces,
                               const std::vector<double>& weights);

// g-frame {L_j}: members with W_j = H.
GFusionFrame from_g_frame(const std::vector<Matrix>& operators,
                          const std::vector<double>& weights);

}  // namespace gff
