#include "gff/generators.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include <json.hpp>

#include "gff/engine.hpp"
#include "gff/errors.hpp"

namespace gff {

std::uint64_t SplitMix64::next_u64() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitMix64::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 shifted into (0, 1] so the log is finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Complex SplitMix64::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex{re, im};
}

void validate(const GeneratorSpec& spec) {
  if (spec.ambient_dim < 1) {
    throw ValidationError(-1, "ambient_dim must be positive");
  }
  if (spec.member_count < 1) {
    throw ValidationError(-1, "member_count must be positive");
  }
  if (static_cast<Index>(spec.subspace_dims.size()) != spec.member_count ||
      static_cast<Index>(spec.codomain_dims.size()) != spec.member_count) {
    throw ValidationError(-1, "subspace_dims and codomain_dims must have member_count entries");
  }
  for (Index j = 0; j < spec.member_count; ++j) {
    if (spec.subspace_dims[j] < 0 || spec.subspace_dims[j] > spec.ambient_dim) {
      throw ValidationError(j, "subspace_dims[" + std::to_string(j) +
                                   "] must lie in [0, ambient_dim]");
    }
    if (spec.codomain_dims[j] < 1) {
      throw ValidationError(j, "codomain_dims[" + std::to_string(j) + "] must be positive");
    }
  }
  if (!(spec.weight_range.first > 0.0) ||
      !(spec.weight_range.second >= spec.weight_range.first) ||
      !std::isfinite(spec.weight_range.second)) {
    throw ValidationError(-1, "weight_range must satisfy 0 < lo <= hi < inf");
  }
}

GeneratorSpec parse_generator_spec(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "expected an object");

  const auto get = [&doc](const char* key) -> const nlohmann::json& {
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(key, "missing field");
    return *it;
  };

  GeneratorSpec spec;
  spec.seed = get("seed").get<std::uint64_t>();
  spec.ambient_dim = get("ambient_dim").get<Index>();
  spec.member_count = get("member_count").get<Index>();
  spec.subspace_dims = get("subspace_dims").get<std::vector<Index>>();
  spec.codomain_dims = get("codomain_dims").get<std::vector<Index>>();
  const auto& range = get("weight_range");
  if (!range.is_array() || range.size() != 2) {
    throw ParseError("weight_range", "expected [lo, hi]");
  }
  spec.weight_range = {range[0].get<double>(), range[1].get<double>()};
  spec.ensure_frame = get("ensure_frame").get<bool>();

  validate(spec);
  return spec;
}

namespace {

// Column-major fill, real part before imaginary part per entry.
Matrix gaussian_matrix(SplitMix64& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) {
      m(r, c) = rng.complex_gaussian();
    }
  }
  return m;
}

GFusionFrame draw(SplitMix64& rng, const GeneratorSpec& spec, const Tolerance& tol) {
  GFusionFrame frame;
  frame.ambient_dim = spec.ambient_dim;
  frame.members.reserve(static_cast<std::size_t>(spec.member_count));
  for (Index j = 0; j < spec.member_count; ++j) {
    Member mem;
    mem.basis = orthonormalize(
        gaussian_matrix(rng, spec.ambient_dim, spec.subspace_dims[j]), tol);
    mem.op = gaussian_matrix(rng, spec.codomain_dims[j], spec.ambient_dim);
    mem.weight = spec.weight_range.first +
                 (spec.weight_range.second - spec.weight_range.first) * rng.uniform();
    frame.members.push_back(std::move(mem));
  }
  return frame;
}

}  // namespace

GFusionFrame random_frame(const GeneratorSpec& spec, const Tolerance& tol) {
  validate(spec);
  SplitMix64 rng(spec.seed);

  constexpr int kMaxRetries = 100;
  double last_lower = 0.0;
  double last_upper = 0.0;
  for (int attempt = 0; attempt < (spec.ensure_frame ? kMaxRetries : 1); ++attempt) {
    GFusionFrame frame = draw(rng, spec, tol);
    if (!spec.ensure_frame) return frame;
    const FrameReport report = frame_bounds(frame, tol);
    last_lower = report.bounds.lower;
    last_upper = report.bounds.upper;
    if (report.bounds.lower > 1e-6 * report.bounds.upper) return frame;
  }
  throw GenerationError(last_lower, last_upper);
}

GFusionFrame from_classical_frame(const std::vector<Vector>& vectors) {
  if (vectors.empty()) {
    throw ValidationError(-1, "classical frame needs at least one vector");
  }
  const Index n = vectors.front().size();
  GFusionFrame frame;
  frame.ambient_dim = n;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != n) {
      throw ShapeError("vector " + std::to_string(j) + " has length " +
                       std::to_string(vectors[j].size()) + ", expected " +
                       std::to_string(n));
    }
    Member mem;
    mem.basis = Matrix::Identity(n, n);
    mem.op = vectors[j].adjoint();  // 1 x n row f_j^H
    mem.weight = 1.0;
    frame.members.push_back(std::move(mem));
  }
  return frame;
}

GFusionFrame from_fusion_frame(const std::vector<Matrix>& subspaces,
                               const std::vector<double>& weights) {
  if (subspaces.empty() || subspaces.size() != weights.size()) {
    throw ShapeError("need matching non-empty subspace and weight lists");
  }
  const Index n = subspaces.front().rows();
  GFusionFrame frame;
  frame.ambient_dim = n;
  for (std::size_t j = 0; j < subspaces.size(); ++j) {
    Member mem;
    mem.basis = subspaces[j];
    mem.op = Matrix::Identity(n, n);
    mem.weight = weights[j];
    frame.members.push_back(std::move(mem));
  }
  validate(frame);
  return frame;
}

GFusionFrame from_g_frame(const std::vector<Matrix>& operators,
                          const std::vector<double>& weights) {
  if (operators.empty() || operators.size() != weights.size()) {
    throw ShapeError("need matching non-empty operator and weight lists");
  }
  const Index n = operators.front().cols();
  GFusionFrame frame;
  frame.ambient_dim = n;
  for (std::size_t j = 0; j < operators.size(); ++j) {
    Member mem;
    mem.basis = Matrix::Identity(n, n);
    mem.op = operators[j];
    mem.weight = weights[j];
    frame.members.push_back(std::move(mem));
  }
  validate(frame);
  return frame;
}

}  // namespace gff
