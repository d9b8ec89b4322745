#include "gff/frame.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <json.hpp>

#include "gff/errors.hpp"

namespace gff {

using ordered_json = nlohmann::ordered_json;

Index GFusionFrame::total_codomain_dim() const {
  Index total = 0;
  for (const auto& m : members) total += m.codomain_dim();
  return total;
}

double CoefficientFamily::norm_sq() const {
  double total = 0.0;
  for (const auto& b : blocks) total += b.squaredNorm();
  return total;
}

Vector CoefficientFamily::stacked() const {
  Index total = 0;
  for (const auto& b : blocks) total += b.size();
  Vector out(total);
  Index at = 0;
  for (const auto& b : blocks) {
    out.segment(at, b.size()) = b;
    at += b.size();
  }
  return out;
}

bool CoefficientFamily::conforms_to(const GFusionFrame& frame) const {
  if (static_cast<Index>(blocks.size()) != frame.member_count()) return false;
  for (Index j = 0; j < frame.member_count(); ++j) {
    if (blocks[j].size() != frame.members[j].codomain_dim()) return false;
  }
  return true;
}

CoefficientFamily CoefficientFamily::zeros_like(const GFusionFrame& frame) {
  CoefficientFamily out;
  out.blocks.reserve(frame.members.size());
  for (const auto& m : frame.members) {
    out.blocks.push_back(Vector::Zero(m.codomain_dim()));
  }
  return out;
}

CoefficientFamily CoefficientFamily::from_stacked(const GFusionFrame& frame,
                                                  const Vector& v) {
  if (v.size() != frame.total_codomain_dim()) {
    throw ShapeError("stacked coefficient vector has length " +
                     std::to_string(v.size()) + ", expected " +
                     std::to_string(frame.total_codomain_dim()));
  }
  CoefficientFamily out;
  Index at = 0;
  for (const auto& m : frame.members) {
    out.blocks.push_back(v.segment(at, m.codomain_dim()));
    at += m.codomain_dim();
  }
  return out;
}

void validate(const GFusionFrame& frame, const Tolerance& tol) {
  if (frame.ambient_dim < 1) {
    throw ValidationError(-1, "ambient_dim must be positive, got " +
                                  std::to_string(frame.ambient_dim));
  }
  if (frame.members.empty()) {
    throw ValidationError(-1, "frame must have at least one member");
  }
  const Index n = frame.ambient_dim;
  for (Index j = 0; j < frame.member_count(); ++j) {
    const Member& mem = frame.members[j];
    const std::string at = "members[" + std::to_string(j) + "]";
    if (!(mem.weight > 0.0) || !std::isfinite(mem.weight)) {
      throw ValidationError(j, at + ".weight must be a positive finite number");
    }
    if (mem.basis.rows() != n) {
      throw ValidationError(j, at + ".subspace has " + std::to_string(mem.basis.rows()) +
                                   " rows, ambient dimension is " + std::to_string(n));
    }
    if (mem.basis.cols() > n) {
      throw ValidationError(j, at + ".subspace has more columns than the ambient dimension");
    }
    if (!mem.basis.allFinite()) {
      throw ValidationError(j, at + ".subspace has a non-finite entry");
    }
    if (mem.basis.cols() > 0) {
      const Index k = mem.basis.cols();
      const double residual = (mem.basis.adjoint() * mem.basis - Matrix::Identity(k, k))
                                  .cwiseAbs()
                                  .maxCoeff();
      if (!(residual <= tol.residual_abs)) {
        throw ValidationError(j, at + ".subspace basis is not orthonormal (residual " +
                                     std::to_string(residual) + ")");
      }
    }
    if (mem.op.rows() < 1) {
      throw ValidationError(j, at + ".operator must have at least one row");
    }
    if (mem.op.cols() != n) {
      throw ValidationError(j, at + ".operator has " + std::to_string(mem.op.cols()) +
                                   " columns, ambient dimension is " + std::to_string(n));
    }
    if (!mem.op.allFinite()) {
      throw ValidationError(j, at + ".operator has a non-finite entry");
    }
  }
}

namespace {

ordered_json complex_to_json(const Complex& z) {
  return ordered_json::array({z.real(), z.imag()});
}

Complex complex_from_json(const ordered_json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(path, "expected a two-element [re, im] array of numbers");
  }
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw ParseError(path, "non-finite number");
  }
  return Complex{re, im};
}

// Reads an array of complex vectors, each entry_len long (-1 skips the
// length check). The array itself may be empty.
std::vector<Vector> complex_vectors_from_json(const ordered_json& j, Index entry_len,
                                              const std::string& path) {
  if (!j.is_array()) {
    throw ParseError(path, "expected an array");
  }
  std::vector<Vector> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string vpath = path + "[" + std::to_string(i) + "]";
    const auto& jv = j[i];
    if (!jv.is_array()) {
      throw ParseError(vpath, "expected an array of complex entries");
    }
    if (entry_len >= 0 && static_cast<Index>(jv.size()) != entry_len) {
      throw ParseError(vpath, "expected " + std::to_string(entry_len) +
                                  " complex entries, got " + std::to_string(jv.size()));
    }
    Vector v(static_cast<Index>(jv.size()));
    for (std::size_t e = 0; e < jv.size(); ++e) {
      v[static_cast<Index>(e)] =
          complex_from_json(jv[e], vpath + "[" + std::to_string(e) + "]");
    }
    out.push_back(std::move(v));
  }
  return out;
}

ordered_json parse_document(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  return doc;
}

const ordered_json& require_field(const ordered_json& obj, const char* key,
                                  const std::string& path) {
  if (!obj.is_object()) {
    throw ParseError(path.empty() ? "document" : path, "expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  }
  return *it;
}

}  // namespace

GFusionFrame parse_frame(const std::string& text) {
  const ordered_json doc = parse_document(text);

  const auto& jdim = require_field(doc, "ambient_dim", "");
  if (!jdim.is_number_integer() || jdim.get<long long>() < 1) {
    throw ParseError("ambient_dim", "expected a positive integer");
  }
  GFusionFrame frame;
  frame.ambient_dim = jdim.get<Index>();

  const auto& jmembers = require_field(doc, "members", "");
  if (!jmembers.is_array() || jmembers.empty()) {
    throw ParseError("members", "expected a non-empty array");
  }
  for (std::size_t j = 0; j < jmembers.size(); ++j) {
    const std::string at = "members[" + std::to_string(j) + "]";
    const auto& jm = jmembers[j];
    Member mem;

    const auto& jweight = require_field(jm, "weight", at);
    if (!jweight.is_number()) {
      throw ParseError(at + ".weight", "expected a number");
    }
    mem.weight = jweight.get<double>();

    const auto columns = complex_vectors_from_json(require_field(jm, "subspace", at),
                                                   frame.ambient_dim, at + ".subspace");
    mem.basis = Matrix(frame.ambient_dim, static_cast<Index>(columns.size()));
    for (Index c = 0; c < static_cast<Index>(columns.size()); ++c) {
      mem.basis.col(c) = columns[static_cast<std::size_t>(c)];
    }

    const auto rows = complex_vectors_from_json(require_field(jm, "operator", at),
                                                frame.ambient_dim, at + ".operator");
    if (rows.empty()) {
      throw ParseError(at + ".operator", "expected at least one row");
    }
    mem.op = Matrix(static_cast<Index>(rows.size()), frame.ambient_dim);
    for (Index r = 0; r < static_cast<Index>(rows.size()); ++r) {
      mem.op.row(r) = rows[static_cast<std::size_t>(r)].transpose();
    }

    frame.members.push_back(std::move(mem));
  }

  validate(frame);
  return frame;
}

std::string serialize_frame(const GFusionFrame& frame) {
  ordered_json doc;
  doc["ambient_dim"] = frame.ambient_dim;
  ordered_json members = ordered_json::array();
  for (const auto& mem : frame.members) {
    ordered_json jm;
    jm["weight"] = mem.weight;
    ordered_json cols = ordered_json::array();
    for (Index c = 0; c < mem.basis.cols(); ++c) {
      ordered_json col = ordered_json::array();
      for (Index r = 0; r < mem.basis.rows(); ++r) {
        col.push_back(complex_to_json(mem.basis(r, c)));
      }
      cols.push_back(std::move(col));
    }
    jm["subspace"] = std::move(cols);
    ordered_json rows = ordered_json::array();
    for (Index r = 0; r < mem.op.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (Index c = 0; c < mem.op.cols(); ++c) {
        row.push_back(complex_to_json(mem.op(r, c)));
      }
      rows.push_back(std::move(row));
    }
    jm["operator"] = std::move(rows);
    members.push_back(std::move(jm));
  }
  doc["members"] = std::move(members);
  return doc.dump(2) + "\n";
}

CoefficientFamily parse_coefficients(const std::string& text) {
  const ordered_json doc = parse_document(text);
  const auto& jblocks = require_field(doc, "blocks", "");
  CoefficientFamily out;
  out.blocks = complex_vectors_from_json(jblocks, -1, "blocks");
  return out;
}

std::string serialize_coefficients(const CoefficientFamily& coeffs) {
  ordered_json doc;
  ordered_json blocks = ordered_json::array();
  for (const auto& b : coeffs.blocks) {
    ordered_json jb = ordered_json::array();
    for (Index i = 0; i < b.size(); ++i) {
      jb.push_back(complex_to_json(b[i]));
    }
    blocks.push_back(std::move(jb));
  }
  doc["blocks"] = std::move(blocks);
  return doc.dump(2) + "\n";
}

Matrix parse_matrix(const std::string& text) {
  const ordered_json doc = parse_document(text);
  if (!doc.is_array() || doc.empty()) {
    throw ParseError("", "expected a non-empty array of matrix rows");
  }
  const auto rows = complex_vectors_from_json(doc, -1, "");
  const Index cols = rows.front().size();
  Matrix m(static_cast<Index>(rows.size()), cols);
  for (Index r = 0; r < static_cast<Index>(rows.size()); ++r) {
    if (rows[static_cast<std::size_t>(r)].size() != cols) {
      throw ParseError("[" + std::to_string(r) + "]", "ragged row lengths");
    }
    m.row(r) = rows[static_cast<std::size_t>(r)].transpose();
  }
  return m;
}

std::string serialize_matrix(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

}  // namespace gff
