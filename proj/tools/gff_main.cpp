#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gff/engine.hpp"
#include "gff/errors.hpp"
#include "gff/generators.hpp"

namespace {

using gff::Index;
using gff::Tolerance;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNotAFrame = 2;
constexpr int kExitConditioning = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gff::Error("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gff::Error("cannot write file: " + path);
  out << content;
}

// FNV-1a 64-bit content hash, printed as 16 hex digits.
std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return std::string(buf);
}

std::string format_number(double v, bool scientific) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), scientific ? "%.11e" : "%.12g", v);
  return std::string(buf);
}

struct Report {
  std::string command;
  std::string input_digest;
  Tolerance tol;
  ordered_json results = ordered_json::object();
  std::set<std::string> scientific_keys;  // residuals, printed as %.11e in text mode
};

void print_text_value(const std::string& key, const ordered_json& value,
                      const Report& report) {
  const bool sci = report.scientific_keys.count(key) > 0;
  if (value.is_boolean()) {
    std::cout << (value.get<bool>() ? "true" : "false");
  } else if (value.is_number_integer() || value.is_number_unsigned()) {
    std::cout << value.dump();
  } else if (value.is_number_float()) {
    std::cout << format_number(value.get<double>(), sci);
  } else if (value.is_null()) {
    std::cout << "inf";
  } else if (value.is_array()) {
    std::cout << "[";
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i) std::cout << ", ";
      print_text_value(key, value[i], report);
    }
    std::cout << "]";
  } else {
    std::cout << value.dump();
  }
}

void print_report(const Report& report, bool json_mode) {
  if (json_mode) {
    ordered_json doc;
    doc["command"] = report.command;
    doc["input_digest"] = report.input_digest;
    doc["tolerance"] =
        ordered_json{{"rank_rel", report.tol.rank_rel},
                     {"residual_abs", report.tol.residual_abs}};
    doc["results"] = report.results;
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::cout << "command: " << report.command << "\n";
  std::cout << "input_digest: " << report.input_digest << "\n";
  std::cout << "tol_rank_rel: " << format_number(report.tol.rank_rel, false) << "\n";
  std::cout << "tol_residual_abs: " << format_number(report.tol.residual_abs, false)
            << "\n";
  for (const auto& [key, value] : report.results.items()) {
    std::cout << key << ": ";
    print_text_value(key, value, report);
    std::cout << "\n";
  }
}

// nlohmann serializes non-finite doubles as null; text mode prints "inf".
ordered_json json_number(double v) {
  return ordered_json(v);
}

int cmd_analyze(const std::string& path, const Tolerance& tol, bool json_mode) {
  const std::string text = read_file(path);
  const gff::GFusionFrame frame = gff::parse_frame(text);
  const gff::FrameReport bounds = gff::frame_bounds(frame, tol);
  const gff::RangeSpaceReport range = gff::range_space_bounds(frame, tol);

  Report report{"analyze", digest(text), tol};
  report.results["ambient_dim"] = frame.ambient_dim;
  report.results["member_count"] = frame.member_count();
  report.results["lower_bound"] = bounds.bounds.lower;
  report.results["upper_bound"] = bounds.bounds.upper;
  report.results["frame_operator_condition"] =
      json_number(bounds.frame_operator_condition);
  report.results["is_bessel"] = bounds.is_bessel;
  report.results["is_frame"] = bounds.is_frame;
  report.results["is_parseval"] = bounds.is_parseval;
  report.results["is_gf_complete"] = bounds.is_gf_complete;
  report.results["sequence_lower_bound"] = range.bounds.lower;
  report.results["sequence_upper_bound"] = range.bounds.upper;
  report.results["sequence_dim"] = range.dim;
  print_report(report, json_mode);
  return bounds.is_frame ? kExitOk : kExitNotAFrame;
}

int cmd_dual(const std::string& path, const std::string& out, const Tolerance& tol,
             bool json_mode) {
  const std::string text = read_file(path);
  const gff::GFusionFrame frame = gff::parse_frame(text);
  const gff::DualFrame dual = gff::canonical_dual(frame, tol);
  write_file(out, gff::serialize_frame(dual.frame));

  const gff::Matrix s_dual = gff::frame_operator(dual.frame);
  const double s_residual = gff::operator_norm(s_dual - dual.s_inverse);
  const Index n = frame.ambient_dim;
  const gff::Matrix mixed = gff::assembled_synthesis(frame) *
                            gff::assembled_analysis(dual.frame);
  const double mixed_residual =
      gff::operator_norm(mixed - gff::Matrix::Identity(n, n));
  const gff::FrameReport dual_bounds = gff::frame_bounds(dual.frame, tol);

  Report report{"dual", digest(text), tol};
  report.results["dual_lower_bound"] = dual_bounds.bounds.lower;
  report.results["dual_upper_bound"] = dual_bounds.bounds.upper;
  report.results["s_inverse_residual"] = s_residual;
  report.results["mixed_identity_residual"] = mixed_residual;
  report.scientific_keys = {"s_inverse_residual", "mixed_identity_residual"};
  print_report(report, json_mode);
  return kExitOk;
}

int cmd_parsevalize(const std::string& path, const std::string& out,
                    const Tolerance& tol, bool json_mode) {
  const std::string text = read_file(path);
  const gff::GFusionFrame frame = gff::parse_frame(text);
  const gff::GFusionFrame tight = gff::parsevalize(frame, tol);
  write_file(out, gff::serialize_frame(tight));

  const Index n = frame.ambient_dim;
  const double identity_residual = gff::operator_norm(
      gff::frame_operator(tight) - gff::Matrix::Identity(n, n));
  const gff::FrameReport tight_bounds = gff::frame_bounds(tight, tol);

  Report report{"parsevalize", digest(text), tol};
  report.results["lower_bound"] = tight_bounds.bounds.lower;
  report.results["upper_bound"] = tight_bounds.bounds.upper;
  report.results["is_parseval"] = tight_bounds.is_parseval;
  report.results["identity_residual"] = identity_residual;
  report.scientific_keys = {"identity_residual"};
  print_report(report, json_mode);
  return kExitOk;
}

int cmd_remove(const std::string& path, Index index, const Tolerance& tol,
               bool json_mode) {
  const std::string text = read_file(path);
  const gff::GFusionFrame frame = gff::parse_frame(text);
  const gff::DeletionReport del = gff::delete_member(frame, index, tol);
  const bool remaining_is_frame =
      del.remaining_bounds.lower > tol.rank_rel * del.remaining_bounds.upper;

  Report report{"remove", digest(text), tol};
  report.results["removed_index"] = del.removed_index;
  report.results["cond1_holds"] = del.cond1_holds;
  report.results["cond2_holds"] = del.cond2_holds;
  report.results["cond3_holds"] = del.cond3_holds;
  report.results["remaining_lower_bound"] = del.remaining_bounds.lower;
  report.results["remaining_upper_bound"] = del.remaining_bounds.upper;
  report.results["remaining_gf_complete"] = del.remaining_gf_complete;
  report.results["remaining_is_frame"] = remaining_is_frame;
  print_report(report, json_mode);
  return remaining_is_frame ? kExitOk : kExitNotAFrame;
}

int cmd_transform(const std::string& path, const std::string& operator_path,
                  const std::string& out, const Tolerance& tol, bool json_mode) {
  const std::string text = read_file(path);
  const gff::GFusionFrame frame = gff::parse_frame(text);
  const gff::Matrix u = gff::parse_matrix(read_file(operator_path));
  const auto [image, diag] = gff::transform_frame(frame, u, tol);
  write_file(out, gff::serialize_frame(image));

  Report report{"transform", digest(text), tol};
  report.results["u_rank"] = diag.u_rank;
  report.results["u_singular_values"] = diag.u_singular_values;
  report.results["sequence_lower_bound"] = diag.range.bounds.lower;
  report.results["sequence_upper_bound"] = diag.range.bounds.upper;
  report.results["sequence_dim"] = diag.range.dim;
  report.results["is_frame_sequence"] = diag.range.is_frame_sequence;
  report.results["synthesis_identity_residual"] = diag.synthesis_identity_residual;
  report.scientific_keys = {"synthesis_identity_residual"};
  print_report(report, json_mode);
  return kExitOk;
}

int cmd_generate(const gff::GeneratorSpec& spec, const std::string& spec_digest,
                 const std::string& out, const Tolerance& tol, bool json_mode) {
  const gff::GFusionFrame frame = gff::random_frame(spec, tol);
  write_file(out, gff::serialize_frame(frame));
  const gff::FrameReport bounds = gff::frame_bounds(frame, tol);

  Report report{"generate", spec_digest, tol};
  report.results["seed"] = spec.seed;
  report.results["ambient_dim"] = frame.ambient_dim;
  report.results["member_count"] = frame.member_count();
  report.results["lower_bound"] = bounds.bounds.lower;
  report.results["upper_bound"] = bounds.bounds.upper;
  report.results["is_frame"] = bounds.is_frame;
  print_report(report, json_mode);
  return kExitOk;
}

std::vector<Index> parse_dim_list(const std::string& text) {
  std::vector<Index> dims;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    dims.push_back(static_cast<Index>(std::stoll(item)));
  }
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator calculus for generalized fusion frames on C^n"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json_mode = false;
  double tol_rank = Tolerance::standard().rank_rel;
  double tol_resid = Tolerance::standard().residual_abs;
  std::string out_path;
  app.add_flag("--json", json_mode, "emit a machine-readable JSON report");
  app.add_option("--tol-rank", tol_rank, "relative singular-value cutoff");
  app.add_option("--tol-resid", tol_resid, "absolute residual bound");
  app.add_option("--out", out_path, "output path for commands that write files");

  std::string frame_path;
  std::string operator_path;
  std::string spec_path;
  Index remove_index = 0;

  auto* analyze = app.add_subcommand("analyze", "frame bounds and diagnostics");
  analyze->add_option("path", frame_path, "frame file")->required();

  auto* dual = app.add_subcommand("dual", "write the canonical dual frame");
  dual->add_option("path", frame_path, "frame file")->required();

  auto* parseval = app.add_subcommand("parsevalize", "write the Parseval rescaling");
  parseval->add_option("path", frame_path, "frame file")->required();

  auto* remove = app.add_subcommand("remove", "member deletion analysis");
  remove->add_option("path", frame_path, "frame file")->required();
  remove->add_option("--index", remove_index, "member index to remove")->required();

  auto* transform = app.add_subcommand("transform", "apply an operator to the frame");
  transform->add_option("path", frame_path, "frame file")->required();
  transform->add_option("--operator", operator_path, "matrix file")->required();

  auto* generate = app.add_subcommand("generate", "deterministic frame instances");
  generate->add_option("--spec", spec_path, "generator spec file");
  std::uint64_t seed = 0;
  Index gen_dim = 0;
  Index gen_members = 0;
  std::string subspace_dims_text;
  std::string codomain_dims_text;
  double weight_lo = 1.0;
  double weight_hi = 1.0;
  bool ensure_frame = false;
  generate->add_option("--seed", seed, "generator seed");
  generate->add_option("--dim", gen_dim, "ambient dimension");
  generate->add_option("--members", gen_members, "member count");
  generate->add_option("--subspace-dims", subspace_dims_text, "comma-separated k_j");
  generate->add_option("--codomain-dims", codomain_dims_text, "comma-separated m_j");
  generate->add_option("--weight-lo", weight_lo, "weight range lower end");
  generate->add_option("--weight-hi", weight_hi, "weight range upper end");
  generate->add_flag("--ensure-frame", ensure_frame, "retry until the draw is a frame");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (!(tol_rank > 0.0 && tol_rank < 1.0 && tol_resid > 0.0 && tol_resid < 1.0)) {
      throw gff::Error("tolerances must lie strictly between 0 and 1");
    }
    const Tolerance tol{tol_rank, tol_resid};
    const auto require_out = [&out_path]() {
      if (out_path.empty()) throw gff::Error("--out is required for this command");
    };

    if (analyze->parsed()) {
      return cmd_analyze(frame_path, tol, json_mode);
    }
    if (dual->parsed()) {
      require_out();
      return cmd_dual(frame_path, out_path, tol, json_mode);
    }
    if (parseval->parsed()) {
      require_out();
      return cmd_parsevalize(frame_path, out_path, tol, json_mode);
    }
    if (remove->parsed()) {
      return cmd_remove(frame_path, remove_index, tol, json_mode);
    }
    if (transform->parsed()) {
      require_out();
      return cmd_transform(frame_path, operator_path, out_path, tol, json_mode);
    }
    if (generate->parsed()) {
      require_out();
      gff::GeneratorSpec spec;
      std::string spec_digest;
      if (!spec_path.empty()) {
        const std::string text = read_file(spec_path);
        spec = gff::parse_generator_spec(text);
        spec_digest = digest(text);
      } else {
        spec.seed = seed;
        spec.ambient_dim = gen_dim;
        spec.member_count = gen_members;
        spec.subspace_dims = parse_dim_list(subspace_dims_text);
        spec.codomain_dims = parse_dim_list(codomain_dims_text);
        spec.weight_range = {weight_lo, weight_hi};
        spec.ensure_frame = ensure_frame;
        gff::validate(spec);
        nlohmann::json canon{{"seed", spec.seed},
                             {"ambient_dim", spec.ambient_dim},
                             {"member_count", spec.member_count},
                             {"subspace_dims", spec.subspace_dims},
                             {"codomain_dims", spec.codomain_dims},
                             {"weight_range", {weight_lo, weight_hi}},
                             {"ensure_frame", spec.ensure_frame}};
        spec_digest = digest(canon.dump());
      }
      return cmd_generate(spec, spec_digest, out_path, tol, json_mode);
    }
    throw gff::Error("no command selected");
  } catch (const gff::NotAFrameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotAFrame;
  } catch (const gff::ConditioningError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConditioning;
  } catch (const gff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
