// Command line surface: generate, classify, decompose, enumerate fixed
// points, verify membership and measure Caratheodory distances, all over
// the JSON encodings defined in json_io. Output is deterministic: same
// flags and seed give byte-identical bytes.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cartan/generate.hpp"
#include "cartan/json_io.hpp"

namespace {

using cartan::Error;
using cartan::ErrorCode;
using cartan::GIsometry;
using cartan::Json;
using cartan::Tolerances;

struct CliConfig {
  Tolerances tol;
  std::uint64_t seed = 0;
  int max_k = 20;
  bool pretty = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path);
  if (!file) {
    throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void emit(const Json& j, const CliConfig& config) {
  std::cout << cartan::dump_json(j, config.pretty);
}

// Parses and membership-checks an isometry, reporting the six relation
// residuals when the check fails.
GIsometry load_isometry(const std::string& path, const CliConfig& config) {
  auto parts = cartan::isometry_parts_from_json(
      cartan::parse_json(read_input(path)));
  auto report = cartan::verify_relations(parts.matrix, parts.m, parts.n);
  if (!report.member(config.tol.eq_tol)) {
    Json error{{"error",
                Json{{"code", "NotAMember"},
                     {"message", "relation residuals exceed tolerance"},
                     {"residuals", cartan::relations_to_json(report)}}}};
    emit(error, config);
    std::exit(3);
  }
  return GIsometry(parts.matrix, parts.m, parts.n, config.tol);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::SquareDims:
    case ErrorCode::NotStrictContraction:
    case ErrorCode::NotUnitary:
    case ErrorCode::NotHermitian:
    case ErrorCode::ZeroVector:
    case ErrorCode::NotABasis:
      return 2;
    case ErrorCode::NotAMember:
      return 3;
    case ErrorCode::KTooLarge:
      return 4;
    default:
      return 5;
  }
}

GIsometry generate(const std::string& kind, Eigen::Index m, Eigen::Index n,
                   Eigen::Index rank, double target_norm,
                   const CliConfig& config) {
  if (rank < 0) rank = std::min(m, n);
  if (kind == "random") {
    return cartan::make_random(m, n, config.seed, target_norm, config.tol);
  }
  if (kind == "unitary") {
    return cartan::make_unitary(m, n, config.seed, config.tol);
  }
  if (kind == "selfadjoint") {
    return cartan::make_selfadjoint(m, n, config.seed, rank, target_norm,
                                    config.tol);
  }
  cartan::NormalOptions opts;
  opts.block_sizes.assign(static_cast<std::size_t>(rank), 1);
  opts.seed = config.seed;
  opts.sigma_max = target_norm;
  return cartan::make_normal(m, n, opts, config.tol);
}

int run(int argc, char** argv) {
  CLI::App app{"isometries of the matrix unit ball"};
  app.require_subcommand(1);
  app.fallthrough();  // lets the global flags appear after the subcommand

  CliConfig config;
  double tol_override = -1.0;
  std::string output = "json";
  app.add_option("--tol", tol_override, "override eq_tol");
  app.add_option("--seed", config.seed, "generator seed");
  app.add_option("--max-k", config.max_k, "fixed-point enumeration guard")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--output", output, "output style")
      ->check(CLI::IsMember({"json", "pretty"}));

  auto* gen = app.add_subcommand("gen", "generate an element of the group");
  std::string kind;
  Eigen::Index gen_m = 0, gen_n = 0, gen_rank = -1;
  double target_norm = 0.6;
  gen->add_option("kind", kind, "element class")
      ->required()
      ->check(CLI::IsMember({"random", "normal", "unitary", "selfadjoint"}));
  gen->add_option("m", gen_m, "dim H")->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("n", gen_n, "dim K")->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--rank", gen_rank, "dim(ran C) for normal kinds");
  gen->add_option("--target-norm", target_norm, "norm of the center A");

  std::string input_path;
  auto* classify_cmd = app.add_subcommand("classify", "classify an isometry");
  classify_cmd->add_option("input", input_path, "file or '-'")->required();
  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "spectral decomposition and spectrum");
  spectrum_cmd->add_option("input", input_path, "file or '-'")->required();
  auto* fixpoints_cmd =
      app.add_subcommand("fixpoints", "generic fixed points and detection");
  fixpoints_cmd->add_option("input", input_path, "file or '-'")->required();
  auto* verify_cmd = app.add_subcommand("verify", "membership residuals");
  verify_cmd->add_option("input", input_path, "file or '-'")->required();

  std::string lhs_path, rhs_path;
  auto* distance_cmd =
      app.add_subcommand("distance", "Caratheodory distance of two points");
  distance_cmd->add_option("a1", lhs_path, "matrix file or '-'")->required();
  distance_cmd->add_option("a2", rhs_path, "matrix file")->required();
  auto* act_cmd = app.add_subcommand("act", "apply an isometry to a point");
  act_cmd->add_option("isometry", lhs_path, "isometry file or '-'")->required();
  act_cmd->add_option("point", rhs_path, "matrix file")->required();

  CLI11_PARSE(app, argc, argv);
  if (tol_override > 0.0) config.tol.eq_tol = tol_override;
  config.pretty = output == "pretty";

  if (gen->parsed()) {
    emit(cartan::isometry_to_json(
             generate(kind, gen_m, gen_n, gen_rank, target_norm, config)),
         config);
    return 0;
  }
  if (classify_cmd->parsed()) {
    GIsometry t = load_isometry(input_path, config);
    emit(cartan::classification_to_json(cartan::classify(t, config.tol)),
         config);
    return 0;
  }
  if (spectrum_cmd->parsed()) {
    GIsometry t = load_isometry(input_path, config);
    auto factored = cartan::factorize(t, config.tol);
    auto decomposition = cartan::decompose(factored, config.tol);
    auto classification = cartan::classify(t, config.tol);
    Json out{{"decomposition", cartan::decomposition_to_json(decomposition)},
             {"factors", cartan::factored_to_json(factored)},
             {"non_unitary_normal", classification.is_non_unitary_normal}};
    if (classification.is_non_unitary_normal) {
      out["spectrum"] =
          cartan::spectrum_to_json(cartan::spectrum_normal(t, config.tol));
    }
    emit(out, config);
    return 0;
  }
  if (fixpoints_cmd->parsed()) {
    GIsometry t = load_isometry(input_path, config);
    auto detection = cartan::detect_generic(t, config.tol);
    Json out{{"k", detection.k},
             {"count", detection.count},
             {"detection", cartan::detection_to_json(detection)},
             {"points", Json::array()},
             {"extra_points", Json::array()}};
    if (detection.conclusion ==
        cartan::DetectionConclusion::NonUnitaryNormal) {
      if (detection.k > config.max_k) {
        throw Error(ErrorCode::KTooLarge,
                    "k = " + std::to_string(detection.k) + " exceeds --max-k");
      }
      for (const auto& point : cartan::enumerate_generic(t, config.tol)) {
        out["points"].push_back(cartan::generic_point_to_json(point));
      }
      for (const auto& extra :
           cartan::common_eigen_fixed_points(t, config.tol)) {
        out["extra_points"].push_back(cartan::extra_point_to_json(extra));
      }
    }
    emit(out, config);
    return 0;
  }
  if (verify_cmd->parsed()) {
    auto parts = cartan::isometry_parts_from_json(
        cartan::parse_json(read_input(input_path)));
    auto report = cartan::verify_relations(parts.matrix, parts.m, parts.n);
    emit(Json{{"m", parts.m},
              {"n", parts.n},
              {"member", report.member(config.tol.eq_tol)},
              {"max_residual", report.max_residual()},
              {"residuals", cartan::relations_to_json(report)}},
         config);
    return 0;
  }
  if (distance_cmd->parsed()) {
    cartan::Contraction a1(
        cartan::matrix_from_json(cartan::parse_json(read_input(lhs_path))),
        true, config.tol);
    cartan::Contraction a2(
        cartan::matrix_from_json(cartan::parse_json(read_input(rhs_path))),
        true, config.tol);
    emit(Json{{"distance", cartan::caratheodory_distance(a1, a2, config.tol)}},
         config);
    return 0;
  }
  if (act_cmd->parsed()) {
    GIsometry t = load_isometry(lhs_path, config);
    cartan::Contraction point(
        cartan::matrix_from_json(cartan::parse_json(read_input(rhs_path))),
        false, config.tol);
    emit(cartan::matrix_to_json(cartan::act(t, point, config.tol).matrix()),
         config);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    Json error{{"error", Json{{"code", cartan::to_string(e.code())},
                              {"message", e.what()}}}};
    std::cout << cartan::dump_json(error, false);
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    Json error{{"error", Json{{"code", "Unexpected"}, {"message", e.what()}}}};
    std::cout << cartan::dump_json(error, false);
    return 5;
  }
}
