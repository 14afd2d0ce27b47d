// Command-line surface: steering analysis of ensembles, correlator tables
// and the built-in scenarios, with JSON on stdout.
//
// Exit codes: 0 analysis completed, 2 invalid input, 3 solver undecided.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "steermap/json_io.hpp"
#include "steermap/scenarios.hpp"
#include "steermap/separability.hpp"

namespace {

using namespace steermap;
using nlohmann::json;

struct Config {
  Tolerances tol{};
  LhsOptions lhs{};
};

// Key-value config file: one `key = value` per line, '#' starts a comment.
// Known keys: tol, detection, near_boundary, no_signalling, psd,
// max_iterations, bisection_depth.
void apply_config_file(Config& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string key, eq, value;
    if (!(ss >> key)) continue;
    if (!(ss >> eq >> value) || eq != "=")
      throw ValidationError("config line " + std::to_string(line_no) +
                            ": expected `key = value`");
    try {
      if (key == "tol") cfg.lhs.tol = std::stod(value);
      else if (key == "detection") cfg.tol.detection = std::stod(value);
      else if (key == "near_boundary") cfg.tol.near_boundary = std::stod(value);
      else if (key == "no_signalling") cfg.tol.no_signalling = std::stod(value);
      else if (key == "psd") cfg.tol.psd = std::stod(value);
      else if (key == "max_iterations") cfg.lhs.max_iterations = std::stoi(value);
      else if (key == "bisection_depth") cfg.lhs.bisection_depth = std::stoi(value);
      else throw ValidationError("config: unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw ValidationError("config: cannot parse value for '" + key + "'");
    }
  }
}

void apply_environment(Config& cfg) {
  if (const char* env = std::getenv("STEERMAP_TOL")) {
    try {
      const double v = std::stod(env);
      cfg.lhs.tol = v;
      cfg.tol.detection = v;
    } catch (const std::invalid_argument&) {
      throw ValidationError("STEERMAP_TOL is not a number");
    }
  }
}

ZSet resolve_zset(const std::string& spec) {
  if (std::filesystem::exists(spec))
    return io::zset_from_json(io::load_json_file(spec));
  return named_zset(spec);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steermap: steering certification via separability maps and "
               "dimension-bounded determinant tests"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");

  // check-lhs
  auto* check = app.add_subcommand("check-lhs", "exact steerability decision for an ensemble");
  std::string check_ensemble;
  std::optional<double> check_tol;
  check->add_option("--ensemble", check_ensemble, "ensemble JSON file")->required();
  check->add_option("--tol", check_tol, "decision tolerance (>= 1e-8)");

  // map
  auto* map_cmd = app.add_subcommand("map", "separability criterion through a steering map");
  std::string map_ensemble, map_zset = "cube", map_criterion;
  map_cmd->add_option("--ensemble", map_ensemble, "ensemble JSON file")->required();
  map_cmd->add_option("--zset", map_zset, "built-in name (cube, mub:<d>) or JSON file");
  map_cmd->add_option("--criterion", map_criterion, "ppt | ccnr | swap")->required();

  // dimbound
  auto* dim_cmd = app.add_subcommand("dimbound", "determinant criterion on a correlator table");
  std::string dim_table;
  std::size_t dim_da = 2, dim_db = 2;
  bool no_identity_span = false;
  dim_cmd->add_option("--correlators", dim_table, "correlator table JSON file")->required();
  dim_cmd->add_option("--dA", dim_da, "map-side dimension (default 2)");
  dim_cmd->add_option("--dB", dim_db, "characterized-side dimension bound (default 2)");
  dim_cmd->add_flag("--no-identity-span", no_identity_span,
                    "operator basis does not span the identity");

  // vienna
  auto* vienna_cmd = app.add_subcommand("vienna", "noisy singlet with loss, full report");
  double vp = 1.0, vlambda = 1.0;
  long shots = 0;
  std::uint64_t seed = 1;
  vienna_cmd->add_option("--p", vp, "transmission probability")->required();
  vienna_cmd->add_option("--lambda", vlambda, "visibility")->required();
  vienna_cmd->add_option("--sample", shots, "also sample N shots per setting pair");
  vienna_cmd->add_option("--seed", seed, "sampling seed");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "threshold sweep over a scenario family");
  std::string scenario = "werner";
  int settings = 3;
  std::vector<std::string> criteria{"ppt", "lhs", "dimbound"};
  double from = 0.0, to = 1.0;
  int grid_points = 50;
  sweep_cmd->add_option("--scenario", scenario, "scenario family (werner)");
  sweep_cmd->add_option("--settings", settings, "2 or 3");
  sweep_cmd->add_option("--criteria", criteria, "subset of ppt ccnr swap lhs dimbound")
      ->delimiter(',');
  sweep_cmd->add_option("--from", from, "grid start")->required();
  sweep_cmd->add_option("--to", to, "grid end")->required();
  sweep_cmd->add_option("--points", grid_points, "grid size (default 50)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Config cfg;
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    apply_environment(cfg);
    cfg.lhs.tolerances = cfg.tol;

    if (*check) {
      if (check_tol) cfg.lhs.tol = *check_tol;
      const auto e = io::ensemble_from_json(io::load_json_file(check_ensemble));
      const auto report = validate(e, cfg.tol);
      if (!report.valid()) {
        emit(json{{"error", "ensemble failed validation"},
                  {"validation", io::validation_to_json(report)}});
        return 2;
      }
      const auto verdict = decide(e, cfg.lhs);
      emit(io::verdict_to_json(verdict));
      return verdict.outcome == LhsOutcome::undecided ? 3 : 0;
    }

    if (*map_cmd) {
      const auto e = io::ensemble_from_json(io::load_json_file(map_ensemble));
      const auto z = resolve_zset(map_zset);
      CriterionVerdict verdict;
      if (map_criterion == "swap") {
        verdict = swap_witness(z, e, cfg.tol);
      } else if (map_criterion == "ppt" || map_criterion == "ccnr") {
        const auto sigma = build_sigma(z, e, cfg.tol);
        verdict = map_criterion == "ppt" ? ppt(sigma, cfg.tol) : ccnr(sigma, cfg.tol);
      } else {
        throw ValidationError("unknown criterion '" + map_criterion +
                              "' (expected ppt, ccnr or swap)");
      }
      emit(io::verdict_to_json(verdict));
      return 0;
    }

    if (*dim_cmd) {
      const auto table = io::correlators_from_json(io::load_json_file(dim_table));
      const auto d = data_matrix(table);
      emit(io::verdict_to_json(
          dim_bound_verdict(d, dim_da, dim_db, !no_identity_span, cfg.tol)));
      return 0;
    }

    if (*vienna_cmd) {
      const NoisySingletModel model(vp, vlambda);
      auto report = vienna_report(model, cfg.lhs, cfg.tol);
      if (shots > 0) {
        const auto sampled = sample_vienna_correlators(model, shots, seed);
        report.results["sampled"] =
            json{{"shots_per_pair", shots},
                 {"seed", seed},
                 {"correlators", io::correlators_to_json(sampled)},
                 {"dimbound", io::verdict_to_json(dim_bound_verdict(
                                  data_matrix(sampled), 2, 2, true, cfg.tol))}};
      }
      emit(report.to_json());
      return 0;
    }

    if (*sweep_cmd) {
      if (scenario != "werner")
        throw ValidationError("unknown scenario '" + scenario + "' (known: werner)");
      SweepOptions options;
      options.grid_points = grid_points;
      options.lhs = cfg.lhs;
      options.tol = cfg.tol;
      emit(sweep_werner(settings, criteria, from, to, options).to_json());
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
