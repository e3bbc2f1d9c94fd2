#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "spreadspeed/fbsim.hpp"
#include "spreadspeed/phaseplane.hpp"
#include "spreadspeed/semiwave.hpp"

namespace CLI {
class App;
}

namespace spreadspeed::cli {

inline constexpr std::string_view kCommands[] = {"speed",      "profile", "sweep-mu", "sweep-beta",
                                                 "gamma",      "simulate", "verify"};

/// Everything a run depends on. Keys in the config file are the long flag
/// names without the leading dashes.
struct RunConfig {
  std::string command = "speed";
  std::string output_dir = "runs";

  double d = 1.0;
  double beta = 0.5;
  double mu = 1.0;

  std::string reaction = "logistic";  // logistic | lower | upper
  double epsilon = 0.1;

  std::string direction = "right";  // profile only
  double tol = 1e-10;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double departure = 1e-6;
  double profile_delta = 1e-6;
  std::size_t profile_points = 401;
  std::size_t grid_size = 200;
  std::size_t shift_points = 100;
  std::vector<double> mu_grid = {0.1, 0.5, 1.0, 5.0, 25.0, 100.0, 10000.0};
  std::vector<double> beta_grid = {0.1, 0.5, 1.0, 1.5, 1.9};
  std::vector<double> eps_grid = {0.2, 0.1, 0.05, 0.025};

  double h0 = 2.0;
  double amplitude = 0.8;
  std::string shape = "parabolic";  // parabolic | cosine
  std::size_t intervals = 400;
  double dt_max = 0.01;
  double dt_safety = 0.4;
  double horizon = 200.0;
  double record_every = 0.5;

  std::size_t workers = 1;

  bool operator==(const RunConfig&) const = default;

  MediumParams medium() const { return {d, beta, mu}; }
  ReactionTerm term() const;
  SolveOptions solve_options() const;
  SimControls sim_controls() const;
  InitialData initial_data() const;
};

/// Registers every RunConfig field as a flag (and config-file key) on `app`.
void bind_options(CLI::App& app, RunConfig& config);

/// Throws Error(InvalidArgument) naming the first offending field.
void validate(const RunConfig& config);

/// One `key = value` line per field, in a fixed order. Readable back by
/// parse_config and by `--config`.
std::string serialize(const RunConfig& config);

/// The same lines without output-dir: the part of the config that
/// determines results. Hashed for the run directory and embedded in every
/// artifact.
std::string serialize_content(const RunConfig& config);

/// Inverse of serialize. Unknown keys and malformed values throw
/// Error(InvalidArgument).
RunConfig parse_config(const std::string& text);

/// 16 hex digits of FNV-1a over serialize_content(config).
std::string config_hash(const RunConfig& config);

}  // namespace spreadspeed::cli
