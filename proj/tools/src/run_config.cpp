#include "spreadspeed/cli/run_config.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <CLI11.hpp>

#include "spreadspeed/error.hpp"
#include "spreadspeed/sweep.hpp"

namespace spreadspeed::cli {
namespace {

// Single list of fields shared by flag binding, serialization and parsing.
template <class Config, class Fn>
void for_each_field(Config& c, Fn&& fn) {
  fn("command", "one of speed, profile, sweep-mu, sweep-beta, gamma, simulate, verify", c.command);
  fn("output-dir", "parent directory for run directories", c.output_dir);
  fn("d", "diffusion coefficient (> 0)", c.d);
  fn("beta", "advection speed (>= 0)", c.beta);
  fn("mu", "Stefan coefficient (> 0)", c.mu);
  fn("reaction", "logistic, lower or upper", c.reaction);
  fn("epsilon", "perturbation size for lower/upper", c.epsilon);
  fn("direction", "profile frame: right, left or none", c.direction);
  fn("tol", "speed bracket width", c.tol);
  fn("rel-tol", "trajectory relative tolerance", c.rel_tol);
  fn("abs-tol", "trajectory absolute tolerance", c.abs_tol);
  fn("departure", "saddle departure offset, relative to K", c.departure);
  fn("profile-delta", "profile truncation below K", c.profile_delta);
  fn("profile-points", "profile samples", c.profile_points);
  fn("grid-size", "gamma grid points per frame", c.grid_size);
  fn("shift-points", "grid points for the shift-identity check", c.shift_points);
  fn("mu-grid", "ascending mu values for sweep-mu", c.mu_grid);
  fn("beta-grid", "ascending beta values for sweep-beta", c.beta_grid);
  fn("eps-grid", "decreasing epsilon values for the sandwich check", c.eps_grid);
  fn("h0", "initial half-width", c.h0);
  fn("amplitude", "sup of the initial density", c.amplitude);
  fn("shape", "initial profile: parabolic or cosine", c.shape);
  fn("intervals", "simulation grid intervals", c.intervals);
  fn("dt-max", "largest simulation time step", c.dt_max);
  fn("dt-safety", "advective CFL factor", c.dt_safety);
  fn("horizon", "simulation end time", c.horizon);
  fn("record-every", "series output cadence", c.record_every);
  fn("workers", "parallel workers for sweeps", c.workers);
}

std::string quoted(const std::string& s) { return '"' + s + '"'; }

std::string format_value(double x) { return format_number(x); }
std::string format_value(std::size_t x) { return std::to_string(x); }
std::string format_value(const std::string& s) { return quoted(s); }
std::string format_value(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
  return out + "]";
}

[[noreturn]] void reject(const std::string& message) {
  throw Error(ErrorKind::InvalidArgument, message);
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) reject(std::string(name) + " must be positive");
}

std::string serialize_impl(const RunConfig& config, bool with_output_dir) {
  std::string out;
  for_each_field(config, [&](const char* name, const char*, const auto& value) {
    if (!with_output_dir && std::string_view(name) == "output-dir") return;
    out += name;
    out += " = ";
    out += format_value(value);
    out += '\n';
  });
  return out;
}

}  // namespace

ReactionTerm RunConfig::term() const { return reaction_from_name(reaction, epsilon); }

SolveOptions RunConfig::solve_options() const {
  SolveOptions options;
  options.tol = tol;
  options.trajectory.rel_tol = rel_tol;
  options.trajectory.abs_tol = abs_tol;
  options.trajectory.departure = departure;
  return options;
}

SimControls RunConfig::sim_controls() const {
  SimControls controls;
  controls.intervals = intervals;
  controls.dt_max = dt_max;
  controls.dt_safety = dt_safety;
  controls.record_every = record_every;
  return controls;
}

InitialData RunConfig::initial_data() const {
  return initial_shape_from_string(shape) == InitialShape::Cosine
             ? InitialData::cosine(h0, amplitude)
             : InitialData::parabolic(h0, amplitude);
}

void bind_options(CLI::App& app, RunConfig& config) {
  for_each_field(config, [&](const char* name, const char* help, auto& value) {
    if (std::string_view(name) == "command") {
      std::vector<std::string> names(std::begin(kCommands), std::end(kCommands));
      app.add_option("command", value, help)->check(CLI::IsMember(names));
      return;
    }
    auto* option = app.add_option(std::string("--") + name, value, help);
    option->capture_default_str();
    if constexpr (std::is_same_v<std::decay_t<decltype(value)>, std::vector<double>>) {
      option->delimiter(',');
    }
  });
}

void validate(const RunConfig& c) {
  if (std::find(std::begin(kCommands), std::end(kCommands), c.command) == std::end(kCommands)) {
    reject("unknown command '" + c.command + "'");
  }
  if (c.output_dir.empty()) reject("output-dir must not be empty");
  c.medium().validate();
  c.term();
  direction_from_string(c.direction);
  initial_shape_from_string(c.shape);
  if (c.shape == "tabulated") reject("shape must be parabolic or cosine");

  require_positive(c.tol, "tol");
  require_positive(c.rel_tol, "rel-tol");
  require_positive(c.abs_tol, "abs-tol");
  require_positive(c.departure, "departure");
  require_positive(c.profile_delta, "profile-delta");
  if (c.profile_delta >= 0.5 * c.term().capacity()) reject("profile-delta must be well below K");
  if (c.profile_points < 2) reject("profile-points must be at least 2");
  if (c.grid_size < 2) reject("grid-size must be at least 2");
  if (c.shift_points < 2) reject("shift-points must be at least 2");
  for (const auto* grid : {&c.mu_grid, &c.beta_grid, &c.eps_grid}) {
    if (grid->empty()) reject("sweep grids must not be empty");
  }
  for (double x : c.mu_grid) require_positive(x, "mu-grid entries");
  for (double x : c.beta_grid) require_positive(x, "beta-grid entries");
  for (double x : c.eps_grid) {
    if (!(x > 0.0 && x < 1.0)) reject("eps-grid entries must lie in (0, 1)");
  }
  require_positive(c.h0, "h0");
  require_positive(c.amplitude, "amplitude");
  if (c.intervals < 4) reject("intervals must be at least 4");
  require_positive(c.dt_max, "dt-max");
  require_positive(c.dt_safety, "dt-safety");
  require_positive(c.horizon, "horizon");
  require_positive(c.record_every, "record-every");
  if (c.workers < 1) reject("workers must be at least 1");
}

std::string serialize(const RunConfig& config) { return serialize_impl(config, true); }

std::string serialize_content(const RunConfig& config) { return serialize_impl(config, false); }

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  CLI::App app;
  bind_options(app, config);
  app.allow_config_extras(false);
  std::istringstream in(text);
  try {
    app.parse_from_stream(in);
  } catch (const CLI::ParseError& e) {
    reject(std::string("config: ") + e.what());
  }
  return config;
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_content(config)) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, hash);
  return buf;
}

}  // namespace spreadspeed::cli
