#include "spreadspeed/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spreadspeed/fbsim.hpp"
#include "spreadspeed/semiwave.hpp"
#include "spreadspeed/sweep.hpp"

#ifndef SPREADSPEED_VERSION
#define SPREADSPEED_VERSION "unknown"
#endif

namespace spreadspeed::cli {
namespace {

using nlohmann::json;

constexpr double kResidualLimit = 1e-8;
constexpr double kShiftLimit = 1e-8;
constexpr double kExactLimit = 1e-10;
constexpr double kEqualityLimit = 1e-9;

constexpr const char* kFooter = R"(Outputs (one run directory per command and config hash):
  speed       speeds.csv   direction,c_star,residual,ceiling    speed.json
  profile     profile.csv  z,q                                  profile.json
  sweep-mu    sweep_mu.csv   mu,c_left,c_none,c_right
  sweep-beta  sweep_beta.csv beta,c_left,c_none,c_right
  gamma       gamma.csv    direction,c,gamma                    gamma.svg
  simulate    series.csv   t,g,h,max_u,center_u,g_speed,h_speed
              final_profile.csv x,u                              metadata.json
  verify      verify.json
Every directory also holds config.toml and manifest.json.

Exit codes: 0 ok, 2 config error, 3 solver error, 4 simulation instability,
5 verification failure.)";

// In-memory run directory, flushed only after the command succeeds.
struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;
  void add(std::string name, std::string content) {
    files.emplace_back(std::move(name), std::move(content));
  }
};

std::vector<std::pair<std::string, std::string>> config_pairs(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream lines(serialize_content(config));
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find(" = ");
    pairs.emplace_back(line.substr(0, eq), line.substr(eq + 3));
  }
  return pairs;
}

HeaderBlock csv_header(const RunConfig& config) {
  HeaderBlock header = {{"spreadspeed", SPREADSPEED_VERSION}, {"config-hash", config_hash(config)}};
  for (auto& kv : config_pairs(config)) header.push_back(std::move(kv));
  return header;
}

json config_json(const RunConfig& config) {
  json object = json::object();
  for (const auto& [key, value] : config_pairs(config)) {
    const bool quoted = value.size() >= 2 && value.front() == '"' && value.back() == '"';
    object[key] = quoted ? value.substr(1, value.size() - 2) : value;
  }
  return object;
}

json record(const RunConfig& config) {
  return {{"spreadspeed", SPREADSPEED_VERSION},
          {"config_hash", config_hash(config)},
          {"config", config_json(config)}};
}

json params_json(const MediumParams& p) {
  return {{"d", p.diffusion}, {"beta", p.advection}, {"mu", p.stefan}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_run(const RunConfig& config, const Artifacts& artifacts) {
  namespace fs = std::filesystem;
  const fs::path dir = run_directory(config);
  fs::path staging = dir;
  staging += ".partial";
  fs::remove_all(staging);
  fs::create_directories(staging);

  json manifest = record(config);
  manifest["command"] = config.command;
  manifest["files"] = json::array();
  const auto put = [&](const std::string& name, const std::string& content) {
    std::ofstream file(staging / name, std::ios::binary);
    file << content;
    if (!file) throw std::runtime_error("cannot write " + (staging / name).string());
  };
  put("config.toml", serialize(config));
  for (const auto& [name, content] : artifacts.files) {
    put(name, content);
    manifest["files"].push_back(name);
  }
  put("manifest.json", dump(manifest));
  fs::remove_all(dir);
  fs::rename(staging, dir);
}

std::string fixed(double x, int digits = 12) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

// Left frame only exists for beta < 2 sqrt(d).
bool left_admissible(const MediumParams& p) { return p.spreading_admissible(); }

int cmd_speed(const RunConfig& config, std::ostream& out, Artifacts& artifacts) {
  const auto params = config.medium();
  const auto term = config.term();
  const auto triple = speed_triple(params, term, config.solve_options());

  json j = record(config);
  j["params"] = params_json(params);
  j["reaction"] = term.name();
  std::ostringstream csv;
  write_header_block(csv, csv_header(config));
  csv << "direction,c_star,residual,ceiling\n";
  out << "direction   c_star            residual\n";
  for (const auto* sol : {&triple.left, &triple.none, &triple.right}) {
    const std::string name(to_string(sol->direction));
    const double ceiling = speed_ceiling(sol->direction, params, term);
    j["speeds"][name] = {{"c_star", sol->c_star}, {"residual", sol->residual}, {"ceiling", ceiling}};
    csv << name << ',' << format_number(sol->c_star) << ',' << format_number(sol->residual) << ','
        << format_number(ceiling) << '\n';
    out << std::left << std::setw(12) << name << std::setw(18) << fixed(sol->c_star)
        << fixed(sol->residual, 3) << '\n';
  }
  artifacts.add("speeds.csv", csv.str());
  artifacts.add("speed.json", dump(j));
  return kExitOk;
}

int cmd_profile(const RunConfig& config, std::ostream& out, Artifacts& artifacts) {
  const auto params = config.medium();
  const auto term = config.term();
  const auto direction = direction_from_string(config.direction);
  const auto options = config.solve_options();
  auto solution = solve_speed(direction, params, term, options);
  solution.profile = reconstruct_profile(solution.c_star, direction, params, term,
                                         config.profile_delta, config.profile_points,
                                         options.trajectory);
  std::ostringstream csv;
  write_profile_csv(csv, solution.profile, csv_header(config));

  json j = record(config);
  j["params"] = params_json(params);
  j["direction"] = config.direction;
  j["c_star"] = solution.c_star;
  j["residual"] = solution.residual;
  j["boundary_slope"] = solution.boundary_slope;
  j["z_max"] = solution.profile.back().z;
  j["profile_path"] = "profile.csv";
  artifacts.add("profile.csv", csv.str());
  artifacts.add("profile.json", dump(j));
  out << "c_star " << fixed(solution.c_star) << "  z_max " << fixed(solution.profile.back().z, 6)
      << "  points " << solution.profile.size() << '\n';
  return kExitOk;
}

SweepOptions sweep_options(const RunConfig& config) {
  SweepOptions options;
  options.solve = config.solve_options();
  options.workers = config.workers;
  return options;
}

void print_rows(std::ostream& out, const std::vector<SpeedRow>& rows, const char* key) {
  out << std::left << std::setw(12) << key << std::setw(18) << "c_left" << std::setw(18)
      << "c_none"
      << "c_right\n";
  for (const auto& r : rows) {
    out << std::setw(12) << fixed(r.key, 6) << std::setw(18) << fixed(r.left) << std::setw(18)
        << fixed(r.none) << fixed(r.right) << '\n';
  }
}

int cmd_sweep_mu(const RunConfig& config, std::ostream& out, Artifacts& artifacts) {
  const auto rows =
      mu_sweep(config.beta, config.d, config.term(), config.mu_grid, sweep_options(config));
  std::ostringstream csv;
  write_sweep_csv(csv, rows, "mu", csv_header(config));
  artifacts.add("sweep_mu.csv", csv.str());
  print_rows(out, rows, "mu");
  return kExitOk;
}

int cmd_sweep_beta(const RunConfig& config, std::ostream& out, Artifacts& artifacts) {
  const auto rows =
      beta_sweep(config.mu, config.d, config.term(), config.beta_grid, sweep_options(config));
  std::ostringstream csv;
  write_sweep_csv(csv, rows, "beta", csv_header(config));
  artifacts.add("sweep_beta.csv", csv.str());
  print_rows(out, rows, "beta");
  return kExitOk;
}

int cmd_gamma(const RunConfig& config, std::ostream& out, Artifacts& artifacts) {
  const auto table =
      gamma_table(config.medium(), config.term(), config.grid_size, sweep_options(config));
  std::ostringstream csv;
  write_gamma_csv(csv, table, csv_header(config));
  artifacts.add("gamma.csv", csv.str());

  std::string comment = "<!--\n";
  for (const auto& [key, value] : csv_header(config)) comment += key + ": " + value + "\n";
  comment += "-->\n";
  artifacts.add("gamma.svg", comment + gamma_svg(table));
  out << "crossings  left " << fixed(table.left.crossing) << "  none " << fixed(table.none.crossing)
      << "  right " << fixed(table.right.crossing) << '\n';
  return kExitOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, Artifacts& artifacts) {
  const auto params = config.medium();
  const auto term = config.term();
  const auto controls = config.sim_controls();
  const auto outcome = run(config.initial_data(), params, term, config.horizon, controls);

  std::ostringstream series;
  write_header_block(series, csv_header(config));
  series << "t,g,h,max_u,center_u,g_speed,h_speed\n";
  for (const auto& p : outcome.series) {
    series << format_number(p.t) << ',' << format_number(p.g) << ',' << format_number(p.h) << ','
           << format_number(p.max_u) << ',' << format_number(p.center_u) << ','
           << format_number(p.g_speed) << ',' << format_number(p.h_speed) << '\n';
  }
  std::ostringstream profile;
  write_header_block(profile, csv_header(config));
  profile << "x,u\n";
  const auto& state = outcome.final_state;
  for (std::size_t i = 0; i < state.u.size(); ++i) {
    profile << format_number(state.x(i)) << ',' << format_number(state.u[i]) << '\n';
  }

  json j = record(config);
  j["params"] = params_json(params);
  j["grid"] = {{"intervals", controls.intervals},
               {"dt_max", controls.dt_max},
               {"dt_safety", controls.dt_safety},
               {"record_every", controls.record_every},
               {"horizon", config.horizon}};
  j["steps"] = outcome.steps;
  j["classification"] = std::string(to_string(outcome.classification));
  j["final"] = {{"t", state.t}, {"g", state.g}, {"h", state.h}, {"width", state.width()}};
  out << "classification " << to_string(outcome.classification) << "  t " << fixed(state.t, 6)
      << "  g " << fixed(state.g, 8) << "  h " << fixed(state.h, 8) << '\n';

  if (outcome.classification == Classification::Spreading) {
    const auto& right = *outcome.right_speed;
    const auto& left = *outcome.left_speed;
    j["fitted"] = {{"right", {{"slope", right.slope}, {"std_error", right.std_error}}},
                   {"left", {{"slope", left.slope}, {"std_error", left.std_error}}}};
    j["ratios"] = {{"h_over_t", state.h / state.t}, {"minus_g_over_t", -state.g / state.t}};

    const auto options = config.solve_options();
    json comparison;
    const double c_r = solve_speed(Direction::Right, params, term, options).c_star;
    comparison["c_r_star"] = c_r;
    comparison["right_fit_rel_error"] = std::abs(right.slope - c_r) / c_r;
    comparison["right_ratio_rel_error"] = std::abs(state.h / state.t - c_r) / c_r;
    out << "right  fit " << fixed(right.slope, 8) << "  c_r* " << fixed(c_r, 8) << "  rel err "
        << fixed(std::abs(right.slope - c_r) / c_r, 3) << '\n';
    if (left_admissible(params)) {
      const double c_l = solve_speed(Direction::Left, params, term, options).c_star;
      comparison["c_l_star"] = c_l;
      comparison["left_fit_rel_error"] = std::abs(left.slope - c_l) / c_l;
      comparison["left_ratio_rel_error"] = std::abs(-state.g / state.t - c_l) / c_l;
      out << "left   fit " << fixed(left.slope, 8) << "  c_l* " << fixed(c_l, 8) << "  rel err "
          << fixed(std::abs(left.slope - c_l) / c_l, 3) << '\n';
    }
    j["comparison"] = comparison;
  }
  artifacts.add("series.csv", series.str());
  artifacts.add("final_profile.csv", profile.str());
  artifacts.add("metadata.json", dump(j));
  return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, Artifacts& artifacts) {
  const auto checks = verify_checks(config);
  json j = record(config);
  j["checks"] = json::array();
  bool all = true;
  out << std::left << std::setw(22) << "check" << std::setw(7) << "result"
      << "detail\n";
  for (const auto& c : checks) {
    all = all && c.passed;
    out << std::setw(22) << c.name << std::setw(7) << (c.passed ? "pass" : "FAIL") << c.detail
        << '\n';
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j["passed"] = all;
  artifacts.add("verify.json", dump(j));
  return all ? kExitOk : kExitVerification;
}

VerifyCheck run_check(const std::string& name, const std::function<VerifyCheck()>& body) {
  try {
    auto check = body();
    check.name = name;
    return check;
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

std::string sci(double x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << x;
  return s.str();
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return kExitConfig;
    case ErrorKind::StabilityFailure:
    case ErrorKind::FrontCollapse: return kExitSimulation;
    default: return kExitSolver;
  }
}

std::filesystem::path run_directory(const RunConfig& config) {
  return std::filesystem::path(config.output_dir) / (config.command + "-" + config_hash(config));
}

std::vector<VerifyCheck> verify_checks(const RunConfig& config) {
  const auto params = config.medium();
  const auto term = config.term();
  const auto options = config.solve_options();
  const bool left_ok = left_admissible(params);
  const bool still = params.advection == 0.0;
  std::vector<Direction> frames = {Direction::Right, Direction::NoAdvection};
  if (left_ok) frames.insert(frames.begin(), Direction::Left);

  std::vector<VerifyCheck> checks;

  checks.push_back(run_check("zero-drift-intercept", [&] {
    const double exact = zero_drift_intercept(params, term);
    double worst = std::abs(intercept(params.advection, Direction::Right, params, term,
                                      options.trajectory) - exact);
    worst = std::max(worst, std::abs(intercept(0.0, Direction::NoAdvection, params, term,
                                               options.trajectory) - exact));
    return VerifyCheck{"", worst <= kExactLimit, "max error " + sci(worst)};
  }));

  std::map<Direction, SemiWaveSolution> solved;
  checks.push_back(run_check("fixed-point-residual", [&] {
    double worst = 0.0;
    for (auto dir : frames) {
      solved[dir] = solve_speed(dir, params, term, options);
      worst = std::max(worst, solved[dir].residual);
    }
    return VerifyCheck{"", worst <= kResidualLimit,
                       "max |mu P(0) - c*| " + sci(worst) + " (limit " + sci(kResidualLimit) + ")"};
  }));

  checks.push_back(run_check("speed-ordering", [&] {
    for (auto dir : frames) {
      if (!solved.count(dir)) solved[dir] = solve_speed(dir, params, term, options);
    }
    const double c = solved[Direction::NoAdvection].c_star;
    const double r = solved[Direction::Right].c_star;
    if (!left_ok) {
      return VerifyCheck{"", r > c && c > 0.0, "no leftward semi-wave; c < c_r checked"};
    }
    const double l = solved[Direction::Left].c_star;
    if (still) {
      const double spread = std::max(std::abs(r - c), std::abs(l - c));
      return VerifyCheck{"", spread <= kEqualityLimit, "beta = 0, spread " + sci(spread)};
    }
    return VerifyCheck{"", 0.0 < l && l < c && c < r,
                       fixed(l, 10) + " < " + fixed(c, 10) + " < " + fixed(r, 10)};
  }));

  checks.push_back(run_check("intercept-monotone", [&] {
    std::size_t points = 0;
    for (auto dir : frames) {
      const double top = 0.9 * speed_ceiling(dir, params, term);
      double previous = INFINITY;
      for (int i = 0; i < 50; ++i) {
        const double value = intercept(top * i / 49.0, dir, params, term, options.trajectory);
        if (!(value < previous && value > 0.0)) {
          return VerifyCheck{"", false, std::string("not decreasing in frame ") +
                                            std::string(to_string(dir))};
        }
        previous = value;
        ++points;
      }
    }
    return VerifyCheck{"", true, std::to_string(points) + " speeds"};
  }));

  checks.push_back(run_check("shift-identity", [&] {
    SweepOptions sweep;
    sweep.solve = options;
    sweep.workers = config.workers;
    const auto res = shift_residuals(params, term, config.shift_points, sweep);
    const double worst = std::max(res.right, res.left);
    return VerifyCheck{"", worst <= kShiftLimit, "max residual " + sci(worst)};
  }));

  checks.push_back(run_check("sandwich", [&] {
    std::vector<Direction> dirs = {Direction::Right};
    if (left_ok && !still) dirs.push_back(Direction::Left);
    std::string detail;
    for (auto dir : dirs) {
      std::vector<double> widths;
      for (double eps : config.eps_grid) {
        const auto [lo, hi] = perturbed_speeds(dir, params, eps, options);
        widths.push_back(hi - lo);
      }
      for (std::size_t i = 1; i < widths.size(); ++i) {
        if (!(widths[i] < widths[i - 1])) {
          return VerifyCheck{"", false, "width does not shrink with epsilon"};
        }
      }
      if (widths.size() > 1 && !(widths.back() < widths.front() / 4.0)) {
        return VerifyCheck{"", false, "final width not below first/4"};
      }
      detail += std::string(to_string(dir)) + " width " + sci(widths.front()) + " -> " +
                sci(widths.back()) + "  ";
    }
    if (still) detail += "(beta = 0: frames coincide)";
    return VerifyCheck{"", true, detail};
  }));

  checks.push_back(run_check("mu-monotone", [&] {
    std::vector<double> last;
    for (double factor : {0.5, 1.0, 2.0}) {
      const MediumParams p{params.diffusion, params.advection, params.stefan * factor};
      std::vector<double> now;
      for (auto dir : frames) now.push_back(solve_speed(dir, p, term, options).c_star);
      for (std::size_t k = 0; k < last.size(); ++k) {
        if (!(now[k] > last[k])) return VerifyCheck{"", false, "speed fell as mu grew"};
      }
      last = now;
    }
    return VerifyCheck{"", true, "mu/2, mu, 2mu"};
  }));

  checks.push_back(run_check("beta-monotone", [&] {
    const double ceiling = 2.0 * std::sqrt(params.diffusion * term.derivative_at_zero());
    if (still) {
      const MediumParams p{params.diffusion, 0.0, params.stefan};
      const double r = solve_speed(Direction::Right, p, term, options).c_star;
      const double l = solve_speed(Direction::Left, p, term, options).c_star;
      return VerifyCheck{"", std::abs(r - l) <= kEqualityLimit,
                         "beta = 0: |c_r - c_l| " + sci(std::abs(r - l))};
    }
    if (!left_ok) return VerifyCheck{"", true, "skipped: beta >= 2 sqrt(d)"};
    const double betas[] = {0.5 * params.advection, params.advection,
                            0.5 * (params.advection + ceiling)};
    double prev_r = -INFINITY, prev_l = INFINITY, base = NAN;
    for (double b : betas) {
      const MediumParams p{params.diffusion, b, params.stefan};
      const auto t = speed_triple(p, term, options);
      if (std::isnan(base)) base = t.none.c_star;
      if (!(t.right.c_star > prev_r && t.left.c_star < prev_l) ||
          std::abs(t.none.c_star - base) > 1e-10) {
        return VerifyCheck{"", false, "broken at beta = " + fixed(b, 6)};
      }
      prev_r = t.right.c_star;
      prev_l = t.left.c_star;
    }
    return VerifyCheck{"", true, "beta/2, beta, (beta + 2 sqrt(d))/2"};
  }));

  return checks;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Artifacts artifacts;
  int code = kExitOk;
  try {
    validate(config);
    if (config.command == "speed") code = cmd_speed(config, out, artifacts);
    else if (config.command == "profile") code = cmd_profile(config, out, artifacts);
    else if (config.command == "sweep-mu") code = cmd_sweep_mu(config, out, artifacts);
    else if (config.command == "sweep-beta") code = cmd_sweep_beta(config, out, artifacts);
    else if (config.command == "gamma") code = cmd_gamma(config, out, artifacts);
    else if (config.command == "simulate") code = cmd_simulate(config, out, artifacts);
    else code = cmd_verify(config, out, artifacts);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  try {
    write_run(config, artifacts);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  out << "run directory " << run_directory(config).string() << '\n';
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spreading speeds of Fisher-KPP fronts with advection and Stefan free boundaries.",
               "spreadspeed"};
  RunConfig config;
  bind_options(app, config);
  app.set_config("--config", "", "read options from a key = value file; flags win");
  app.allow_config_extras(false);
  app.set_version_flag("--version", SPREADSPEED_VERSION);
  bool print_config = false;
  app.add_flag("--print-config", print_config, "print the resolved config and exit");
  app.footer(kFooter);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (print_config) {
    out << serialize(config);
    return kExitOk;
  }
  return execute(config, out, err);
}

}  // namespace spreadspeed::cli
