// Acceptance suite. Prints one PASS/FAIL line per criterion (detail lines
// above it are indented) and exits nonzero if any selected criterion fails.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/rk4_oracle.hpp"
#include "spreadspeed/fbsim.hpp"
#include "spreadspeed/semiwave.hpp"
#include "spreadspeed/sweep.hpp"

#ifdef SPREADSPEED_HAVE_CLI
#include "spreadspeed/cli/commands.hpp"
#endif

namespace {

using namespace spreadspeed;

const ReactionTerm kLogistic = ReactionTerm::logistic();

struct Outcome {
  bool passed = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    passed = passed && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string num(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 1. Exact intercept at zero drift.
Outcome criterion_1() {
  Outcome o;
  for (double d : {0.25, 1.0, 4.0}) {
    const MediumParams params{d, 0.5, 1.0};
    const double exact = std::sqrt(2.0 / d / 6.0);
    const double right = intercept(0.5, Direction::Right, params, kLogistic);
    const double none = intercept(0.0, Direction::NoAdvection, params, kLogistic);
    const double err = std::max(std::abs(right - exact), std::abs(none - exact));
    o.check(err <= 1e-10, "d=" + num(d) + " intercept " + num(right, 15) + " exact " +
                              num(exact, 15) + " err " + num(err, 3) + " (tol 1e-10)");
  }
  return o;
}

// 2. Oracle equivalence of the three speeds.
Outcome criterion_2() {
  Outcome o;
  struct Case {
    const char* name;
    double beta;
    Direction dir;
    int sign;
  };
  for (const Case& c : {Case{"c*   beta=0  ", 0.0, Direction::NoAdvection, 0},
                        Case{"c_r* beta=0.5", 0.5, Direction::Right, -1},
                        Case{"c_l* beta=0.5", 0.5, Direction::Left, 1}}) {
    const double lib = solve_speed(c.dir, {1.0, c.beta, 1.0}, kLogistic).c_star;
    const double ref = oracle::speed({1.0, c.beta, 1.0}, c.sign);
    const double err = std::abs(lib - ref);
    o.check(err <= 1e-6, std::string(c.name) + " solver " + num(lib, 15) + " oracle " +
                             num(ref, 15) + " diff " + num(err, 3) + " (tol 1e-6)");
  }
  return o;
}

// 3. Ordering 0 < c_l* < c* < c_r* on a 5x5 (mu, beta) grid, margin 1e-6.
Outcome criterion_3() {
  Outcome o;
  const double mus[] = {0.2, 0.2 * std::pow(25.0, 0.25), 1.0, 0.2 * std::pow(25.0, 0.75), 5.0};
  const double betas[] = {0.1, 0.55, 1.0, 1.45, 1.9};
  double worst = INFINITY;
  int failures = 0;
  for (double mu : mus) {
    for (double beta : betas) {
      const MediumParams params{1.0, beta, mu};
      const double l = solve_speed(Direction::Left, params, kLogistic).c_star;
      const double c = solve_speed(Direction::NoAdvection, params, kLogistic).c_star;
      const double r = solve_speed(Direction::Right, params, kLogistic).c_star;
      const double margin = std::min({l, c - l, r - c});
      worst = std::min(worst, margin);
      if (!(margin > 1e-6)) {
        ++failures;
        o.check(false, "mu=" + num(mu, 4) + " beta=" + num(beta, 3) + " margin " + num(margin, 3));
      }
    }
  }
  o.check(failures == 0, "25 points, smallest margin " + num(worst, 4) + " (needs > 1e-6)");
  return o;
}

// 4. Monotonicity in mu and beta, and the finite-surrogate limits.
Outcome criterion_4() {
  Outcome o;
  const double beta = 0.5;
  const std::vector<double> mu_grid = {1e-4, 0.1, 0.5, 1.0, 5.0, 25.0, 1e2, 1e4};
  std::vector<SpeedRow> rows;
  SweepOptions options;
  options.workers = 4;
  try {
    rows = mu_sweep(beta, 1.0, kLogistic, mu_grid, options);
    o.check(true, "mu sweep strictly increasing over " + std::to_string(rows.size()) + " rows");
  } catch (const Error& e) {
    o.check(false, std::string("mu sweep: ") + e.what());
  }
  if (!rows.empty()) {
    const auto& top = rows.back();
    const double cr0 = 2.0 + beta, cl0 = 2.0 - beta;
    o.check(rel(top.right, cr0) <= 0.02, "mu=1e4 c_r* " + num(top.right, 8) + " vs 2sqrt(d)+beta " +
                                             num(cr0) + " rel gap " + num(rel(top.right, cr0), 4) +
                                             " (tol 0.02)");
    o.check(rel(top.left, cl0) <= 0.02, "mu=1e4 c_l* " + num(top.left, 8) + " vs 2sqrt(d)-beta " +
                                            num(cl0) + " rel gap " + num(rel(top.left, cl0), 4) +
                                            " (tol 0.02)");
    const auto& low = rows.front();
    const double largest = std::max({low.left, low.none, low.right});
    o.check(largest < 0.05, "mu=1e-4 largest speed " + num(largest, 4) + " (needs < 0.05)");
  }

  const std::vector<double> beta_grid = {1e-4, 0.5, 1.0, 1.5, 2.0 - 1e-3};
  try {
    const auto brows = beta_sweep(1.0, 1.0, kLogistic, beta_grid, options);
    double spread = 0.0;
    for (const auto& r : brows) spread = std::max(spread, std::abs(r.none - brows.front().none));
    o.check(spread <= 1e-10, "beta sweep: c_r* up, c_l* down, c* spread " + num(spread, 3) +
                                 " (tol 1e-10)");
    const auto& first = brows.front();
    const double gap = std::max(std::abs(first.right - first.none), std::abs(first.left - first.none));
    o.check(gap <= 1e-3, "beta=1e-4 max |c_{l,r}* - c*| " + num(gap, 4) + " (tol 1e-3)");
    o.check(brows.back().left < 0.05,
            "beta=2-1e-3 c_l* " + num(brows.back().left, 4) + " (needs < 0.05)");
  } catch (const Error& e) {
    o.check(false, std::string("beta sweep: ") + e.what());
  }
  return o;
}

// 5. Shift identities over 100 grid points.
Outcome criterion_5() {
  Outcome o;
  SweepOptions options;
  options.workers = 4;
  const auto res = shift_residuals({1.0, 0.5, 1.0}, kLogistic, 100, options);
  o.check(res.right <= 1e-8, "max |gamma_r(c) - gamma(c - beta)| " + num(res.right, 3) + " (tol 1e-8)");
  o.check(res.left <= 1e-8, "max |gamma_l(c) - gamma(c + beta)| " + num(res.left, 3) + " (tol 1e-8)");
  return o;
}

// 6. Sandwich speeds under the epsilon perturbations.
Outcome criterion_6() {
  Outcome o;
  const MediumParams params{1.0, 0.5, 1.0};
  for (auto dir : {Direction::Right, Direction::Left}) {
    const double c = solve_speed(dir, params, kLogistic).c_star;
    std::vector<double> widths;
    bool strict = true;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
      const double lo = solve_speed(dir, params, perturb_lower(eps)).c_star;
      const double hi = solve_speed(dir, params, perturb_upper(eps)).c_star;
      strict = strict && lo < c && c < hi;
      widths.push_back(hi - lo);
    }
    bool shrinking = true;
    for (std::size_t i = 1; i < widths.size(); ++i) shrinking = shrinking && widths[i] < widths[i - 1];
    const std::string name(to_string(dir));
    o.check(strict, name + ": c~ < c* < c^ for all four epsilons");
    o.check(shrinking && widths.back() < widths.front() / 4.0,
            name + ": widths " + num(widths[0], 4) + " " + num(widths[1], 4) + " " +
                num(widths[2], 4) + " " + num(widths[3], 4) + " (final < first/4)");
  }
  return o;
}

struct ReferenceRun {
  SimOutcome outcome;
  double c_r = 0.0;
  double c_l = 0.0;
};

const MediumParams kSimParams{1.0, 0.5, 1.0};
const InitialData kSimInit = InitialData::parabolic(2.0, 0.8);
constexpr double kHorizon = 200.0;

const ReferenceRun& reference_run() {
  static const ReferenceRun run = [] {
    ReferenceRun r;
    SimControls controls;
    controls.intervals = 400;
    r.outcome = spreadspeed::run(kSimInit, kSimParams, kLogistic, kHorizon, controls);
    r.c_r = solve_speed(Direction::Right, kSimParams, kLogistic).c_star;
    r.c_l = solve_speed(Direction::Left, kSimParams, kLogistic).c_star;
    return r;
  }();
  return run;
}

// 7. PDE cross-validation against the semi-wave speeds.
Outcome criterion_7() {
  Outcome o;
  const auto& ref = reference_run();
  const auto& out = ref.outcome;
  o.check(out.classification == Classification::Spreading,
          std::string("classification ") + std::string(to_string(out.classification)));
  if (out.classification != Classification::Spreading) return o;
  const double fr = out.right_speed->slope, fl = out.left_speed->slope;
  o.check(rel(fr, ref.c_r) <= 0.03, "tail-fit right " + num(fr, 8) + " vs c_r* " + num(ref.c_r, 8) +
                                        " rel err " + num(rel(fr, ref.c_r), 3) + " (tol 0.03)");
  o.check(rel(fl, ref.c_l) <= 0.03, "tail-fit left  " + num(fl, 8) + " vs c_l* " + num(ref.c_l, 8) +
                                        " rel err " + num(rel(fl, ref.c_l), 3) + " (tol 0.03)");
  const auto& s = out.final_state;
  const double hr = s.h / s.t, gr = -s.g / s.t;
  o.check(rel(hr, ref.c_r) <= 0.05, "h(T)/T " + num(hr, 8) + " rel err " + num(rel(hr, ref.c_r), 3) +
                                        " (tol 0.05)");
  o.check(rel(gr, ref.c_l) <= 0.05, "-g(T)/T " + num(gr, 8) + " rel err " + num(rel(gr, ref.c_l), 3) +
                                        " (tol 0.05)");
  o.details.push_back("     offsets at T: h - c_r*T = " + num(s.h - ref.c_r * s.t, 4) +
                      ", -g - c_l*T = " + num(-s.g - ref.c_l * s.t, 4));
  return o;
}

// 8. Simulation invariants: comparison bound, monotone fronts, symmetry,
// grid convergence.
Outcome criterion_8() {
  Outcome o;
  const double sup0 = kSimInit.amplitude;
  {
    // Step-by-step replay of the reference run so the bound is checked at
    // every time level, not only at recorded ones.
    SimControls controls;
    auto state = initial_state(kSimInit, controls.intervals);
    std::tie(state.g_speed, state.h_speed) =
        front_velocities(state.u, state.width(), kSimParams.stefan);
    double worst_excess = -INFINITY;
    bool monotone = true;
    double max_front_speed = 0.0;
    std::size_t steps = 0;
    while (state.t < kHorizon) {
      const double dt = std::min(stable_time_step(state, kSimParams, controls), kHorizon - state.t);
      const auto next = transform_step(state, dt, kSimParams, kLogistic, controls);
      const double peak = *std::max_element(next.u.begin(), next.u.end());
      worst_excess = std::max(worst_excess, peak - logistic_bound(next.t, sup0));
      monotone = monotone && next.g <= state.g && next.h >= state.h;
      max_front_speed = std::max({max_front_speed, -next.g_speed, next.h_speed});
      state = next;
      ++steps;
    }
    o.check(worst_excess <= 1e-3, "max_u - eta(t) peaks at " + num(worst_excess, 4) + " over " +
                                      std::to_string(steps) + " steps (tol 1e-3)");
    o.check(monotone && std::isfinite(max_front_speed),
            "g nonincreasing, h nondecreasing at every step; max front speed " +
                num(max_front_speed, 4));
  }
  {
    const auto& series = reference_run().outcome.series;
    bool monotone = true;
    for (std::size_t i = 1; i < series.size(); ++i) {
      monotone = monotone && series[i].g <= series[i - 1].g && series[i].h >= series[i - 1].h;
    }
    o.check(monotone, "recorded series fronts monotone (" + std::to_string(series.size()) + " points)");
  }
  {
    const MediumParams still{1.0, 0.0, 1.0};
    SimControls controls;
    auto state = initial_state(kSimInit, controls.intervals);
    std::tie(state.g_speed, state.h_speed) = front_velocities(state.u, state.width(), still.stefan);
    const std::size_t n = controls.intervals;
    double worst = 0.0;
    while (state.t < kHorizon) {
      const double dt = std::min(stable_time_step(state, still, controls), kHorizon - state.t);
      state = transform_step(state, dt, still, kLogistic, controls);
      worst = std::max(worst, std::abs(state.g + state.h));
      for (std::size_t i = 0; i <= n; ++i) worst = std::max(worst, std::abs(state.u[i] - state.u[n - i]));
    }
    o.check(worst <= 1e-8, "beta=0 twin run reflection error " + num(worst, 3) + " (tol 1e-8)");
  }
  {
    const auto& coarse = reference_run().outcome;
    SimControls fine_controls;
    fine_controls.intervals = 800;
    fine_controls.dt_max = 0.005;
    const auto fine = spreadspeed::run(kSimInit, kSimParams, kLogistic, kHorizon, fine_controls);
    if (coarse.right_speed && fine.right_speed) {
      const double dr = rel(fine.right_speed->slope, coarse.right_speed->slope);
      const double dl = rel(fine.left_speed->slope, coarse.left_speed->slope);
      o.check(dr < 0.005, "grid doubling right " + num(coarse.right_speed->slope, 8) + " -> " +
                              num(fine.right_speed->slope, 8) + " change " + num(dr, 3) +
                              " (tol 0.005)");
      o.check(dl < 0.005, "grid doubling left  " + num(coarse.left_speed->slope, 8) + " -> " +
                              num(fine.left_speed->slope, 8) + " change " + num(dl, 3) +
                              " (tol 0.005)");
    } else {
      o.check(false, "grid doubling: a run did not spread");
    }
  }
  return o;
}

// 9. Repeated speed and sweep runs give byte-identical artifacts.
Outcome criterion_9() {
  Outcome o;
#ifdef SPREADSPEED_HAVE_CLI
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "spreadspeed_acceptance_9";
  fs::remove_all(root);
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const auto snapshot = [&](const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (entry.is_regular_file()) files[fs::relative(entry.path(), dir).string()] = slurp(entry.path());
    }
    return files;
  };
  // Identical configs (output-dir included) run twice; the run directory is
  // replaced in between, so the two snapshots must match byte for byte.
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"speed"},
        std::vector<std::string>{"sweep-mu", "--mu-grid", "0.1,1,10", "--workers", "3"},
        std::vector<std::string>{"sweep-beta", "--beta-grid", "0.1,0.5,1.5"},
        std::vector<std::string>{"gamma", "--grid-size", "50"}}) {
    std::vector<std::map<std::string, std::string>> snapshots;
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<std::string> full = {"spreadspeed"};
      full.insert(full.end(), args.begin(), args.end());
      full.push_back("--output-dir");
      full.push_back(root.string());
      std::vector<const char*> argv;
      for (const auto& a : full) argv.push_back(a.c_str());
      std::ostringstream out, err;
      const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
      if (code != 0) o.check(false, args[0] + " exited " + std::to_string(code) + ": " + err.str());
      snapshots.push_back(snapshot(root));
      fs::remove_all(root);
    }
    o.check(!snapshots[0].empty() && snapshots[0] == snapshots[1],
            args[0] + ": " + std::to_string(snapshots[0].size()) + " files byte-identical across runs");
  }
  fs::remove_all(root);
#else
  std::ostringstream a, b;
  const std::vector<double> grid = {0.1, 1.0, 10.0};
  write_sweep_csv(a, mu_sweep(0.5, 1.0, kLogistic, grid), "mu", {});
  write_sweep_csv(b, mu_sweep(0.5, 1.0, kLogistic, grid), "mu", {});
  o.check(a.str() == b.str(), "sweep CSV byte-identical (CLI not built)");
#endif
  return o;
}

struct Criterion {
  const char* title;
  Outcome (*body)();
};

const Criterion kCriteria[] = {
    {"exact intercept at zero drift", criterion_1},
    {"oracle equivalence of c*, c_r*, c_l*", criterion_2},
    {"ordering 0 < c_l* < c* < c_r* on 5x5 grid", criterion_3},
    {"monotonicity and limits in mu and beta", criterion_4},
    {"shift identities", criterion_5},
    {"epsilon sandwich", criterion_6},
    {"PDE cross-validation", criterion_7},
    {"simulation invariants", criterion_8},
    {"determinism", criterion_9},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  const int count = static_cast<int>(std::size(kCriteria));
  if (only < 0 || only > count) {
    std::fprintf(stderr, "criterion must be in 1..%d\n", count);
    return 2;
  }

  bool all = true;
  for (int k = 1; k <= count; ++k) {
    if (only != 0 && k != only) continue;
    const auto& c = kCriteria[k - 1];
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome.check(false, std::string("exception: ") + e.what());
    }
    for (const auto& line : outcome.details) std::printf("    %s\n", line.c_str());
    std::printf("criterion %d: %s  %s\n", k, outcome.passed ? "PASS" : "FAIL", c.title);
    std::fflush(stdout);
    all = all && outcome.passed;
  }
  return all ? 0 : 1;
}
