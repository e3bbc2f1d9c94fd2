#include "spreadspeed/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "spreadspeed/error.hpp"

namespace spreadspeed {
namespace {

// Runs body(i) for i in [0, count) on up to `workers` threads. The first
// exception thrown by any task is rethrown on the caller.
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body body) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Intercept with the degenerate branch mapped to 0: near the ceiling the
// true value drops below what double precision resolves.
double gamma_value(double speed, Direction direction, const MediumParams& params,
                   const ReactionTerm& term, const TrajectoryOptions& options) {
  const auto result = integrate_trajectory(speed, direction, params, term, options);
  if (result.status == TrajectoryStatus::IntegrationFailed) {
    throw Error(ErrorKind::IntegrationFailed,
                "phase-plane integration failed at c = " + std::to_string(speed));
  }
  return result.intercept;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = count == 1 ? lo
                         : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return grid;
}

GammaCurve gamma_curve(Direction direction, const MediumParams& params, const ReactionTerm& term,
                       std::size_t grid_size, const SweepOptions& options) {
  GammaCurve curve;
  curve.direction = direction;
  curve.speeds =
      uniform_grid(0.0, speed_ceiling(direction, params, term) - options.grid_margin, grid_size);
  curve.intercepts.resize(grid_size);
  parallel_for(grid_size, options.workers, [&](std::size_t i) {
    curve.intercepts[i] =
        gamma_value(curve.speeds[i], direction, params, term, options.solve.trajectory);
  });
  curve.crossing = solve_speed(direction, params, term, options.solve).c_star;
  return curve;
}

std::string svg_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

GammaTable gamma_table(const MediumParams& params, const ReactionTerm& term, std::size_t grid_size,
                       const SweepOptions& options) {
  params.validate();
  if (!(params.advection > 0.0 && params.spreading_admissible())) {
    throw Error(ErrorKind::InvalidArgument, "gamma table needs 0 < beta < 2 sqrt(d)");
  }
  if (grid_size < 2) throw Error(ErrorKind::InvalidArgument, "gamma grid needs >= 2 points");
  GammaTable table;
  table.params = params;
  table.left = gamma_curve(Direction::Left, params, term, grid_size, options);
  table.none = gamma_curve(Direction::NoAdvection, params, term, grid_size, options);
  table.right = gamma_curve(Direction::Right, params, term, grid_size, options);
  return table;
}

ShiftResiduals shift_residuals(const MediumParams& params, const ReactionTerm& term,
                               std::size_t points, const SweepOptions& options) {
  params.validate();
  const double beta = params.advection;
  const double base = speed_ceiling(Direction::NoAdvection, params, term);
  const auto& traj = options.solve.trajectory;

  ShiftResiduals residuals;
  residuals.points = points;
  const auto right_grid = uniform_grid(beta, base + beta - options.grid_margin, points);
  std::vector<double> right(points, 0.0), left(points, 0.0);
  parallel_for(points, options.workers, [&](std::size_t i) {
    const double c = right_grid[i];
    right[i] = std::abs(gamma_value(c, Direction::Right, params, term, traj) -
                        gamma_value(c - beta, Direction::NoAdvection, params, term, traj));
  });
  if (base - beta - options.grid_margin > 0.0) {
    const auto left_grid = uniform_grid(0.0, base - beta - options.grid_margin, points);
    parallel_for(points, options.workers, [&](std::size_t i) {
      const double c = left_grid[i];
      left[i] = std::abs(gamma_value(c, Direction::Left, params, term, traj) -
                         gamma_value(c + beta, Direction::NoAdvection, params, term, traj));
    });
  }
  residuals.right = *std::max_element(right.begin(), right.end());
  residuals.left = *std::max_element(left.begin(), left.end());
  return residuals;
}

std::vector<SpeedRow> mu_sweep(double beta, double diffusion, const ReactionTerm& term,
                               const std::vector<double>& mu_grid, const SweepOptions& options) {
  if (mu_grid.empty()) throw Error(ErrorKind::InvalidArgument, "mu grid is empty");
  for (std::size_t i = 0; i < mu_grid.size(); ++i) {
    if (!(mu_grid[i] > 0.0) || (i > 0 && !(mu_grid[i] > mu_grid[i - 1]))) {
      throw Error(ErrorKind::InvalidArgument, "mu grid must be positive and ascending");
    }
  }
  const MediumParams probe{diffusion, beta, 1.0};
  probe.validate();
  if (!probe.spreading_admissible()) {
    throw Error(ErrorKind::NoAdmissibleSemiWave, "mu sweep needs beta < 2 sqrt(d)");
  }

  std::vector<SpeedRow> rows(mu_grid.size());
  parallel_for(mu_grid.size(), options.workers, [&](std::size_t i) {
    const MediumParams params{diffusion, beta, mu_grid[i]};
    const auto triple = speed_triple(params, term, options.solve);
    rows[i] = {mu_grid[i], triple.left.c_star, triple.none.c_star, triple.right.c_star};
  });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    if (!(a.left < b.left && a.none < b.none && a.right < b.right)) {
      throw Error(ErrorKind::MonotonicityViolation,
                  "speeds not strictly increasing between mu = " + format_number(a.key) +
                      " and mu = " + format_number(b.key));
    }
  }
  return rows;
}

std::vector<SpeedRow> beta_sweep(double mu, double diffusion, const ReactionTerm& term,
                                 const std::vector<double>& beta_grid,
                                 const SweepOptions& options) {
  if (beta_grid.empty()) throw Error(ErrorKind::InvalidArgument, "beta grid is empty");
  const double limit = 2.0 * std::sqrt(diffusion);
  for (std::size_t i = 0; i < beta_grid.size(); ++i) {
    if (!(beta_grid[i] > 0.0 && beta_grid[i] < limit) ||
        (i > 0 && !(beta_grid[i] > beta_grid[i - 1]))) {
      throw Error(ErrorKind::InvalidArgument, "beta grid must be ascending inside (0, 2 sqrt(d))");
    }
  }

  std::vector<SpeedRow> rows(beta_grid.size());
  parallel_for(beta_grid.size(), options.workers, [&](std::size_t i) {
    const MediumParams params{diffusion, beta_grid[i], mu};
    const auto triple = speed_triple(params, term, options.solve);
    rows[i] = {beta_grid[i], triple.left.c_star, triple.none.c_star, triple.right.c_star};
  });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    if (!(a.right < b.right && a.left > b.left && std::abs(b.none - rows.front().none) <= 1e-10)) {
      throw Error(ErrorKind::MonotonicityViolation,
                  "beta monotonicity broken between beta = " + format_number(a.key) +
                      " and beta = " + format_number(b.key));
    }
  }
  return rows;
}

void write_header_block(std::ostream& out, const HeaderBlock& header) {
  for (const auto& [key, value] : header) out << "# " << key << ": " << value << '\n';
}

void write_gamma_csv(std::ostream& out, const GammaTable& table, const HeaderBlock& header) {
  write_header_block(out, header);
  out << "# crossing_left: " << format_number(table.left.crossing) << '\n';
  out << "# crossing_none: " << format_number(table.none.crossing) << '\n';
  out << "# crossing_right: " << format_number(table.right.crossing) << '\n';
  out << "direction,c,gamma\n";
  for (const auto* curve : {&table.left, &table.none, &table.right}) {
    for (std::size_t i = 0; i < curve->speeds.size(); ++i) {
      out << to_string(curve->direction) << ',' << format_number(curve->speeds[i]) << ','
          << format_number(curve->intercepts[i]) << '\n';
    }
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SpeedRow>& rows,
                     const std::string& key_name, const HeaderBlock& header) {
  write_header_block(out, header);
  out << key_name << ",c_left,c_none,c_right\n";
  for (const auto& row : rows) {
    out << format_number(row.key) << ',' << format_number(row.left) << ','
        << format_number(row.none) << ',' << format_number(row.right) << '\n';
  }
}

void write_profile_csv(std::ostream& out, const std::vector<ProfilePoint>& profile,
                       const HeaderBlock& header) {
  write_header_block(out, header);
  out << "z,q\n";
  for (const auto& p : profile) out << format_number(p.z) << ',' << format_number(p.q) << '\n';
}

std::string gamma_svg(const GammaTable& table) {
  constexpr double width = 640.0, height = 420.0, margin = 50.0;
  double c_max = 0.0, g_max = 0.0;
  for (const auto* curve : {&table.left, &table.none, &table.right}) {
    c_max = std::max(c_max, curve->speeds.back());
    g_max = std::max(g_max, *std::max_element(curve->intercepts.begin(), curve->intercepts.end()));
  }
  c_max *= 1.05;
  g_max *= 1.10;
  const auto sx = [&](double c) { return svg_coord(margin + (width - 2 * margin) * c / c_max); };
  const auto sy = [&](double g) {
    return svg_coord(height - margin - (height - 2 * margin) * g / g_max);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(c_max) << "\" y2=\""
      << sy(0) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(0) << "\" y2=\""
      << sy(g_max) << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << svg_coord(width - margin) << "\" y=\"" << svg_coord(height - 15)
      << "\" font-size=\"14\">c</text>\n";
  svg << "<text x=\"15\" y=\"" << svg_coord(margin - 10) << "\" font-size=\"14\">gamma</text>\n";

  const char* colors[] = {"#1b9e77", "#7570b3", "#d95f02"};
  const char* labels[] = {"gamma_l", "gamma", "gamma_r"};
  int k = 0;
  for (const auto* curve : {&table.left, &table.none, &table.right}) {
    svg << "<polyline fill=\"none\" stroke=\"" << colors[k] << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < curve->speeds.size(); ++i) {
      svg << (i ? " " : "") << sx(curve->speeds[i]) << ',' << sy(curve->intercepts[i]);
    }
    svg << "\"/>\n";
    const double c = curve->crossing;
    svg << "<circle cx=\"" << sx(c) << "\" cy=\"" << sy(c / table.params.stefan)
        << "\" r=\"4\" fill=\"" << colors[k] << "\"/>\n";
    svg << "<text x=\"" << svg_coord(width - margin - 90) << "\" y=\"" << svg_coord(margin + 18 * k)
        << "\" font-size=\"12\" fill=\"" << colors[k] << "\">" << labels[k] << "</text>\n";
    ++k;
  }
  // gamma = c / mu, clipped to the plot box.
  const double c_end = std::min(c_max, g_max * table.params.stefan);
  svg << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(c_end) << "\" y2=\""
      << sy(c_end / table.params.stefan) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace spreadspeed
