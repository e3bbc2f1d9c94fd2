#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "spreadspeed/semiwave.hpp"

namespace spreadspeed {

struct SweepOptions {
  SolveOptions solve{};
  /// c grids stop this far short of each ceiling.
  double grid_margin = 1e-6;
  /// Rows (or grid points) evaluated concurrently; results are independent
  /// of this value.
  std::size_t workers = 1;
};

/// gamma(c) = P^c(0) tabulated for one frame, with its crossing of c/mu.
struct GammaCurve {
  Direction direction = Direction::Right;
  std::vector<double> speeds;
  std::vector<double> intercepts;
  double crossing = 0.0;
};

struct GammaTable {
  MediumParams params;
  GammaCurve left;
  GammaCurve none;
  GammaCurve right;
};

/// Intercepts on `grid_size` uniform speeds over [0, ceiling - margin] for
/// each frame, plus the three semi-wave speeds. Requires 0 < beta < 2 sqrt(d).
GammaTable gamma_table(const MediumParams& params, const ReactionTerm& term, std::size_t grid_size,
                       const SweepOptions& options = {});

struct ShiftResiduals {
  /// max |gamma_r(c) - gamma(c - beta)| for c in [beta, 2 sqrt(d) + beta)
  double right = 0.0;
  /// max |gamma_l(c) - gamma(c + beta)| for c in [0, 2 sqrt(d) - beta)
  double left = 0.0;
  std::size_t points = 0;
};

ShiftResiduals shift_residuals(const MediumParams& params, const ReactionTerm& term,
                               std::size_t points, const SweepOptions& options = {});

struct SpeedRow {
  double key;  // mu or beta
  double left;
  double none;
  double right;
};

/// Speed triples over an ascending positive mu grid. Throws
/// Error(MonotonicityViolation) unless every column strictly increases.
std::vector<SpeedRow> mu_sweep(double beta, double diffusion, const ReactionTerm& term,
                               const std::vector<double>& mu_grid, const SweepOptions& options = {});

/// Speed triples over an ascending beta grid inside (0, 2 sqrt(d)). Throws
/// Error(MonotonicityViolation) unless c_r increases, c_l decreases and c
/// stays constant.
std::vector<SpeedRow> beta_sweep(double mu, double diffusion, const ReactionTerm& term,
                                 const std::vector<double>& beta_grid,
                                 const SweepOptions& options = {});

/// Lines written verbatim, each prefixed with "# ", above a CSV header.
using HeaderBlock = std::vector<std::pair<std::string, std::string>>;

/// "# key: value" per entry.
void write_header_block(std::ostream& out, const HeaderBlock& header);
/// Columns: direction,c,gamma
void write_gamma_csv(std::ostream& out, const GammaTable& table, const HeaderBlock& header);
/// Columns: <key_name>,c_left,c_none,c_right
void write_sweep_csv(std::ostream& out, const std::vector<SpeedRow>& rows,
                     const std::string& key_name, const HeaderBlock& header);
/// Columns: z,q
void write_profile_csv(std::ostream& out, const std::vector<ProfilePoint>& profile,
                       const HeaderBlock& header);

/// The three gamma curves, the line gamma = c/mu and the crossings, as a
/// standalone SVG document.
std::string gamma_svg(const GammaTable& table);

/// Shortest round-trip decimal form of x, used for every number written to
/// a table so that output is byte-stable.
std::string format_number(double x);

}  // namespace spreadspeed
