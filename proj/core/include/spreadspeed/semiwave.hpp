#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spreadspeed/phaseplane.hpp"

namespace spreadspeed {

struct SolveOptions {
  /// Width of the final speed bracket.
  double tol = 1e-10;
  /// Root searches stay this far below the ceiling speed.
  double ceiling_margin = 1e-9;
  std::size_t max_iterations = 200;
  TrajectoryOptions trajectory{};
};

struct ProfilePoint {
  double z;
  double q;
};

struct SemiWaveSolution {
  double c_star = 0.0;
  Direction direction = Direction::Right;
  /// q(z) on a uniform z grid; empty unless reconstructed.
  std::vector<ProfilePoint> profile;
  /// q'(0) = P(0) at c_star.
  double boundary_slope = 0.0;
  /// |mu q'(0) - c_star|
  double residual = 0.0;
};

struct SpeedTriple {
  SemiWaveSolution left;
  SemiWaveSolution none;
  SemiWaveSolution right;
};

/// zeta(c) = P(0) - c/mu. Above the point where the trajectory degenerates
/// the intercept is taken as 0, matching the limit at the ceiling.
double zeta(double speed, Direction direction, const MediumParams& params, const ReactionTerm& term,
            const TrajectoryOptions& options = {});

/// Unique c in (0, ceiling) with mu P^c(0) = c.
///
/// zeta is strictly decreasing, positive at 0 and negative just below the
/// ceiling, so the root is bracketed from the start. The bracket is shrunk
/// with TOMS 748 until its width is at most tol, then a final secant step
/// between the bracket ends gives c_star.
///
/// Throws Error(NoAdmissibleSemiWave) when the ceiling is not positive (Left
/// with beta >= 2 sqrt(d)) and Error(BracketFailure) when zeta(0) <= 0.
SemiWaveSolution solve_speed(Direction direction, const MediumParams& params,
                             const ReactionTerm& term, const SolveOptions& options = {});

/// Reconstructs q(z) by integrating z(q) = int_0^q ds / P(s) along the
/// trajectory, truncated at q = K - delta_profile, and resampling onto
/// `points` uniform z nodes with a monotone (PCHIP) interpolant.
std::vector<ProfilePoint> reconstruct_profile(double c_star, Direction direction,
                                              const MediumParams& params, const ReactionTerm& term,
                                              double delta_profile = 1e-6, std::size_t points = 401,
                                              const TrajectoryOptions& options = {});

/// Semi-wave speeds under the lower and upper epsilon perturbations of the
/// logistic term, in that order. Throws Error(OrderingViolation) unless
/// lower < unperturbed < upper.
std::pair<double, double> perturbed_speeds(Direction direction, const MediumParams& params,
                                           double epsilon, const SolveOptions& options = {});

/// Speeds for all three frames. For 0 < beta the ordering
/// c_l < c < c_r is enforced (Error(OrderingViolation) otherwise); beta = 0
/// yields three identical speeds.
SpeedTriple speed_triple(const MediumParams& params, const ReactionTerm& term,
                         const SolveOptions& options = {});

}  // namespace spreadspeed
