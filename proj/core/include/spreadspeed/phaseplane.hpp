#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "spreadspeed/nonlinearity.hpp"

namespace spreadspeed {

/// Coefficients of u_t - d u_xx + beta u_x = f(u) with Stefan fronts
/// g' = -mu u_x(g), h' = -mu u_x(h).
struct MediumParams {
  double diffusion = 1.0;
  double advection = 0.0;
  double stefan = 1.0;

  /// Throws Error(InvalidArgument) unless d > 0, mu > 0, beta >= 0.
  void validate() const;
  /// Spreading is only possible for beta < 2 sqrt(d).
  bool spreading_admissible() const;
};

/// Frame in which a semi-wave is sought. The phase-plane equation only sees
/// the effective drift: c - beta (Right), c + beta (Left), c (NoAdvection).
enum class Direction { Right, Left, NoAdvection };

std::string_view to_string(Direction direction);
Direction direction_from_string(std::string_view name);

double effective_drift(double speed, Direction direction, const MediumParams& params);

/// Minimal traveling-wave speed 2 sqrt(d f'(0)) + beta, - beta or + 0.
/// Left may be nonpositive, which means no leftward semi-wave exists.
double speed_ceiling(Direction direction, const MediumParams& params,
                     const ReactionTerm& term = ReactionTerm::logistic());

struct SaddleEigenvalues {
  double stable;    // < 0, slope of the trajectory entering (K, 0)
  double unstable;  // > 0
};

/// Eigenvalues of the linearization at (K, 0):
/// (a +- sqrt(a^2 - 4 d f'(K))) / (2d).
SaddleEigenvalues saddle_eigenvalues(double speed, Direction direction, const MediumParams& params,
                                     const ReactionTerm& term);

enum class CriticalPointClass { CenterOrSpiral, Nodal };

/// Type of the origin: complex eigenvalues (a^2 < 4 d f'(0)) give a center
/// or spiral; a real double or distinct pair gives a node.
CriticalPointClass classify_origin(double speed, Direction direction, const MediumParams& params,
                                   const ReactionTerm& term = ReactionTerm::logistic());

struct TrajectoryOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Departure offset from the saddle, relative to K.
  double departure = 1e-6;
  /// p below this counts as hitting the q-axis.
  double p_floor = 1e-13;
  double min_step = 1e-14;
  std::size_t max_steps = 200000;
  /// Also accumulate z(q) = int ds / P(s) for profile reconstruction.
  bool track_position = false;
};

enum class TrajectoryStatus { PositiveIntercept, DegenerateZero, IntegrationFailed };

std::string_view to_string(TrajectoryStatus status);

struct PhasePoint {
  double q;
  double p;
  /// Distance from the far end, int_q^{K-delta} ds / P(s); only filled when
  /// position tracking is on.
  double tail = 0.0;
};

/// Branch p = P(q) of the stable manifold of (K, 0) traced down to q = 0.
struct TrajectoryResult {
  double speed = 0.0;
  Direction direction = Direction::Right;
  std::vector<PhasePoint> samples;  // q strictly decreasing, last q == 0 on success
  double intercept = 0.0;
  TrajectoryStatus status = TrajectoryStatus::IntegrationFailed;
};

/// Integrates dp/dq = a/d - f(q)/(d p) from the saddle (K, 0) down to q = 0.
///
/// Starts at q = K - delta, p = -lambda_stable * delta and marches with an
/// embedded Dormand-Prince 5(4) pair; the last step is clipped to land on
/// q = 0 exactly. Speeds at or above the ceiling report DegenerateZero with
/// a zero intercept. Throws Error(InvalidArgument) for negative speeds.
TrajectoryResult integrate_trajectory(double speed, Direction direction, const MediumParams& params,
                                      const ReactionTerm& term, const TrajectoryOptions& options = {});

/// P(0) for 0 <= c < ceiling. Throws Error(DegenerateZero) or
/// Error(IntegrationFailed) when the trajectory does not reach q = 0 with p > 0.
double intercept(double speed, Direction direction, const MediumParams& params,
                 const ReactionTerm& term, const TrajectoryOptions& options = {});

/// Closed-form intercept at zero drift: sqrt((2/d) int_0^K f).
double zero_drift_intercept(const MediumParams& params, const ReactionTerm& term);

}  // namespace spreadspeed
