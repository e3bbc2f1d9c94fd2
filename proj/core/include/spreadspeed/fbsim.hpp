#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spreadspeed/nonlinearity.hpp"
#include "spreadspeed/phaseplane.hpp"

namespace spreadspeed {

enum class InitialShape { Parabolic, Cosine, Tabulated };

std::string_view to_string(InitialShape shape);
InitialShape initial_shape_from_string(std::string_view name);

/// u0 on [-h0, h0] with u0(+-h0) = 0 and u0 > 0 inside.
struct InitialData {
  double half_width = 1.0;
  double amplitude = 1.0;
  InitialShape shape = InitialShape::Parabolic;
  /// Values on uniform nodes over [-h0, h0] for the tabulated shape,
  /// linearly interpolated.
  std::vector<double> table;

  static InitialData parabolic(double half_width, double amplitude);
  static InitialData cosine(double half_width, double amplitude);
  static InitialData tabulated(double half_width, std::vector<double> values);

  double operator()(double x) const;
  /// Throws Error(InvalidArgument) if the endpoint or positivity conditions fail.
  void validate() const;
};

/// Solution in front-fixed coordinates y = (x - g)/(h - g) on N+1 uniform nodes.
struct FrontState {
  double t = 0.0;
  double g = 0.0;
  double h = 0.0;
  std::vector<double> u;
  double g_speed = 0.0;
  double h_speed = 0.0;

  std::size_t intervals() const { return u.size() - 1; }
  double width() const { return h - g; }
  double y(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(intervals()); }
  double x(std::size_t i) const { return g + width() * y(i); }
};

struct ClassifyThresholds {
  /// Spreading needs the midpoint density above (1 - plateau_gap) K ...
  double plateau_gap = 0.05;
  /// ... over this trailing fraction of the window ...
  double plateau_fraction = 0.10;
  /// ... and a width of at least width_factor * 2 h0.
  double width_factor = 5.0;
  /// Vanishing needs max u below this ...
  double vanish_level = 1e-4;
  /// ... and width growth below vanish_growth over the trailing vanish_fraction.
  double vanish_growth = 1e-6;
  double vanish_fraction = 0.25;
};

struct SimControls {
  std::size_t intervals = 400;
  double dt_safety = 0.4;
  double dt_max = 0.01;
  /// Also bound dt by the explicit diffusion limit dx^2/(2d). Diffusion is
  /// implicit, so this only costs steps.
  bool diffusive_limit = false;
  double record_every = 0.5;
  int corrector_iterations = 5;
  double corrector_tol = 1e-10;
  double min_width = 1e-8;
  /// Negative values down to -negative_tolerance are clipped to 0.
  double negative_tolerance = 1e-12;
  bool stop_on_vanishing = true;
  double fit_fraction = 0.5;
  ClassifyThresholds thresholds{};
};

struct SeriesPoint {
  double t;
  double g;
  double h;
  double max_u;
  double center_u;
  double g_speed;
  double h_speed;
};

enum class Classification { Spreading, Vanishing, Undecided };

std::string_view to_string(Classification classification);

struct SpeedFit {
  double slope = 0.0;
  double std_error = 0.0;
};

struct SimOutcome {
  Classification classification = Classification::Undecided;
  std::vector<SeriesPoint> series;
  /// Tail least-squares slopes of -g(t) and h(t); set only when spreading.
  std::optional<SpeedFit> left_speed;
  std::optional<SpeedFit> right_speed;
  FrontState final_state;
  std::size_t steps = 0;
};

FrontState initial_state(const InitialData& init, std::size_t intervals);

/// Front velocities -mu u_x at both ends from one-sided fourth-order
/// differences: {g', h'}.
std::pair<double, double> front_velocities(std::span<const double> u, double width, double stefan);

/// dt_safety * dy L / |a|_max capped at dt_max, where |a|_max is the largest
/// moving-frame advection speed (optionally also dt_safety * (dy L)^2 / 2d).
double stable_time_step(const FrontState& state, const MediumParams& params,
                        const SimControls& controls);

/// One step of the front-fixed problem
///   u_t = (d/L^2) u_yy + [(g' + y (h' - g') - beta)/L] u_y + f(u)
/// with diffusion and advection implicit (one tridiagonal solve), reaction
/// explicit, and a predictor-corrector loop on the front velocities.
/// Throws Error(StabilityFailure) or Error(FrontCollapse).
FrontState transform_step(const FrontState& state, double dt, const MediumParams& params,
                          const ReactionTerm& term, const SimControls& controls = {});

/// Integrates to `horizon`, recording every controls.record_every. Stops
/// early only once the run is classified as vanishing.
SimOutcome run(const InitialData& init, const MediumParams& params, const ReactionTerm& term,
               double horizon, const SimControls& controls = {});

/// Solution of eta' = eta (1 - eta), eta(0) = M + 1; an upper bound for u.
double logistic_bound(double t, double sup_initial);

Classification classify(std::span<const SeriesPoint> series, double initial_half_width,
                        double capacity = 1.0, const ClassifyThresholds& thresholds = {});

/// Least-squares slope of h(t) (or of -g(t) when `left`) over the trailing
/// `fraction` of the recorded window, with its standard error.
SpeedFit fit_tail_slope(std::span<const SeriesPoint> series, bool left, double fraction = 0.5);

}  // namespace spreadspeed
