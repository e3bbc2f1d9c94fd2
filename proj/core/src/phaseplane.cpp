#include "spreadspeed/phaseplane.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "spreadspeed/error.hpp"

namespace spreadspeed {

void MediumParams::validate() const {
  if (!(diffusion > 0.0) || !std::isfinite(diffusion)) {
    throw Error(ErrorKind::InvalidArgument, "diffusion d must be positive");
  }
  if (!(stefan > 0.0) || !std::isfinite(stefan)) {
    throw Error(ErrorKind::InvalidArgument, "Stefan coefficient mu must be positive");
  }
  if (!(advection >= 0.0) || !std::isfinite(advection)) {
    throw Error(ErrorKind::InvalidArgument, "advection beta must be nonnegative");
  }
}

bool MediumParams::spreading_admissible() const {
  return advection < 2.0 * std::sqrt(diffusion);
}

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::Right: return "right";
    case Direction::Left: return "left";
    case Direction::NoAdvection: return "none";
  }
  return "unknown";
}

Direction direction_from_string(std::string_view name) {
  if (name == "right") return Direction::Right;
  if (name == "left") return Direction::Left;
  if (name == "none") return Direction::NoAdvection;
  throw Error(ErrorKind::InvalidArgument, "unknown direction '" + std::string(name) + "'");
}

double effective_drift(double speed, Direction direction, const MediumParams& params) {
  switch (direction) {
    case Direction::Right: return speed - params.advection;
    case Direction::Left: return speed + params.advection;
    case Direction::NoAdvection: return speed;
  }
  return speed;
}

double speed_ceiling(Direction direction, const MediumParams& params, const ReactionTerm& term) {
  const double base = 2.0 * std::sqrt(params.diffusion * term.derivative_at_zero());
  switch (direction) {
    case Direction::Right: return base + params.advection;
    case Direction::Left: return base - params.advection;
    case Direction::NoAdvection: return base;
  }
  return base;
}

SaddleEigenvalues saddle_eigenvalues(double speed, Direction direction, const MediumParams& params,
                                     const ReactionTerm& term) {
  const double a = effective_drift(speed, direction, params);
  const double d = params.diffusion;
  const double root = std::sqrt(a * a - 4.0 * d * term.derivative_at_capacity());
  // a - root cancels badly for large positive a; use the product of roots f'(K)/d.
  const double big = a >= 0.0 ? (a + root) / (2.0 * d) : (a - root) / (2.0 * d);
  const double small = term.derivative_at_capacity() / (d * big);
  return a >= 0.0 ? SaddleEigenvalues{small, big} : SaddleEigenvalues{big, small};
}

CriticalPointClass classify_origin(double speed, Direction direction, const MediumParams& params,
                                   const ReactionTerm& term) {
  const double a = effective_drift(speed, direction, params);
  const double discriminant = a * a - 4.0 * params.diffusion * term.derivative_at_zero();
  // A negative drift with real eigenvalues is an unstable node; only the sign
  // of the discriminant matters for the classification.
  return discriminant < 0.0 ? CriticalPointClass::CenterOrSpiral : CriticalPointClass::Nodal;
}

std::string_view to_string(TrajectoryStatus status) {
  switch (status) {
    case TrajectoryStatus::PositiveIntercept: return "PositiveIntercept";
    case TrajectoryStatus::DegenerateZero: return "DegenerateZero";
    case TrajectoryStatus::IntegrationFailed: return "IntegrationFailed";
  }
  return "unknown";
}

namespace {

// state[0] = p, state[1] = int_q^{K-delta} ds / p(s)
using State = std::array<double, 2>;

struct SlopeField {
  double drift_over_d;
  double inv_d;
  const ReactionTerm* term;
  bool track_position;

  void operator()(const State& x, State& dxdq, double q) const {
    const double p = x[0];
    dxdq[0] = drift_over_d - inv_d * (*term)(q) / p;
    dxdq[1] = track_position ? -1.0 / p : 0.0;
  }
};

}  // namespace

TrajectoryResult integrate_trajectory(double speed, Direction direction, const MediumParams& params,
                                      const ReactionTerm& term, const TrajectoryOptions& options) {
  namespace odeint = boost::numeric::odeint;
  params.validate();
  if (!(speed >= 0.0) || !std::isfinite(speed)) {
    throw Error(ErrorKind::InvalidArgument, "wave speed must be nonnegative");
  }

  TrajectoryResult result;
  result.speed = speed;
  result.direction = direction;

  const double capacity = term.capacity();
  const double delta = options.departure * capacity;
  const auto eig = saddle_eigenvalues(speed, direction, params, term);

  const SlopeField field{effective_drift(speed, direction, params) / params.diffusion,
                         1.0 / params.diffusion, &term, options.track_position};

  auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                         odeint::runge_kutta_dopri5<State>());

  double q = capacity - delta;
  State x{-eig.stable * delta, 0.0};
  double dq = -std::min(1e-3 * capacity, q);
  result.samples.push_back({q, x[0], x[1]});

  std::size_t steps = 0;
  while (q > 0.0) {
    if (++steps > options.max_steps) {
      result.status = TrajectoryStatus::IntegrationFailed;
      return result;
    }
    if (q + dq < 0.0) dq = -q;

    const State saved = x;
    const double saved_q = q;
    const auto outcome = stepper.try_step(field, x, q, dq);
    if (outcome == odeint::fail) {
      if (std::abs(dq) < options.min_step) {
        result.status = TrajectoryStatus::IntegrationFailed;
        return result;
      }
      continue;
    }
    if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || x[0] <= 0.0) {
      // Overshot the q-axis: retry with a smaller step from the saved point.
      x = saved;
      dq = 0.5 * (q - saved_q);
      q = saved_q;
      if (std::abs(dq) < options.min_step) {
        result.status = TrajectoryStatus::DegenerateZero;
        result.intercept = 0.0;
        return result;
      }
      continue;
    }
    if (q < 0.0) q = 0.0;
    result.samples.push_back({q, x[0], x[1]});
    if (x[0] < options.p_floor) {
      result.status = TrajectoryStatus::DegenerateZero;
      result.intercept = 0.0;
      return result;
    }
  }

  if (speed >= speed_ceiling(direction, params, term)) {
    // The branch enters the origin node; P(0+) = 0 in this regime.
    result.status = TrajectoryStatus::DegenerateZero;
    result.intercept = 0.0;
    return result;
  }
  result.intercept = x[0];
  result.status = TrajectoryStatus::PositiveIntercept;
  return result;
}

double intercept(double speed, Direction direction, const MediumParams& params,
                 const ReactionTerm& term, const TrajectoryOptions& options) {
  TrajectoryOptions light = options;
  light.track_position = false;
  const auto result = integrate_trajectory(speed, direction, params, term, light);
  switch (result.status) {
    case TrajectoryStatus::PositiveIntercept: return result.intercept;
    case TrajectoryStatus::DegenerateZero:
      throw Error(ErrorKind::DegenerateZero,
                  "trajectory reached p = 0 at c = " + std::to_string(speed));
    case TrajectoryStatus::IntegrationFailed:
      break;
  }
  throw Error(ErrorKind::IntegrationFailed,
              "step size underflow at c = " + std::to_string(speed));
}

double zero_drift_intercept(const MediumParams& params, const ReactionTerm& term) {
  return std::sqrt(2.0 * term.integral() / params.diffusion);
}

}  // namespace spreadspeed
