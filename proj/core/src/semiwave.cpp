#include "spreadspeed/semiwave.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

// Boost 1.74's pchip.hpp calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "spreadspeed/error.hpp"

namespace spreadspeed {

double zeta(double speed, Direction direction, const MediumParams& params, const ReactionTerm& term,
            const TrajectoryOptions& options) {
  TrajectoryOptions light = options;
  light.track_position = false;
  const auto trajectory = integrate_trajectory(speed, direction, params, term, light);
  switch (trajectory.status) {
    case TrajectoryStatus::PositiveIntercept:
      return trajectory.intercept - speed / params.stefan;
    case TrajectoryStatus::DegenerateZero:
      return -speed / params.stefan;
    case TrajectoryStatus::IntegrationFailed:
      break;
  }
  throw Error(ErrorKind::IntegrationFailed,
              "phase-plane integration failed at c = " + std::to_string(speed));
}

namespace {

// Remembers every zeta evaluation so the bracket ends can be reused for the
// closing secant step without re-integrating.
class ZetaCache {
 public:
  ZetaCache(Direction direction, const MediumParams& params, const ReactionTerm& term,
            const TrajectoryOptions& options)
      : direction_(direction), params_(params), term_(term), options_(options) {}

  double operator()(double speed) {
    for (const auto& [c, value] : seen_) {
      if (c == speed) return value;
    }
    const double value = zeta(speed, direction_, params_, term_, options_);
    seen_.emplace_back(speed, value);
    return value;
  }

 private:
  Direction direction_;
  const MediumParams& params_;
  const ReactionTerm& term_;
  const TrajectoryOptions& options_;
  std::vector<std::pair<double, double>> seen_;
};

}  // namespace

SemiWaveSolution solve_speed(Direction direction, const MediumParams& params,
                             const ReactionTerm& term, const SolveOptions& options) {
  params.validate();
  if (!(options.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "speed tolerance must be positive");

  const double ceiling = speed_ceiling(direction, params, term);
  const double upper = ceiling - options.ceiling_margin;
  if (!(upper > 0.0)) {
    throw Error(ErrorKind::NoAdmissibleSemiWave,
                std::string("no semi-wave in direction '") + std::string(to_string(direction)) +
                    "': speed ceiling " + std::to_string(ceiling) + " is not positive");
  }

  ZetaCache f(direction, params, term, options.trajectory);
  double lo = 0.0;
  double hi = upper;
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (!(f_lo > 0.0)) throw Error(ErrorKind::BracketFailure, "zeta(0) is not positive");
  if (!(f_hi < 0.0)) throw Error(ErrorKind::BracketFailure, "zeta below the ceiling is not negative");

  if (hi - lo > options.tol) {
    std::uintmax_t iterations = options.max_iterations;
    const double tol = options.tol;
    const auto bracket = boost::math::tools::toms748_solve(
        [&f](double c) { return f(c); }, lo, hi, f_lo, f_hi,
        [tol](double a, double b) { return std::abs(b - a) <= tol; }, iterations);
    lo = bracket.first;
    hi = bracket.second;
    f_lo = f(lo);
    f_hi = f(hi);
    if (hi - lo > options.tol) {
      throw Error(ErrorKind::BracketFailure, "speed bracket did not shrink to tolerance");
    }
  }

  double c_star = 0.5 * (lo + hi);
  if (f_lo == 0.0) {
    c_star = lo;
  } else if (f_hi == 0.0) {
    c_star = hi;
  } else if (f_lo != f_hi) {
    c_star = std::clamp(lo - f_lo * (hi - lo) / (f_hi - f_lo), lo, hi);
  }

  SemiWaveSolution solution;
  solution.c_star = c_star;
  solution.direction = direction;
  solution.boundary_slope = f(c_star) + c_star / params.stefan;
  solution.residual = std::abs(params.stefan * solution.boundary_slope - c_star);
  return solution;
}

std::vector<ProfilePoint> reconstruct_profile(double c_star, Direction direction,
                                              const MediumParams& params, const ReactionTerm& term,
                                              double delta_profile, std::size_t points,
                                              const TrajectoryOptions& options) {
  if (!(delta_profile > 0.0 && delta_profile < 0.5 * term.capacity())) {
    throw Error(ErrorKind::InvalidArgument, "profile truncation must satisfy 0 < delta << K");
  }
  if (points < 2) throw Error(ErrorKind::InvalidArgument, "profile needs at least two points");

  TrajectoryOptions tracked = options;
  tracked.track_position = true;
  tracked.departure = delta_profile / term.capacity();
  const auto trajectory = integrate_trajectory(c_star, direction, params, term, tracked);
  if (trajectory.status != TrajectoryStatus::PositiveIntercept) {
    throw Error(trajectory.status == TrajectoryStatus::DegenerateZero ? ErrorKind::DegenerateZero
                                                                       : ErrorKind::IntegrationFailed,
                "cannot reconstruct profile at c = " + std::to_string(c_star));
  }

  const auto& samples = trajectory.samples;
  const double z_max = samples.back().tail;
  std::vector<double> z;
  std::vector<double> q;
  z.reserve(samples.size());
  q.reserve(samples.size());
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    const double zi = z_max - it->tail;
    if (!z.empty() && !(zi > z.back())) continue;
    z.push_back(zi);
    q.push_back(it->q);
  }
  z.front() = 0.0;
  const double z_end = z.back();
  const double left_slope = samples.back().p;
  const double right_slope = samples.front().p;

  boost::math::interpolators::pchip<std::vector<double>> spline(std::move(z), std::move(q), left_slope,
                                                                right_slope);
  std::vector<ProfilePoint> profile;
  profile.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double zi = i + 1 == points
                          ? z_end
                          : z_end * static_cast<double>(i) / static_cast<double>(points - 1);
    profile.push_back({zi, spline(zi)});
  }
  profile.front().q = 0.0;
  profile.back().q = term.capacity() - delta_profile;
  return profile;
}

std::pair<double, double> perturbed_speeds(Direction direction, const MediumParams& params,
                                           double epsilon, const SolveOptions& options) {
  const auto lower = solve_speed(direction, params, perturb_lower(epsilon), options).c_star;
  const auto base = solve_speed(direction, params, ReactionTerm::logistic(), options).c_star;
  const auto upper = solve_speed(direction, params, perturb_upper(epsilon), options).c_star;
  if (!(lower < base && base < upper)) {
    throw Error(ErrorKind::OrderingViolation,
                "perturbed speeds do not sandwich c* (" + std::to_string(lower) + ", " +
                    std::to_string(base) + ", " + std::to_string(upper) + ")");
  }
  return {lower, upper};
}

SpeedTriple speed_triple(const MediumParams& params, const ReactionTerm& term,
                         const SolveOptions& options) {
  SpeedTriple triple;
  triple.left = solve_speed(Direction::Left, params, term, options);
  triple.none = solve_speed(Direction::NoAdvection, params, term, options);
  triple.right = solve_speed(Direction::Right, params, term, options);
  if (params.advection > 0.0) {
    const bool ordered = 0.0 < triple.left.c_star && triple.left.c_star < triple.none.c_star &&
                         triple.none.c_star < triple.right.c_star;
    if (!ordered) {
      throw Error(ErrorKind::OrderingViolation,
                  "expected 0 < c_l < c < c_r, got " + std::to_string(triple.left.c_star) + ", " +
                      std::to_string(triple.none.c_star) + ", " +
                      std::to_string(triple.right.c_star));
    }
  }
  return triple;
}

}  // namespace spreadspeed
