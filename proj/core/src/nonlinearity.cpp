#include "spreadspeed/nonlinearity.hpp"

#include <cmath>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spreadspeed/error.hpp"

namespace spreadspeed {
namespace {

constexpr int kMonostableSamples = 1000;
constexpr double kZeroTolerance = 1e-14;
constexpr double kQuadratureTolerance = 1e-12;

}  // namespace

ReactionTerm ReactionTerm::logistic() { return ReactionTerm{}; }

ReactionTerm ReactionTerm::logistic_lower(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "lower perturbation needs 0 < eps < 1");
  }
  ReactionTerm term;
  term.kind_ = ReactionKind::LogisticLower;
  term.name_ = "lower";
  term.epsilon_ = epsilon;
  term.capacity_ = 1.0 - epsilon;
  // For u(1 - u/K): f'(0) = 1, f'(K) = -1, integral K^2/6.
  term.integral_ = term.capacity_ * term.capacity_ / 6.0;
  return term;
}

ReactionTerm ReactionTerm::logistic_upper(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::InvalidArgument, "upper perturbation needs eps > 0");
  }
  ReactionTerm term;
  term.kind_ = ReactionKind::LogisticUpper;
  term.name_ = "upper";
  term.epsilon_ = epsilon;
  term.capacity_ = 1.0 + epsilon;
  term.integral_ = term.capacity_ * term.capacity_ / 6.0;
  return term;
}

ReactionTerm ReactionTerm::custom(std::string name, double capacity, Callback f,
                                  double derivative_at_zero, double derivative_at_capacity) {
  if (!f) throw Error(ErrorKind::InvalidArgument, "custom reaction term needs a callback");
  if (!(capacity > 0.0) || !std::isfinite(capacity)) {
    throw Error(ErrorKind::InvalidArgument, "carrying capacity must be positive");
  }
  if (!(derivative_at_capacity < 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "f'(K) must be negative");
  }
  if (!(derivative_at_zero > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "f'(0) must be positive");
  }
  if (std::abs(f(0.0)) > kZeroTolerance || std::abs(f(capacity)) > kZeroTolerance) {
    throw Error(ErrorKind::InvalidArgument, "custom term must vanish at 0 and K");
  }
  for (int i = 1; i < kMonostableSamples; ++i) {
    const double u = capacity * static_cast<double>(i) / kMonostableSamples;
    if (!(f(u) > 0.0)) {
      throw Error(ErrorKind::InvalidArgument,
                  "custom term is not positive on (0, K) at u = " + std::to_string(u));
    }
  }

  ReactionTerm term;
  term.kind_ = ReactionKind::Custom;
  term.name_ = std::move(name);
  term.capacity_ = capacity;
  term.derivative_at_zero_ = derivative_at_zero;
  term.derivative_at_capacity_ = derivative_at_capacity;
  term.callback_ = std::move(f);
  term.integral_ = integrate_adaptive(term.callback_, 0.0, capacity, kQuadratureTolerance);
  return term;
}

ReactionTerm reaction_from_name(const std::string& name, double epsilon) {
  if (name == "logistic") return ReactionTerm::logistic();
  if (name == "lower") return ReactionTerm::logistic_lower(epsilon);
  if (name == "upper") return ReactionTerm::logistic_upper(epsilon);
  throw Error(ErrorKind::InvalidArgument, "unknown reaction term '" + name + "'");
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  double l1 = 0.0;
  const double value = gauss_kronrod<double, 31>::integrate(f, a, b, 30, tol, &error, &l1);
  if (!std::isfinite(value) || error > tol * std::max(l1, 1e-300) * 10.0) {
    throw Error(ErrorKind::QuadratureFailure,
                "quadrature did not converge (error estimate " + std::to_string(error) + ")");
  }
  return value;
}

}  // namespace spreadspeed
