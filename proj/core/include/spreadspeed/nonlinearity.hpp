#pragma once

#include <functional>
#include <string>

namespace spreadspeed {

enum class ReactionKind { Logistic, LogisticLower, LogisticUpper, Custom };

/// Monostable reaction term f on [0, K].
///
/// The logistic family f(u) = u(1 - u/K) covers the plain logistic term
/// (K = 1) and both epsilon perturbations (K = 1 - eps, K = 1 + eps). Custom
/// terms are supplied as a callback together with the declared slopes at 0
/// and K; monostability is checked by sampling. Custom terms are assumed
/// continuously differentiable on [0, K] and of KPP type (f(u) <= f'(0) u),
/// so that the linearization at the origin sets the minimal wave speed.
///
/// Instances are immutable and cheap to copy.
class ReactionTerm {
 public:
  using Callback = std::function<double(double)>;

  static ReactionTerm logistic();
  /// u(1 - u/(1-eps)), zeros {0, 1-eps}. Requires 0 < eps < 1.
  static ReactionTerm logistic_lower(double epsilon);
  /// u(1 - u/(1+eps)), zeros {0, 1+eps}. Requires eps > 0.
  static ReactionTerm logistic_upper(double epsilon);
  static ReactionTerm custom(std::string name, double capacity, Callback f,
                             double derivative_at_zero, double derivative_at_capacity);

  double operator()(double u) const {
    if (kind_ == ReactionKind::Custom) return callback_(u);
    return u * (1.0 - u / capacity_);
  }

  ReactionKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  double epsilon() const noexcept { return epsilon_; }
  double capacity() const noexcept { return capacity_; }
  double derivative_at_zero() const noexcept { return derivative_at_zero_; }
  double derivative_at_capacity() const noexcept { return derivative_at_capacity_; }
  /// Integral of f over [0, K].
  double integral() const noexcept { return integral_; }

 private:
  ReactionTerm() = default;

  ReactionKind kind_ = ReactionKind::Logistic;
  std::string name_ = "logistic";
  double epsilon_ = 0.0;
  double capacity_ = 1.0;
  double derivative_at_zero_ = 1.0;
  double derivative_at_capacity_ = -1.0;
  double integral_ = 1.0 / 6.0;
  Callback callback_;
};

inline double eval_logistic(double u) { return u * (1.0 - u); }

inline ReactionTerm perturb_lower(double epsilon) { return ReactionTerm::logistic_lower(epsilon); }
inline ReactionTerm perturb_upper(double epsilon) { return ReactionTerm::logistic_upper(epsilon); }
inline double integral(const ReactionTerm& term) { return term.integral(); }

/// Builds a logistic-family term from its CLI name: "logistic", "lower" or
/// "upper" (the latter two take eps).
ReactionTerm reaction_from_name(const std::string& name, double epsilon);

/// Adaptive quadrature of f over [a, b] to relative tolerance tol.
/// Throws Error(QuadratureFailure) if the error estimate stays above tol.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace spreadspeed
