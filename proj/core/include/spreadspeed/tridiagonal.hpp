#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spreadspeed {

/// Thomas algorithm for a tridiagonal system
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
/// lower[0] and upper[n-1] are ignored. No pivoting: the matrix must be
/// diagonally dominant (an M-matrix in every use here).
class TridiagonalSolver {
 public:
  void solve(std::span<const double> lower, std::span<const double> diag,
             std::span<const double> upper, std::span<const double> rhs, std::span<double> x) {
    const std::size_t n = diag.size();
    c_prime_.resize(n);
    d_prime_.resize(n);

    c_prime_[0] = upper[0] / diag[0];
    d_prime_[0] = rhs[0] / diag[0];
    // Forward sweep
    for (std::size_t i = 1; i < n; ++i) {
      const double denom = diag[i] - lower[i] * c_prime_[i - 1];
      c_prime_[i] = i + 1 < n ? upper[i] / denom : 0.0;
      d_prime_[i] = (rhs[i] - lower[i] * d_prime_[i - 1]) / denom;
    }
    // Back substitution
    x[n - 1] = d_prime_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
      x[i] = d_prime_[i] - c_prime_[i] * x[i + 1];
    }
  }

 private:
  std::vector<double> c_prime_;
  std::vector<double> d_prime_;
};

}  // namespace spreadspeed
