#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "hypersq/errors.hpp"

namespace hypersq {

using Complex = std::complex<double>;

/// Numerical tolerances shared by quadrature and root finding.
struct Tolerances {
  double quad_tol = 1e-12;    // absolute quadrature tolerance
  double newton_tol = 1e-11;  // residual tolerance of root finders
  int max_iter = 100;

  void validate() const {
    if (!(quad_tol > 0.0) || !(newton_tol > 0.0) || max_iter < 1) {
      throw DomainError("tolerances must be positive and max_iter >= 1");
    }
  }
};

/// Elliptic modulus k together with its complement k' = sqrt(1 - k^2).
struct Modulus {
  double k = 0.0;
  double k_prime = 1.0;

  static Modulus from_k(double k) {
    if (!(k >= 0.0 && k <= 1.0)) throw DomainError("elliptic modulus outside [0,1]");
    return {k, std::sqrt((1.0 - k) * (1.0 + k))};
  }

  Modulus complement() const { return {k_prime, k}; }
};

/// Point of the closed square K = [-1,1]^2.
class SquarePoint {
 public:
  static constexpr double kSlack = 1e-12;

  SquarePoint() = default;
  explicit SquarePoint(Complex w) : w_(w) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) ||
        std::max(std::abs(w.real()), std::abs(w.imag())) > 1.0 + kSlack) {
      throw DomainError("point outside the square [-1,1]^2");
    }
  }
  SquarePoint(double re, double im) : SquarePoint(Complex(re, im)) {}

  Complex value() const { return w_; }
  double re() const { return w_.real(); }
  double im() const { return w_.imag(); }

  /// Euclidean distance to the boundary of K.
  double boundary_distance() const {
    return std::max(0.0, 1.0 - std::max(std::abs(w_.real()), std::abs(w_.imag())));
  }

 private:
  Complex w_{0.0, 0.0};
};

/// Point of the closed unit disc.
class DiscPoint {
 public:
  static constexpr double kSlack = 1e-12;

  DiscPoint() = default;
  explicit DiscPoint(Complex z) : z_(z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1.0 + kSlack) {
      throw DomainError("point outside the closed unit disc");
    }
  }

  Complex value() const { return z_; }

 private:
  Complex z_{0.0, 0.0};
};

}  // namespace hypersq
