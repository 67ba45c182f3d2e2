#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hypersq/types.hpp"

namespace hypersq {

/// Values printed in the published derivation, compared against in reports.
namespace reference {
inline constexpr double kC = 0.927037;
inline constexpr double kSharpConstant = 1.854074677;
inline constexpr double kR0 = 0.625623;
inline constexpr double kA0 = 0.485087;
inline constexpr double kBudgetAtR0 = 0.314881;
inline constexpr double kAlphaSameSign = 0.235309;
inline constexpr double kBetaSameSign = 0.933029;
inline constexpr double kGammaSameSign = 0.449368;
inline constexpr double kAlphaOppositeSign = 2.0;
inline constexpr double kBetaOppositeSign = 1.0;
inline constexpr double kGammaOppositeSign = 0.343805;
}  // namespace reference

/// A(r) = sqrt(1 + r^4) - 1, the bound on |g'(w)/C - 1| over |z| <= r.
double derivative_excess(double r);

/// F(r) = sqrt(2) r / ((1 + r^2) B(r)); continuous extension F(0) = sqrt(2).
/// Decreases from sqrt(2) to 1 / (2C) on [0, 1].
double diameter_factor(double r);

/// Phi(r) = A + 2 A B^2 + A^2 B^2.
double perturbation_budget(double r);

/// Phi(r) / B(r)^2 = A/B^2 + 2A + A^2; continuous extension 0 at r = 0.
double normalized_budget(double r);

/// gamma = beta (C^2 - (alpha/8)(1 + A(r0))) / (2 C^2), with r0 = 0.625623.
double budget_threshold(double alpha, double beta);

/// (a0^2, 1 - a0^2 / (1 + sqrt(1 - a0^2))^2).
std::pair<double, double> separation_constants(double a0);

/// Unique root of diameter_factor(r) = 1.
double diameter_factor_root();

/// n pairs (u1, u2) in [-a, a]^2 with |u1 + u2| <= a^2 + u1 u2; half of them
/// with u1 u2 >= 0 and half with u1 u2 < 0.
std::vector<std::pair<double, double>> sample_feasible_offsets(double a, int n, std::uint64_t seed);

struct CertEntry {
  std::string name;
  double computed;
  double reference;
  double tol;
  bool pass;
};

struct SampledCheck {
  std::string name;
  std::size_t n;
  std::size_t violations;
};

struct CertReport {
  std::vector<CertEntry> entries;
  std::vector<SampledCheck> sampled;

  void add_entry(std::string name, double computed, double reference, double tol);
  void add_check(std::string name, std::size_t n, std::size_t violations);
  void append(const CertReport& other);
  bool passed() const;
};

struct ProofConstants {
  double C;
  double rect_constant_square;
  double r0;
  double a0;
  double budget_at_r0;
  double alpha_pos;
  double beta_pos;
  double gamma_pos;
  double alpha_neg;
  double beta_neg;
  double gamma_neg;
};

ProofConstants compute_proof_constants();

/// Same-sign and opposite-sign bounds on (u1 - u2)^2 and a^2 - u1 u2.
CertReport check_separation_bounds(const std::vector<double>& a_grid, int n, std::uint64_t seed);

/// The small-square inequality chain: main inequality, positive denominator,
/// budget inequality, and (on a tenth of the samples) the distortion bound on
/// the actual hyperbolic distance.
CertReport check_reduction_chain(const std::vector<double>& a_grid, int n, std::uint64_t seed,
                                 const Tolerances& tol = {});

/// n uniformly spaced values in [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int n);

CertReport full_certify(std::uint64_t seed = 0, int samples_per_a = 1000);

std::string to_json(const CertReport& report);
std::string to_csv(const CertReport& report);

}  // namespace hypersq
