#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hypersq/smetric.hpp"
#include "hypersq/types.hpp"

namespace hypersq {

/// K(sqrt(2)/2) = 1.854074677..., the sharp upper constant for the square.
double sharp_constant();

/// A point pair with both metrics and their ratio th(rho/2) / s.
struct RatioSample {
  SquarePoint x;
  SquarePoint y;
  double s = 0.0;
  double th_half = 0.0;
  double ratio = 0.0;
};

/// Pair w1 = u1 - i a, w2 = u2 + i a on opposite sides of the centred square
/// of half-width a, restricted by |u1 + u2| <= a^2 + u1 u2.
struct OppositeSidePair {
  double a = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;

  bool feasible() const;
  SquarePoint lower() const { return SquarePoint(u1, -a); }
  SquarePoint upper() const { return SquarePoint(u2, a); }
};

RatioSample ratio_sample(const SquarePoint& x, const SquarePoint& y, const Tolerances& tol = {});

/// th(rho_K/2) / s_K for distinct interior points; DomainError when x == y.
double ratio(const SquarePoint& x, const SquarePoint& y, const Tolerances& tol = {});

/// lim_{y -> x} of the ratio: 2 d_K(x) / r_K(x).
double local_limit(const SquarePoint& x, const Tolerances& tol = {});

/// Closed-form s for an OppositeSidePair: sqrt(((u1-u2)^2 + 4a^2) / ((u1-u2)^2 + 4)).
double opposite_side_s(const OppositeSidePair& cfg);

double opposite_side_ratio(const OppositeSidePair& cfg, const Tolerances& tol = {});

struct MaximizeResult {
  RatioSample structured;
  OppositeSidePair structured_config;
  RatioSample unstructured;
  int structured_evaluations = 0;
  int unstructured_evaluations = 0;
};

/// Grid plus pattern search over feasible OppositeSidePair, cross-checked by a
/// seeded random search (with the same refinement) over K x K.
MaximizeResult maximize_ratio(int grid, int refine_iters, std::uint64_t seed, const Tolerances& tol = {});

struct SegmentCheckReport {
  SquarePoint x;
  SquarePoint p;
  SquarePoint q;
  std::array<double, 5> segment_max{};  // Ap, Bp, Cq, Dq, pq
  std::array<double, 4> region_max{};   // G1..G4 interior samples
  double segment_overall = 0.0;
  double interior_overall = 0.0;
  int interior_samples = 0;
  bool passed = false;
};

/// Compares the ratio's maximum over interior samples of each region with its
/// maximum over the five separating segments (segments must dominate).
SegmentCheckReport segment_dominance_check(const SquarePoint& x, int samples, const Tolerances& tol = {});

struct VerifyReport {
  std::size_t n = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  RatioSample argmin;
  RatioSample argmax;
  std::size_t violations = 0;
  double histogram_lo = 1.0;
  double histogram_hi = 0.0;
  std::vector<std::size_t> histogram;

  bool passed() const { return violations == 0; }
};

/// Seeded uniform pairs from [-1 + 1e-6, 1 - 1e-6]^2; checks
/// 1 - 1e-9 <= ratio <= sharp_constant() + 1e-6 for each.
VerifyReport verify_theorem(std::size_t n_pairs, std::uint64_t seed, const Tolerances& tol = {});

}  // namespace hypersq
