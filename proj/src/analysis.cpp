#include "hypersq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <tuple>

#include "hypersq/conformal.hpp"
#include "hypersq/hyperbolic.hpp"
#include "hypersq/parallel.hpp"
#include "hypersq/special_fn.hpp"

namespace hypersq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kSampleMargin = 1e-6;
constexpr double kMinHalfWidth = 1e-6;

template <std::size_t D>
using Vec = std::array<double, D>;

// Compass search: poll +-step along each axis, move to the first improvement,
// halve all steps when no direction improves.
template <std::size_t D, typename Objective, typename Project>
std::pair<Vec<D>, double> pattern_search(Vec<D> best, double best_value, Vec<D> step, int iters,
                                         Objective&& objective, Project&& project, int& evaluations) {
  for (int it = 0; it < iters; ++it) {
    bool moved = false;
    for (std::size_t d = 0; d < D && !moved; ++d) {
      for (double sign : {1.0, -1.0}) {
        Vec<D> candidate = best;
        candidate[d] += sign * step[d];
        candidate = project(candidate);
        if (candidate == best) continue;
        const double value = objective(candidate);
        ++evaluations;
        if (value > best_value) {
          best = candidate;
          best_value = value;
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      for (double& s : step) s *= 0.5;
    }
  }
  return {best, best_value};
}

double safe_ratio(const SquarePoint& x, const SquarePoint& y, const Tolerances& tol) {
  if (x.boundary_distance() < kBoundaryExclusion || y.boundary_distance() < kBoundaryExclusion) return kNegInf;
  if (std::abs(x.value() - y.value()) < 1e-12) return kNegInf;
  return ratio(x, y, tol);
}

double opposite_side_objective(const Vec<3>& v, const Tolerances& tol) {
  const OppositeSidePair cfg{v[0], v[1], v[2]};
  if (!cfg.feasible()) return kNegInf;
  return opposite_side_ratio(cfg, tol);
}

bool lex_less(const OppositeSidePair& l, const OppositeSidePair& r) {
  return std::tie(l.a, l.u1, l.u2) < std::tie(r.a, r.u1, r.u2);
}

}  // namespace

double sharp_constant() {
  static const double value = elliptic_K(Modulus::from_k(std::numbers::sqrt2 / 2.0));
  return value;
}

bool OppositeSidePair::feasible() const {
  if (!(a > 0.0 && a < 1.0)) return false;
  if (std::abs(u1) > a || std::abs(u2) > a) return false;
  return std::abs(u1 + u2) <= a * a + u1 * u2;
}

RatioSample ratio_sample(const SquarePoint& x, const SquarePoint& y, const Tolerances& tol) {
  if (x.value() == y.value()) throw DomainError("ratio undefined for coincident points; use local_limit");
  RatioSample out{x, y, s_metric(x, y), th_half_rho_square(x, y, tol), 0.0};
  out.ratio = out.th_half / out.s;
  return out;
}

double ratio(const SquarePoint& x, const SquarePoint& y, const Tolerances& tol) {
  return ratio_sample(x, y, tol).ratio;
}

double local_limit(const SquarePoint& x, const Tolerances& tol) {
  if (x.boundary_distance() < kBoundaryExclusion) throw DomainError("local_limit requires an interior point");
  return 2.0 * x.boundary_distance() / conformal_radius(x, tol);
}

double opposite_side_s(const OppositeSidePair& cfg) {
  const double gap2 = (cfg.u1 - cfg.u2) * (cfg.u1 - cfg.u2);
  return std::sqrt((gap2 + 4.0 * cfg.a * cfg.a) / (gap2 + 4.0));
}

double opposite_side_ratio(const OppositeSidePair& cfg, const Tolerances& tol) {
  if (!cfg.feasible()) throw DomainError("OppositeSidePair violates |u1+u2| <= a^2 + u1 u2");
  return th_half_rho_square(cfg.lower(), cfg.upper(), tol) / opposite_side_s(cfg);
}

MaximizeResult maximize_ratio(int grid, int refine_iters, std::uint64_t seed, const Tolerances& tol) {
  if (grid < 8) throw DomainError("maximize_ratio requires grid >= 8");
  if (refine_iters < 0) throw DomainError("maximize_ratio requires refine_iters >= 0");
  MaximizeResult result;

  // Structured search over feasible (a, u1, u2).
  const int u_count = std::max(5, grid / 4);
  std::vector<OppositeSidePair> configs;
  for (int i = 0; i < grid; ++i) {
    const double a = (i + 0.5) / grid;
    for (int j = 0; j < u_count; ++j) {
      for (int k = 0; k < u_count; ++k) {
        const OppositeSidePair cfg{a, a * (-1.0 + 2.0 * j / (u_count - 1)), a * (-1.0 + 2.0 * k / (u_count - 1))};
        if (cfg.feasible()) configs.push_back(cfg);
      }
    }
  }
  std::vector<double> values(configs.size());
  parallel_for(configs.size(), [&](std::size_t i) { values[i] = opposite_side_ratio(configs[i], tol); });
  result.structured_evaluations = static_cast<int>(configs.size());

  std::size_t best = 0;
  for (std::size_t i = 1; i < configs.size(); ++i) {
    if (values[i] > values[best] || (values[i] == values[best] && lex_less(configs[i], configs[best]))) best = i;
  }

  const auto project3 = [](Vec<3> v) {
    v[0] = std::clamp(v[0], kMinHalfWidth, 1.0 - kSampleMargin);
    v[1] = std::clamp(v[1], -v[0], v[0]);
    v[2] = std::clamp(v[2], -v[0], v[0]);
    return v;
  };
  const double step = 1.0 / grid;
  const auto [cfg_best, cfg_value] = pattern_search<3>(
      {configs[best].a, configs[best].u1, configs[best].u2}, values[best], {step, step, step}, refine_iters,
      [&](const Vec<3>& v) { return opposite_side_objective(v, tol); }, project3, result.structured_evaluations);
  result.structured_config = {cfg_best[0], cfg_best[1], cfg_best[2]};
  result.structured = ratio_sample(result.structured_config.lower(), result.structured_config.upper(), tol);

  // Unstructured witness: seeded random pairs in K x K, then the same refinement.
  const std::size_t n_random = static_cast<std::size_t>(grid) * grid;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0 + kSampleMargin, 1.0 - kSampleMargin);
  std::vector<Vec<4>> pairs(n_random);
  for (auto& v : pairs) v = {coord(rng), coord(rng), coord(rng), coord(rng)};
  std::vector<double> raw(n_random);
  const auto objective4 = [&](const Vec<4>& v) {
    return safe_ratio(SquarePoint(v[0], v[1]), SquarePoint(v[2], v[3]), tol);
  };
  parallel_for(n_random, [&](std::size_t i) { raw[i] = objective4(pairs[i]); });
  result.unstructured_evaluations = static_cast<int>(n_random);
  const std::size_t best_raw =
      static_cast<std::size_t>(std::max_element(raw.begin(), raw.end()) - raw.begin());

  const auto project4 = [](Vec<4> v) {
    for (double& c : v) c = std::clamp(c, -1.0 + kSampleMargin, 1.0 - kSampleMargin);
    return v;
  };
  const double step4 = 2.0 / grid;
  const auto [pair_best, pair_value] =
      pattern_search<4>(pairs[best_raw], raw[best_raw], {step4, step4, step4, step4}, refine_iters, objective4,
                        project4, result.unstructured_evaluations);
  result.unstructured = ratio_sample(SquarePoint(pair_best[0], pair_best[1]),
                                     SquarePoint(pair_best[2], pair_best[3]), tol);
  return result;
}

SegmentCheckReport segment_dominance_check(const SquarePoint& x, int samples, const Tolerances& tol) {
  if (!in_triangle_AOD(x)) throw DomainError("segment_dominance_check requires x in triangle AOD");
  if (x.boundary_distance() < kBoundaryExclusion) throw DomainError("segment_dominance_check requires interior x");
  if (samples < 25) throw DomainError("segment_dominance_check requires at least 25 samples");

  const Decomposition dec = compute_pq(x);
  SegmentCheckReport report{x, dec.p, dec.q};
  report.segment_max.fill(kNegInf);
  report.region_max.fill(kNegInf);

  // Interior: cell-centred grid, classified by region.
  const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(samples))));
  std::vector<SquarePoint> grid_points;
  grid_points.reserve(static_cast<std::size_t>(side) * side);
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      grid_points.emplace_back(-1.0 + (2.0 * i + 1.0) / side, -1.0 + (2.0 * j + 1.0) / side);
    }
  }
  std::vector<double> grid_values(grid_points.size(), kNegInf);
  std::vector<RegionLabel> labels(grid_points.size());
  parallel_for(grid_points.size(), [&](std::size_t i) {
    labels[i] = classify_region(x, grid_points[i]);
    if (labels[i] != RegionLabel::Separator) grid_values[i] = safe_ratio(x, grid_points[i], tol);
  });
  for (std::size_t i = 0; i < grid_points.size(); ++i) {
    if (labels[i] == RegionLabel::Separator || grid_values[i] == kNegInf) continue;
    double& slot = report.region_max[static_cast<std::size_t>(labels[i])];
    slot = std::max(slot, grid_values[i]);
    ++report.interior_samples;
  }

  // Segments: uniform samples plus golden-section refinement around the best one.
  const auto segments = dec.segments();
  const int per_segment = std::max(50, samples / 5);
  parallel_for(segments.size(), [&](std::size_t k) {
    const auto [from, to] = segments[k];
    if (std::abs(to - from) == 0.0) return;
    const auto at = [&](double t) {
      const Complex y = from + t * (to - from);
      if (std::max(std::abs(y.real()), std::abs(y.imag())) > 1.0) return kNegInf;
      return safe_ratio(x, SquarePoint(y), tol);
    };
    int best_i = 0;
    double best_v = kNegInf;
    for (int i = 0; i <= per_segment; ++i) {
      const double v = at(static_cast<double>(i) / per_segment);
      if (v > best_v) {
        best_v = v;
        best_i = i;
      }
    }
    double lo = std::max(0.0, (best_i - 1.0) / per_segment);
    double hi = std::min(1.0, (best_i + 1.0) / per_segment);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double m1 = hi - inv_phi * (hi - lo);
    double m2 = lo + inv_phi * (hi - lo);
    double f1 = at(m1);
    double f2 = at(m2);
    for (int it = 0; it < 60; ++it) {
      if (f1 >= f2) {
        hi = m2;
        m2 = m1;
        f2 = f1;
        m1 = hi - inv_phi * (hi - lo);
        f1 = at(m1);
      } else {
        lo = m1;
        m1 = m2;
        f1 = f2;
        m2 = lo + inv_phi * (hi - lo);
        f2 = at(m2);
      }
    }
    report.segment_max[k] = std::max({best_v, f1, f2});
  });

  report.segment_overall = *std::max_element(report.segment_max.begin(), report.segment_max.end());
  report.interior_overall = *std::max_element(report.region_max.begin(), report.region_max.end());
  report.passed = report.segment_overall >= report.interior_overall - 1e-7;
  return report;
}

VerifyReport verify_theorem(std::size_t n_pairs, std::uint64_t seed, const Tolerances& tol) {
  if (n_pairs < 1) throw DomainError("verify_theorem requires n_pairs >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0 + kSampleMargin, 1.0 - kSampleMargin);
  std::vector<std::array<double, 4>> pairs(n_pairs);
  for (auto& v : pairs) v = {coord(rng), coord(rng), coord(rng), coord(rng)};

  std::vector<RatioSample> samples(n_pairs);
  parallel_for(n_pairs, [&](std::size_t i) {
    samples[i] = ratio_sample(SquarePoint(pairs[i][0], pairs[i][1]), SquarePoint(pairs[i][2], pairs[i][3]), tol);
  });

  VerifyReport report;
  report.n = n_pairs;
  report.histogram_hi = sharp_constant();
  report.histogram.assign(20, 0);
  const double upper = sharp_constant() + 1e-6;
  const double lower = 1.0 - 1e-9;
  std::size_t imin = 0;
  std::size_t imax = 0;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const double r = samples[i].ratio;
    if (!(r >= lower && r <= upper)) ++report.violations;
    if (r < samples[imin].ratio) imin = i;
    if (r > samples[imax].ratio) imax = i;
    const double unit = (r - report.histogram_lo) / (report.histogram_hi - report.histogram_lo);
    const auto bin = static_cast<std::size_t>(std::clamp(unit * 20.0, 0.0, 19.0));
    ++report.histogram[bin];
  }
  report.argmin = samples[imin];
  report.argmax = samples[imax];
  report.min_ratio = samples[imin].ratio;
  report.max_ratio = samples[imax].ratio;
  return report;
}

}  // namespace hypersq
