// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hypersq/analysis.hpp"
#include "hypersq/certify.hpp"
#include "hypersq/conformal.hpp"
#include "hypersq/hyperbolic.hpp"
#include "hypersq/smetric.hpp"
#include "hypersq/special_fn.hpp"

using namespace hypersq;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

class Suite {
 public:
  void run(int id, const char* title, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d  %-36s %s [%.2fs]\n", out.pass ? "PASS" : "FAIL", id, title, out.detail.c_str(), secs);
    std::fflush(stdout);
    failures_ += out.pass ? 0 : 1;
    ++total_;
  }

  int finish() const {
    std::printf("%d/%d criteria passed\n", total_ - failures_, total_);
    return failures_ == 0 ? 0 : 1;
  }

 private:
  int failures_ = 0;
  int total_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

constexpr double kR0 = 0.625623;
constexpr double kA0 = 0.485087;
constexpr double kBudgetAtR0 = 0.314881;
constexpr double kSharp = 1.854074677;

}  // namespace

int main() {
  Suite suite;

  suite.run(1, "normalizing constant C", [] {
    const auto start = std::chrono::steady_clock::now();
    const double c = schwarz_christoffel_C();
    const double secs = seconds_since(start);
    const bool ok = std::abs(c - 0.927037) <= 1e-6 && secs < 1.0;
    return Outcome{ok, fmt("C=%.12f target 0.927037 tol 1e-6, %.3g s", c, secs)};
  });

  suite.run(2, "square rectangle constant", [] {
    const double k_value = elliptic_K(Modulus::from_k(std::numbers::sqrt2 / 2));
    const double rect = rect_constant(Modulus::from_k(3.0 - 2.0 * std::numbers::sqrt2));
    const double twice_c = 2.0 * schwarz_christoffel_C();
    const bool ok = std::abs(k_value - kSharp) <= 1e-8 && std::abs(rect - k_value) <= 1e-6 &&
                    std::abs(rect - twice_c) <= 1e-9;
    return Outcome{ok, fmt("K(sqrt2/2)=%.12f rect=%.12f 2C=%.12f", k_value, rect, twice_c)};
  });

  suite.run(3, "diagonal offset a0 and r_of_a", [] {
    const double a0 = B_integral(kR0) / (std::numbers::sqrt2 * schwarz_christoffel_C());
    const double r = r_of_a(kA0);
    const bool ok = std::abs(a0 - kA0) <= 1e-5 && std::abs(r - kR0) <= 1e-5;
    return Outcome{ok, fmt("a0=%.7f (target 0.485087, diff %.2e) r_of_a=%.7f (target 0.625623, diff %.2e), tol 1e-5",
                           a0, a0 - kA0, r, r - kR0)};
  });

  suite.run(4, "diameter factor chain", [] {
    const auto grid = linear_grid(0.01, 0.99, 1000);
    int not_increasing = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (!(diameter_factor(grid[i]) > diameter_factor(grid[i - 1]))) ++not_increasing;
    }
    const double at_r0 = diameter_factor(kR0);
    const bool ok = not_increasing == 0 && at_r0 < 1.0;
    return Outcome{ok, fmt("strictly increasing: %d/999 steps fail; F(0.01)=%.6f F(0.99)=%.6f; F(r0)=%.9f < 1",
                           not_increasing, diameter_factor(0.01), diameter_factor(0.99), at_r0)};
  });

  suite.run(5, "normalized budget at r0", [] {
    const double v = normalized_budget(kR0);
    int not_increasing = 0;
    const auto grid = linear_grid(kR0 / 1000.0, kR0, 1000);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (!(normalized_budget(grid[i]) > normalized_budget(grid[i - 1]))) ++not_increasing;
    }
    const bool ok = std::abs(v - kBudgetAtR0) <= 1e-5 && not_increasing == 0;
    return Outcome{ok, fmt("value=%.9f target 0.314881 (diff %.2e) tol 1e-5; increasing on (0,r0]: %d fails", v,
                           v - kBudgetAtR0, not_increasing)};
  });

  suite.run(6, "separation constants", [] {
    const auto [alpha, beta] = separation_constants(kA0);
    const bool ok = std::abs(alpha - 0.235309) <= 1e-5 && std::abs(beta - 0.933029) <= 1e-5;
    return Outcome{ok, fmt("alpha=%.9f beta=%.9f", alpha, beta)};
  });

  suite.run(7, "budget thresholds", [] {
    const double g1 = budget_threshold(0.235309, 0.933029);
    const double g2 = budget_threshold(2.0, 1.0);
    const bool ok = std::abs(g1 - 0.449368) <= 1e-5 && std::abs(g2 - 0.343805) <= 1e-5 && g1 > kBudgetAtR0 &&
                    g2 > kBudgetAtR0;
    return Outcome{ok, fmt("gamma_same=%.9f gamma_opposite=%.9f, both > 0.314881", g1, g2)};
  });

  suite.run(8, "conformal map round trip", [] {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    int count = 0;
    while (count < 500) {
      const Complex z(unit(rng), unit(rng));
      if (std::abs(z) > 1.0) continue;
      const Complex scaled = 0.95 * z;
      worst = std::max(worst, std::abs(inverse_map(forward_map(DiscPoint(scaled))).value() - scaled));
      ++count;
    }
    const double secs = seconds_since(start);
    return Outcome{worst <= 1e-10 && secs < 10.0, fmt("500 points, max error %.3e (tol 1e-10), %.2f s", worst, secs)};
  });

  suite.run(9, "s-metric vs boundary oracle", [] {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    int mismatched = 0;
    int compared = 0;
    for (int i = 0; i < 10000; ++i) {
      const SquarePoint x(unit(rng), unit(rng));
      const SquarePoint y(unit(rng), unit(rng));
      const OracleResult oracle = boundary_oracle(x, y);
      worst = std::max(worst, std::abs(s_metric(x, y) - oracle.s));
      const CanonicalPair c = canonicalize(x, y);
      const OracleResult canon = boundary_oracle(c.x, c.y);
      if (canon.runner_up_gap < 1e-8) continue;
      ++compared;
      if (static_cast<int>(classify_region(c.x, c.y)) != static_cast<int>(canon.side)) ++mismatched;
    }
    const bool ok = worst <= 1e-9 && mismatched == 0;
    return Outcome{ok, fmt("10^4 pairs, max |s - oracle| %.3e (tol 1e-9); region mismatches %d/%d", worst,
                           mismatched, compared)};
  });

  suite.run(10, "two-sided bound on random pairs", [] {
    const auto start = std::chrono::steady_clock::now();
    const VerifyReport rep = verify_theorem(100000, 0);
    const double secs = seconds_since(start);
    const bool ok = rep.violations == 0 && rep.min_ratio >= 1.0 - 1e-9 && rep.max_ratio <= 1.854075 && secs < 120.0;
    return Outcome{ok, fmt("n=%zu min=%.9f max=%.9f violations=%zu, %.1f s", rep.n, rep.min_ratio, rep.max_ratio,
                           rep.violations, secs)};
  });

  suite.run(11, "sharpness at the centre", [] {
    std::vector<double> values;
    for (double h : {1e-2, 1e-3, 1e-4}) values.push_back(ratio(SquarePoint(0.0, -h), SquarePoint(0.0, h)));
    const double limit = local_limit(SquarePoint(0.0, 0.0));
    const bool increasing = values[0] < values[1] && values[1] < values[2] && values[2] <= kSharp + 1e-9;
    const bool ok = increasing && kSharp - values[2] < 1e-4 && std::abs(limit - kSharp) <= 1e-6;
    return Outcome{ok, fmt("h=1e-2,1e-3,1e-4: %.9f %.9f %.9f; final gap %.2e; local_limit(0)=%.9f", values[0],
                           values[1], values[2], kSharp - values[2], limit)};
  });

  suite.run(12, "segment and opposite-side structure", [] {
    std::string detail;
    bool ok = true;
    for (const SquarePoint x : {SquarePoint(0.0, -0.2), SquarePoint(0.0, -0.4), SquarePoint(0.3, -0.4)}) {
      const SegmentCheckReport rep = segment_dominance_check(x, 10000);
      ok = ok && rep.passed;
      detail += fmt("x=%g%+gi seg %.6f >= int %.6f; ", x.re(), x.im(), rep.segment_overall, rep.interior_overall);
    }
    const MaximizeResult res = maximize_ratio(64, 40, 0);
    ok = ok && res.structured.ratio >= res.unstructured.ratio - 1e-6;
    detail += fmt("structured %.9f vs unstructured %.9f", res.structured.ratio, res.unstructured.ratio);
    return Outcome{ok, detail};
  });

  suite.run(13, "proof-chain sampling", [] {
    const auto start = std::chrono::steady_clock::now();
    const auto grid = linear_grid(0.01, 0.48, 50);
    CertReport rep = check_separation_bounds(grid, 1000, 0);
    rep.append(check_reduction_chain(grid, 1000, 1));
    const double secs = seconds_since(start);
    std::size_t violations = 0;
    std::size_t n = 0;
    bool has_denominator = false;
    for (const auto& s : rep.sampled) {
      violations += s.violations;
      n += s.n;
      has_denominator = has_denominator || s.name == "denominator_positive";
    }
    const bool ok = violations == 0 && has_denominator && secs < 60.0;
    return Outcome{ok, fmt("%zu checks across %zu groups, %zu violations, %.2f s", n, rep.sampled.size(), violations,
                           secs)};
  });

  suite.run(14, "local limit consistency", [] {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> coord(-0.95, 0.95);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const SquarePoint x(coord(rng), coord(rng));
      const Complex step = std::polar(1e-5, angle(rng));
      const double fd = ratio(x, SquarePoint(x.value() + step));
      worst = std::max(worst, std::abs(fd - local_limit(x)));
    }
    return Outcome{worst <= 1e-3, fmt("20 points, delta=1e-5, max |ratio - 2d/r| %.3e (tol 1e-3)", worst)};
  });

  return suite.finish();
}
