#include "hypersq/certify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "hypersq/analysis.hpp"
#include "hypersq/conformal.hpp"
#include "hypersq/hyperbolic.hpp"
#include "hypersq/parallel.hpp"
#include "hypersq/special_fn.hpp"

namespace hypersq {

double derivative_excess(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("derivative_excess requires 0 <= r <= 1");
  const double r4 = r * r * r * r;
  return r4 / (std::sqrt(1.0 + r4) + 1.0);
}

double diameter_factor(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("diameter_factor requires 0 <= r < 1");
  if (r == 0.0) return std::numbers::sqrt2;
  return std::numbers::sqrt2 * r / ((1.0 + r * r) * B_integral(r));
}

double perturbation_budget(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("perturbation_budget requires 0 <= r < 1");
  const double a = derivative_excess(r);
  const double b2 = B_integral(r) * B_integral(r);
  return a + 2.0 * a * b2 + a * a * b2;
}

double normalized_budget(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("normalized_budget requires 0 <= r < 1");
  if (r == 0.0) return 0.0;
  const double a = derivative_excess(r);
  const double b = B_integral(r);
  return a / (b * b) + 2.0 * a + a * a;
}

double budget_threshold(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw DomainError("budget_threshold requires alpha, beta > 0");
  const double c2 = schwarz_christoffel_C() * schwarz_christoffel_C();
  return beta * (c2 - alpha / 8.0 * (1.0 + derivative_excess(reference::kR0))) / (2.0 * c2);
}

std::pair<double, double> separation_constants(double a0) {
  if (!(a0 >= 0.0 && a0 <= 1.0)) throw DomainError("separation_constants requires 0 <= a0 <= 1");
  const double a2 = a0 * a0;
  const double denom = 1.0 + std::sqrt(1.0 - a2);
  return {a2, 1.0 - a2 / (denom * denom)};
}

double diameter_factor_root() {
  double lo = 0.3;
  double hi = 0.9;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    (diameter_factor(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<std::pair<double, double>> sample_feasible_offsets(double a, int n, std::uint64_t seed) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("sample_feasible_offsets requires 0 < a < 1");
  if (n < 1) throw DomainError("sample_feasible_offsets requires n >= 1");
  const auto feasible = [a](double u1, double u2) { return std::abs(u1 + u2) <= a * a + u1 * u2; };

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(0.5);
  // Same-sign feasible pairs have |u1|, |u2| <= a^2; opposite-sign ones fill a band.
  std::uniform_real_distribution<double> same(0.0, std::min(a, a * a));
  std::uniform_real_distribution<double> full(0.0, a);

  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n));
  const int n_same = n / 2;
  while (static_cast<int>(out.size()) < n_same) {
    double u1 = same(rng);
    double u2 = same(rng);
    if (flip(rng)) {
      u1 = -u1;
      u2 = -u2;
    }
    if (feasible(u1, u2)) out.emplace_back(u1, u2);
  }
  while (static_cast<int>(out.size()) < n) {
    double u1 = full(rng);
    double u2 = -full(rng);
    if (u2 == 0.0) continue;
    if (flip(rng)) std::swap(u1, u2);
    if (u1 * u2 < 0.0 && feasible(u1, u2)) out.emplace_back(u1, u2);
  }
  return out;
}

void CertReport::add_entry(std::string name, double computed, double reference, double tol) {
  entries.push_back({std::move(name), computed, reference, tol, std::abs(computed - reference) <= tol});
}

void CertReport::add_check(std::string name, std::size_t n, std::size_t violations) {
  sampled.push_back({std::move(name), n, violations});
}

void CertReport::append(const CertReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  sampled.insert(sampled.end(), other.sampled.begin(), other.sampled.end());
}

bool CertReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const CertEntry& e) { return e.pass; }) &&
         std::all_of(sampled.begin(), sampled.end(), [](const SampledCheck& s) { return s.violations == 0; });
}

ProofConstants compute_proof_constants() {
  const double c = schwarz_christoffel_C();
  const auto [alpha_pos, beta_pos] = separation_constants(reference::kA0);
  return {
      c,
      rect_constant(Modulus::from_k(3.0 - 2.0 * std::numbers::sqrt2)),
      diameter_factor_root(),
      B_integral(reference::kR0) / (std::numbers::sqrt2 * c),
      normalized_budget(reference::kR0),
      alpha_pos,
      beta_pos,
      budget_threshold(reference::kAlphaSameSign, reference::kBetaSameSign),
      reference::kAlphaOppositeSign,
      reference::kBetaOppositeSign,
      budget_threshold(reference::kAlphaOppositeSign, reference::kBetaOppositeSign),
  };
}

namespace {

// Relative slack for comparisons that hold with equality on part of the domain.
constexpr double kRoundoff = 1e-14;

struct Counter {
  std::size_t n = 0;
  std::size_t violations = 0;

  void check(bool ok) {
    ++n;
    if (!ok) ++violations;
  }
  void merge(const Counter& o) {
    n += o.n;
    violations += o.violations;
  }
};

}  // namespace

CertReport check_separation_bounds(const std::vector<double>& a_grid, int n, std::uint64_t seed) {
  std::vector<std::array<Counter, 3>> per_a(a_grid.size());
  parallel_for(a_grid.size(), [&](std::size_t i) {
    const double a = a_grid[i];
    const double a2 = a * a;
    for (const auto& [u1, u2] : sample_feasible_offsets(a, n, seed + i)) {
      const double gap2 = (u1 - u2) * (u1 - u2);
      const double excess = a2 - u1 * u2;
      const double slack = kRoundoff * a2;
      if (u1 * u2 >= 0.0) {
        per_a[i][0].check(gap2 <= reference::kAlphaSameSign * excess + slack);
        per_a[i][1].check(excess >= reference::kBetaSameSign * a2 - slack);
      } else {
        per_a[i][2].check(gap2 <= 2.0 * excess + slack && excess >= a2 - slack);
      }
    }
  });
  std::array<Counter, 3> total{};
  for (const auto& c : per_a) {
    for (std::size_t k = 0; k < 3; ++k) total[k].merge(c[k]);
  }
  CertReport report;
  report.add_check("gap_bound_same_sign", total[0].n, total[0].violations);
  report.add_check("excess_bound_same_sign", total[1].n, total[1].violations);
  report.add_check("bounds_opposite_sign", total[2].n, total[2].violations);
  return report;
}

CertReport check_reduction_chain(const std::vector<double>& a_grid, int n, std::uint64_t seed,
                                 const Tolerances& tol) {
  const double c = schwarz_christoffel_C();
  const double c2 = c * c;
  const double a_r0 = derivative_excess(reference::kR0);
  std::vector<std::array<Counter, 4>> per_a(a_grid.size());

  parallel_for(a_grid.size(), [&](std::size_t i) {
    const double a = a_grid[i];
    const double r = r_of_a(a, tol);
    const double A = derivative_excess(r);
    const double B = B_integral(r);
    const double loss = 2.0 * A * B * B + A * A * B * B;
    const double budget = perturbation_budget(r);
    const auto offsets = sample_feasible_offsets(a, n, seed + i);
    for (std::size_t s = 0; s < offsets.size(); ++s) {
      const auto [u1, u2] = offsets[s];
      const double excess = a * a - u1 * u2;
      const double gap2 = (u1 - u2) * (u1 - u2);

      const double lhs = (1.0 + A) * std::sqrt(1.0 + gap2 / 4.0);
      const double modulus = std::hypot(1.0 + c2 * excess, c2 * a * (u1 + u2));
      per_a[i][0].check(lhs <= modulus - loss);

      const Complex w1(u1, -a);
      const Complex w2(u2, a);
      const double denominator = std::abs(1.0 - c2 * w1 * std::conj(w2)) - loss;
      per_a[i][1].check(denominator > 0.0);

      const double alpha = u1 * u2 >= 0.0 ? reference::kAlphaSameSign : reference::kAlphaOppositeSign;
      per_a[i][2].check(budget <= (c2 - alpha / 8.0 * (1.0 + a_r0)) * excess);

      if (s % 10 == 0) {
        const double th = th_half_rho_square(SquarePoint(w1), SquarePoint(w2), tol);
        const double bound = c * (1.0 + A) * std::abs(w1 - w2) / denominator;
        per_a[i][3].check(th <= bound * (1.0 + kRoundoff));
      }
    }
  });

  std::array<Counter, 4> total{};
  for (const auto& cnt : per_a) {
    for (std::size_t k = 0; k < 4; ++k) total[k].merge(cnt[k]);
  }
  CertReport report;
  report.add_check("main_inequality", total[0].n, total[0].violations);
  report.add_check("denominator_positive", total[1].n, total[1].violations);
  report.add_check("budget_inequality", total[2].n, total[2].violations);
  report.add_check("distortion_bound", total[3].n, total[3].violations);
  return report;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

CertReport full_certify(std::uint64_t seed, int samples_per_a) {
  const ProofConstants pc = compute_proof_constants();
  const double sharp = sharp_constant();
  CertReport report;

  report.add_entry("C", pc.C, reference::kC, 1e-6);
  report.add_entry("K_sqrt2_over_2", sharp, reference::kSharpConstant, 1e-8);
  report.add_entry("rect_constant_square", pc.rect_constant_square, reference::kSharpConstant, 1e-6);
  report.add_entry("rect_constant_minus_2C", pc.rect_constant_square - 2.0 * pc.C, 0.0, 1e-9);
  report.add_entry("square_modulus", lambda_for_aspect(1.0).k, 3.0 - 2.0 * std::numbers::sqrt2, 1e-9);
  report.add_entry("local_limit_center", local_limit(SquarePoint(0.0, 0.0)), reference::kSharpConstant, 1e-6);
  report.add_entry("r0", pc.r0, reference::kR0, 1e-5);
  report.add_entry("a0", pc.a0, reference::kA0, 1e-5);
  report.add_entry("r_of_a0", r_of_a(reference::kA0), reference::kR0, 1e-5);
  report.add_entry("budget_at_r0", pc.budget_at_r0, reference::kBudgetAtR0, 1e-5);
  report.add_entry("alpha_pos", pc.alpha_pos, reference::kAlphaSameSign, 1e-5);
  report.add_entry("beta_pos", pc.beta_pos, reference::kBetaSameSign, 1e-5);
  report.add_entry("gamma_pos", pc.gamma_pos, reference::kGammaSameSign, 1e-5);
  report.add_entry("alpha_neg", pc.alpha_neg, reference::kAlphaOppositeSign, 0.0);
  report.add_entry("beta_neg", pc.beta_neg, reference::kBetaOppositeSign, 0.0);
  report.add_entry("gamma_neg", pc.gamma_neg, reference::kGammaOppositeSign, 1e-5);

  // Monotonicity and threshold facts on grids.
  {
    const auto grid = linear_grid(0.01, 0.99, 1000);
    std::size_t bad_increase = 0;
    std::size_t bad_below_one = 0;
    std::size_t bad_beyond = 0;
    std::size_t n_beyond = 0;
    double prev = diameter_factor(grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double f = diameter_factor(grid[i]);
      if (!(f > prev)) ++bad_increase;
      prev = f;
    }
    for (double r : grid) {
      if (r < reference::kR0) continue;
      ++n_beyond;
      const double f = diameter_factor(r);
      if (!(f < 1.0)) ++bad_below_one;
      if (!(2.0 * pc.C * f < sharp)) ++bad_beyond;
    }
    report.add_check("diameter_factor_increasing", grid.size() - 1, bad_increase);
    report.add_check("diameter_factor_below_one_beyond_r0", n_beyond, bad_below_one);
    report.add_check("diameter_factor_below_one_at_r0", 1, diameter_factor(reference::kR0) < 1.0 ? 0 : 1);
    report.add_check("large_square_ratio_below_sharp", n_beyond, bad_beyond);
  }
  {
    const auto grid = linear_grid(reference::kR0 / 100.0, reference::kR0, 100);
    const double gamma_min = std::min(pc.gamma_pos, pc.gamma_neg);
    std::size_t bad_increase = 0;
    std::size_t bad_gamma = 0;
    double prev = normalized_budget(grid.front());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = normalized_budget(grid[i]);
      if (i > 0 && !(v > prev)) ++bad_increase;
      if (!(v < gamma_min)) ++bad_gamma;
      prev = v;
    }
    report.add_check("normalized_budget_increasing", grid.size() - 1, bad_increase);
    report.add_check("normalized_budget_below_gamma", grid.size(), bad_gamma);
    report.add_check("gamma_pos_exceeds_0.314881", 1, pc.gamma_pos > reference::kBudgetAtR0 ? 0 : 1);
    report.add_check("gamma_neg_exceeds_0.314881", 1, pc.gamma_neg > reference::kBudgetAtR0 ? 0 : 1);
    report.add_check("gamma_exceeds_budget_at_r0", 2,
                     (pc.gamma_pos > pc.budget_at_r0 ? 0 : 1) + (pc.gamma_neg > pc.budget_at_r0 ? 0 : 1));
  }

  const int n_grid = 50;
  std::vector<double> separation_grid(n_grid);
  for (int i = 0; i < n_grid; ++i) separation_grid[i] = pc.a0 * (i + 1) / n_grid;
  report.append(check_separation_bounds(separation_grid, samples_per_a, seed));
  report.append(check_reduction_chain(linear_grid(0.01, 0.48, n_grid), samples_per_a, seed + 1000));
  return report;
}

std::string to_json(const CertReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    j["entries"].push_back({{"name", e.name}, {"computed", e.computed}, {"reference", e.reference}, {"tol", e.tol}, {"pass", e.pass}});
  }
  j["sampled"] = nlohmann::ordered_json::array();
  for (const auto& s : report.sampled) {
    j["sampled"].push_back({{"name", s.name}, {"n", s.n}, {"violations", s.violations}});
  }
  return j.dump(2) + "\n";
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_csv(const CertReport& report) {
  std::ostringstream out;
  out << "kind,name,computed,reference,tol,pass,n,violations\n";
  for (const auto& e : report.entries) {
    out << "entry," << e.name << ',' << fmt17(e.computed) << ',' << fmt17(e.reference) << ',' << fmt17(e.tol) << ','
        << (e.pass ? "true" : "false") << ",,\n";
  }
  for (const auto& s : report.sampled) {
    out << "sampled," << s.name << ",,,," << (s.violations == 0 ? "true" : "false") << ',' << s.n << ','
        << s.violations << '\n';
  }
  return out.str();
}

}  // namespace hypersq
