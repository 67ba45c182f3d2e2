#include <doctest.h>

#include <boost/math/special_functions/ellint_1.hpp>
#include <cmath>
#include <json.hpp>
#include <map>
#include <numbers>

#include "hypersq/certify.hpp"
#include "hypersq/conformal.hpp"
#include "hypersq/errors.hpp"
#include "hypersq/special_fn.hpp"

using namespace hypersq;

namespace {

constexpr double kR0 = 0.625623;

// int_0^r dt / sqrt(1 - t^4) = (K(1/sqrt 2) - F(arccos r, 1/sqrt 2)) / sqrt 2.
double B_oracle(double r) {
  const double k = 1.0 / std::numbers::sqrt2;
  return (boost::math::ellint_1(k) - boost::math::ellint_1(k, std::acos(r))) / std::numbers::sqrt2;
}

double A_oracle(double r) { return std::sqrt(1.0 + std::pow(r, 4)) - 1.0; }

}  // namespace

TEST_CASE("derivative excess") {
  CHECK(derivative_excess(0.0) == 0.0);
  CHECK(std::abs(derivative_excess(1.0) - (std::numbers::sqrt2 - 1.0)) < 1e-15);
  CHECK(std::abs(derivative_excess(kR0) - A_oracle(kR0)) < 1e-15);
  CHECK(std::abs(derivative_excess(kR0) - 0.0738702) < 1e-7);
  CHECK(std::abs(derivative_excess(1e-5) - 5e-21) < 1e-30);
  CHECK_THROWS_AS(derivative_excess(1.5), DomainError);
}

TEST_CASE("diameter factor") {
  CHECK(std::abs(diameter_factor(1e-6) - std::numbers::sqrt2) < 1e-9);
  CHECK(diameter_factor(0.0) == std::numbers::sqrt2);
  CHECK(diameter_factor(kR0) < 1.0);
  CHECK(std::abs(diameter_factor(kR0) - std::numbers::sqrt2 * kR0 / ((1 + kR0 * kR0) * B_oracle(kR0))) < 1e-13);
  // F decreases from sqrt(2) towards 1 / (2C) at r = 1.
  CHECK(diameter_factor(0.3) > diameter_factor(0.6));
  CHECK(std::abs(diameter_factor(0.999999) - 1.0 / (2.0 * schwarz_christoffel_C())) < 1e-3);
  const double root = diameter_factor_root();
  CHECK(std::abs(diameter_factor(root) - 1.0) < 1e-12);
  CHECK(std::abs(root - kR0) < 1e-5);
  CHECK(root < kR0);
}

TEST_CASE("perturbation budget") {
  CHECK(perturbation_budget(0.0) == 0.0);
  const double a = A_oracle(kR0);
  const double b = B_oracle(kR0);
  CHECK(std::abs(perturbation_budget(kR0) - (a * (1 + 2 * b * b) + a * a * b * b)) < 1e-13);
  CHECK(std::abs(perturbation_budget(kR0) - 0.135814) < 1e-6);
}

TEST_CASE("normalized budget") {
  CHECK(normalized_budget(0.0) == 0.0);
  CHECK(normalized_budget(1e-3) < 1e-6);
  const double a = A_oracle(kR0);
  const double b = B_oracle(kR0);
  CHECK(std::abs(normalized_budget(kR0) - (a / (b * b) + 2 * a + a * a)) < 1e-13);
  CHECK(std::abs(normalized_budget(kR0) - 0.335889245) < 1e-8);
  double prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double v = normalized_budget(kR0 * i / 200.0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("budget thresholds") {
  CHECK(std::abs(budget_threshold(0.235309, 0.933029) - 0.449368) < 1e-5);
  CHECK(std::abs(budget_threshold(2.0, 1.0) - 0.343805) < 1e-5);
  CHECK(budget_threshold(0.235309, 0.933029) > 0.314881);
  CHECK(budget_threshold(2.0, 1.0) > 0.314881);
  CHECK(budget_threshold(2.0, 1.0) > normalized_budget(kR0));
  CHECK_THROWS_AS(budget_threshold(0.0, 1.0), DomainError);
}

TEST_CASE("separation constants") {
  const auto [alpha, beta] = separation_constants(0.485087);
  CHECK(std::abs(alpha - 0.235309) < 1e-5);
  CHECK(std::abs(beta - 0.933029) < 1e-5);
  CHECK(separation_constants(0.0) == std::pair{0.0, 1.0});
  CHECK(separation_constants(1.0) == std::pair{1.0, 0.0});
  CHECK_THROWS_AS(separation_constants(1.1), DomainError);
}

TEST_CASE("feasible offset sampler") {
  for (double a : {0.05, 0.3, 0.485087, 0.9}) {
    const auto pairs = sample_feasible_offsets(a, 1000, 4);
    REQUIRE(pairs.size() == 1000);
    int same = 0;
    for (auto [u1, u2] : pairs) {
      CHECK(std::abs(u1) <= a);
      CHECK(std::abs(u2) <= a);
      CHECK(std::abs(u1 + u2) <= a * a + u1 * u2);
      CHECK_FALSE((u1 == a && u2 == a));
      if (u1 * u2 >= 0.0) ++same;
    }
    CHECK(same == 500);
    CHECK(sample_feasible_offsets(a, 1000, 4) == pairs);
  }
  CHECK_THROWS_AS(sample_feasible_offsets(1.0, 10, 0), DomainError);
  CHECK_THROWS_AS(sample_feasible_offsets(0.5, 0, 0), DomainError);
}

TEST_CASE("separation bounds hold on samples") {
  const CertReport rep = check_separation_bounds({0.485087}, 10000, 0);
  REQUIRE(rep.sampled.size() == 3);
  for (const auto& s : rep.sampled) {
    CHECK(s.n > 0);
    CHECK(s.violations == 0);
  }
}

TEST_CASE("reduction chain holds on samples") {
  const CertReport rep = check_reduction_chain(linear_grid(0.01, 0.48, 10), 200, 1);
  REQUIRE(rep.sampled.size() == 4);
  for (const auto& s : rep.sampled) {
    CHECK(s.n > 0);
    CHECK(s.violations == 0);
  }
}

TEST_CASE("linear grid") {
  const auto g = linear_grid(0.0, 1.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == 0.5);
}

TEST_CASE("full report contents") {
  const CertReport rep = full_certify(0, 200);
  CHECK(rep.entries.size() >= 12);
  std::map<std::string, CertEntry> by_name;
  for (const auto& e : rep.entries) by_name.emplace(e.name, e);

  for (const char* name : {"C", "K_sqrt2_over_2", "rect_constant_square", "square_modulus", "local_limit_center", "r0", "alpha_pos",
                           "beta_pos", "gamma_pos", "alpha_neg", "beta_neg", "gamma_neg"}) {
    INFO(name);
    REQUIRE(by_name.count(name) == 1);
    CHECK(by_name.at(name).pass);
  }
  // Printed values that the computation does not reproduce to 1e-5.
  CHECK(std::abs(by_name.at("a0").computed - 0.4850233) < 1e-7);
  CHECK(std::abs(by_name.at("r_of_a0").computed - 0.6256999) < 1e-7);
  CHECK(std::abs(by_name.at("budget_at_r0").computed - 0.3358892) < 1e-7);

  for (const auto& s : rep.sampled) {
    INFO(s.name);
    if (s.name == "diameter_factor_increasing") {
      CHECK(s.violations == s.n);
    } else {
      CHECK(s.violations == 0);
    }
  }
}

TEST_CASE("report serialization") {
  CertReport rep;
  rep.add_entry("x", 1.0, 1.0, 0.0);
  rep.add_entry("y", 2.0, 1.0, 0.5);
  rep.add_check("z", 10, 0);
  CHECK_FALSE(rep.passed());

  const auto j = nlohmann::json::parse(to_json(rep));
  CHECK(j["schema"] == 1);
  REQUIRE(j["entries"].size() == 2);
  CHECK(j["entries"][0]["pass"] == true);
  CHECK(j["entries"][1]["pass"] == false);
  CHECK(j["sampled"][0]["n"] == 10);

  const std::string csv = to_csv(rep);
  CHECK(csv.rfind("kind,name,computed,reference,tol,pass,n,violations\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
