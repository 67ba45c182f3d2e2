#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "hypersq/errors.hpp"

namespace hypersq::quad {

// 7-point Gauss / 15-point Kronrod nodes on [-1, 1] (non-negative half).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Value>
struct Panel {
  double a;
  double b;
  Value estimate;
  double error;
};

template <typename Fn>
auto gauss_kronrod_panel(Fn& f, double a, double b) {
  using Value = std::invoke_result_t<Fn&, double>;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const Value fc = f(center);
  Value kronrod = fc * kKronrodWeights[7];
  Value gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const Value pair = f(center - dx) + f(center + dx);
    kronrod += pair * kKronrodWeights[j];
    if (j % 2 == 1) gauss += pair * kGaussWeights[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  using std::abs;
  return Panel<Value>{a, b, kronrod, static_cast<double>(abs(kronrod - gauss))};
}

/// Globally adaptive G7K15 quadrature of f over [a, b].
///
/// Works for any value type closed under +, scalar * and abs (double,
/// std::complex<double>). Bisects the panel with the largest error estimate
/// until the summed estimate drops below abs_tol.
template <typename Fn>
auto integrate(Fn&& f, double a, double b, double abs_tol, int max_panels = 4000) {
  using Value = std::invoke_result_t<Fn&, double>;
  if (a == b) return Value{};

  std::vector<Panel<Value>> panels;
  panels.reserve(16);
  panels.push_back(gauss_kronrod_panel(f, a, b));
  double total_error = panels.front().error;

  const auto by_error = [](const Panel<Value>& l, const Panel<Value>& r) { return l.error < r.error; };
  while (total_error > abs_tol) {
    if (static_cast<int>(panels.size()) >= max_panels) {
      throw IntegrationError("adaptive quadrature did not converge");
    }
    std::pop_heap(panels.begin(), panels.end(), by_error);
    const Panel<Value> worst = panels.back();
    panels.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      throw IntegrationError("adaptive quadrature reached machine resolution");
    }
    panels.push_back(gauss_kronrod_panel(f, worst.a, mid));
    std::push_heap(panels.begin(), panels.end(), by_error);
    panels.push_back(gauss_kronrod_panel(f, mid, worst.b));
    std::push_heap(panels.begin(), panels.end(), by_error);

    total_error = 0.0;
    for (const auto& p : panels) total_error += p.error;
  }

  Value sum{};
  for (const auto& p : panels) sum += p.estimate;
  return sum;
}

}  // namespace hypersq::quad
