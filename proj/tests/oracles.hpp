#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerical routines.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace oracle {

/// Classical fixed-step RK4.
template <std::size_t N, class F>
std::array<double, N> rk4(F&& f, std::array<double, N> s, double t_end, double h) {
  const auto steps = static_cast<long>(std::ceil(t_end / h));
  h = t_end / static_cast<double>(steps);
  auto axpy = [](const std::array<double, N>& a, double c, const std::array<double, N>& b) {
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + c * b[i];
    return out;
  };
  for (long k = 0; k < steps; ++k) {
    const auto k1 = f(s);
    const auto k2 = f(axpy(s, h / 2, k1));
    const auto k3 = f(axpy(s, h / 2, k2));
    const auto k4 = f(axpy(s, h, k3));
    for (std::size_t i = 0; i < N; ++i) s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return s;
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, long n) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double sum = f(a) + f(b);
  for (long i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return sum * h / 3.0;
}

/// Branching extinction CDF for one ancestor written directly from the
/// textbook form, for rho != 1.
inline double g1_direct(double rho, double mu, double t) {
  const double e = std::exp(-mu * (1.0 - rho) * t);
  return (1.0 - e) / (1.0 - rho * e);
}

}  // namespace oracle
