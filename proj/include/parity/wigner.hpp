#pragma once

// SU(2) rotation matrix elements d^j_{mu',mu}(theta) = <j mu'| exp(-i theta J_y) |j mu>
// in the J_z eigenbasis, for integer and half-integer j.
//
// Elements are evaluated through the Jacobi-polynomial representation
//
//   d^j_{mu',mu}(theta) = xi * sqrt(k! (k+a+b)! / ((k+a)! (k+b)!))
//                         * sin^a(theta/2) cos^b(theta/2) P_k^{(a,b)}(cos theta)
//
// with a = |mu - mu'|, b = |mu + mu'|, k = j - max(|mu|, |mu'|) and
// xi = 1 for mu >= mu', (-1)^{mu'-mu} otherwise. The factorial prefactor and the
// trigonometric powers are combined in the log domain and the polynomial comes
// from the forward three-term recurrence, which stays accurate to 2j = 400.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "parity/compensated_sum.hpp"
#include "parity/errors.hpp"
#include "parity/half_int.hpp"

namespace parity {

namespace detail {

inline constexpr int kLogFactorialTableSize = 1025;

inline const std::array<double, kLogFactorialTableSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kLogFactorialTableSize> t{};
    CompensatedSum<double> acc;
    t[0] = 0.0;
    for (int n = 1; n < kLogFactorialTableSize; ++n) {
      acc += std::log(static_cast<double>(n));
      t[n] = acc.value();
    }
    return t;
  }();
  return table;
}

// P_n^{(a,b)}(x) by forward recurrence.
inline double jacobi_polynomial(int n, int a, int b, double x) {
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p = 0.5 * (2 * (a + 1) + (a + b + 2) * (x - 1.0));
  for (int m = 2; m <= n; ++m) {
    const double s = 2.0 * m + a + b;
    const double c1 = 2.0 * m * (m + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + static_cast<double>(a * a - b * b));
    const double c3 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s;
    const double next = (c2 * p - c3 * p_prev) / c1;
    p_prev = p;
    p = next;
  }
  return p;
}

}  // namespace detail

/// ln(n!). Exact to rounding for n < 1025 (compensated table), lgamma beyond.
inline double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial of negative argument " + std::to_string(n));
  if (n < detail::kLogFactorialTableSize) return detail::log_factorial_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

/// d^j_{mu',mu}(theta). Throws DomainError for an invalid (j, mu) pairing.
inline double d_element(HalfInt j, HalfInt mu_p, HalfInt mu, double theta) {
  require_projection(j, mu_p, "mu'");
  require_projection(j, mu, "mu");

  const int a = std::abs(mu.twice() - mu_p.twice()) / 2;
  const int b = std::abs(mu.twice() + mu_p.twice()) / 2;
  const int k = (j.twice() - std::max(std::abs(mu.twice()), std::abs(mu_p.twice()))) / 2;
  const double xi = (mu >= mu_p) ? 1.0 : sign_power(a);

  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  if ((a > 0 && s == 0.0) || (b > 0 && c == 0.0)) return 0.0;

  double log_mag = 0.5 * (log_factorial(k) + log_factorial(k + a + b) - log_factorial(k + a) -
                          log_factorial(k + b));
  double sign = xi;
  if (a > 0) {
    log_mag += a * std::log(std::abs(s));
    if (s < 0.0 && a % 2 == 1) sign = -sign;
  }
  if (b > 0) {
    log_mag += b * std::log(std::abs(c));
    if (c < 0.0 && b % 2 == 1) sign = -sign;
  }
  return sign * std::exp(log_mag) * detail::jacobi_polynomial(k, a, b, std::cos(theta));
}

/// d/dtheta d^j_{mu',mu}(theta), from d'(theta) = -i J_y d(theta):
///   d' = 1/2 [ sqrt((j-mu')(j+mu'+1)) d_{mu'+1,mu} - sqrt((j+mu')(j-mu'+1)) d_{mu'-1,mu} ].
inline double d_derivative(HalfInt j, HalfInt mu_p, HalfInt mu, double theta) {
  require_projection(j, mu_p, "mu'");
  require_projection(j, mu, "mu");
  const HalfInt one = HalfInt::from_int(1);
  const double jj = j.value();
  const double m = mu_p.value();
  double result = 0.0;
  if (mu_p < j) result += std::sqrt((jj - m) * (jj + m + 1.0)) * d_element(j, mu_p + one, mu, theta);
  if (mu_p > -j) result -= std::sqrt((jj + m) * (jj - m + 1.0)) * d_element(j, mu_p - one, mu, theta);
  return 0.5 * result;
}

/// The full (2j+1) x (2j+1) rotation block, rows mu' and columns mu both ordered +j ... -j.
struct WignerBlock {
  HalfInt j;
  double theta = 0.0;
  std::vector<double> elements;  // row-major

  int dim() const { return j.twice() + 1; }
  double operator()(int row, int col) const { return elements[static_cast<std::size_t>(row * dim() + col)]; }
  double at(HalfInt mu_p, HalfInt mu) const {
    return (*this)(projection_index(j, mu_p), projection_index(j, mu));
  }
};

inline WignerBlock d_block(HalfInt j, double theta) {
  if (j.twice() < 0) throw DomainError("negative j = " + j.str());
  WignerBlock block{j, theta, {}};
  const int n = block.dim();
  block.elements.resize(static_cast<std::size_t>(n) * n);
  // d_{mu',mu} = d_{-mu,-mu'}: fill the upper-left triangle (row + col < n) and mirror.
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const int mrow = n - 1 - col;
      const int mcol = n - 1 - row;
      if (row + col > n - 1) {
        block.elements[static_cast<std::size_t>(row * n + col)] =
            block.elements[static_cast<std::size_t>(mrow * n + mcol)];
        continue;
      }
      block.elements[static_cast<std::size_t>(row * n + col)] =
          d_element(j, projection_at(j, row), projection_at(j, col), theta);
    }
  }
  return block;
}

}  // namespace parity
