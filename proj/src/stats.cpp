#include "sdsc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace sdsc {

namespace {

// Series expansion of P(s, x), valid (and fast) for x < s + 1.
double lower_gamma_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= x / (s + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Modified Lentz continued fraction for Q(s, x), valid for x >= s + 1.
double upper_gamma_fraction(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

}  // namespace

double lower_regularized_gamma(double s, double x) {
  if (s <= 0.0 || x < 0.0) {
    throw std::domain_error("lower_regularized_gamma: need s > 0, x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return lower_gamma_series(s, x);
  return 1.0 - upper_gamma_fraction(s, x);
}

double upper_regularized_gamma(double s, double x) {
  if (s <= 0.0 || x < 0.0) {
    throw std::domain_error("upper_regularized_gamma: need s > 0, x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x < s + 1.0) return 1.0 - lower_gamma_series(s, x);
  return upper_gamma_fraction(s, x);
}

double normal_cdf(double z) {
  if (z == 0.0) return 0.5;
  const double tail = 0.5 * upper_regularized_gamma(0.5, 0.5 * z * z);
  return z > 0.0 ? 1.0 - tail : tail;
}

double chi_squared_cdf(double x, int k) {
  if (k <= 0) throw std::domain_error("chi_squared_cdf: need k > 0");
  if (x <= 0.0) return 0.0;
  return lower_regularized_gamma(0.5 * k, 0.5 * x);
}

double chi_squared_sf(double x, int k) {
  if (k <= 0) throw std::domain_error("chi_squared_sf: need k > 0");
  if (x <= 0.0) return 1.0;
  return upper_regularized_gamma(0.5 * k, 0.5 * x);
}

}  // namespace sdsc
