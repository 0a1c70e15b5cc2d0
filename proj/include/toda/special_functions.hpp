#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace toda {

using cplx = std::complex<double>;

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline constexpr double kPoleTolerance = 1e-12;

namespace detail {

inline bool near_nonpositive_integer(cplx z) {
  if (z.real() > 0.5) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z - cplx(r, 0.0)) < kPoleTolerance;
}

// Stirling series, valid for Re z >= 1 and |z| >= 10 (truncation error < 1e-20).
inline cplx stirling_log_gamma(cplx z) {
  static constexpr std::array<double, 10> coef = {
      1.0 / 12.0,         -1.0 / 360.0,         1.0 / 1260.0,
      -1.0 / 1680.0,      1.0 / 1188.0,         -691.0 / 360360.0,
      1.0 / 156.0,        -3617.0 / 122400.0,   43867.0 / 244188.0,
      -174611.0 / 125400.0};
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  for (auto it = coef.rbegin(); it != coef.rend(); ++it) series = series * inv2 + *it;
  series *= inv;
  static const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (z - 0.5) * std::log(z) - z + half_log_two_pi + series;
}

// Upper half plane (Im z >= 0) only.
inline cplx log_gamma_upper(cplx z) {
  cplx shift_log = 0.0;
  cplx w = z;
  while (w.real() < 1.0 || std::abs(w) < 10.0) {
    shift_log += std::log(w);
    w += 1.0;
  }
  return stirling_log_gamma(w) - shift_log;
}

}  // namespace detail

// Analytic continuation of log Gamma obtained by continuing from the upper
// half plane; Im z < 0 is handled through conjugation so that
// log_gamma(conj z) == conj(log_gamma(z)) holds bitwise.
inline cplx log_gamma(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("log_gamma: non-finite argument");
  if (detail::near_nonpositive_integer(z))
    throw PoleError("log_gamma: pole at nonpositive integer");
  if (z.imag() < 0.0) return std::conj(detail::log_gamma_upper(std::conj(z)));
  if (z.imag() == 0.0 && z.real() > 0.0) return {std::lgamma(z.real()), 0.0};
  return detail::log_gamma_upper(z);
}

inline cplx gamma(cplx z) {
  if (z.imag() == 0.0) {
    if (detail::near_nonpositive_integer(z)) throw PoleError("gamma: pole at nonpositive integer");
    const double x = z.real();
    if (x > 0.0 && x < 170.0) return {std::tgamma(x), 0.0};
    const double lg = std::lgamma(x);
    if (lg > 709.0) throw OverflowError("gamma: result overflows");
    const double sign = (x < 0.0 && static_cast<long long>(std::ceil(-x)) % 2 == 1) ? -1.0 : 1.0;
    return {sign * std::exp(lg), 0.0};
  }
  if (z.imag() < 0.0) return std::conj(gamma(std::conj(z)));
  const cplx lg = log_gamma(z);
  if (lg.real() > 709.0) throw OverflowError("gamma: result overflows");
  return std::exp(lg);
}

// Gamma(z+k)/Gamma(z) as a finite product.
inline cplx gamma_shift_ratio(cplx z, int k) {
  cplx r = 1.0;
  if (k >= 0) {
    for (int j = 0; j < k; ++j) r *= z + double(j);
    return r;
  }
  for (int j = 1; j <= -k; ++j) {
    const cplx f = z - double(j);
    if (std::abs(f) < kPoleTolerance) throw PoleError("gamma_shift_ratio: vanishing factor");
    r /= f;
  }
  return r;
}

// log of 1/(Gamma(z) Gamma(-z)) = -z sin(pi z)/pi, an entire function.
// Returns -inf real part at z = 0.
inline cplx log_reflection_reciprocal(cplx z) {
  if (std::abs(z) == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
  // sin(pi z) with a stable logarithm for large |Im z|.
  const double pi = std::numbers::pi;
  const double y = z.imag();
  cplx log_sin;
  if (std::abs(y) < 20.0) {
    log_sin = std::log(std::sin(pi * z));
  } else {
    // sin(pi z) = (e^{i pi z} - e^{-i pi z})/(2i); the dominant exponential is
    // e^{-i pi z} for y > 0 and e^{i pi z} for y < 0.
    const double s = y > 0 ? 1.0 : -1.0;
    const cplx dom = cplx(0.0, -s) * pi * z;  // log of the dominant term
    const cplx rest = 1.0 - std::exp(cplx(0.0, 2.0 * s) * pi * z);
    log_sin = dom + std::log(rest) + std::log(cplx(0.0, 0.5 * s));
  }
  return std::log(-z / pi) + log_sin;
}

}  // namespace toda
