#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toda/exact.hpp"
#include "toda/report.hpp"
#include "toda/special_functions.hpp"

namespace toda {

using SpectralParams = std::vector<double>;

struct SeparatedPoint {
  cplx p;
  std::vector<cplx> lambda;  // N-1 separated coordinates
};

namespace detail {

inline std::vector<cplx> to_complex(const std::vector<double>& v) { return {v.begin(), v.end()}; }

inline cplx power_of_i(int k) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

inline const cplx kI{0.0, 1.0};

}  // namespace detail

// log prod_{j,k} Gamma((lambda_j - alpha_k)/i)
inline cplx log_sep_wavefunction(const std::vector<cplx>& alpha, const std::vector<cplx>& lambda) {
  cplx s = 0.0;
  for (const auto& l : lambda)
    for (const auto& a : alpha) s += log_gamma((l - a) / detail::kI);
  return s;
}

inline cplx sep_wavefunction(const std::vector<cplx>& alpha, const std::vector<cplx>& lambda) {
  return std::exp(log_sep_wavefunction(alpha, lambda));
}
inline cplx sep_wavefunction(const SpectralParams& alpha, const std::vector<double>& lambda) {
  return sep_wavefunction(detail::to_complex(alpha), detail::to_complex(lambda));
}

// prod_{j<k} 1/(Gamma(z) Gamma(-z)), z = (lambda_j - lambda_k)/i: the analytic
// continuation of prod 1/|Gamma((lambda_j - lambda_k)/i)|^2 off the real axis.
inline cplx log_sep_measure_continued(const std::vector<cplx>& lambda) {
  cplx s = 0.0;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    for (std::size_t k = j + 1; k < lambda.size(); ++k)
      s += log_reflection_reciprocal((lambda[j] - lambda[k]) / detail::kI);
  return s;
}

inline double sep_measure(const std::vector<double>& lambda) {
  double m = 1.0;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    for (std::size_t k = j + 1; k < lambda.size(); ++k) m /= std::norm(gamma(cplx(0.0, -(lambda[j] - lambda[k]))));
  return m;
}

// Ratio mu(lambda + i e_j)/mu(lambda) through Gamma shift ratios:
// with z = (lambda_j - lambda_k)/i the pair factor 1/(Gamma(z)Gamma(-z)) moves to
// z + 1 (and to z - 1 when j is the second index of the pair).
inline cplx sep_measure_shift_ratio(const std::vector<double>& lambda, std::size_t j) {
  cplx r = 1.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (k == j) continue;
    const cplx z = cplx(lambda[j] - lambda[k]) / detail::kI;
    if (std::abs(z) < kPoleTolerance) throw PoleError("measure: coincident separated coordinates");
    // 1/(Gamma(z+1)Gamma(-z-1)) divided by 1/(Gamma(z)Gamma(-z))
    r *= gamma_shift_ratio(-z - 1.0, 1) / gamma_shift_ratio(z, 1);
  }
  return r;
}

// mu(lambda + i e_j) = (-1)^N mu(lambda) prod_{k != j} (l_j - l_k + i)/(l_j - l_k),
// N = lambda.size() + 1. Returns the relative residual of that relation.
inline double check_measure_difference_eq(const std::vector<double>& lambda, std::size_t j) {
  if (j >= lambda.size()) throw std::out_of_range("check_measure_difference_eq: index");
  const int n = int(lambda.size()) + 1;
  cplx mult = (n % 2) ? -1.0 : 1.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (k == j) continue;
    const double d = lambda[j] - lambda[k];
    if (std::abs(d) < kPoleTolerance) throw PoleError("measure: coincident separated coordinates");
    mult *= cplx(d, 1.0) / d;
  }
  return std::abs(sep_measure_shift_ratio(lambda, j) / mult - 1.0);
}

// Residual of the relation with the multiplier prod (l_j - l_k - i)/(l_j - l_k)
// and no sign, kept to document that this form does not hold.
inline double measure_difference_eq_unsigned_minus(const std::vector<double>& lambda, std::size_t j) {
  cplx mult = 1.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (k == j) continue;
    const double d = lambda[j] - lambda[k];
    mult *= cplx(d, -1.0) / d;
  }
  return std::abs(sep_measure_shift_ratio(lambda, j) / mult - 1.0);
}

using SeparatedFunction = std::function<cplx(const SeparatedPoint&)>;

// Lambda_j^{sign}: f -> i^{sign N} f(p, ..., lambda_j + sign*i, ...)
inline SeparatedFunction lambda_shift_apply(SeparatedFunction f, std::size_t j, int sign, int n) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("lambda_shift_apply: sign must be +1 or -1");
  return [f = std::move(f), j, sign, n](const SeparatedPoint& pt) {
    if (j >= pt.lambda.size()) throw std::out_of_range("lambda_shift_apply: index");
    SeparatedPoint q = pt;
    q.lambda[j] += cplx(0.0, double(sign));
    return detail::power_of_i(sign * n) * f(q);
  };
}

// i^N phi(lambda + i e_j) = prod_k (lambda_j - alpha_k) phi(lambda); the shift
// ratio of each Gamma factor is exactly (lambda_j - alpha_k)/i.
inline double check_dif_equation(const SpectralParams& alpha, const std::vector<double>& lambda, std::size_t j) {
  if (j >= lambda.size()) throw std::out_of_range("check_dif_equation: index");
  const int n = int(alpha.size());
  cplx lhs = detail::power_of_i(n);
  cplx rhs = 1.0;
  for (double a : alpha) {
    lhs *= gamma_shift_ratio(cplx(lambda[j] - a) / detail::kI, 1);
    rhs *= lambda[j] - a;
  }
  return std::abs(lhs / rhs - 1.0);
}

// (u - s1(alpha) + sum lambda) prod (u - lambda_j)
//   + sum_j prod_{k!=j} (u - lambda_k)/(lambda_j - lambda_k) prod_k (lambda_j - alpha_k)
//   == prod_k (u - alpha_k)
inline bool lagrange_identity_holds(const QI& u, const std::vector<QI>& lambda, const std::vector<QI>& alpha) {
  QI s1(0);
  for (const auto& a : alpha) s1 += a;
  QI lsum(0);
  for (const auto& l : lambda) lsum += l;
  QI lhs = u - s1 + lsum;
  for (const auto& l : lambda) lhs *= u - l;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    QI term(1);
    for (std::size_t k = 0; k < lambda.size(); ++k)
      if (k != j) term *= (u - lambda[k]) / (lambda[j] - lambda[k]);
    for (const auto& a : alpha) term *= lambda[j] - a;
    lhs += term;
  }
  QI rhs(1);
  for (const auto& a : alpha) rhs *= u - a;
  return lhs == rhs;
}

namespace detail {

inline QI random_rational(SeededRng& rng) {
  return QI::rational(rng.integer(-40, 40), rng.integer(1, 12), rng.integer(-40, 40), rng.integer(1, 12));
}

}  // namespace detail

inline VerificationReport check_lagrange_identity(int n, int trials, std::uint64_t seed) {
  VerificationReport rep;
  rep.suite = "separation";
  rep.n = n;
  rep.seed = seed;
  SeededRng rng(seed);
  int failures = 0;
  std::string witness;
  for (int t = 0; t < trials; ++t) {
    std::vector<QI> lambda, alpha;
    for (int k = 0; k < n; ++k) alpha.push_back(detail::random_rational(rng));
    while (int(lambda.size()) < n - 1) {
      QI c = detail::random_rational(rng);
      bool distinct = true;
      for (const auto& l : lambda) distinct = distinct && !(l == c);
      if (distinct) lambda.push_back(std::move(c));
    }
    const QI u = detail::random_rational(rng);
    if (!lagrange_identity_holds(u, lambda, alpha)) {
      if (!failures++) witness = "trial " + std::to_string(t) + " u=" + u.str();
    }
  }
  rep.add("Lagrange interpolation identity", failures == 0, double(failures), 0.0, witness);
  return rep;
}

inline std::pair<bool, cplx> sep_full_wavefunction(const SpectralParams& alpha, const SeparatedPoint& point,
                                                   double tol = 1e-12) {
  const double s1 = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  const bool match = std::abs(point.p - s1) <= tol;
  return {match, sep_wavefunction(detail::to_complex(alpha), point.lambda)};
}

// Seeded random-sample suite: difference equation of the separated wave
// function, the measure difference equation and the Lagrange identity.
inline VerificationReport verify_separation(int n, int trials, std::uint64_t seed) {
  if (n < 1) throw std::out_of_range("verify separation: N must be positive");
  VerificationReport rep;
  rep.suite = "separation";
  rep.n = n;
  rep.seed = seed;
  SeededRng rng(seed);
  double dif_max = 0.0, mu_max = 0.0;
  for (int t = 0; t < trials; ++t) {
    SpectralParams alpha(n);
    for (auto& a : alpha) a = rng.uniform(-2, 2);
    std::vector<double> lambda(n - 1);
    for (bool ok = false; !ok;) {
      for (auto& l : lambda) l = rng.uniform(-2, 2);
      ok = true;
      for (std::size_t a = 0; a < lambda.size(); ++a)
        for (std::size_t b = a + 1; b < lambda.size(); ++b) ok = ok && std::abs(lambda[a] - lambda[b]) > 0.05;
    }
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      dif_max = std::max(dif_max, check_dif_equation(alpha, lambda, j));
      mu_max = std::max(mu_max, check_measure_difference_eq(lambda, j));
    }
  }
  rep.add("separated difference equation", dif_max <= 1e-12, dif_max, 1e-12);
  rep.add("measure difference equation", mu_max <= 1e-10, mu_max, 1e-10);
  rep.merge(check_lagrange_identity(n, trials, seed));
  return rep;
}

}  // namespace toda
