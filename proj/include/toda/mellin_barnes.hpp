#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "toda/gz_representation.hpp"
#include "toda/separation.hpp"
#include "toda/special_functions.hpp"

namespace toda {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ContourError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ContourSpec {
  std::vector<double> offsets;  // offsets[n-1] = h_n, Im part of level n; h_N = 0
  double half_width = 0.0;      // T
  int nodes_per_dim = 0;        // odd
  double center = 0.0;

  double step() const { return 2.0 * half_width / (nodes_per_dim - 1); }
  double node(int k) const { return center - half_width + k * step(); }
};

struct QuadratureResult {
  cplx value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

enum class Kernel { whittaker, spherical };

// Compensated (Neumaier) accumulation, componentwise.
class CompensatedSum {
 public:
  void add(cplx v) {
    add1(re_, cre_, v.real());
    add1(im_, cim_, v.imag());
  }
  cplx value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add1(double& s, double& c, double v) {
    const double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

namespace detail {

inline const cplx kIu{0.0, 1.0};

// log Gamma(d/(2i) + 1/4) + log Gamma(-d/(2i) + 1/4)
inline cplx log_spherical_pair(cplx d) {
  const cplx z = d / (2.0 * kIu);
  return log_gamma(z + 0.25) + log_gamma(0.25 - z);
}

inline cplx log_level_kernel(cplx lower, cplx upper, Kernel which) {
  const cplx d = lower - upper;
  return which == Kernel::whittaker ? log_gamma(d / kIu) : log_spherical_pair(d);
}

inline void require_distinct(const std::vector<double>& v, double gap, const char* what) {
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b)
      if (std::abs(v[a] - v[b]) < gap) throw PoleError(what);
}

}  // namespace detail

// Kernel of the iterated integral at one point of the triangular array,
// assembled in log space. The top row of lam is the spectral parameter.
inline cplx log_mb_integrand(const TriangularArray<cplx>& lam, const std::vector<double>& x, Kernel which) {
  const int N = lam.size();
  if (int(x.size()) != N) throw std::invalid_argument("mb_integrand: x must have N entries");
  cplx l = 0.0;
  for (int n = 1; n < N; ++n) {
    for (int k = 1; k <= n; ++k)
      for (int m = 1; m <= n + 1; ++m) l += detail::log_level_kernel(lam(n, k), lam(n + 1, m), which);
    for (int s = 1; s <= n; ++s)
      for (int p = s + 1; p <= n; ++p) l += log_reflection_reciprocal((lam(n, s) - lam(n, p)) / detail::kIu);
  }
  cplx e = 0.0;
  for (int n = 1; n <= N; ++n) {
    cplx d = detail::array_sum(lam, n);
    if (n > 1) d -= detail::array_sum(lam, n - 1);
    e += d * x[n - 1];
  }
  return l + detail::kIu * e;
}

inline cplx mb_integrand(const TriangularArray<cplx>& lam, const std::vector<double>& x, Kernel which) {
  return std::exp(log_mb_integrand(lam, x, which));
}

namespace detail {

inline double contour_half_width(double spread, double tol) {
  return spread + 1.0 + (std::log(10.0 / tol) + 2.0) / (0.8 * std::numbers::pi);
}

inline int contour_nodes(double half_width, double tol, double strip) {
  const double step = 2.0 * std::numbers::pi * strip / (std::log(10.0 / tol) + 2.0 + 6.0 * strip);
  return std::max(65, 2 * int(std::ceil(half_width / step)) + 1);
}

}  // namespace detail

inline ContourSpec default_contour(int N, const std::vector<double>& alpha, double tol, double sigma = 0.5) {
  if (N < 1 || int(alpha.size()) != N) throw std::invalid_argument("default_contour: alpha must have N entries");
  if (!(tol > 0) || !(sigma > 0)) throw std::invalid_argument("default_contour: tol and sigma must be positive");
  ContourSpec c;
  for (int n = 1; n <= N; ++n) c.offsets.push_back((N - n) * sigma);
  double amax = 0.0;
  for (double a : alpha) amax = std::max(amax, std::abs(a));
  c.half_width = detail::contour_half_width(amax, tol);
  c.nodes_per_dim = detail::contour_nodes(c.half_width, tol, sigma);
  return c;
}

// Real contours; the paired Gamma factors are analytic in a strip of half-width 1/2.
inline ContourSpec spherical_contour(int N, const std::vector<double>& lambda, double tol) {
  ContourSpec c = default_contour(N, lambda, tol, 0.4);
  std::fill(c.offsets.begin(), c.offsets.end(), 0.0);
  return c;
}

namespace detail {

inline double sum_of(const std::vector<double>& v) {
  CompensatedSum s;
  for (double a : v) s.add(a);
  return s.value().real();
}

// N = 2: psi = sum_k K(t_k) e^{i lam_k (x1 - x2)} e^{i sigma x2} dt
inline QuadratureResult eval_n2(const std::vector<double>& top, const std::vector<double>& x, const ContourSpec& c,
                                Kernel which) {
  const int n = c.nodes_per_dim;
  const double dt = c.step();
  const double sig = sum_of(top);
  std::vector<cplx> logs(n);
  double mx = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const cplx l1(c.node(k), c.offsets[0]);
    cplx v = 0.0;
    for (double a : top) v += log_level_kernel(l1, a, which);
    logs[k] = v + kIu * l1 * (x[0] - x[1]);
    mx = std::max(mx, logs[k].real());
  }
  CompensatedSum full, half;
  for (int k = 0; k < n; ++k) {
    const cplx v = std::exp(logs[k] - mx);
    full.add(v);
    if (k % 2 == 0) half.add(v);
  }
  const cplx scale = std::exp(mx + kIu * sig * x[1]);
  const cplx a = full.value() * dt * scale, b = half.value() * 2.0 * dt * scale;
  return {a, std::abs(a - b), n};
}

}  // namespace detail

// Three-level lattice evaluation of the N = 3 kernel. With u = x1 - x2,
// w = x2 - x3 the integral is e^{i sigma x3} F(u, w),
//   F = sum_{j,k} A_{jk} e^{i(l2j + l2k) w} sum_i B_{i-j} B_{i-k} e^{i l1i u},
// and A, B depend only on lattice indices and index differences.
class Mb3Lattice {
 public:
  Mb3Lattice(const std::vector<double>& top, const ContourSpec& c, Kernel which) : c_(c), top_(top) {
    if (top.size() != 3) throw std::invalid_argument("Mb3Lattice: three spectral parameters required");
    n_ = c.nodes_per_dim;
    const double h1 = c.offsets[0], h2 = c.offsets[1];
    std::vector<cplx> la(n_), lb(2 * n_ - 1), ld(2 * n_ - 1);
    double ma = -std::numeric_limits<double>::infinity(), mb = ma;
    for (int k = 0; k < n_; ++k) {
      const cplx l2(c.node(k), h2);
      cplx v = 0.0;
      for (double a : top) v += detail::log_level_kernel(l2, a, which);
      la[k] = v;
    }
    const double dt = c.step();
    for (int d = -(n_ - 1); d <= n_ - 1; ++d) {
      lb[d + n_ - 1] = detail::log_level_kernel(cplx(d * dt, h1), cplx(0.0, h2), which);
      ld[d + n_ - 1] = log_reflection_reciprocal(cplx(d * dt, 0.0) / detail::kIu);
      mb = std::max(mb, lb[d + n_ - 1].real());
    }
    A_.assign(std::size_t(n_) * n_, 0.0);
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        const cplx v = la[j] + la[k] + ld[k - j + n_ - 1];
        if (std::isfinite(v.real())) ma = std::max(ma, v.real());
      }
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        const cplx v = la[j] + la[k] + ld[k - j + n_ - 1];
        A_[std::size_t(j) * n_ + k] = std::isfinite(v.real()) ? std::exp(v - ma) : 0.0;
      }
    B_.resize(2 * n_ - 1);
    for (int d = 0; d < 2 * n_ - 1; ++d) B_[d] = std::exp(lb[d] - mb);
    log_scale_ = ma + 2.0 * mb;
    // drop A entries below the double-precision floor of the largest one
    for (auto& a : A_)
      if (std::abs(a) < 1e-18) a = 0.0;
  }

  int nodes() const { return n_; }

  // F(u, w) on a product grid, with half-grid self-consistency estimates.
  // Result is indexed [iu * w.size() + iw].
  std::vector<QuadratureResult> evaluate(const std::vector<double>& us, const std::vector<double>& ws) const {
    const int n = n_;
    const double dt = c_.step();
    const double h1 = c_.offsets[0], h2 = c_.offsets[1];
    std::vector<QuadratureResult> out(us.size() * ws.size());
    std::vector<cplx> G(std::size_t(n) * n), Gh(std::size_t(n) * n);
    std::vector<cplx> e1(n), e2(2 * n - 1);
    const cplx scale = std::exp(cplx(log_scale_, 0.0));
    std::vector<int> active_j;
    for (int j = 0; j < n; ++j) {
      bool any = false;
      for (int k = 0; k < n; ++k) any = any || A_[std::size_t(j) * n + k] != 0.0;
      if (any) active_j.push_back(j);
    }
    for (std::size_t iu = 0; iu < us.size(); ++iu) {
      const double u = us[iu];
      for (int i = 0; i < n; ++i) e1[i] = std::exp(detail::kIu * cplx(c_.node(i), h1) * u);
      for (int j : active_j)
        for (int k = j; k < n; ++k) {
          if (A_[std::size_t(j) * n + k] == 0.0) continue;
          cplx s = 0.0, sh = 0.0;
          const cplx* bj = &B_[n - 1 - j];
          const cplx* bk = &B_[n - 1 - k];
          for (int i = 0; i < n; ++i) {
            const cplx t = bj[i] * bk[i] * e1[i];
            s += t;
            if ((i & 1) == 0) sh += t;
          }
          G[std::size_t(j) * n + k] = s * dt;
          Gh[std::size_t(j) * n + k] = sh * (2.0 * dt);
        }
      for (std::size_t iw = 0; iw < ws.size(); ++iw) {
        const double w = ws[iw];
        // e^{i(l2j + l2k) w} depends on j + k only
        for (int s = 0; s < 2 * n - 1; ++s)
          e2[s] = std::exp(detail::kIu * cplx(2.0 * (c_.center - c_.half_width) + s * dt, 2.0 * h2) * w);
        CompensatedSum full, half;
        for (int j : active_j)
          for (int k = j; k < n; ++k) {
            const cplx a = A_[std::size_t(j) * n + k];
            if (a == 0.0) continue;
            const double mult = (j == k) ? 1.0 : 2.0;
            const cplx base = mult * a * e2[j + k];
            full.add(base * G[std::size_t(j) * n + k]);
            if ((j & 1) == 0 && (k & 1) == 0) half.add(base * Gh[std::size_t(j) * n + k]);
          }
        const cplx f = full.value() * dt * dt * scale;
        const cplx fh = half.value() * 4.0 * dt * dt * scale;
        auto& r = out[iu * ws.size() + iw];
        r.value = f;
        r.error_estimate = std::abs(f - fh);
        r.evaluations = long(n) * n * n;
      }
    }
    return out;
  }

  QuadratureResult at(const std::vector<double>& x) const {
    auto r = evaluate({x[0] - x[1]}, {x[1] - x[2]}).front();
    const cplx ph = std::exp(detail::kIu * detail::sum_of(top_) * x[2]);
    r.value *= ph;
    return r;
  }

 private:
  ContourSpec c_;
  std::vector<double> top_;
  int n_ = 0;
  std::vector<cplx> A_, B_;
  double log_scale_ = 0.0;
};

namespace detail {

inline void check_eval_args(int N, const std::vector<double>& top, const std::vector<double>& x, double tol) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (N > 3) throw DimensionError("direct evaluation is limited to N <= 3");
  if (int(top.size()) != N || int(x.size()) != N) throw std::invalid_argument("parameters and x must have N entries");
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
}

template <class F>
QuadratureResult guard_contour(F&& f) {
  try {
    return f();
  } catch (const PoleError& e) {
    throw ContourError(std::string("integrand pole on the contour: ") + e.what());
  }
}

inline QuadratureResult eval_direct(int N, const std::vector<double>& top, const std::vector<double>& x,
                                    const ContourSpec& c, Kernel which) {
  if (N == 1) return {std::exp(kIu * top[0] * x[0]), 0.0, 0};
  if (N == 2) return eval_n2(top, x, c, which);
  return Mb3Lattice(top, c, which).at(x);
}

}  // namespace detail

inline QuadratureResult whittaker_eval(int N, const std::vector<double>& alpha, const std::vector<double>& x,
                                       double tol = 1e-6, double sigma = 0.5) {
  detail::check_eval_args(N, alpha, x, tol);
  const ContourSpec c = default_contour(N, alpha, tol, sigma);
  return detail::guard_contour([&] { return detail::eval_direct(N, alpha, x, c, Kernel::whittaker); });
}

inline QuadratureResult whittaker_eval(int N, const std::vector<double>& alpha, const std::vector<double>& x,
                                       const ContourSpec& c) {
  detail::check_eval_args(N, alpha, x, 1.0);
  return detail::guard_contour([&] { return detail::eval_direct(N, alpha, x, c, Kernel::whittaker); });
}

inline QuadratureResult spherical_eval(int N, const std::vector<double>& lambda_top, const std::vector<double>& x,
                                       double tol = 1e-6) {
  detail::check_eval_args(N, lambda_top, x, tol);
  detail::require_distinct(lambda_top, 1e-6, "spherical: coincident spectral parameters");
  const ContourSpec c = spherical_contour(N, lambda_top, tol);
  return detail::guard_contour([&] { return detail::eval_direct(N, lambda_top, x, c, Kernel::spherical); });
}

namespace detail {

// psi_N(alpha; x) = int e^{i(s1(alpha) - sum l)x_N} prod_{j,k} Gamma((l_j - a_k)/i)
//                   mu(l) psi_{N-1}(l; x_1..x_{N-1}) dl,
// contour Im l = max Im alpha + sigma; inner values computed on the outer nodes.
inline QuadratureResult recursive_impl(const std::vector<cplx>& alpha, const std::vector<double>& x, double tol,
                                       double sigma) {
  const int N = int(alpha.size());
  cplx s1 = 0.0;
  for (const auto& a : alpha) s1 += a;
  if (N == 1) return {std::exp(kIu * alpha[0] * x[0]), 0.0, 0};
  double lo = alpha[0].real(), hi = lo, him = alpha[0].imag();
  for (const auto& a : alpha) {
    lo = std::min(lo, a.real());
    hi = std::max(hi, a.real());
    him = std::max(him, a.imag());
  }
  ContourSpec c;
  c.center = 0.5 * (lo + hi);
  c.half_width = contour_half_width(0.5 * (hi - lo), tol);
  c.nodes_per_dim = contour_nodes(c.half_width, tol, sigma);
  const double h = him + sigma;
  const int n = c.nodes_per_dim, m = N - 1;
  const double dt = c.step();
  const std::vector<double> xin(x.begin(), x.end() - 1);

  auto outer_log = [&](const std::vector<cplx>& l) {
    cplx v = 0.0, sl = 0.0;
    for (const auto& lj : l) {
      sl += lj;
      for (const auto& a : alpha) v += log_gamma((lj - a) / kIu);
    }
    for (int j = 0; j < m; ++j)
      for (int k = j + 1; k < m; ++k) v += log_reflection_reciprocal((l[j] - l[k]) / kIu);
    return v + kIu * (s1 - sl) * x[N - 1];
  };

  // enumerate nondecreasing index tuples (the integrand is symmetric in l)
  std::vector<std::vector<int>> tuples;
  std::vector<int> idx(m, 0);
  for (;;) {
    tuples.push_back(idx);
    int p = m - 1;
    while (p >= 0 && idx[p] == n - 1) --p;
    if (p < 0) break;
    ++idx[p];
    for (int q = p + 1; q < m; ++q) idx[q] = idx[p];
  }
  std::vector<cplx> logs(tuples.size());
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    std::vector<cplx> l(m);
    for (int j = 0; j < m; ++j) l[j] = cplx(c.node(tuples[t][j]), h);
    logs[t] = outer_log(l);
    if (std::isfinite(logs[t].real())) mx = std::max(mx, logs[t].real());
  }
  CompensatedSum full, half;
  double err_inner = 0.0;
  long evals = long(tuples.size());
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    if (!std::isfinite(logs[t].real()) || logs[t].real() - mx < -45.0) continue;  // below 1e-19 of the peak
    const auto& ix = tuples[t];
    double mult = 1.0;  // number of distinct orderings of the tuple
    {
      int run = 1;
      double denom = 1.0, fact = 1.0;
      for (int j = 1; j <= m; ++j) fact *= j;
      for (int j = 1; j < m; ++j) {
        if (ix[j] == ix[j - 1]) denom *= ++run;
        else run = 1;
      }
      mult = fact / denom;
    }
    std::vector<cplx> l(m);
    for (int j = 0; j < m; ++j) l[j] = cplx(c.node(ix[j]), h);
    const QuadratureResult inner = recursive_impl(l, xin, tol, sigma);
    evals += inner.evaluations;
    const cplx k = mult * std::exp(logs[t] - mx);
    const cplx v = k * inner.value;
    full.add(v);
    bool even = true;
    for (int j : ix) even = even && (j % 2 == 0);
    if (even) half.add(v);
    err_inner += std::abs(k) * inner.error_estimate;
  }
  const double w = std::pow(dt, m), wh = std::pow(2.0 * dt, m);
  const double scale = std::exp(mx);
  const cplx a = full.value() * w * scale, b = half.value() * wh * scale;
  return {a, std::abs(a - b) + err_inner * w * scale, evals};
}

}  // namespace detail

inline QuadratureResult whittaker_recursive(int N, const std::vector<double>& alpha, const std::vector<double>& x,
                                            double tol = 1e-6, double sigma = 0.5) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (N > 3) throw DimensionError("recursive evaluation is limited to N <= 3");
  if (int(alpha.size()) != N || int(x.size()) != N) throw std::invalid_argument("alpha and x must have N entries");
  return detail::guard_contour([&] { return detail::recursive_impl(detail::to_complex(alpha), x, tol, sigma); });
}

// ---- grid scans ----------------------------------------------------------

struct GridRow {
  std::vector<double> x;
  cplx value;
  double error_estimate = 0.0;
};

struct GridRequest {
  Kernel which = Kernel::whittaker;
  int N = 1;
  std::vector<double> params;  // alpha (whittaker) or lambda_top (spherical)
  std::vector<double> base;    // base point; axis coordinate overwritten
  int axis = 1;                // 1-based
  double from = 0.0, to = 0.0;
  int steps = 1;
  double tol = 1e-6;
  bool recursive = false;
};

inline std::vector<GridRow> grid_scan(const GridRequest& r) {
  if (r.axis < 1 || r.axis > r.N) throw std::invalid_argument("grid: axis out of range");
  if (r.steps < 1) throw std::invalid_argument("grid: steps must be positive");
  std::vector<double> base = r.base.empty() ? std::vector<double>(r.N, 0.0) : r.base;
  if (int(base.size()) != r.N) throw std::invalid_argument("grid: base point must have N entries");
  std::vector<GridRow> rows;
  for (int s = 0; s <= r.steps; ++s) {
    std::vector<double> x = base;
    x[r.axis - 1] = r.from + (r.to - r.from) * s / r.steps;
    QuadratureResult q;
    if (r.which == Kernel::spherical) q = spherical_eval(r.N, r.params, x, r.tol);
    else if (r.recursive) q = whittaker_recursive(r.N, r.params, x, r.tol);
    else q = whittaker_eval(r.N, r.params, x, r.tol);
    rows.push_back({x, q.value, q.error_estimate});
  }
  return rows;
}

inline void write_csv(std::ostream& os, const std::vector<GridRow>& rows) {
  const std::size_t N = rows.empty() ? 0 : rows.front().x.size();
  for (std::size_t k = 0; k < N; ++k) os << "x" << k + 1 << ",";
  os << "re,im,abs,err\n";
  for (const auto& r : rows) {
    for (double v : r.x) os << format_double(v) << ",";
    os << format_double(r.value.real()) << "," << format_double(r.value.imag()) << ","
       << format_double(std::abs(r.value)) << "," << format_double(r.error_estimate) << "\n";
  }
}

inline std::vector<GridRow> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("csv: missing header");
  std::size_t cols = 1;
  for (char ch : line) cols += ch == ',';
  if (cols < 4) throw std::invalid_argument("csv: header too short");
  std::vector<GridRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != cols) throw std::invalid_argument("csv: ragged row");
    GridRow r;
    r.x.assign(v.begin(), v.end() - 4);
    r.value = {v[cols - 4], v[cols - 3]};
    r.error_estimate = v[cols - 1];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string grid_json(const std::vector<GridRow>& rows) {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    os << (k ? "," : "") << "{\"x\":[";
    for (std::size_t j = 0; j < rows[k].x.size(); ++j) os << (j ? "," : "") << json_number(rows[k].x[j]);
    os << "],\"re\":" << json_number(rows[k].value.real()) << ",\"im\":" << json_number(rows[k].value.imag())
       << ",\"abs\":" << json_number(std::abs(rows[k].value)) << ",\"err\":" << json_number(rows[k].error_estimate)
       << "}";
  }
  os << "]";
  return os.str();
}

}  // namespace toda
