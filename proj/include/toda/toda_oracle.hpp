#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "toda/mellin_barnes.hpp"
#include "toda/report.hpp"

namespace toda {

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complex samples on a product of uniform axes, last axis fastest.
struct GridFunction {
  std::vector<std::vector<double>> axes;
  std::vector<cplx> values;
  std::vector<char> valid;  // 0 on the invalidated boundary layer

  std::size_t size() const {
    std::size_t s = 1;
    for (const auto& a : axes) s *= a.size();
    return s;
  }
  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> st(axes.size(), 1);
    for (int k = int(axes.size()) - 2; k >= 0; --k) st[k] = st[k + 1] * axes[k + 1].size();
    return st;
  }
  std::vector<double> point(std::size_t flat) const {
    std::vector<double> x(axes.size());
    for (int k = int(axes.size()) - 1; k >= 0; --k) {
      x[k] = axes[k][flat % axes[k].size()];
      flat /= axes[k].size();
    }
    return x;
  }
  void validate() const {
    if (values.size() != size()) throw std::invalid_argument("grid function: value count does not match axes");
    for (const auto& a : axes) {
      if (a.size() < 2) throw std::invalid_argument("grid function: each axis needs two nodes");
      const double h = a[1] - a[0];
      for (std::size_t i = 2; i < a.size(); ++i)
        if (std::abs((a[i] - a[i - 1]) - h) > 1e-9 * std::abs(h)) throw std::invalid_argument("grid: nonuniform axis");
    }
  }
};

inline std::vector<double> uniform_axis(double center, double h, int count) {
  std::vector<double> a(count);
  for (int i = 0; i < count; ++i) a[i] = center + h * (i - 0.5 * (count - 1));
  return a;
}

inline constexpr int kBoundaryMargin = 2;

// H = -1/2 Delta + sum_k e^{x_{k+1} - x_k}, second-order central differences.
inline GridFunction toda_apply(const GridFunction& psi, int N) {
  psi.validate();
  if (int(psi.axes.size()) != N) throw std::invalid_argument("toda_apply: grid dimension must equal N");
  for (const auto& a : psi.axes)
    if (int(a.size()) <= 2 * kBoundaryMargin) throw std::invalid_argument("toda_apply: empty interior");
  GridFunction out{psi.axes, std::vector<cplx>(psi.size(), 0.0), std::vector<char>(psi.size(), 1)};
  const auto st = psi.strides();
  std::vector<double> h(N);
  for (int k = 0; k < N; ++k) h[k] = psi.axes[k][1] - psi.axes[k][0];
  for (std::size_t f = 0; f < psi.size(); ++f) {
    std::size_t rem = f;
    bool ok = true;
    std::vector<std::size_t> idx(N);
    for (int k = N - 1; k >= 0; --k) {
      idx[k] = rem % psi.axes[k].size();
      rem /= psi.axes[k].size();
      ok = ok && idx[k] >= kBoundaryMargin && idx[k] + kBoundaryMargin < psi.axes[k].size();
    }
    if (!ok) {
      out.valid[f] = 0;
      continue;
    }
    cplx lap = 0.0;
    for (int k = 0; k < N; ++k) lap += (psi.values[f + st[k]] - 2.0 * psi.values[f] + psi.values[f - st[k]]) / (h[k] * h[k]);
    double pot = 0.0;
    for (int k = 0; k + 1 < N; ++k) pot += std::exp(psi.axes[k + 1][idx[k + 1]] - psi.axes[k][idx[k]]);
    out.values[f] = -0.5 * lap + pot * psi.values[f];
  }
  return out;
}

inline double eigenvalue_from_alpha(const std::vector<double>& alpha) {
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t a = 0; a < alpha.size(); ++a) {
    s1 += alpha[a];
    for (std::size_t b = a + 1; b < alpha.size(); ++b) s2 += alpha[a] * alpha[b];
  }
  return 0.5 * s1 * s1 - s2;
}

struct AxisSpec {
  double center = 0.0;
  double h = 0.05;
  int interior = 64;
};

// Toda-frame wave function psi(x) = psi_MB(-x) sampled on the full grid
// (interior plus margin). Returns the grid and the largest quadrature estimate.
inline std::pair<GridFunction, double> sample_wavefunction(int N, const std::vector<double>& alpha,
                                                           const std::vector<AxisSpec>& spec, double quad_tol) {
  if (N < 2 || N > 3) throw DimensionError("eigen check supports N = 2, 3");
  if (int(spec.size()) != N || int(alpha.size()) != N) throw std::invalid_argument("eigen: spec and alpha need N entries");
  GridFunction g;
  for (const auto& a : spec) {
    if (a.interior < 1 || !(a.h > 0)) throw std::invalid_argument("eigen: bad axis spec");
    g.axes.push_back(uniform_axis(a.center, a.h, a.interior + 2 * kBoundaryMargin));
  }
  g.values.assign(g.size(), 0.0);
  g.valid.assign(g.size(), 1);
  const ContourSpec c = default_contour(N, alpha, quad_tol);
  double err = 0.0;
  if (N == 2) {
    for (std::size_t f = 0; f < g.size(); ++f) {
      auto x = g.point(f);
      for (auto& v : x) v = -v;
      const auto q = whittaker_eval(2, alpha, x, c);
      g.values[f] = q.value;
      err = std::max(err, q.error_estimate);
    }
    return {g, err};
  }
  // N = 3: with y = -x, u = y1 - y2 = x2 - x1 and w = y2 - y3 = x3 - x2 run over
  // lattices when all axes share the same step.
  const double h = spec[0].h;
  for (const auto& a : spec)
    if (std::abs(a.h - h) > 1e-15) throw std::invalid_argument("eigen: N = 3 lattice path needs a common step");
  const int M = int(g.axes[0].size());
  std::vector<double> us(2 * M - 1), ws(2 * M - 1);
  for (int d = -(M - 1); d <= M - 1; ++d) {
    us[d + M - 1] = (spec[1].center - spec[0].center) + d * h;
    ws[d + M - 1] = (spec[2].center - spec[1].center) + d * h;
  }
  const Mb3Lattice lat(alpha, c, Kernel::whittaker);
  const auto F = lat.evaluate(us, ws);
  const double sig = alpha[0] + alpha[1] + alpha[2];
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      for (int k = 0; k < M; ++k) {
        const std::size_t f = (std::size_t(i) * M + j) * M + k;
        const auto& r = F[std::size_t(j - i + M - 1) * ws.size() + std::size_t(k - j + M - 1)];
        const double y3 = -g.axes[2][k];
        g.values[f] = std::exp(cplx(0.0, sig * y3)) * r.value;
        err = std::max(err, r.error_estimate);
      }
  return {g, err};
}

struct EigenResult {
  double residual = 0.0;  // ||H psi - E psi|| / ||psi|| over interior nodes
  double energy = 0.0;
  long interior_nodes = 0;
  double quadrature_error = 0.0;
};

inline EigenResult eigen_residual(int N, const std::vector<double>& alpha, const std::vector<AxisSpec>& spec,
                                  double quad_tol = 1e-11) {
  const auto [psi, qerr] = sample_wavefunction(N, alpha, spec, quad_tol);
  const GridFunction hpsi = toda_apply(psi, N);
  const double E = eigenvalue_from_alpha(alpha);
  double num = 0.0, den = 0.0;
  long count = 0;
  for (std::size_t f = 0; f < psi.size(); ++f) {
    if (!hpsi.valid[f]) continue;
    num += std::norm(hpsi.values[f] - E * psi.values[f]);
    den += std::norm(psi.values[f]);
    ++count;
  }
  if (den == 0.0) throw OracleError("eigen: wave function vanishes on the grid");
  return {std::sqrt(num / den), E, count, qerr};
}

inline VerificationReport check_eigen(int N, const std::vector<double>& alpha, const std::vector<AxisSpec>& spec,
                                      double tol, double quad_tol = 1e-11) {
  VerificationReport rep;
  rep.suite = "eigen";
  rep.n = N;
  const auto r = eigen_residual(N, alpha, spec, quad_tol);
  rep.add("finite-difference eigen residual", r.residual <= tol, r.residual, tol);
  return rep;
}

// Residual ratio between step h and h/2 on the same box; second order gives about 4.
inline std::pair<EigenResult, EigenResult> eigen_refinement(int N, const std::vector<double>& alpha,
                                                            const std::vector<AxisSpec>& fine, double quad_tol = 1e-11) {
  std::vector<AxisSpec> coarse = fine;
  for (auto& a : coarse) {
    a.h *= 2.0;
    a.interior = std::max(1, a.interior / 2);
  }
  return {eigen_residual(N, alpha, coarse, quad_tol), eigen_residual(N, alpha, fine, quad_tol)};
}

// N = 2 reduced problem -g'' + e^r g = kappa^2 g, r = x2 - x1 in the Toda
// frame, kappa = (alpha1 - alpha2)/2. The decaying solution is integrated
// from the WKB tail towards smaller r and normalized to 1 at the grid midpoint.
inline GridFunction bessel_oracle_n2(const std::vector<double>& alpha, const std::vector<double>& r_grid,
                                     double tol = 1e-13) {
  if (alpha.size() != 2) throw std::invalid_argument("bessel oracle: alpha must have two entries");
  if (r_grid.size() < 2) throw std::invalid_argument("bessel oracle: grid needs two nodes");
  for (std::size_t k = 1; k < r_grid.size(); ++k)
    if (!(r_grid[k] > r_grid[k - 1])) throw std::invalid_argument("bessel oracle: grid must increase");
  const double k2 = 0.25 * (alpha[0] - alpha[1]) * (alpha[0] - alpha[1]);
  const double r0 = std::max(r_grid.back() + 3.0, std::log(25.0 * (k2 + 1.0)));

  using State = std::array<double, 2>;  // y(s) = g(-s), y'(s)
  auto rhs = [k2](const State& y, State& dy, double s) {
    dy[0] = y[1];
    dy[1] = (std::exp(-s) - k2) * y[0];
  };
  const double Q = std::exp(r0) - k2;
  State y = {1.0, std::sqrt(Q) + std::exp(r0) / (4.0 * Q)};
  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(tol, tol);

  const std::size_t n = r_grid.size();
  std::vector<double> g(n), logscale(n);
  double s = -r0, ls = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t idx = n - 1 - step;
    const double target = -r_grid[idx];
    try {
      ode::integrate_adaptive(stepper, rhs, y, s, target, 1e-3);
    } catch (const std::exception& e) {
      throw OracleError(std::string("bessel oracle: integration failed: ") + e.what());
    }
    s = target;
    if (!std::isfinite(y[0])) throw OracleError("bessel oracle: integration failed");
    const double m = std::abs(y[0]) + std::abs(y[1]);
    if (m > 1e100) {
      y[0] /= m;
      y[1] /= m;
      ls += std::log(m);
    }
    g[idx] = y[0];
    logscale[idx] = ls;
  }
  const std::size_t anchor = n / 2;
  GridFunction out;
  out.axes = {r_grid};
  out.values.resize(n);
  out.valid.assign(n, 1);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = g[k] / g[anchor] * std::exp(logscale[k] - logscale[anchor]);
  return out;
}

}  // namespace toda
