#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "toda/toda_oracle.hpp"

using namespace toda;

namespace {

GridFunction sample(const std::vector<std::vector<double>>& axes, const std::function<cplx(const std::vector<double>&)>& f) {
  GridFunction g;
  g.axes = axes;
  g.values.resize(g.size());
  g.valid.assign(g.size(), 1);
  for (std::size_t k = 0; k < g.size(); ++k) g.values[k] = f(g.point(k));
  return g;
}

}  // namespace

TEST(TodaApply, ConstantGivesPotential) {
  const auto g = sample({uniform_axis(0.0, 0.1, 9), uniform_axis(0.3, 0.1, 9)}, [](auto&) { return cplx(2.0); });
  const auto h = toda_apply(g, 2);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!h.valid[k]) continue;
    const auto x = g.point(k);
    EXPECT_NEAR(std::abs(h.values[k] - 2.0 * std::exp(x[1] - x[0])), 0.0, 1e-12);
  }
  int invalid = 0;
  for (char v : h.valid) invalid += !v;
  EXPECT_EQ(invalid, 81 - 25);
}

TEST(TodaApply, OneDimensionalPlaneWave) {
  const double k = 1.3, h = 0.05;
  const auto g = sample({uniform_axis(0.0, h, 21)}, [&](auto& x) { return std::exp(cplx(0, k * x[0])); });
  const auto out = toda_apply(g, 1);
  const double symbol = 0.5 * (2 - 2 * std::cos(k * h)) / (h * h);
  for (std::size_t i = 2; i < 19; ++i) EXPECT_LT(std::abs(out.values[i] - symbol * g.values[i]), 1e-10);
}

TEST(TodaApply, FreeLimit) {
  // x2 - x1 << 0: the potential is negligible and H ~ |k|^2/2
  const double h = 0.02;
  const std::vector<double> k = {0.4, -0.9};
  const auto g = sample({uniform_axis(30.0, h, 9), uniform_axis(-30.0, h, 9)},
                        [&](auto& x) { return std::exp(cplx(0, k[0] * x[0] + k[1] * x[1])); });
  const auto out = toda_apply(g, 2);
  const double e = 0.5 * (k[0] * k[0] + k[1] * k[1]);
  for (std::size_t f = 0; f < g.size(); ++f)
    if (out.valid[f]) {
      EXPECT_LT(std::abs(out.values[f] - e * g.values[f]), 1e-4);
    }
}

TEST(TodaApply, ReversalSymmetry) {
  // H commutes with x_k -> -x_{N+1-k}
  auto f = [](const std::vector<double>& x) { return cplx(std::exp(-x[0] * x[0] + 0.3 * x[1]), std::sin(x[2] - x[0])); };
  auto fr = [&](const std::vector<double>& x) { return f({-x[2], -x[1], -x[0]}); };
  const std::vector<std::vector<double>> axes = {uniform_axis(0.4, 0.1, 9), uniform_axis(0.0, 0.1, 9),
                                                 uniform_axis(-0.4, 0.1, 9)};
  const auto hf = toda_apply(sample(axes, f), 3);
  const auto hfr = toda_apply(sample(axes, fr), 3);
  // (H f)(R x) at node (i,j,k) is stored at node (8-k, 8-j, 8-i)
  for (int i = 2; i < 7; ++i)
    for (int j = 2; j < 7; ++j)
      for (int k = 2; k < 7; ++k) {
        const std::size_t a = (std::size_t(i) * 9 + j) * 9 + k, b = (std::size_t(8 - k) * 9 + (8 - j)) * 9 + (8 - i);
        EXPECT_LT(std::abs(hfr.values[a] - hf.values[b]), 1e-10);
      }
}

TEST(TodaApply, Errors) {
  GridFunction g;
  g.axes = {{0.0, 0.1, 0.3}};
  g.values.assign(3, 0.0);
  EXPECT_THROW(toda_apply(g, 1), std::invalid_argument);
  g.axes = {uniform_axis(0, 0.1, 4)};
  g.values.assign(4, 0.0);
  EXPECT_THROW(toda_apply(g, 1), std::invalid_argument);
  g.axes = {uniform_axis(0, 0.1, 8)};
  g.values.assign(8, 0.0);
  EXPECT_THROW(toda_apply(g, 2), std::invalid_argument);
}

TEST(Eigenvalue, Examples) {
  EXPECT_DOUBLE_EQ(eigenvalue_from_alpha({1.0, -1.0}), 1.0);
  EXPECT_EQ(eigenvalue_from_alpha({0.0, 0.0, 0.0}), 0.0);
  EXPECT_NEAR(eigenvalue_from_alpha({0.7, 0.2, -1.1}), eigenvalue_from_alpha({-1.1, 0.7, 0.2}), 1e-15);
  EXPECT_NEAR(eigenvalue_from_alpha({0.7, 0.2, -1.1}), 0.5 * (0.49 + 0.04 + 1.21), 1e-15);
}

TEST(BesselOracle, ShapeAndNormalization) {
  std::vector<double> r;
  for (int k = 0; k < 41; ++k) r.push_back(-12.0 + 0.4 * k);
  const auto g = bessel_oracle_n2({1.0, -1.0}, r);
  EXPECT_EQ(g.values[20], cplx(1.0));
  // far left: oscillation with wavenumber kappa = 1, consecutive sign changes ~ pi apart
  int changes = 0;
  for (int k = 1; k < 15; ++k) changes += (g.values[k].real() * g.values[k - 1].real() < 0);
  EXPECT_GE(changes, 1);
  // far right: faster than exponential decay
  EXPECT_LT(std::abs(g.values[40]), 1e-3);
  EXPECT_LT(std::abs(g.values[40] / g.values[39]), std::abs(g.values[39] / g.values[38]));
  EXPECT_THROW(bessel_oracle_n2({1.0}, r), std::invalid_argument);
  EXPECT_THROW(bessel_oracle_n2({1.0, 0.0}, {1.0, 0.5}), std::invalid_argument);
}

TEST(BesselOracle, RatioToMellinBarnesIsConstant) {
  std::vector<double> r;
  for (int k = 0; k < 50; ++k) r.push_back(-2.0 + 5.0 * k / 49);
  for (const auto& alpha : std::vector<std::vector<double>>{{0.5, -0.5}, {1.0, -1.0}, {1.3, 0.2}}) {
    const auto g = bessel_oracle_n2(alpha, r);
    const cplx ref = whittaker_eval(2, alpha, {r[0] / 2, -r[0] / 2}, 1e-12).value / g.values[0];
    for (std::size_t k = 0; k < r.size(); ++k) {
      const cplx ratio = whittaker_eval(2, alpha, {r[k] / 2, -r[k] / 2}, 1e-12).value / g.values[k];
      ASSERT_LT(std::abs(ratio / ref - 1.0), 1e-8) << alpha[0] << " r=" << r[k];
    }
  }
}

TEST(Eigen, NTwoResidualAndOrder) {
  const std::vector<AxisSpec> fine = {{0.5, 0.05, 48}, {-0.5, 0.05, 48}};
  const auto [coarse, f] = eigen_refinement(2, {0.7, -0.3}, fine);
  EXPECT_LE(f.residual, 1e-3);
  EXPECT_GT(coarse.residual / f.residual, 3.5);
  EXPECT_LT(coarse.residual / f.residual, 4.5);
  EXPECT_EQ(f.interior_nodes, 48 * 48);
  EXPECT_TRUE(check_eigen(2, {0.7, -0.3}, fine, 1e-3).passed());
  EXPECT_THROW(eigen_residual(4, {0, 0, 0, 0}, {{}, {}, {}, {}}), DimensionError);
}

TEST(Eigen, NThreeSmallGrid) {
  const std::vector<AxisSpec> spec = {{1.0, 0.1, 12}, {0.0, 0.1, 12}, {-1.0, 0.1, 12}};
  const auto r = eigen_residual(3, {0.7, 0.0, -0.7}, spec, 1e-9);
  EXPECT_LE(r.residual, 1e-3);
  EXPECT_NEAR(r.energy, 0.49, 1e-15);
}
