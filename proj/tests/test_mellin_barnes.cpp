#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "toda/mellin_barnes.hpp"

using namespace toda;

namespace {

const double kPi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// K_{i nu}(x) = int_0^inf e^{-x cosh t} cos(nu t) dt, trapezoid on the even integrand
double bessel_k_imag(double nu, double x) {
  const double h = 0.005;
  double s = 0.5 * std::exp(-x);
  for (int k = 1;; ++k) {
    const double t = k * h;
    const double v = std::exp(-x * std::cosh(t));
    s += v * std::cos(nu * t);
    if (v < 1e-300) break;
  }
  return s * h;
}

}  // namespace

TEST(Contour, Defaults) {
  const auto c2 = default_contour(2, {0.5, -0.5}, 1e-6);
  EXPECT_EQ(c2.offsets, (std::vector<double>{0.5, 0.0}));
  const auto c3 = default_contour(3, {0.1, 0.2, 0.3}, 1e-6);
  EXPECT_EQ(c3.offsets, (std::vector<double>{1.0, 0.5, 0.0}));
  double prevT = 1e9;
  for (double tol : {1e-12, 1e-9, 1e-6, 1e-3}) {
    const auto c = default_contour(2, {0.5, -0.5}, tol);
    EXPECT_LT(c.half_width, prevT);
    prevT = c.half_width;
    EXPECT_GE(c.nodes_per_dim, 65);
    EXPECT_EQ(c.nodes_per_dim % 2, 1);
  }
  EXPECT_THROW(default_contour(2, {0.5}, 1e-6), std::invalid_argument);
}

TEST(Integrand, Examples) {
  auto one = TriangularArray<cplx>::from_levels({{cplx(0.7)}});
  EXPECT_LT(std::abs(mb_integrand(one, {1.5}, Kernel::whittaker) - std::exp(cplx(0, 0.7 * 1.5))), 1e-15);
  const cplx l11(0.3, 0.5);
  auto two = TriangularArray<cplx>::from_levels({{l11}, {cplx(0.4), cplx(-0.2)}});
  const std::vector<double> x = {0.2, -0.6};
  const cplx expected = toda::gamma((l11 - 0.4) / cplx(0, 1)) * toda::gamma((l11 + 0.2) / cplx(0, 1)) *
                        std::exp(cplx(0, 1) * (l11 * x[0] + (0.2 - l11) * x[1]));
  EXPECT_LT(rel(mb_integrand(two, x, Kernel::whittaker), expected), 1e-13);
  const cplx sph = std::exp(detail::log_spherical_pair(0.3 - 0.4) + detail::log_spherical_pair(0.3 + 0.2));
  auto real_two = TriangularArray<cplx>::from_levels({{cplx(0.3)}, {cplx(0.4), cplx(-0.2)}});
  EXPECT_LT(rel(mb_integrand(real_two, {0.0, 0.0}, Kernel::spherical), sph), 1e-13);
}

TEST(WhittakerEval, NOneIsPlaneWave) {
  const auto r = whittaker_eval(1, {0.8}, {1.25});
  EXPECT_EQ(r.value, std::exp(cplx(0, 0.8 * 1.25)));
  EXPECT_EQ(r.error_estimate, 0.0);
}

TEST(WhittakerEval, NTwoMatchesBesselIntegral) {
  // psi(r/2, -r/2) = 4 pi K_{2ia}(2 e^{r/2}) for alpha = (a, -a)
  for (double a : {0.5, 1.0}) {
    for (double r : {-1.5, 0.0, 1.0, 2.5}) {
      const auto q = whittaker_eval(2, {a, -a}, {r / 2, -r / 2}, 1e-12);
      const double k = 4 * kPi * bessel_k_imag(2 * a, 2 * std::exp(r / 2));
      EXPECT_LT(std::abs(q.value - k) / std::abs(k), 1e-9) << a << " " << r;
    }
  }
}

TEST(WhittakerEval, LatticeMatchesBruteForce) {
  ContourSpec c;
  c.offsets = {1.0, 0.5, 0.0};
  c.half_width = 4.0;
  c.nodes_per_dim = 17;
  const std::vector<double> alpha = {0.3, -0.2, 0.5}, x = {0.4, -0.1, 0.3};
  cplx brute = 0.0;
  const double dt = c.step();
  for (int i = 0; i < 17; ++i)
    for (int j = 0; j < 17; ++j)
      for (int k = 0; k < 17; ++k) {
        if (j == k) continue;
        auto lam = TriangularArray<cplx>::from_levels(
            {{cplx(c.node(i), 1.0)}, {cplx(c.node(j), 0.5), cplx(c.node(k), 0.5)}, {0.3, -0.2, 0.5}});
        brute += mb_integrand(lam, x, Kernel::whittaker) * dt * dt * dt;
      }
  EXPECT_LT(rel(whittaker_eval(3, alpha, x, c).value, brute), 1e-12);
}

TEST(WhittakerEval, WeylSymmetry) {
  const std::vector<double> x2 = {0.3, -0.5};
  const auto a = whittaker_eval(2, {1.3, 0.2}, x2, 1e-10), b = whittaker_eval(2, {0.2, 1.3}, x2, 1e-10);
  EXPECT_LE(std::abs(a.value - b.value), 10 * std::max(a.error_estimate, 1e-15));
  const std::vector<double> x3 = {0.3, -0.5, 0.1};
  const auto p = whittaker_eval(3, {0.7, 0.0, -0.4}, x3, 1e-8);
  for (const auto& perm : std::vector<std::vector<double>>{{0.0, 0.7, -0.4}, {-0.4, 0.0, 0.7}}) {
    const auto q = whittaker_eval(3, perm, x3, 1e-8);
    EXPECT_LE(std::abs(p.value - q.value), 10 * p.error_estimate);
  }
}

TEST(WhittakerEval, ContourIndependence) {
  const std::vector<double> x2 = {0.3, -0.5};
  EXPECT_LT(std::abs(whittaker_eval(2, {1.3, 0.2}, x2, 1e-10, 0.5).value -
                     whittaker_eval(2, {1.3, 0.2}, x2, 1e-10, 0.7).value),
            1e-7);
  const std::vector<double> x3 = {0.3, -0.5, 0.1};
  EXPECT_LT(std::abs(whittaker_eval(3, {0.7, 0.0, -0.4}, x3, 1e-10, 0.5).value -
                     whittaker_eval(3, {0.7, 0.0, -0.4}, x3, 1e-10, 0.7).value),
            1e-7);
}

TEST(WhittakerEval, TranslationCovariance) {
  const std::vector<double> alpha = {0.7, 0.0, -0.4};
  const std::vector<double> x = {0.3, -0.5, 0.1};
  const auto base = whittaker_eval(3, alpha, x, 1e-10);
  for (double c : {0.25, -0.6}) {
    const auto moved = whittaker_eval(3, alpha, {x[0] + c, x[1] + c, x[2] + c}, 1e-10);
    const cplx ratio = moved.value / base.value;
    EXPECT_NEAR(std::abs(ratio), 1.0, 1e-9);
    EXPECT_LT(std::abs(ratio - std::exp(cplx(0, 0.3 * c))), 1e-9);
  }
}

TEST(WhittakerEval, SelfConsistencyUnderRefinement) {
  const std::vector<double> alpha = {1.0, -1.0};
  for (double tol : {1e-6, 1e-9}) {
    ContourSpec c = default_contour(2, alpha, tol);
    const auto coarse = whittaker_eval(2, alpha, {0.2, -0.2}, c);
    c.nodes_per_dim = 2 * c.nodes_per_dim - 1;
    const auto fine = whittaker_eval(2, alpha, {0.2, -0.2}, c);
    EXPECT_LE(std::abs(fine.value - coarse.value), coarse.error_estimate);
  }
  ContourSpec c = default_contour(3, {0.7, 0.0, -0.7}, 1e-6);
  const auto coarse = whittaker_eval(3, {0.7, 0.0, -0.7}, {0.1, 0.0, -0.1}, c);
  c.nodes_per_dim = 2 * c.nodes_per_dim - 1;
  const auto fine = whittaker_eval(3, {0.7, 0.0, -0.7}, {0.1, 0.0, -0.1}, c);
  EXPECT_LE(std::abs(fine.value - coarse.value), coarse.error_estimate);
}

TEST(WhittakerEval, Errors) {
  EXPECT_THROW(whittaker_eval(4, {0, 0, 0, 0}, {0, 0, 0, 0}), DimensionError);
  EXPECT_THROW(whittaker_recursive(4, {0, 0, 0, 0}, {0, 0, 0, 0}), DimensionError);
  ContourSpec bad;
  bad.offsets = {0.0, 0.0};
  bad.half_width = 2.0;
  bad.nodes_per_dim = 65;  // node 32 sits at t = 0 = alpha_1
  EXPECT_THROW(whittaker_eval(2, {0.0, 0.3}, {0.0, 0.0}, bad), ContourError);
  EXPECT_THROW(whittaker_eval(2, {0.1}, {0.0, 0.0}), std::invalid_argument);
}

TEST(Recursive, AgreesWithDirect) {
  const std::vector<double> x2 = {0.3, -0.5};
  EXPECT_EQ(whittaker_recursive(1, {0.4}, {2.0}).value, std::exp(cplx(0, 0.8)));
  EXPECT_LT(std::abs(whittaker_recursive(2, {1.3, 0.2}, x2, 1e-10).value -
                     whittaker_eval(2, {1.3, 0.2}, x2, 1e-10).value),
            1e-8);
  const std::vector<double> x3 = {0.3, -0.5, 0.1};
  const auto d = whittaker_eval(3, {0.7, 0.0, -0.7}, x3, 1e-8);
  const auto r = whittaker_recursive(3, {0.7, 0.0, -0.7}, x3, 1e-8);
  EXPECT_LT(std::abs(d.value - r.value), 1e-6);
}

TEST(Spherical, BarnesLemmaGolden) {
  // x = 0, N = 2: 4 pi^3 / cosh(pi (l1 - l2)/2)
  for (double d : {0.3, 0.9, 2.0}) {
    const auto q = spherical_eval(2, {d / 2, -d / 2}, {0.0, 0.0}, 1e-10);
    EXPECT_LT(std::abs(q.value - 4 * kPi * kPi * kPi / std::cosh(kPi * d / 2)), 1e-8) << d;
  }
}

TEST(Spherical, WeylSymmetryAndRejection) {
  const std::vector<double> x = {0.2, 0.1, -0.3};
  const auto a = spherical_eval(3, {0.6, -0.3, 0.1}, x, 1e-8);
  const auto b = spherical_eval(3, {0.1, 0.6, -0.3}, x, 1e-8);
  EXPECT_LE(std::abs(a.value - b.value), 10 * a.error_estimate);
  const auto c = spherical_eval(2, {0.6, -0.3}, {0.4, -0.1}, 1e-8);
  const auto d = spherical_eval(2, {-0.3, 0.6}, {0.4, -0.1}, 1e-8);
  EXPECT_LE(std::abs(c.value - d.value), 10 * c.error_estimate);
  EXPECT_THROW(spherical_eval(2, {0.5, 0.5}, {0.0, 0.0}), PoleError);
  EXPECT_EQ(spherical_eval(1, {0.5}, {2.0}).value, std::exp(cplx(0, 1.0)));
}

TEST(Grid, ScanAndCsvRoundTrip) {
  GridRequest req;
  req.N = 2;
  req.params = {0.5, -0.5};
  req.axis = 2;
  req.from = -1.0;
  req.to = 1.0;
  req.steps = 4;
  const auto rows = grid_scan(req);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].x, (std::vector<double>{0.0, -1.0}));
  EXPECT_EQ(rows[4].x, (std::vector<double>{0.0, 1.0}));
  std::ostringstream os;
  write_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, 19), "x1,x2,re,im,abs,err");
  const auto back = parse_csv(os.str());
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(back[k].x, rows[k].x);
    EXPECT_EQ(back[k].value, rows[k].value);
    EXPECT_EQ(back[k].error_estimate, rows[k].error_estimate);
  }
  std::ostringstream again;
  write_csv(again, back);
  EXPECT_EQ(again.str(), os.str());
  req.which = Kernel::spherical;
  req.N = 1;
  req.params = {0.3};
  req.axis = 1;
  EXPECT_EQ(grid_scan(req).size(), 5u);
  req.axis = 3;
  EXPECT_THROW(grid_scan(req), std::invalid_argument);
  EXPECT_THROW(parse_csv("x1,re\n"), std::invalid_argument);
}
