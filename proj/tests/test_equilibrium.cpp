#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "freud/equilibrium.hpp"

using namespace freud;

namespace {

double semicircle_density(double x) { return 2.0 / M_PI * sigma_semicircle(x); }

double semicircle_cdf(double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 0.5 + (x * sigma_semicircle(x) + std::asin(x)) / M_PI;
}

// independent moment oracle: adaptive quadrature of x^{2k} against the
// Ullman density, split at the kink
double moment_bruteforce(double p, int k) {
  auto f = [&](double x) { return std::pow(x, 2.0 * k) * ullman_density(p, x); };
  return adaptive_gk(f, 0.0, 1.0, 1e-12, 1e-11) * 2.0;
}

}  // namespace

TEST_CASE("quadrature rules have the right masses") {
  Eigen::VectorXd x, w;
  gauss_chebyshev(64, x, w);
  CHECK(std::abs(w.sum() - M_PI) <= 1e-13);
  for (int i = 1; i < 64; ++i) CHECK(x[i] > x[i - 1]);
  gauss_legendre(33, x, w);
  CHECK(std::abs(w.sum() - 2.0) <= 1e-14);
  arcsine_split_rule(256, x, w);
  CHECK(std::abs(w.sum() - M_PI) <= 1e-13);
  // arcsine rule integrates t^2/sigma exactly enough
  CHECK(integrate_arcsine([](double t) { return t * t; }, 256) ==
        doctest::Approx(M_PI / 2.0).epsilon(1e-13));
  CHECK(adaptive_gk([](double t) { return std::exp(-t * t); }, -8.0, 8.0) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("ullman density closed-form points") {
  CHECK(ullman_density(2.0, 0.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-13));
  CHECK(ullman_density(2.0, 1.0) == 0.0);
  CHECK(ullman_density(2.0, -1.0) == 0.0);
  CHECK(ullman_density(2.0, 1.7) == 0.0);
  for (double x = -0.95; x <= 0.95; x += 0.13) {
    CHECK(std::abs(ullman_density(2.0, x) - semicircle_density(x)) <= 1e-12);
  }
}

TEST_CASE("ullman density small-x limit p/(pi(p-1))") {
  const double p = 2.5;
  const double limit = p / (M_PI * (p - 1.0));
  const double err4 = std::abs(ullman_density(p, 1e-4) - limit);
  const double err6 = std::abs(ullman_density(p, 1e-6) - limit);
  CHECK(err6 < err4);
  CHECK(err6 <= 1e-7);
  CHECK(ullman_density(p, 0.0) == doctest::Approx(limit).epsilon(1e-14));
}

TEST_CASE("ullman density integrates to one") {
  for (double p : {2.0, 2.5, 3.0, 4.0, 5.0}) {
    auto f = [&](double x) { return ullman_density(p, x); };
    const double mass = 2.0 * adaptive_gk(f, 0.0, 1.0, 1e-12, 1e-12);
    CHECK(std::abs(mass - 1.0) <= 1e-10);
  }
}

TEST_CASE("density_alpha is the linear interpolation and even") {
  FreudModel m(3.0, 2.0, 0.5, 8);
  for (double x = -0.9; x <= 0.9; x += 0.3) {
    const double expected = 0.5 * ullman_density(3.0, x) + 0.5 * semicircle_density(x);
    CHECK(density_alpha(m, x) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(density_alpha(m, x) == density_alpha(m, -x));
  }
  FreudModel g(2.5, 2.0, 0.0, 8);
  CHECK(density_alpha(g, 0.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-14));
  FreudModel u(2.0, 2.0, 1.0, 8);
  for (double x = -0.8; x <= 0.8; x += 0.2)
    CHECK(density_alpha(u, x) == doctest::Approx(ullman_density(2.0, x)).epsilon(1e-13));
}

TEST_CASE("r_alpha constants at the solvable points") {
  FreudModel gauss(2.5, 2.0, 0.0, 8);
  for (double x : {-2.0, -0.5, 0.0, 0.3, 1.4}) {
    CHECK(r_alpha_real(gauss, x) == doctest::Approx(2.0).epsilon(1e-13));
  }
  FreudModel p2(2.0, 2.0, 1.0, 8);
  for (double x : {-0.7, 0.0, 0.2, 0.9}) {
    CHECK(r_alpha_real(p2, x) == doctest::Approx(2.0).epsilon(1e-10));
  }
  // p=4 closed form r(x) = (8/3) x^2 + 4/3
  FreudModel p4(4.0, 2.0, 1.0, 8);
  for (double x : {0.0, 0.35, -0.8}) {
    CHECK(r_alpha_real(p4, x) ==
          doctest::Approx(8.0 / 3.0 * x * x + 4.0 / 3.0).epsilon(1e-11));
    CHECK(r_alpha_series(4.0, x) ==
          doctest::Approx(8.0 / 3.0 * x * x + 4.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("r series and quadrature agree on the interior") {
  for (double p : {2.5, 3.0, 4.0, 5.0}) {
    FreudModel m(p, 2.0, 1.0, 8);
    for (double x = -0.9; x <= 0.9001; x += 0.15) {
      const double series = r_alpha_series(p, x);
      const double quad = r_alpha_real(m, x);
      CHECK(std::abs(series - quad) <= 1e-8 * std::max(1.0, std::abs(series)));
    }
  }
}

TEST_CASE("r_alpha is linear in alpha and positive with Freud growth") {
  FreudModel one(3.5, 2.0, 1.0, 8);
  for (double a : {0.25, 0.5, 0.75}) {
    FreudModel m(3.5, 2.0, a, 8);
    for (double x : {-1.7, -0.4, 0.0, 0.8, 2.5}) {
      const double combo = a * r_alpha_real(one, x) + (1.0 - a) * 2.0;
      CHECK(std::abs(r_alpha_real(m, x) - combo) <= 1e-12);
    }
  }
  // lower bound c (1 + alpha |x|^{p-2}) with a strictly positive fitted c
  for (double p : {2.5, 4.0}) {
    FreudModel m(p, 2.0, 1.0, 8);
    double fitted = 1e9;
    for (double x = -3.0; x <= 3.0; x += 0.25) {
      const double bound = 1.0 + std::pow(std::abs(x), p - 2.0);
      fitted = std::min(fitted, r_alpha_real(m, x) / bound);
    }
    CHECK(fitted > 0.05);
  }
}

TEST_CASE("density identity rho = sigma r / pi") {
  for (double p : {2.5, 4.0}) {
    for (double a : {0.5, 1.0}) {
      FreudModel m(p, 2.0, a, 8);
      for (double x = -0.9; x <= 0.9001; x += 0.2) {
        const double lhs = density_alpha(m, x);
        const double rhs = sigma_semicircle(x) * r_alpha_real(m, x) / M_PI;
        CHECK(std::abs(lhs - rhs) <= 1e-8);
      }
    }
  }
}

TEST_CASE("equilibrium moments: closed form vs quadrature") {
  CHECK(equilibrium_moment(2.0, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(equilibrium_moment(3.0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(equilibrium_moment(7.7, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(equilibrium_moment(3.0, 2) == doctest::Approx(9.0 / 56.0).epsilon(1e-14));
  for (double p : {2.0, 2.5, 3.0, 4.0, 5.0}) {
    for (int k = 0; k <= 6; ++k) {
      CHECK(std::abs(equilibrium_moment(p, k) - moment_bruteforce(p, k)) <= 1e-8);
    }
  }
}

TEST_CASE("entropy closed form at the Gaussian point") {
  FreudModel gauss(2.5, 2.0, 0.0, 8);
  CHECK(entropy(gauss) == doctest::Approx(std::log(M_PI) - 0.5).epsilon(1e-10));
  FreudModel p2(2.0, 2.0, 1.0, 8);
  CHECK(entropy(p2) == doctest::Approx(std::log(M_PI) - 0.5).epsilon(1e-10));
}

TEST_CASE("entropy is stable under order doubling") {
  for (double p : {2.5, 4.0}) {
    FreudModel m(p, 2.0, 1.0, 8);
    CHECK(std::abs(entropy(m, 2048) - entropy(m, 4096)) <= 1e-8);
  }
}

TEST_CASE("entropy against rejection-sampling Monte Carlo at p=4") {
  FreudModel m(4.0, 2.0, 1.0, 8);
  const double quad = entropy(m);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(0.0, 0.65);
  double acc = 0.0, acc2 = 0.0;
  int n = 0;
  while (n < 200000) {
    const double x = ux(rng);
    const double rho = density_alpha(m, x);
    if (uy(rng) < rho) {
      const double v = -std::log(rho);
      acc += v;
      acc2 += v * v;
      ++n;
    }
  }
  const double mean = acc / n;
  const double se = std::sqrt((acc2 / n - mean * mean) / n);
  CHECK(std::abs(quad - mean) <= 4.0 * se + 1e-6);
}

TEST_CASE("equilibrium cdf endpoints, symmetry and semicircle value") {
  FreudModel m(2.5, 2.0, 1.0, 8);
  EquilibriumCdf cdf(m);
  CHECK(cdf.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(cdf.cdf(1.0) == 1.0);
  CHECK(cdf.cdf(-1.0) == 0.0);
  FreudModel gauss(2.5, 2.0, 0.0, 8);
  EquilibriumCdf gc(gauss);
  for (double x : {-0.8, -0.3, 0.5, 0.9}) {
    CHECK(gc.cdf(x) == doctest::Approx(semicircle_cdf(x)).epsilon(1e-8));
  }
  CHECK(gc.cdf(0.5) == doctest::Approx(0.80449889052211465).epsilon(1e-8));
  // monotone and quantile-inverse
  double prev = -1.0;
  for (double u = 0.05; u <= 0.951; u += 0.05) {
    const double q = cdf.quantile(u);
    CHECK(q > prev);
    CHECK(cdf.cdf(q) == doctest::Approx(u).epsilon(1e-8));
    prev = q;
  }
}

TEST_CASE("build_grid masses and moment checks") {
  FreudModel m(3.0, 2.0, 0.5, 8);
  const QuadratureGrid arcs = build_grid(GridKind::arcsine, 64, m);
  CHECK(std::abs(arcs.weights.sum() - M_PI) <= 1e-13);
  for (int i = 1; i < arcs.nodes.size(); ++i) CHECK(arcs.nodes[i] > arcs.nodes[i - 1]);

  FreudModel gauss(2.5, 2.0, 0.0, 8);
  const QuadratureGrid eq0 = build_grid(GridKind::equilibrium, 256, gauss);
  CHECK(std::abs(eq0.weights.sum() - 1.0) <= 1e-10);

  for (double p : {2.5, 3.0, 4.0}) {
    for (double a : {0.25, 1.0}) {
      FreudModel mm(p, 2.0, a, 8);
      const QuadratureGrid eq = build_grid(GridKind::equilibrium, 512, mm);
      CHECK(std::abs(eq.weights.sum() - 1.0) <= 1e-10);
      const double target =
          a * equilibrium_moment(p, 1) + (1.0 - a) * 0.25;
      CHECK(std::abs(eq.integrate([](double x) { return x * x; }) - target) <= 1e-8);
    }
  }

  const QuadratureGrid leb = build_grid(GridKind::lebesgue, 128, m);
  CHECK(std::abs(leb.weights.sum() - 2.0) <= 1e-12);
}

TEST_CASE("effective potential vanishes on the support") {
  FreudModel gauss(2.5, 2.0, 0.0, 8);
  CHECK(std::abs(effective_potential_check(gauss, 0.3)) <= 1e-8);
  FreudModel p3(3.0, 2.0, 1.0, 8);
  CHECK(std::abs(effective_potential_check(p3, 0.5)) <= 1e-6);
  FreudModel p25(2.5, 2.0, 1.0, 8);
  CHECK(std::abs(effective_potential_check(p25, -0.7)) <= 1e-6);
  for (double x = -0.85; x <= 0.851; x += 0.17) {
    CHECK(std::abs(effective_potential_check(p3, x)) <= 1e-6);
  }
}
