#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "freud/sampler.hpp"

using namespace freud;

namespace {

struct Welford {
  long n = 0;
  double mean = 0.0, m2 = 0.0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double variance() const { return m2 / (n - 1); }
  double se_mean() const { return std::sqrt(variance() / n); }
};

// two-sided quadrature expectation for the N=1 chain, weight e^{-(b/2)V}
double n1_expectation(const FreudModel& m, const std::function<double(double)>& h) {
  auto w = [&](double l) { return std::exp(-0.5 * m.beta * m.potential(l)); };
  const double num =
      adaptive_gk([&](double l) { return h(l) * w(l); }, -6.0, 6.0, 1e-13, 1e-11);
  const double den = adaptive_gk(w, -6.0, 6.0, 1e-13, 1e-11);
  return num / den;
}

}  // namespace

TEST_CASE("log density closed forms and permutation invariance") {
  FreudModel m1(2.5, 2.0, 1.0, 1);
  ParticleConfiguration c;
  c.positions.resize(1);
  c.positions[0] = 0.37;
  CHECK(log_density_unnormalized(m1, c) ==
        doctest::Approx(-0.5 * 2.0 * m1.potential(0.37)).epsilon(1e-13));

  FreudModel m2(3.0, 1.5, 0.5, 2);
  ParticleConfiguration pair;
  pair.positions.resize(2);
  pair.positions << -0.4, 0.4;
  const double expected = 1.5 * std::log(0.8) - 1.5 * 2.0 / 2.0 * 2.0 * m2.potential(0.4);
  CHECK(log_density_unnormalized(m2, pair) == doctest::Approx(expected).epsilon(1e-12));

  FreudModel m5(2.5, 2.0, 1.0, 5);
  ParticleConfiguration a, b;
  a.positions.resize(5);
  a.positions << 0.1, -0.7, 0.3, 0.9, -0.2;
  b.positions.resize(5);
  b.positions << 0.9, 0.3, -0.2, 0.1, -0.7;
  CHECK(log_density_unnormalized(m5, a) ==
        doctest::Approx(log_density_unnormalized(m5, b)).epsilon(1e-13));
}

TEST_CASE("coincident pair has log density -inf") {
  FreudModel m(2.5, 2.0, 1.0, 2);
  ParticleConfiguration c;
  c.positions.resize(2);
  c.positions << 0.25, 0.25;
  CHECK(std::isinf(log_density_unnormalized(m, c)));
  CHECK(log_density_unnormalized(m, c) < 0.0);
}

TEST_CASE("vanishing proposal accepts everything") {
  SamplerConfig cfg;
  cfg.model = FreudModel(2.5, 2.0, 1.0, 16);
  cfg.proposal_sigma = 1e-13;
  cfg.sweeps = 50;
  cfg.burn_in = 5;
  cfg.adapt = false;
  cfg.global_moves = false;
  const ChainOutput out = run_chain(cfg);
  CHECK(out.acceptance_rate >= 0.999);
}

TEST_CASE("N=1 chain matches the 1-D quadrature law") {
  FreudModel m(2.0, 2.0, 1.0, 1);
  SamplerConfig cfg;
  cfg.model = m;
  cfg.sweeps = 210000;
  cfg.burn_in = 10000;
  cfg.thinning = 2;
  cfg.seed = 21;
  cfg.proposal_sigma = 0.6;
  cfg.adapt = false;
  const ChainOutput out = run_chain(cfg);
  CHECK(out.samples.size() == 100000);
  Welford w2;
  for (const auto& s : out.samples) w2.add(s.positions[0] * s.positions[0]);
  const double target = n1_expectation(m, [](double l) { return l * l; });
  CHECK(target == doctest::Approx(0.25).epsilon(1e-8));  // e^{-2x^2} variance
  // autocorrelation inflates the naive SE; allow a generous factor
  CHECK(std::abs(w2.mean - target) <= 10.0 * w2.se_mean());
}

TEST_CASE("N=2 chain matches the 2-D quadrature gap law") {
  FreudModel m(2.0, 1.0, 1.0, 2);
  SamplerConfig cfg;
  cfg.model = m;
  cfg.sweeps = 60000;
  cfg.burn_in = 2000;
  cfg.thinning = 5;
  cfg.seed = 5;
  const ChainOutput out = run_chain(cfg);
  Welford gap;
  for (const auto& s : out.samples) gap.add(std::abs(s.positions[0] - s.positions[1]));
  // rotated coordinates: E|l1-l2| = sqrt(pi)/2 for the p=2, beta=1, N=2 law
  const double target = std::sqrt(M_PI) / 2.0;
  CHECK(std::abs(gap.mean - target) <= 10.0 * gap.se_mean());
}

TEST_CASE("tridiagonal sampler hits the semicircle moments") {
  Xoshiro256pp rng(77);
  Welford m2;
  double max_abs = 0.0;
  for (int rep = 0; rep < 2000; ++rep) {
    const ParticleConfiguration c = sample_gaussian_tridiagonal(256, 2.0, rng);
    m2.add(c.positions.square().mean());
    max_abs = std::max(max_abs, c.positions.abs().maxCoeff());
  }
  CHECK(std::abs(m2.mean - 0.25) <= 3.0 * m2.se_mean());
  CHECK(max_abs <= 1.1);
  // N=1: plain Gaussian of variance 1/(2 beta)
  Welford v1;
  for (int rep = 0; rep < 60000; ++rep) {
    const ParticleConfiguration c = sample_gaussian_tridiagonal(1, 3.0, rng);
    v1.add(c.positions[0] * c.positions[0]);
  }
  CHECK(std::abs(v1.mean - 1.0 / 6.0) <= 3.0 * v1.se_mean());
}

TEST_CASE("metropolis and tridiagonal spectra agree at alpha=0") {
  // pooled-eigenvalue two-sample KS at N=64, moderate draw counts
  const int N = 64, draws = 120;
  FreudModel m(2.0, 2.0, 0.0, N);
  std::vector<double> a, b;
  Xoshiro256pp rng(11);
  for (int rep = 0; rep < draws; ++rep) {
    const ParticleConfiguration c = sample_gaussian_tridiagonal(N, 2.0, rng);
    for (int i = 0; i < N; ++i) a.push_back(c.positions[i]);
  }
  const Eigen::ArrayXd start = quantile_positions(m, N);
  for (int rep = 0; rep < draws; ++rep) {
    SamplerConfig cfg;
    cfg.model = m;
    cfg.sweeps = 160;
    cfg.burn_in = 100;
    cfg.thinning = 60;
    cfg.seed = 1000 + rep;
    const ChainOutput out = run_chain(cfg, &start);
    REQUIRE(out.samples.size() == 1);
    for (int i = 0; i < N; ++i) b.push_back(out.samples[0].positions[i]);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double ks = 0.0;
  size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia] <= b[ib]) ++ia; else ++ib;
    ks = std::max(ks, std::abs(static_cast<double>(ia) / a.size() -
                               static_cast<double>(ib) / b.size()));
  }
  CHECK(ks <= 0.02);
}

TEST_CASE("linear statistic basics and quantile-start rigidity") {
  FreudModel m(2.0, 2.0, 1.0, 256);
  TestFunction constf{[](double) { return 4.2; }, [](double) { return 0.0; },
                      [](double) { return 0.0; }, nullptr, "const"};
  ParticleConfiguration c;
  c.positions = quantile_positions(m, 256);
  CHECK(std::abs(linear_statistic(c, constf, 4.2)) <= 1e-9);
  const TestFunction& fx2 = test_function_by_name("x2");
  const double avg = equilibrium_average(m, fx2);
  CHECK(avg == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(std::abs(linear_statistic(c, fx2, avg)) <= 1.0);
  // odd f flips sign under mirroring
  const TestFunction& fx3 = test_function_by_name("x3");
  ParticleConfiguration cm;
  cm.positions = -c.positions;
  CHECK(linear_statistic(c, fx3, 0.0) ==
        doctest::Approx(-linear_statistic(cm, fx3, 0.0)).epsilon(1e-12));
}

TEST_CASE("empirical stieltjes closed forms") {
  ParticleConfiguration c;
  c.positions = Eigen::ArrayXd::Zero(1);
  const Complex z(0.0, 1.0);
  CHECK(std::abs(empirical_stieltjes(c, z) - Complex(0.0, 1.0)) <= 1e-15);
  CHECK(std::abs(empirical_stieltjes_derivative(c, z) - Complex(-1.0, 0.0)) <= 1e-15);
  ParticleConfiguration c3;
  c3.positions.resize(3);
  c3.positions << -0.5, 0.1, 0.8;
  const Complex zz(0.4, 0.7);
  CHECK(std::abs(std::conj(empirical_stieltjes(c3, zz)) -
                 empirical_stieltjes(c3, std::conj(zz))) <= 1e-15);
  const Complex far(100.0, 1.0);
  CHECK(std::abs(empirical_stieltjes(c3, far) + 1.0 / far) <=
        2.0 * 0.8 / std::norm(far));
  CHECK_THROWS_AS(empirical_stieltjes(c3, Complex(0.5, 0.0)), std::domain_error);
}

TEST_CASE("anisotropy closed cases and signed-measure oracle") {
  FreudModel m(2.5, 2.0, 1.0, 8);
  const QuadratureGrid grid = build_grid(GridKind::equilibrium, 512, m);
  ParticleConfiguration c;
  c.positions.resize(8);
  c.positions << -0.9, -0.61, -0.33, -0.1, 0.12, 0.4, 0.55, 0.83;
  // linear f: difference quotient is constant and nu has zero mass
  TestFunction lin{[](double x) { return 3.0 * x + 1.0; }, [](double) { return 3.0; },
                   [](double) { return 0.0; }, nullptr, "lin"};
  CHECK(std::abs(anisotropy(c, m, lin, grid)) <= 1e-9);
  // f = x^2: quotient x+y, and iint (x+y) dnu dnu = 2 nu(1) nu(id) = 0
  CHECK(std::abs(anisotropy(c, m, test_function_by_name("x2"), grid)) <= 1e-9);

  // signed-measure double-sum oracle at N=64
  FreudModel m64(2.5, 2.0, 1.0, 64);
  ParticleConfiguration c64;
  c64.positions = quantile_positions(m64, 64);
  for (int i = 0; i < 64; ++i) c64.positions[i] += 1e-3 * std::sin(7.0 * i);
  const TestFunction& f = test_function_by_name("cos");
  const double fast = anisotropy(c64, m64, f, grid);
  // combined point set: particles with weight 1/N, grid nodes with -w
  std::vector<double> pts, wts;
  for (int i = 0; i < 64; ++i) {
    pts.push_back(c64.positions[i]);
    wts.push_back(1.0 / 64.0);
  }
  for (Eigen::Index j = 0; j < grid.nodes.size(); ++j) {
    pts.push_back(grid.nodes[j]);
    wts.push_back(-grid.weights[j]);
  }
  double slow = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = 0; j < pts.size(); ++j) {
      const double d = pts[i] - pts[j];
      const double q = std::abs(d) < 1e-12 ? f.df(pts[i]) : (f.f(pts[i]) - f.f(pts[j])) / d;
      slow += wts[i] * wts[j] * q;
    }
  }
  slow *= 64.0 * 64.0;
  CHECK(std::abs(fast - slow) <= 1e-8 * std::max(1.0, std::abs(fast)));
}

TEST_CASE("loop observable vanishes in expectation at N=1 (quadrature)") {
  for (auto [p, a, beta] : {std::tuple{2.5, 0.0, 2.0}, std::tuple{2.5, 1.0, 1.0},
                            std::tuple{3.0, 0.5, 2.0}}) {
    FreudModel m(p, beta, a, 1);
    StieltjesEvaluator ev(m);
    for (Complex z : {Complex(0.5, 0.5), Complex(-0.3, 1.0)}) {
      auto bracket = [&](double l) {
        ParticleConfiguration c;
        c.positions = Eigen::ArrayXd::Constant(1, l);
        return loop_observable(c, ev, z);
      };
      const double re = n1_expectation(m, [&](double l) { return bracket(l).real(); });
      const double im = n1_expectation(m, [&](double l) { return bracket(l).imag(); });
      CHECK(std::abs(Complex(re, im)) <= 1e-8);
    }
  }
}

TEST_CASE("loop observable decays like 1/N on quantile configurations") {
  FreudModel base(2.5, 2.0, 1.0, 64);
  const Complex z(0.5, 0.5);
  double b64 = 0.0, prev = 0.0;
  for (int N : {64, 128, 256}) {
    FreudModel m(base.p, base.beta, base.alpha, N);
    StieltjesEvaluator ev(m);
    ParticleConfiguration c;
    c.positions = quantile_positions(m, N);
    const double mag = std::abs(loop_observable(c, ev, z));
    if (N == 64) b64 = mag * N;
    else CHECK(mag * N <= 5.0 * b64);
    if (prev > 0.0) CHECK(mag < prev);
    prev = mag;
  }
}

TEST_CASE("count_in_interval partitions") {
  ParticleConfiguration c;
  c.positions.resize(6);
  c.positions << -0.9, -0.4, -0.1, 0.2, 0.5, 0.8;
  CHECK(count_in_interval(c, -10.0, 10.0) == 6);
  CHECK(count_in_interval(c, 2.0, 3.0) == 0);
  CHECK(count_in_interval(c, 0.0, 1.0) == 3);
  CHECK(count_in_interval(c, -1.0, -0.05) == 3);
  CHECK_THROWS_AS(count_in_interval(c, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("incremental caches stay consistent over long runs") {
  SamplerConfig cfg;
  cfg.model = FreudModel(2.5, 2.0, 1.0, 32);
  cfg.sweeps = 10000;
  cfg.burn_in = 100;
  cfg.thinning = 10000;
  cfg.seed = 9;
  cfg.check_caches = true;  // throws on drift every 1000 sweeps
  const ChainOutput out = run_chain(cfg);
  CHECK(out.acceptance_rate > 0.05);
  CHECK(out.acceptance_rate < 0.95);
}

TEST_CASE("chains are bit-reproducible from the seed") {
  SamplerConfig cfg;
  cfg.model = FreudModel(3.0, 1.0, 1.0, 24);
  cfg.sweeps = 300;
  cfg.burn_in = 50;
  cfg.thinning = 25;
  cfg.seed = 1234;
  const ChainOutput a = run_chain(cfg);
  const ChainOutput b = run_chain(cfg);
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    CHECK((a.samples[i].positions == b.samples[i].positions).all());
  }
  CHECK(a.acceptance_rate == b.acceptance_rate);
  cfg.seed = 4321;
  const ChainOutput c = run_chain(cfg);
  CHECK((a.samples[0].positions != c.samples[0].positions).any());
}

TEST_CASE("detailed balance at N=2 against the quadrature marginal") {
  FreudModel m(2.5, 1.0, 1.0, 2);
  SamplerConfig cfg;
  cfg.model = m;
  cfg.sweeps = 1000000;
  cfg.burn_in = 5000;
  cfg.thinning = 10;
  cfg.seed = 31;
  const ChainOutput out = run_chain(cfg);
  const int bins = 26;
  const double lo = -1.3, hi = 1.3;
  std::vector<double> hist(bins, 0.0);
  long total = 0;
  for (const auto& s : out.samples) {
    for (int i = 0; i < 2; ++i) {
      const double x = s.positions[i];
      if (x >= lo && x < hi) {
        ++hist[static_cast<int>((x - lo) / (hi - lo) * bins)];
        ++total;
      }
    }
  }
  // quadrature marginal: rho(x) propto int |x-y|^beta e^{-(V(x)+V(y))} dy
  auto unnorm = [&](double x) {
    return std::exp(-m.potential(x)) *
           adaptive_gk(
               [&](double y) {
                 return std::pow(std::abs(x - y), m.beta) * std::exp(-m.potential(y));
               },
               -4.0, 4.0, 1e-11, 1e-9);
  };
  std::vector<double> probs(bins, 0.0);
  double norm = adaptive_gk(unnorm, -4.0, 4.0, 1e-11, 1e-9);
  for (int b = 0; b < bins; ++b) {
    const double a = lo + (hi - lo) * b / bins;
    const double bb = lo + (hi - lo) * (b + 1) / bins;
    probs[b] = adaptive_gk(unnorm, a, bb, 1e-11, 1e-9) / norm;
  }
  double tv = 0.0;
  for (int b = 0; b < bins; ++b)
    tv += 0.5 * std::abs(hist[b] / total - probs[b]);
  CHECK(tv <= 0.01);
}

TEST_CASE("exchangeability: shuffled start leaves statistics unchanged") {
  FreudModel m(2.5, 2.0, 1.0, 16);
  const TestFunction& f = test_function_by_name("x2");
  const double avg = equilibrium_average(m, f);
  Eigen::ArrayXd start = quantile_positions(m, 16);
  Eigen::ArrayXd shuffled = start;
  std::mt19937_64 mixer(5);
  std::shuffle(shuffled.data(), shuffled.data() + 16, mixer);
  Welford wa, wb;
  for (int rep = 0; rep < 150; ++rep) {
    SamplerConfig cfg;
    cfg.model = m;
    cfg.sweeps = 120;
    cfg.burn_in = 80;
    cfg.thinning = 40;
    cfg.seed = 100 + rep;
    const ChainOutput oa = run_chain(cfg, &start);
    const ChainOutput ob = run_chain(cfg, &shuffled);
    wa.add(linear_statistic(oa.samples[0], f, avg));
    wb.add(linear_statistic(ob.samples[0], f, avg));
  }
  const double se = std::sqrt(wa.se_mean() * wa.se_mean() + wb.se_mean() * wb.se_mean());
  CHECK(std::abs(wa.mean - wb.mean) <= 4.0 * se);
}
