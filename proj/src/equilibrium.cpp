#include "freud/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace freud {

namespace {

// central binomial / 4^n coefficients c_n = binom(2n,n)/4^n
inline double cb_next(double c, int n) { return c * (2.0 * n + 1.0) / (2.0 * n + 2.0); }

// int_0^{arccos(a)} cos(theta)^{-p} dtheta, for a in [1/2, 1]
double ullman_theta_tail(double p, double a) {
  if (a >= 1.0) return 0.0;
  const double theta_max = std::acos(a);
  return adaptive_gk([p](double th) { return std::pow(std::cos(th), -p); }, 0.0,
                     theta_max, 1e-15, 1e-14);
}

double ullman_tail_at_half(double p) {
  thread_local double cached_p = -1.0;
  thread_local double cached_value = 0.0;
  if (p != cached_p) {
    cached_value = ullman_theta_tail(p, 0.5);
    cached_p = p;
  }
  return cached_value;
}

bool nearest_odd(double p, int& m) {
  m = static_cast<int>(std::lround((p - 1.0) / 2.0));
  return m >= 1 && std::abs(p - (2.0 * m + 1.0)) < 1e-9;
}

// closed form of A_p = sum_n c_n/(2n+1-p) via Gauss 2F1(.,.;.;1); vanishes
// for even p, has a pole at odd p matching the excluded series term. The
// sine ratio reduces to -cot(pi delta / 2) with delta the signed distance
// of p to the nearest odd integer, which keeps full relative precision.
double a_p_closed(double p) {
  const double a = (1.0 - p) / 2.0;
  const int m = static_cast<int>(std::lround((p - 1.0) / 2.0));
  const double delta = p - (2.0 * m + 1.0);
  const double ratio = -std::cos(M_PI * delta / 2.0) / std::sin(M_PI * delta / 2.0);
  return 0.5 * std::sqrt(M_PI) * ratio *
         std::exp(log_gamma(0.5 - a) - log_gamma(1.0 - a));
}

double a_p(double p) {
  int m = 0;
  if (nearest_odd(p, m)) {
    // removable singularity: average out the simple pole of the closed form
    const double eps = 1e-5;
    return 0.5 * (a_p_closed(p + eps) + a_p_closed(p - eps));
  }
  return a_p_closed(p);
}

bool series_usable(double p) {
  // the series form degrades within ~1e-3 of an odd integer p (unless exact)
  int m = 0;
  if (nearest_odd(p, m)) return true;
  const int mm = static_cast<int>(std::lround((p - 1.0) / 2.0));
  if (mm >= 1 && std::abs(p - (2.0 * mm + 1.0)) < 1e-3) return false;
  return true;
}

}  // namespace

double ullman_density(double p, double x) {
  if (!(p >= 2.0)) throw std::domain_error("ullman_density: requires p >= 2");
  const double a = std::abs(x);
  if (a >= 1.0) return 0.0;
  if (a < 1e-15) return p / (M_PI * (p - 1.0));
  if (a >= 0.5) return p * std::pow(a, p - 1.0) / M_PI * ullman_theta_tail(p, a);

  // a < 1/2: series for int_a^{1/2} y^{-p}/sigma plus the smooth theta tail,
  // with a^{p-1} folded in to avoid underflow at tiny a
  const double ap1 = std::pow(a, p - 1.0);
  double sum = ap1 * ullman_tail_at_half(p);
  double c = 1.0;
  double a2k = 1.0;  // a^{2k}
  const double half = 0.5;
  for (int k = 0; k < 80; ++k) {
    const double e = 2.0 * k + 1.0 - p;
    double term;
    if (std::abs(e) < 1e-12) {
      term = c * ap1 * std::log(half / a);
    } else {
      term = c * (ap1 * std::pow(half, e) - a2k) / e;
    }
    sum += term;
    a2k *= a * a;
    c = cb_next(c, k);
    if (k > p / 2.0 + 2.0 && std::abs(term) < 1e-18 && c * a2k < 1e-18) break;
  }
  return p * sum / M_PI;
}

double density_alpha(const FreudModel& model, double x) {
  const double semicircle = 2.0 / M_PI * sigma_semicircle(x);
  if (model.alpha == 0.0) return semicircle;
  return model.alpha * ullman_density(model.p, x) + (1.0 - model.alpha) * semicircle;
}

double r_alpha_real(const FreudModel& model, double x, int order) {
  const double vpx = model.potential_deriv(x);
  auto dq = [&](double t) {
    const double d = t - x;
    if (std::abs(d) < 1e-7) return model.potential_deriv2(0.5 * (t + x));
    return (model.potential_deriv(t) - vpx) / d;
  };
  return integrate_arcsine(dq, order) / (2.0 * M_PI);
}

double r_alpha_series(double p, double x) {
  const double ax = std::abs(x);
  if (ax >= 1.0) throw std::domain_error("r_alpha_series: requires |x| < 1");
  int m = 0;
  const bool odd = nearest_odd(p, m);
  const double A = a_p(p);
  const double B = odd ? c_p(p) / M_PI : 0.0;

  double S = 0.0;
  double c = 1.0;
  double x2n = 1.0;
  for (int n = 0; n < 4000; ++n) {
    const double e = 2.0 * n + 1.0 - p;
    if (std::abs(e) > 1e-9) {
      const double term = c / e * x2n;
      S += term;
      if (n > p && std::abs(term) < 1e-17 * (1.0 + std::abs(S))) break;
    }
    x2n *= x * x;
    c = cb_next(c, n);
  }
  const double sing = ax > 0.0 ? std::pow(ax, p - 1.0) * (A - B * std::log(ax)) : 0.0;
  return p * (sing - S) / sigma_semicircle(x);
}

double r_alpha(const FreudModel& model, double x) {
  const double r_quadratic_part = 2.0 * (1.0 - model.alpha);
  if (model.alpha == 0.0) return 2.0;
  if (std::abs(x) <= 0.9 && series_usable(model.p))
    return model.alpha * r_alpha_series(model.p, x) + r_quadratic_part;
  return r_alpha_real(model, x);
}

double equilibrium_moment(double p, int k) {
  if (k < 0) throw std::domain_error("equilibrium_moment: requires k >= 0");
  double binom_over_4k = 1.0;  // binom(2k,k)/4^k
  for (int j = 0; j < k; ++j) binom_over_4k = cb_next(binom_over_4k, j);
  return binom_over_4k * p / (p + 2.0 * k);
}

double entropy(const FreudModel& model, int half_order) {
  // x = cos(theta), split at theta = pi/2 where the density has its kink
  Eigen::VectorXd u, w;
  gauss_legendre(half_order, u, w);
  double acc = 0.0;
  for (int k = 0; k < half_order; ++k) {
    const double th = (u[k] + 1.0) * M_PI / 4.0;  // (0, pi/2)
    const double s = std::sin(th);
    const double x = std::cos(th);
    // two halves: x and -x carry the same density
    const double rho = density_alpha(model, x);
    if (rho > 1e-300) acc += w[k] * M_PI / 4.0 * 2.0 * rho * std::log(rho) * s;
  }
  return -acc;
}

double effective_potential_check(const FreudModel& model, double x, int order) {
  if (!(std::abs(x) < 1.0))
    throw std::domain_error("effective_potential_check: requires |x| < 1");
  const double rho_x = density_alpha(model, x);
  const int half = order / 2;
  Eigen::VectorXd u, w;
  gauss_legendre(half, u, w);
  double pv = 0.0;
  for (int side = 0; side < 2; ++side) {
    for (int k = 0; k < half; ++k) {
      // map to (-1,0) and (0,1)
      const double y = side == 0 ? -0.5 * (u[k] + 1.0) : 0.5 * (u[k] + 1.0);
      const double d = x - y;
      double val;
      if (std::abs(d) < 1e-9) {
        const double h = 1e-6;
        val = -(density_alpha(model, x + h) - density_alpha(model, x - h)) / (2.0 * h);
      } else {
        val = (density_alpha(model, y) - rho_x) / d;
      }
      pv += 0.5 * w[k] * val;
    }
  }
  pv += rho_x * std::log((1.0 + x) / (1.0 - x));
  return 0.5 * model.potential_deriv(x) - pv;
}

QuadratureGrid build_grid(GridKind kind, int order, const FreudModel& model) {
  if (order < 8) throw std::domain_error("build_grid: requires order >= 8");
  QuadratureGrid grid;
  grid.kind = kind;
  grid.order = order;
  switch (kind) {
    case GridKind::arcsine:
      gauss_chebyshev(order, grid.nodes, grid.weights);
      break;
    case GridKind::lebesgue:
      gauss_legendre(order, grid.nodes, grid.weights);
      break;
    case GridKind::equilibrium: {
      const int half = std::max(4, order / 2);
      Eigen::VectorXd u, w;
      gauss_legendre(half, u, w);
      grid.nodes.resize(2 * half);
      grid.weights.resize(2 * half);
      for (int k = 0; k < half; ++k) {
        const double v = (u[k] + 1.0) * M_PI / 4.0;  // (0, pi/2)
        const double t = std::sin(v);
        const double r = r_alpha(model, t);
        const double ww = w[k] * M_PI / 4.0 * std::cos(v) * std::cos(v) * r / M_PI;
        grid.nodes[half + k] = t;
        grid.weights[half + k] = ww;
        grid.nodes[half - 1 - k] = -t;
        grid.weights[half - 1 - k] = ww;
      }
      break;
    }
  }
  return grid;
}

EquilibriumCdf::EquilibriumCdf(const FreudModel& model, int table_size) {
  const int M = std::max(table_size, 65);
  x_.resize(M);
  F_.resize(M);
  dF_.resize(M);
  // theta grid, x = cos(theta) traversed from -1 to 1
  Eigen::VectorXd gl_u(5), gl_w(5);
  gauss_legendre(5, gl_u, gl_w);
  std::vector<double> panel(M - 1);
  for (int i = 0; i < M - 1; ++i) {
    // panel between theta_i and theta_{i+1}, theta decreasing from pi to 0
    const double th_hi = M_PI * (1.0 - static_cast<double>(i) / (M - 1));
    const double th_lo = M_PI * (1.0 - static_cast<double>(i + 1) / (M - 1));
    double acc = 0.0;
    for (int g = 0; g < 5; ++g) {
      const double th = 0.5 * (th_hi + th_lo) + 0.5 * (th_lo - th_hi) * gl_u[g];
      acc += 0.5 * (th_hi - th_lo) * gl_w[g] * density_alpha(model, std::cos(th)) *
             std::sin(th);
    }
    panel[i] = acc;
  }
  double total = 0.0;
  for (int i = 0; i < M - 1; ++i) total += panel[i];
  double run = 0.0;
  for (int i = 0; i < M; ++i) {
    const double th = M_PI * (1.0 - static_cast<double>(i) / (M - 1));
    x_[i] = std::cos(th);
    F_[i] = run / total;
    if (i < M - 1) run += panel[i];
    dF_[i] = density_alpha(model, x_[i]) / total;
  }
  F_[M - 1] = 1.0;
  x_[0] = -1.0;
  x_[M - 1] = 1.0;
  // Fritsch-Carlson limiter keeps the Hermite interpolant monotone
  for (int i = 0; i < M - 1; ++i) {
    const double h = x_[i + 1] - x_[i];
    const double delta = (F_[i + 1] - F_[i]) / h;
    if (delta <= 0.0) continue;
    const double al = dF_[i] / delta, be = dF_[i + 1] / delta;
    const double s = al * al + be * be;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      dF_[i] *= tau;
      dF_[i + 1] *= tau;
    }
  }
}

double EquilibriumCdf::cdf(double x) const {
  if (x <= x_[0]) return 0.0;
  const int M = static_cast<int>(x_.size());
  if (x >= x_[M - 1]) return 1.0;
  int lo = 0, hi = M - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (x_[mid] <= x ? lo : hi) = mid;
  }
  const double h = x_[lo + 1] - x_[lo];
  const double t = (x - x_[lo]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2.0 * t3 - 3.0 * t2 + 1.0) * F_[lo] + (t3 - 2.0 * t2 + t) * h * dF_[lo] +
         (-2.0 * t3 + 3.0 * t2) * F_[lo + 1] + (t3 - t2) * h * dF_[lo + 1];
}

double EquilibriumCdf::quantile(double u) const {
  if (u <= 0.0) return -1.0;
  if (u >= 1.0) return 1.0;
  double lo = -1.0, hi = 1.0;
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double equilibrium_cdf(const FreudModel& model, double x) {
  return EquilibriumCdf(model).cdf(x);
}

}  // namespace freud
