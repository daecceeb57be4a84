#include "freud/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace freud {

namespace {

void compute_gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(n);
  w.resize(n);
  const int m = (n + 1) / 2;
  for (int k = 0; k < m; ++k) {
    // Tricomi initial guess, then Newton on P_n
    double z = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[k] = -z;
    x[n - 1 - k] = z;
    double wk = 2.0 / ((1.0 - z * z) * pp * pp);
    w[k] = wk;
    w[n - 1 - k] = wk;
  }
}

std::mutex g_gl_mutex;
std::map<int, std::pair<Eigen::VectorXd, Eigen::VectorXd>> g_gl_cache;

// Gauss-Kronrod 7-15 abscissae/weights (positive half)
const double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
const double kGK15Weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kG7Weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
  double integral;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = kGK15Weights[7] * f(c);
  double resg = kG7Weights[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kGK15Nodes[i];
    const double fv = f(c - dx) + f(c + dx);
    resk += kGK15Weights[i] * fv;
    if (i % 2 == 1) resg += kG7Weights[i / 2] * fv;
  }
  double integral = resk * h;
  double error = std::abs((resk - resg) * h);
  // QUADPACK-style sharpening of the raw difference
  error = std::min(error, std::pow(200.0 * error, 1.5));
  return {integral, error};
}

double adaptive_gk_rec(const std::function<double(double)>& f, double a, double b,
                       double tol, int depth, int max_depth) {
  PanelResult r = gk15(f, a, b);
  if (depth >= max_depth || r.error <= tol) return r.integral;
  const double c = 0.5 * (a + b);
  return adaptive_gk_rec(f, a, c, 0.5 * tol, depth + 1, max_depth) +
         adaptive_gk_rec(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  {
    std::lock_guard<std::mutex> lock(g_gl_mutex);
    auto it = g_gl_cache.find(n);
    if (it != g_gl_cache.end()) {
      nodes = it->second.first;
      weights = it->second.second;
      return;
    }
  }
  Eigen::VectorXd x, w;
  compute_gauss_legendre(n, x, w);
  {
    std::lock_guard<std::mutex> lock(g_gl_mutex);
    g_gl_cache.emplace(n, std::make_pair(x, w));
  }
  nodes = std::move(x);
  weights = std::move(w);
}

void gauss_chebyshev(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  if (n < 1) throw std::invalid_argument("gauss_chebyshev: order must be >= 1");
  nodes.resize(n);
  weights.setConstant(n, M_PI / n);
  for (int j = 1; j <= n; ++j) nodes[n - j] = std::cos((2.0 * j - 1.0) * M_PI / (2.0 * n));
}

void arcsine_split_rule(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  const int half = std::max(4, n / 2);
  Eigen::VectorXd x, w;
  gauss_legendre(half, x, w);
  nodes.resize(2 * half);
  weights.resize(2 * half);
  for (int k = 0; k < half; ++k) {
    const double u = (x[k] + 1.0) * M_PI / 4.0;  // u in (0, pi/2)
    const double t = std::sin(u);
    const double ww = w[k] * M_PI / 4.0;
    nodes[half + k] = t;
    weights[half + k] = ww;
    nodes[half - 1 - k] = -t;
    weights[half - 1 - k] = ww;
  }
}

double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, double rel_tol, int max_depth) {
  if (a == b) return 0.0;
  PanelResult whole = gk15(f, a, b);
  double tol = std::max(abs_tol, rel_tol * std::abs(whole.integral));
  if (whole.error <= tol) return whole.integral;
  const double c = 0.5 * (a + b);
  return adaptive_gk_rec(f, a, c, 0.5 * tol, 1, max_depth) +
         adaptive_gk_rec(f, c, b, 0.5 * tol, 1, max_depth);
}

}  // namespace freud
