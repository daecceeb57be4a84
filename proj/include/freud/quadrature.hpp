#ifndef FREUD_QUADRATURE_HPP
#define FREUD_QUADRATURE_HPP

#include <Eigen/Core>
#include <cmath>
#include <functional>

namespace freud {

enum class GridKind { arcsine, equilibrium, lebesgue };

/// Nodes and weights for one of the three measures on (-1,1):
/// dt/sigma(t) (arcsine, total mass pi), d mu_{V_alpha} (equilibrium, mass 1)
/// or plain dt (lebesgue, mass 2). Nodes are strictly increasing and
/// symmetric about 0.
struct QuadratureGrid {
  GridKind kind = GridKind::arcsine;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int order = 0;

  template <typename F>
  auto integrate(F&& f) const -> decltype(f(0.0)) {
    decltype(f(0.0)) acc{};
    for (Eigen::Index i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// Gauss-Legendre rule on [-1,1]; cached per order, thread-safe.
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Gauss-Chebyshev rule for dt/sigma(t): t_j = cos((2j-1)pi/2n), w_j = pi/n,
/// returned with nodes in increasing order.
void gauss_chebyshev(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Rule for dt/sigma(t) built from the substitution t = sin(u) on each of
/// (-1,0) and (0,1) with a Gauss-Legendre rule in u. The split at 0 makes
/// |t|^gamma-type kinks of Freud integrands endpoint singularities, which
/// Gauss handles at algebraic-spectral rates. n is the total node count.
void arcsine_split_rule(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Integrate f against dt/sigma(t) on (-1,1) with the split rule.
template <typename F>
auto integrate_arcsine(F&& f, int n) -> decltype(f(0.0)) {
  Eigen::VectorXd t, w;
  arcsine_split_rule(n, t, w);
  decltype(f(0.0)) acc{};
  for (Eigen::Index i = 0; i < t.size(); ++i) acc += w[i] * f(t[i]);
  return acc;
}

/// Adaptive Gauss-Kronrod 7-15 on [a,b]. Recurses until the local error
/// estimate is below max(abs_tol, rel_tol * |I|) per panel share.
double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double abs_tol = 1e-12, double rel_tol = 1e-12, int max_depth = 52);

}  // namespace freud

#endif
