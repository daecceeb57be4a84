#ifndef FREUD_EQUILIBRIUM_HPP
#define FREUD_EQUILIBRIUM_HPP

#include <Eigen/Core>
#include <vector>

#include "freud/model.hpp"
#include "freud/quadrature.hpp"

namespace freud {

/// Density of the Ullman distribution at x:
/// (p |x|^{p-1} / pi) * int_{|x|}^1 y^{-p} / sqrt(1-y^2) dy on [-1,1], else 0.
double ullman_density(double p, double x);

/// Density of mu_{V_alpha} = alpha mu_V + (1-alpha) mu_G at x.
double density_alpha(const FreudModel& model, double x);

/// r_alpha(x) = (1/2pi) int (V_a'(t)-V_a'(x))/(t-x) dt/sigma(t), by
/// quadrature against the arcsine measure. Difference quotients switch to
/// V_a'' at the midpoint below |t-x| = 1e-7.
double r_alpha_real(const FreudModel& model, double x, int order = 2048);

/// Series form of r at alpha=1 (valid on |x|<1, accurate up to ~0.95):
/// (p/sigma)(|x|^{p-1}(A_p - B_p log|x|) - sum_n a_n(p) x^{2n}).
double r_alpha_series(double p, double x);

/// Hybrid evaluation of r_alpha: series on |x| <= 0.9 (when applicable),
/// integral form elsewhere.
double r_alpha(const FreudModel& model, double x);

/// <mu_V, x^{2k}> = 4^{-k} binom(2k,k) p/(p+2k).
double equilibrium_moment(double p, int k);

/// Entropy -int rho log rho dx of mu_{V_alpha}.
double entropy(const FreudModel& model, int half_order = 2048);

/// V_alpha'(x)/2 - PV int d mu_{V_alpha}(y)/(x-y); zero on (-1,1) up to
/// quadrature error. |x| < 1 required.
double effective_potential_check(const FreudModel& model, double x, int order = 2048);

/// Grid construction for the three measures; see QuadratureGrid.
QuadratureGrid build_grid(GridKind kind, int order, const FreudModel& model);

/// Tabulated CDF of mu_{V_alpha} with monotone cubic interpolation and
/// bisection quantiles.
class EquilibriumCdf {
 public:
  EquilibriumCdf(const FreudModel& model, int table_size = 2049);

  double cdf(double x) const;
  double quantile(double u) const;

 private:
  Eigen::VectorXd x_;     // increasing abscissae
  Eigen::VectorXd F_;     // cdf values
  Eigen::VectorXd dF_;    // density at abscissae (Hermite slopes)
};

/// One-shot CDF evaluation (builds a table internally; prefer EquilibriumCdf
/// when many evaluations share a model).
double equilibrium_cdf(const FreudModel& model, double x);

}  // namespace freud

#endif
