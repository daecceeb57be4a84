#ifndef FREUD_STIELTJES_HPP
#define FREUD_STIELTJES_HPP

#include <complex>
#include <vector>

#include "freud/equilibrium.hpp"
#include "freud/model.hpp"

namespace freud {

using Complex = std::complex<double>;

/// Even C^inf cutoff with 1_{[-1/2,1/2]} <= chi <= 1_{[-1,1]}.
double chi_cutoff(double t);

/// b(z) = sqrt(z+1) sqrt(z-1), principal branches.
Complex branch_b(Complex z);

/// Pseudo-analytic extension of g(x) = p c_p |x|^p = x V'(x):
/// g(z) = g(x) + iy g'(x) - y^2/2 g''(x) - i y^3/6 g'''(x) chi(y/x),
/// the last term taken as 0 when x = 0.
Complex g_complex(double p, Complex z);

/// g_alpha(z) = alpha g(z) + 4 (1-alpha) z^2.
Complex g_alpha_complex(const FreudModel& model, Complex z);

/// f_{alpha,z}(lambda) = (g_alpha(lambda) - g_alpha(z)) / (lambda - z).
/// Rejects real z.
Complex f_alpha_z(const FreudModel& model, Complex z, double lambda);

/// Verification grid above the spectrum: rectangle
/// [-1-delta0, 1+delta0] x (0, delta0], with the trapezoid |x| <= 1+y.
struct SpectralDomain {
  double delta0 = 0.5;
  std::vector<Complex> rectangle;

  static SpectralDomain build(double delta0, int nx, int ny);
  static bool in_trapezoid(Complex z) { return std::abs(z.real()) <= 1.0 + z.imag(); }
};

/// Equilibrium Stieltjes-transform machinery for one model. Node sets and
/// g_alpha values are cached; quadrature switches from the coarse to the
/// fine rule when dist(z, [-1,1]) < 1e-2.
class StieltjesEvaluator {
 public:
  explicit StieltjesEvaluator(const FreudModel& model, int coarse_order = 256,
                              int fine_order = 2048);

  const FreudModel& model() const { return model_; }

  /// r_alpha(z) = (1/2 pi z) int (g_a(t)-g_a(z))/(t-z) dt/sigma(t), in the
  /// stable rewriting r = (1/2pi) int [g_a(t)/t] dt/((t-z) sigma(t))
  ///                      + g_a(z)/(2 z b(z)),
  /// whose z -> 0 limit is the continuous extension.
  Complex r(Complex z) const;

  /// h_alpha(z) = int f_{alpha,z} d mu_{V_alpha}.
  Complex h(Complex z) const;

  /// s_{V_alpha}(z) = r(z) b(z) - g_alpha(z) / (2z).
  Complex s_V(Complex z) const;

  /// The second root: -r(z) b(z) - g_alpha(z) / (2z).
  Complex s_V_tilde(Complex z) const;

  /// | s^2 + (g_a(z)/z) s + h_a(z)/z | at s = s_V(z).
  double quadratic_residual(Complex z) const;

 private:
  struct Rule {
    Eigen::VectorXd nodes, weights;
    Eigen::VectorXd g_over_t;  // g_alpha(t)/t at arcsine nodes
    Eigen::VectorXd g_values;  // g_alpha(t) at equilibrium nodes
    Eigen::VectorXd eq_nodes, eq_weights;
  };

  static double dist_to_support(Complex z);
  const Rule& rule_for(Complex z) const;

  FreudModel model_;
  Rule coarse_, fine_;
};

/// One-off wrappers (build an evaluator per call; prefer the class in loops).
Complex r_alpha_complex(const FreudModel& model, Complex z);
Complex h_alpha(const FreudModel& model, Complex z);
Complex stieltjes_s_V(const FreudModel& model, Complex z);
Complex stieltjes_s_V_tilde(const FreudModel& model, Complex z);
double quadratic_residual(const FreudModel& model, Complex z);

}  // namespace freud

#endif
