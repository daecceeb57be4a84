#ifndef FREUD_MASTER_OPERATOR_HPP
#define FREUD_MASTER_OPERATOR_HPP

#include "freud/chebyshev.hpp"
#include "freud/equilibrium.hpp"
#include "freud/model.hpp"
#include "freud/test_function.hpp"

namespace freud {

/// a = int_-1^1 f(t) dt/sigma(t).
double a_constant(const TestFunction& f, int order = 1024);

/// Master operator applied to a C^1 pair (psi, psi'):
/// Xi[psi](x) = -psi(x) V_a'(x)/2 + int (psi(x)-psi(t))/(x-t) d mu_{V_a}(t).
/// The grid must be an equilibrium grid for the same model.
double xi_forward(const FreudModel& model, const std::function<double(double)>& psi,
                  const std::function<double(double)>& dpsi, double x,
                  const QuadratureGrid& grid);

/// Convenience overload building its own grid.
double xi_forward(const FreudModel& model, const TestFunction& psi, double x,
                  int grid_order = 2048);

/// Tricomi inversion of the master operator on [-1,1]:
/// psi(l) = -(1/(pi r_a(l))) int (f(t)-f(l))/(t-l) dt/sigma(t),
/// returned as a split spectral interpolant.
InteriorFunction tricomi_inverse(const FreudModel& model, const TestFunction& f,
                                 int arcsine_order = 2048, int initial_order = 129,
                                 int max_order = 1025);

/// Spectral differentiation with a resolution guard (throws when the
/// coefficient tail exceeds 1e-6 relative).
InteriorFunction psi_derivative(const InteriorFunction& psi);

}  // namespace freud

#endif
