#include "freud/master_operator.hpp"

#include <cmath>

namespace freud {

double a_constant(const TestFunction& f, int order) {
  return integrate_arcsine([&](double t) { return f.f(t); }, order);
}

double xi_forward(const FreudModel& model, const std::function<double(double)>& psi,
                  const std::function<double(double)>& dpsi, double x,
                  const QuadratureGrid& grid) {
  const double psi_x = psi(x);
  double integral = 0.0;
  for (Eigen::Index i = 0; i < grid.nodes.size(); ++i) {
    const double t = grid.nodes[i];
    const double d = x - t;
    const double q = std::abs(d) < 1e-7 ? dpsi(0.5 * (x + t)) : (psi_x - psi(t)) / d;
    integral += grid.weights[i] * q;
  }
  return -0.5 * psi_x * model.potential_deriv(x) + integral;
}

double xi_forward(const FreudModel& model, const TestFunction& psi, double x,
                  int grid_order) {
  const QuadratureGrid grid = build_grid(GridKind::equilibrium, grid_order, model);
  return xi_forward(model, psi.f, psi.df, x, grid);
}

InteriorFunction tricomi_inverse(const FreudModel& model, const TestFunction& f,
                                 int arcsine_order, int initial_order, int max_order) {
  Eigen::VectorXd t, w;
  arcsine_split_rule(arcsine_order, t, w);
  auto psi_value = [&](double lambda) {
    const double f_l = f.f(lambda);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      const double d = t[i] - lambda;
      const double q = std::abs(d) < 1e-7 ? f.df(0.5 * (t[i] + lambda)) : (f.f(t[i]) - f_l) / d;
      acc += w[i] * q;
    }
    return -acc / (M_PI * r_alpha(model, lambda));
  };
  return InteriorFunction::fit(psi_value, initial_order, max_order, 1e-10);
}

InteriorFunction psi_derivative(const InteriorFunction& psi) { return psi.derivative(1e-6); }

}  // namespace freud
