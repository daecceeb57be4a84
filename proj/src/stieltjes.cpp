#include "freud/stieltjes.hpp"

#include <cmath>
#include <stdexcept>

namespace freud {

namespace {

double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

// real derivatives of g(x) = K |x|^p
double g0(double K, double p, double x) { return K * std::pow(std::abs(x), p); }
double g1(double K, double p, double x) {
  const double s = x < 0.0 ? -1.0 : 1.0;
  return K * p * std::pow(std::abs(x), p - 1.0) * s;
}
double g2(double K, double p, double x) {
  return K * p * (p - 1.0) * std::pow(std::abs(x), p - 2.0);
}
double g3(double K, double p, double x) {
  const double s = x < 0.0 ? -1.0 : 1.0;
  return K * p * (p - 1.0) * (p - 2.0) * std::pow(std::abs(x), p - 3.0) * s;
}

}  // namespace

double chi_cutoff(double t) {
  const double a = std::abs(t);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  const double up = bump(1.0 - a);
  const double dn = bump(a - 0.5);
  return up / (up + dn);
}

Complex branch_b(Complex z) { return std::sqrt(z + 1.0) * std::sqrt(z - 1.0); }

Complex g_complex(double p, Complex z) {
  const double K = p * c_p(p);
  const double x = z.real();
  const double y = z.imag();
  if (y == 0.0) return Complex(g0(K, p, x), 0.0);
  Complex value(g0(K, p, x) - 0.5 * y * y * g2(K, p, x), y * g1(K, p, x));
  if (x != 0.0) {
    const double chi = chi_cutoff(y / x);
    if (chi != 0.0) value -= Complex(0.0, y * y * y / 6.0 * g3(K, p, x) * chi);
  }
  return value;
}

Complex g_alpha_complex(const FreudModel& model, Complex z) {
  const Complex quad = 4.0 * (1.0 - model.alpha) * z * z;
  if (model.alpha == 0.0) return quad;
  return model.alpha * g_complex(model.p, z) + quad;
}

Complex f_alpha_z(const FreudModel& model, Complex z, double lambda) {
  if (z.imag() == 0.0) throw std::domain_error("f_alpha_z: requires im(z) != 0");
  return (g_alpha_complex(model, Complex(lambda, 0.0)) - g_alpha_complex(model, z)) /
         (Complex(lambda, 0.0) - z);
}

SpectralDomain SpectralDomain::build(double delta0, int nx, int ny) {
  SpectralDomain dom;
  dom.delta0 = delta0;
  dom.rectangle.reserve(static_cast<size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    const double x = -1.0 - delta0 + (2.0 + 2.0 * delta0) * i / (nx - 1.0);
    for (int j = 1; j <= ny; ++j) {
      const double y = delta0 * j / ny;
      dom.rectangle.emplace_back(x, y);
    }
  }
  return dom;
}

StieltjesEvaluator::StieltjesEvaluator(const FreudModel& model, int coarse_order,
                                       int fine_order)
    : model_(model) {
  auto make_rule = [&](int order, Rule& rule) {
    arcsine_split_rule(order, rule.nodes, rule.weights);
    rule.g_over_t.resize(rule.nodes.size());
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      rule.g_over_t[i] = model_.potential_deriv(rule.nodes[i]);  // g(t)/t = V'(t)
    }
    const QuadratureGrid eq = build_grid(GridKind::equilibrium, order, model_);
    rule.eq_nodes = eq.nodes;
    rule.eq_weights = eq.weights;
    rule.g_values.resize(eq.nodes.size());
    for (Eigen::Index i = 0; i < eq.nodes.size(); ++i)
      rule.g_values[i] = eq.nodes[i] * model_.potential_deriv(eq.nodes[i]);
  };
  make_rule(coarse_order, coarse_);
  make_rule(fine_order, fine_);
}

double StieltjesEvaluator::dist_to_support(Complex z) {
  const double dx = std::max(std::abs(z.real()) - 1.0, 0.0);
  return std::hypot(dx, z.imag());
}

const StieltjesEvaluator::Rule& StieltjesEvaluator::rule_for(Complex z) const {
  return dist_to_support(z) < 0.05 ? fine_ : coarse_;
}

Complex StieltjesEvaluator::r(Complex z) const {
  const Rule& rule = rule_for(z);
  const double az = std::abs(z);
  if (dist_to_support(z) >= 0.05 || az <= 0.02) {
    // stable rewrite, exact in the z -> 0 limit; near the origin the
    // numerator g(t)/t = V'(t) vanishes at the node cluster, so the pole
    // is harmless there
    Complex acc = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
      acc += rule.weights[i] * rule.g_over_t[i] / (rule.nodes[i] - z);
    }
    Complex value = acc / (2.0 * M_PI);
    if (az >= 1e-10) {
      value += g_alpha_complex(model_, z) / (2.0 * z * branch_b(z));
    }
    return value;
  }
  // near the cut: difference-quotient form, bounded uniformly as im z -> 0
  const Complex gz = g_alpha_complex(model_, z);
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    acc += rule.weights[i] * (t * rule.g_over_t[i] - gz) / (t - z);
  }
  return acc / (2.0 * M_PI * z);
}

Complex StieltjesEvaluator::h(Complex z) const {
  const Rule& rule = rule_for(z);
  const Complex gz = g_alpha_complex(model_, z);
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < rule.eq_nodes.size(); ++i) {
    acc += rule.eq_weights[i] * (rule.g_values[i] - gz) / (rule.eq_nodes[i] - z);
  }
  return acc;
}

Complex StieltjesEvaluator::s_V(Complex z) const {
  Complex value = r(z) * branch_b(z);
  if (std::abs(z) >= 1e-10) value -= g_alpha_complex(model_, z) / (2.0 * z);
  return value;
}

Complex StieltjesEvaluator::s_V_tilde(Complex z) const {
  Complex value = -r(z) * branch_b(z);
  if (std::abs(z) >= 1e-10) value -= g_alpha_complex(model_, z) / (2.0 * z);
  return value;
}

double StieltjesEvaluator::quadratic_residual(Complex z) const {
  const Complex s = s_V(z);
  const Complex gz = g_alpha_complex(model_, z);
  return std::abs(s * s + gz / z * s + h(z) / z);
}

Complex r_alpha_complex(const FreudModel& model, Complex z) {
  return StieltjesEvaluator(model).r(z);
}
Complex h_alpha(const FreudModel& model, Complex z) {
  return StieltjesEvaluator(model).h(z);
}
Complex stieltjes_s_V(const FreudModel& model, Complex z) {
  return StieltjesEvaluator(model).s_V(z);
}
Complex stieltjes_s_V_tilde(const FreudModel& model, Complex z) {
  return StieltjesEvaluator(model).s_V_tilde(z);
}
double quadratic_residual(const FreudModel& model, Complex z) {
  return StieltjesEvaluator(model).quadratic_residual(z);
}

}  // namespace freud
