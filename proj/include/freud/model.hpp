#ifndef FREUD_MODEL_HPP
#define FREUD_MODEL_HPP

#include <cmath>
#include <stdexcept>

#include "freud/special_functions.hpp"

namespace freud {

/// Parameter bundle identifying one interpolated Freud ensemble:
/// V_alpha(x) = alpha c_p |x|^p + (1-alpha) 2 x^2 at inverse temperature
/// beta with N particles.
struct FreudModel {
  double p = 2.0;
  double beta = 2.0;
  double alpha = 1.0;
  int N = 1;
  double cp = 2.0;  // c_p, fixed at construction

  FreudModel() = default;
  FreudModel(double p_, double beta_, double alpha_, int N_)
      : p(p_), beta(beta_), alpha(alpha_), N(N_), cp(c_p(p_)) {
    if (!(p >= 2.0)) throw std::domain_error("FreudModel: requires p >= 2");
    if (!(beta > 0.0)) throw std::domain_error("FreudModel: requires beta > 0");
    if (!(alpha >= 0.0 && alpha <= 1.0))
      throw std::domain_error("FreudModel: requires alpha in [0,1]");
    if (N < 1) throw std::domain_error("FreudModel: requires N >= 1");
  }

  double potential(double x) const {
    return alpha * cp * std::pow(std::abs(x), p) + (1.0 - alpha) * 2.0 * x * x;
  }
  double potential_deriv(double x) const {
    const double s = x < 0.0 ? -1.0 : 1.0;
    return alpha * p * cp * std::pow(std::abs(x), p - 1.0) * s + (1.0 - alpha) * 4.0 * x;
  }
  double potential_deriv2(double x) const {
    return alpha * p * (p - 1.0) * cp * std::pow(std::abs(x), p - 2.0) +
           (1.0 - alpha) * 4.0;
  }
  /// d/d alpha of V_alpha; does not depend on alpha.
  double potential_dalpha(double x) const {
    return cp * std::pow(std::abs(x), p) - 2.0 * x * x;
  }
};

inline double sigma_semicircle(double x) {
  const double s = 1.0 - x * x;
  return s > 0.0 ? std::sqrt(s) : 0.0;
}

}  // namespace freud

#endif
