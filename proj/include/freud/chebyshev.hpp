#ifndef FREUD_CHEBYSHEV_HPP
#define FREUD_CHEBYSHEV_HPP

#include <Eigen/Core>
#include <functional>

namespace freud {

/// Chebyshev interpolant on [a,b], sampled at second-kind points.
class ChebyshevPiece {
 public:
  ChebyshevPiece() = default;
  ChebyshevPiece(const std::function<double(double)>& f, double a, double b, int n);

  double eval(double x) const;
  ChebyshevPiece derivative() const;

  /// largest |coefficient| among the trailing eighth of the spectrum,
  /// relative check for resolution
  double tail_magnitude() const;

  double lower() const { return a_; }
  double upper() const { return b_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  const Eigen::VectorXd& coefficients() const { return coeffs_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& values() const { return values_; }

 private:
  double a_ = -1.0, b_ = 1.0;
  Eigen::VectorXd nodes_;    // ascending
  Eigen::VectorXd values_;   // f at nodes
  Eigen::VectorXd coeffs_;   // f = sum_k coeffs_[k] T_k(u), u in [-1,1]

  ChebyshevPiece(double a, double b, Eigen::VectorXd coeffs);
  void fill_nodes_and_values();
};

/// Spectral representation of a function on [-1,1], split at 0 so that the
/// |x|^{p-1}-type behaviour of Freud quantities sits at piece endpoints.
/// Orders are doubled until the coefficient tails decay, up to max_order.
class InteriorFunction {
 public:
  InteriorFunction() = default;

  static InteriorFunction fit(const std::function<double(double)>& f, int initial_order = 129,
                              int max_order = 1025, double tail_tol = 1e-10);

  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  /// spectral differentiation; throws std::runtime_error when the
  /// representation tail exceeds tail_guard (insufficient resolution)
  InteriorFunction derivative(double tail_guard = 1e-6) const;

  double tail_magnitude() const;
  /// interior sample points (union of piece nodes, without the endpoints)
  Eigen::VectorXd interior_nodes() const;

  const ChebyshevPiece& left() const { return left_; }
  const ChebyshevPiece& right() const { return right_; }

 private:
  ChebyshevPiece left_, right_;
};

}  // namespace freud

#endif
