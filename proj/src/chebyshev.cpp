#include "freud/chebyshev.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace freud {

ChebyshevPiece::ChebyshevPiece(const std::function<double(double)>& f, double a, double b,
                               int n)
    : a_(a), b_(b) {
  if (n < 3) throw std::invalid_argument("ChebyshevPiece: order must be >= 3");
  const int N = n - 1;
  nodes_.resize(n);
  values_.resize(n);
  for (int j = 0; j <= N; ++j) {
    const double u = std::cos(M_PI * j / N);
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * u;
    nodes_[N - j] = x;
    values_[N - j] = f(x);
  }
  // type-I cosine transform of the node values
  coeffs_.resize(n);
  for (int k = 0; k <= N; ++k) {
    double acc = 0.5 * (values_[N] + (k % 2 == 0 ? values_[0] : -values_[0]));
    for (int j = 1; j < N; ++j) acc += values_[N - j] * std::cos(M_PI * j * k / N);
    double c = 2.0 * acc / N;
    if (k == 0 || k == N) c *= 0.5;
    coeffs_[k] = c;
  }
}

ChebyshevPiece::ChebyshevPiece(double a, double b, Eigen::VectorXd coeffs)
    : a_(a), b_(b), coeffs_(std::move(coeffs)) {
  fill_nodes_and_values();
}

void ChebyshevPiece::fill_nodes_and_values() {
  const int n = static_cast<int>(coeffs_.size());
  const int N = n - 1;
  nodes_.resize(n);
  values_.resize(n);
  for (int j = 0; j <= N; ++j) {
    const double x = 0.5 * (a_ + b_) + 0.5 * (b_ - a_) * std::cos(M_PI * j / N);
    nodes_[N - j] = x;
  }
  for (int j = 0; j < n; ++j) values_[j] = eval(nodes_[j]);
}

double ChebyshevPiece::eval(double x) const {
  const double u = (2.0 * x - (a_ + b_)) / (b_ - a_);
  double b1 = 0.0, b2 = 0.0;
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 1; --k) {
    const double tmp = 2.0 * u * b1 - b2 + coeffs_[k];
    b2 = b1;
    b1 = tmp;
  }
  return u * b1 - b2 + coeffs_[0];
}

ChebyshevPiece ChebyshevPiece::derivative() const {
  // coefficient recurrence d_{k-1} = d_{k+1} + 2k c_k, then domain scaling
  const int n = static_cast<int>(coeffs_.size());
  const double scale = 2.0 / (b_ - a_);
  std::vector<double> tmp(n + 2, 0.0);
  for (int k = n - 1; k >= 1; --k) tmp[k - 1] = tmp[k + 1] + 2.0 * k * coeffs_[k];
  tmp[0] *= 0.5;
  Eigen::VectorXd d(std::max(1, n - 1));
  for (int k = 0; k < d.size(); ++k) d[k] = tmp[k] * scale;
  return ChebyshevPiece(a_, b_, d);
}

double ChebyshevPiece::tail_magnitude() const {
  const int n = static_cast<int>(coeffs_.size());
  const int start = std::max(1, n - std::max(4, n / 8));
  double m = 0.0;
  for (int k = start; k < n; ++k) m = std::max(m, std::abs(coeffs_[k]));
  return m;
}

InteriorFunction InteriorFunction::fit(const std::function<double(double)>& f,
                                       int initial_order, int max_order, double tail_tol) {
  InteriorFunction out;
  for (int n = initial_order; ; n = 2 * (n - 1) + 1) {
    out.left_ = ChebyshevPiece(f, -1.0, 0.0, n);
    out.right_ = ChebyshevPiece(f, 0.0, 1.0, n);
    const double scale =
        std::max({1.0, out.left_.coefficients().cwiseAbs().maxCoeff(),
                  out.right_.coefficients().cwiseAbs().maxCoeff()});
    if (out.tail_magnitude() <= tail_tol * scale || n >= max_order) break;
  }
  return out;
}

double InteriorFunction::eval(double x) const {
  return x < 0.0 ? left_.eval(x) : right_.eval(x);
}

InteriorFunction InteriorFunction::derivative(double tail_guard) const {
  const double scale = std::max({1.0, left_.coefficients().cwiseAbs().maxCoeff(),
                                 right_.coefficients().cwiseAbs().maxCoeff()});
  if (tail_magnitude() > tail_guard * scale)
    throw std::runtime_error(
        "InteriorFunction::derivative: spectral tail too large, refine first");
  InteriorFunction out;
  out.left_ = left_.derivative();
  out.right_ = right_.derivative();
  return out;
}

double InteriorFunction::tail_magnitude() const {
  return std::max(left_.tail_magnitude(), right_.tail_magnitude());
}

Eigen::VectorXd InteriorFunction::interior_nodes() const {
  std::vector<double> pts;
  for (int i = 1; i < left_.nodes().size() - 1; ++i) pts.push_back(left_.nodes()[i]);
  for (int i = 1; i < right_.nodes().size() - 1; ++i) pts.push_back(right_.nodes()[i]);
  Eigen::VectorXd out(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) out[i] = pts[i];
  return out;
}

}  // namespace freud
