#include "freud/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace freud {

namespace {

// Lanczos approximation, g = 7, 9 terms. Good to ~1e-15 relative for x >= 0.5.
const double kLanczos[9] = {
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7};

const double kHalfLog2Pi = 0.91893853320467274178032973640562;

double lanczos_log_gamma(double x) {
  // valid for x >= 0.5
  double series = kLanczos[0];
  for (int i = 1; i < 9; ++i) series += kLanczos[i] / (x + i - 1.0);
  double t = x + 6.5;
  return (x - 0.5) * std::log(t) - t + kHalfLog2Pi + std::log(series);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
  if (x >= 0.5) return lanczos_log_gamma(x);
  // lnGamma(x) = lnGamma(x+1) - ln(x), keeps full precision near 0
  return lanczos_log_gamma(x + 1.0) - std::log(x);
}

double c_p(double p) {
  if (!(p >= 1.0)) throw std::domain_error("c_p: requires p >= 1");
  return std::exp(log_gamma(p / 2.0) + log_gamma(0.5) - log_gamma((p + 1.0) / 2.0));
}

long schatten_dim(int N, int beta) {
  if (N < 1) throw std::domain_error("schatten_dim: requires N >= 1");
  if (beta != 1 && beta != 2 && beta != 4)
    throw std::domain_error("schatten_dim: beta must be 1, 2 or 4");
  return static_cast<long>(beta) * N * (N - 1) / 2 + N;
}

double log_c_N(int N, int beta) {
  if (N < 1) throw std::domain_error("log_c_N: requires N >= 1");
  if (beta != 1 && beta != 2 && beta != 4)
    throw std::domain_error("log_c_N: beta must be 1, 2 or 4");
  const double b = beta;
  const double log_2pi = std::log(2.0 * M_PI);
  // log |U_N(F)| = (beta N(N+1)/4) log(2 pi) + N(1 - beta/2) log 2
  //               - sum_{k=1}^N log Gamma(beta k / 2)
  auto log_unitary_volume = [&](int n) {
    double v = b * n * (n + 1.0) / 4.0 * log_2pi + n * (1.0 - b / 2.0) * std::log(2.0);
    for (int k = 1; k <= n; ++k) v -= log_gamma(b * k / 2.0);
    return v;
  };
  double log_factorial = log_gamma(N + 1.0);
  return log_unitary_volume(N) - log_factorial - N * log_unitary_volume(1);
}

double mehta_log_partition(int N, double beta) {
  if (N < 1) throw std::domain_error("mehta_log_partition: requires N >= 1");
  if (!(beta > 0.0)) throw std::domain_error("mehta_log_partition: requires beta > 0");
  // Z_N^G = (2 N beta)^{-(beta N(N-1)/4 + N/2)} (2 pi)^{N/2}
  //         prod_{j=1}^N Gamma(1 + j beta/2) / Gamma(1 + beta/2)
  double value = -(beta * N * (N - 1.0) / 4.0 + N / 2.0) * std::log(2.0 * N * beta) +
                 N * kHalfLog2Pi;
  const double lg_base = log_gamma(1.0 + beta / 2.0);
  for (int j = 1; j <= N; ++j) value += log_gamma(1.0 + j * beta / 2.0) - lg_base;
  return value;
}

}  // namespace freud
