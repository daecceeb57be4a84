#ifndef FREUD_ASYMPTOTICS_HPP
#define FREUD_ASYMPTOTICS_HPP

#include <vector>

#include "freud/master_operator.hpp"
#include "freud/model.hpp"
#include "freud/test_function.hpp"

namespace freud {

/// beta-free part of the CLT variance:
/// (1/pi^2) iint ((f(x)-f(y))/(x-y))^2 (1-xy)/(sigma sigma) dx dy.
double clt_variance_base(const TestFunction& f, int order = 512);

/// sigma^2(f) = clt_variance_base(f) / beta.
double clt_variance(const TestFunction& f, double beta, int order = 512);

/// m_{V_alpha}(f) = (1/2 - 1/beta) int (Xi_alpha^-1 f)'(x) d mu_{V_alpha}(x).
double clt_mean_via_psi(const FreudModel& model, const TestFunction& f,
                        int grid_order = 2048);

/// Same mean through r: (1/2-1/beta) [ (1/pi^2) int (r'/r) phi_f sigma dx
/// - (f(1)+f(-1))/2 + (1/pi) int f dx/sigma ], with r' by spectral
/// differentiation of r on a split Chebyshev grid.
double clt_mean_via_r(const FreudModel& model, const TestFunction& f,
                      int grid_order = 1024);

/// First K moments of N(mean, variance) via the Hermite recurrence;
/// requires variance >= 0 and K <= 8.
std::vector<double> gaussian_moments(double mean, double variance, int K);

struct CltPrediction {
  double mean = 0.0;
  double variance = 0.0;
  std::vector<double> moments;
};

CltPrediction clt_prediction(const FreudModel& model, const TestFunction& f, int K);

/// Coefficients of (1/(N^2 beta)) log Z_N = leading + log N / (2N) + F^{-1}/N + o(1/N).
struct FreeEnergyExpansion {
  double p = 2.0;
  double beta = 2.0;
  double leading = 0.0;      // -(1/2)(log 2 + 3/(2p))
  double nlogn_coeff = 0.0;  // coefficient of N log N in log Z_N, i.e. beta/2
  double f_minus1 = 0.0;     // F^{-1}
  double fg_minus1 = 0.0;    // F_G^{-1}

  /// beta N^2 leading + (beta/2) N log N + beta F^{-1} N
  double log_partition_prediction(int N) const;
};

FreeEnergyExpansion free_energy_expansion(double p, double beta);

/// Coefficients of log |B(S_p^N)| = a N^2 log N + b N^2 + c N log N + d N + o(N).
struct SchattenCoeffs {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

SchattenCoeffs schatten_volume_coeffs(double p, int beta);

/// log |B(S_p^N)| = log c_N - log Gamma(1 + d_N/p)
///                  + (d_N/p) log(N beta c_p / 2) + log Z_N.
double schatten_log_volume(double p, int beta, int N, double logZ_N);

/// (2/r) ((p+2)/p) ((p+2r-2)/p); equals 4 at p=2, where it is maximal.
double kls_asymptotic_bound(double p, int r);

struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct KlsRatio {
  double ratio = 0.0;
  double std_error = 0.0;
  bool cancellation_flag = false;  // numerator within noise of 0
};

/// Finite-N upper bound for Var f / (E||grad f||^2 lambda_max) with
/// f(X) = Tr(X^r)^q on the p-Schatten ball, evaluated from Monte Carlo
/// moments of the Freud ensemble. Gamma factors are handled in log space;
/// errors propagate to first order.
KlsRatio kls_ratio_finite_N(const MomentEstimate& g_r_2q, const MomentEstimate& g_r_q,
                            const MomentEstimate& g_2_1, const MomentEstimate& mixed,
                            double p, int beta, int r, int q, int N);

}  // namespace freud

#endif
