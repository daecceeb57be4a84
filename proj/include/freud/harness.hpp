#ifndef FREUD_HARNESS_HPP
#define FREUD_HARNESS_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "freud/asymptotics.hpp"
#include "freud/model.hpp"
#include "freud/sampler.hpp"
#include "freud/test_function.hpp"

namespace freud {

enum class VerdictKind { pass, fail, inconclusive };

const char* verdict_name(VerdictKind v);

/// pass iff |estimate - theory| <= max(k_sigma * std_error, abs_tolerance);
/// inconclusive instead of pass when std_error exceeds noise_cap.
VerdictKind verdict_for(double estimate, double std_error, double theory,
                        double k_sigma, double abs_tolerance, double noise_cap);

struct ObservableResult {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
  double theory = 0.0;
  double k_sigma = 3.0;
  double abs_tolerance = 0.0;
  VerdictKind verdict = VerdictKind::inconclusive;
  // optional cell coordinates for tidy CSV output
  int N = 0;
  std::complex<double> z{0.0, 0.0};
  int q = 0;
};

struct ExperimentReport {
  std::string name;
  FreudModel model;
  std::vector<ObservableResult> results;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;

  bool all_pass() const;
  bool any_fail() const;
  /// JSON with the configuration echoed; runtime lives in a separate
  /// "volatile" object so the rest is byte-identical for a fixed seed
  std::string to_json() const;
  /// tidy CSV: one row per observable cell
  std::string to_csv() const;
};

/// Common experiment knobs; chains derive per-replica seeds from `seed`.
struct RunKnobs {
  int replicas = 500;
  int sweeps = 260;
  int burn_in = 200;
  int thinning = 60;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
};

/// CLT of the linear statistic L_N(f): empirical moments 1..K against the
/// Gaussian moments of (m_{V_alpha}(f), sigma^2(f)); jackknife errors.
ExperimentReport run_clt_experiment(const FreudModel& model, const TestFunction& f,
                                    int K_moments, const RunKnobs& knobs);

/// E|s_N(z) - s_V(z)|^q across N at fixed z; log-log slope in N for each q
/// with the pass band slope in [-1.25, -0.75] at q=1.
ExperimentReport run_local_law_experiment(const FreudModel& model, std::complex<double> z,
                                          const std::vector<int>& q_list,
                                          const std::vector<int>& N_list,
                                          const RunKnobs& knobs);

/// Exact first-order loop equation: MC mean of the bracket at each z must
/// vanish within 3 SE componentwise.
ExperimentReport run_loop_equation_experiment(const FreudModel& model,
                                              const std::vector<std::complex<double>>& z_list,
                                              const RunKnobs& knobs);

/// Thermodynamic integration over alpha (15-point Gauss-Legendre):
/// (1/N^2 beta) log Z_N against the free-energy expansion.
ExperimentReport run_thermo_integration(double p, double beta, int N,
                                        const RunKnobs& knobs);

/// KLS ratio from sampled moments plus the asymptotic-bound comparison.
ExperimentReport run_kls_experiment(double p, int beta, int r, int q, int N,
                                    const RunKnobs& knobs, bool bootstrap_errors = false);

/// Kolmogorov-Smirnov distance of the pooled spectrum to the equilibrium
/// CDF across N; pass when decreasing and below 0.02 at the largest N.
ExperimentReport run_equilibrium_convergence(const FreudModel& model,
                                             const std::vector<int>& N_list,
                                             const RunKnobs& knobs);

/// Metropolis (alpha=0) vs tridiagonal two-sample KS p-value at fixed N.
ExperimentReport run_sampler_crosscheck(int N, double beta, int draws,
                                        const RunKnobs& knobs);

/// Asymptotic two-sample KS p-value (sorts copies of the inputs).
double two_sample_ks_pvalue(std::vector<double> a, std::vector<double> b,
                            double* statistic = nullptr);

}  // namespace freud

#endif
