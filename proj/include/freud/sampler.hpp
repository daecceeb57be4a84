#ifndef FREUD_SAMPLER_HPP
#define FREUD_SAMPLER_HPP

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <vector>

#include "freud/equilibrium.hpp"
#include "freud/model.hpp"
#include "freud/rng.hpp"
#include "freud/stieltjes.hpp"
#include "freud/test_function.hpp"

namespace freud {

/// N particle positions with cached interaction terms for incremental MCMC.
struct ParticleConfiguration {
  Eigen::ArrayXd positions;
  double pair_energy = 0.0;     // sum_{i<j} log|l_i - l_j|
  double potential_sum = 0.0;   // sum_i V_alpha(l_i)
  bool caches_valid = false;

  int size() const { return static_cast<int>(positions.size()); }
  void recompute_caches(const FreudModel& model);
  /// max abs drift of the two caches against a fresh recomputation
  double cache_drift(const FreudModel& model) const;
};

struct SamplerConfig {
  FreudModel model;
  double proposal_sigma = 0.0;  // 0: scale-aware default 2/N
  int sweeps = 200;
  int burn_in = 40;             // <= sweeps
  int thinning = 10;
  std::uint64_t seed = 1;
  bool adapt = true;            // Robbins-Monro toward 30% acceptance in burn-in
  bool global_moves = true;     // shift+scale moves appended to each sweep
  bool check_caches = false;    // cache drift assertion every 1000 sweeps
};

struct ChainOutput {
  std::vector<ParticleConfiguration> samples;  // thinned, after burn-in
  double acceptance_rate = 0.0;
  double final_sigma = 0.0;
  std::uint64_t seed = 0;
  bool acceptance_flagged = false;  // rate left [0.05, 0.95] after adaptation
};

/// beta sum_{i<j} log|l_i-l_j| - (beta N/2) sum V_alpha(l_i); -inf when a
/// pair coincides.
double log_density_unnormalized(const FreudModel& model, ParticleConfiguration& config);

/// Positions at the k/(N+1) quantiles of mu_{V_alpha}.
Eigen::ArrayXd quantile_positions(const FreudModel& model, int N);

/// One Metropolis sweep: N single-site Gaussian proposals (incremental O(N)
/// updates), optionally followed by global shift and scale moves. Returns
/// the number of accepted single-site proposals.
int metropolis_sweep(ParticleConfiguration& config, const FreudModel& model,
                     double sigma, bool global_moves, Xoshiro256pp& rng);

/// Run a full chain from the given start (quantile start when empty).
ChainOutput run_chain(const SamplerConfig& config,
                      const Eigen::ArrayXd* start = nullptr);

/// Exact sampler for alpha = 0 (quadratic potential 2x^2): eigenvalues of
/// the tridiagonal beta-Hermite model rescaled by 1/sqrt(2 beta N).
ParticleConfiguration sample_gaussian_tridiagonal(int N, double beta, Xoshiro256pp& rng);

/// L_N(f) = sum f(l_k) - N <mu_{V_alpha}, f>. The equilibrium average is
/// passed in so that repeated calls share one quadrature.
double linear_statistic(const ParticleConfiguration& config, const TestFunction& f,
                        double equilibrium_average);

/// <mu_{V_alpha}, f> at the given quadrature order.
double equilibrium_average(const FreudModel& model, const TestFunction& f,
                           int order = 2048);

Complex empirical_stieltjes(const ParticleConfiguration& config, Complex z);
Complex empirical_stieltjes_derivative(const ParticleConfiguration& config, Complex z);

/// A_N(f) = N^2 iint (f(l)-f(l'))/(l-l') d(mu_N - mu)^2 with the f'(l)
/// diagonal convention; cross terms against the supplied equilibrium grid.
double anisotropy(const ParticleConfiguration& config, const FreudModel& model,
                  const TestFunction& f, const QuadratureGrid& grid);

/// First-order loop-equation bracket
/// P_alpha(z) + L_N(f_{alpha,z})/(N z) + (2/beta - 1) s_N'(z)/N,
/// with P_alpha(z) = s_N^2 + (g_alpha(z)/z) s_N + h_alpha(z)/z.
Complex loop_observable(const ParticleConfiguration& config,
                        const StieltjesEvaluator& ev, Complex z);

int count_in_interval(const ParticleConfiguration& config, double a, double b);

}  // namespace freud

#endif
