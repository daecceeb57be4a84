#include "freud/sampler.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace freud {

namespace {

double pair_energy_full(const Eigen::ArrayXd& x) {
  double acc = 0.0;
  for (int i = 1; i < x.size(); ++i) {
    acc += (x.head(i) - x[i]).abs().log().sum();
  }
  return acc;
}

double potential_full(const FreudModel& model, const Eigen::ArrayXd& x) {
  const double a = model.alpha, cp = model.cp, p = model.p;
  return a * cp * x.abs().pow(p).sum() + (1.0 - a) * 2.0 * x.square().sum();
}

// sum_j != i [ log|x_j - prop| - log|x_j - old| ], one fused log pass
double log_row_ratio(const Eigen::ArrayXd& x, int i, double prop, double old) {
  thread_local Eigen::ArrayXd ratio;
  ratio = ((x - prop) / (x - old)).abs();
  ratio[i] = 1.0;
  return ratio.log().sum();
}

}  // namespace

void ParticleConfiguration::recompute_caches(const FreudModel& model) {
  pair_energy = pair_energy_full(positions);
  potential_sum = potential_full(model, positions);
  caches_valid = true;
}

double ParticleConfiguration::cache_drift(const FreudModel& model) const {
  const double pe = pair_energy_full(positions);
  const double ps = potential_full(model, positions);
  return std::max(std::abs(pe - pair_energy), std::abs(ps - potential_sum));
}

double log_density_unnormalized(const FreudModel& model, ParticleConfiguration& config) {
  if (!config.caches_valid) config.recompute_caches(model);
  return model.beta * config.pair_energy -
         model.beta * model.N / 2.0 * config.potential_sum;
}

Eigen::ArrayXd quantile_positions(const FreudModel& model, int N) {
  const EquilibriumCdf cdf(model);
  Eigen::ArrayXd x(N);
  for (int k = 1; k <= N; ++k) x[k - 1] = cdf.quantile(static_cast<double>(k) / (N + 1));
  return x;
}

int metropolis_sweep(ParticleConfiguration& config, const FreudModel& model,
                     double sigma, bool global_moves, Xoshiro256pp& rng) {
  Eigen::ArrayXd& x = config.positions;
  const int N = config.size();
  const double half_beta_n = model.beta * model.N / 2.0;
  int accepted = 0;
  for (int i = 0; i < N; ++i) {
    const double old = x[i];
    const double prop = old + sigma * rng.gaussian();
    const double d_pair = log_row_ratio(x, i, prop, old);
    const double d_pot = model.potential(prop) - model.potential(old);
    const double log_ratio = model.beta * d_pair - half_beta_n * d_pot;
    if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
      x[i] = prop;
      config.pair_energy += d_pair;
      config.potential_sum += d_pot;
      ++accepted;
    }
  }
  if (global_moves) {
    const double move_scale = 1.0 / (N * std::sqrt(model.beta));
    // rigid shift: pair interactions unchanged
    {
      const double delta = move_scale * rng.gaussian();
      const double new_pot = potential_full(model, x + delta);
      const double log_ratio = -half_beta_n * (new_pot - config.potential_sum);
      if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
        x += delta;
        config.potential_sum = new_pot;
      }
    }
    // dilation l -> c l with log-normal c and Jacobian c^N
    {
      const double eps = move_scale * rng.gaussian();
      const double c = std::exp(eps);
      const double d_pair = N * (N - 1) / 2.0 * eps;
      const double new_pot = potential_full(model, x * c);
      const double log_ratio = model.beta * d_pair -
                               half_beta_n * (new_pot - config.potential_sum) +
                               N * eps;
      if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
        x *= c;
        config.pair_energy += d_pair;
        config.potential_sum = new_pot;
      }
    }
  }
  return accepted;
}

ChainOutput run_chain(const SamplerConfig& config, const Eigen::ArrayXd* start) {
  const FreudModel& model = config.model;
  const int N = model.N;
  if (config.burn_in >= config.sweeps)
    throw std::invalid_argument("run_chain: burn_in must be < sweeps");
  if (config.thinning < 1) throw std::invalid_argument("run_chain: thinning >= 1");

  Xoshiro256pp rng(config.seed);
  ParticleConfiguration state;
  state.positions = start ? *start : quantile_positions(model, N);
  state.recompute_caches(model);

  double sigma = config.proposal_sigma > 0.0 ? config.proposal_sigma : 2.0 / N;
  long accepted = 0, proposed = 0;
  ChainOutput out;
  out.seed = config.seed;
  for (int sweep = 1; sweep <= config.sweeps; ++sweep) {
    const int acc = metropolis_sweep(state, model, sigma, config.global_moves, rng);
    accepted += acc;
    proposed += N;
    if (config.adapt && sweep <= config.burn_in) {
      const double rate = static_cast<double>(acc) / N;
      sigma *= std::exp(0.7 * (rate - 0.30) / std::pow(static_cast<double>(sweep), 0.6));
    }
    if (config.check_caches && sweep % 1000 == 0) {
      if (state.cache_drift(model) > 1e-9 * N)
        throw std::runtime_error("run_chain: incremental caches drifted");
    }
    if (sweep > config.burn_in && (sweep - config.burn_in) % config.thinning == 0) {
      out.samples.push_back(state);
    }
  }
  out.acceptance_rate = static_cast<double>(accepted) / proposed;
  out.final_sigma = sigma;
  out.acceptance_flagged = out.acceptance_rate < 0.05 || out.acceptance_rate > 0.95;
  return out;
}

ParticleConfiguration sample_gaussian_tridiagonal(int N, double beta, Xoshiro256pp& rng) {
  if (!(beta > 0.0)) throw std::domain_error("sample_gaussian_tridiagonal: beta > 0");
  Eigen::VectorXd diag(N), off(std::max(N - 1, 0));
  for (int i = 0; i < N; ++i) diag[i] = rng.gaussian();
  for (int k = 1; k <= N - 1; ++k) off[k - 1] = rng.chi(beta * (N - k)) / std::sqrt(2.0);
  ParticleConfiguration out;
  if (N == 1) {
    out.positions.resize(1);
    out.positions[0] = diag[0] / std::sqrt(2.0 * beta);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  out.positions = solver.eigenvalues().array() / std::sqrt(2.0 * beta * N);
  return out;
}

double equilibrium_average(const FreudModel& model, const TestFunction& f, int order) {
  const QuadratureGrid grid = build_grid(GridKind::equilibrium, order, model);
  return grid.integrate([&](double t) { return f.f(t); });
}

double linear_statistic(const ParticleConfiguration& config, const TestFunction& f,
                        double equilibrium_avg) {
  double acc = 0.0;
  for (int k = 0; k < config.size(); ++k) acc += f.f(config.positions[k]);
  return acc - config.size() * equilibrium_avg;
}

Complex empirical_stieltjes(const ParticleConfiguration& config, Complex z) {
  if (z.imag() == 0.0) throw std::domain_error("empirical_stieltjes: im(z) != 0");
  Complex acc = 0.0;
  for (int k = 0; k < config.size(); ++k) acc += 1.0 / (config.positions[k] - z);
  return acc / static_cast<double>(config.size());
}

Complex empirical_stieltjes_derivative(const ParticleConfiguration& config, Complex z) {
  if (z.imag() == 0.0)
    throw std::domain_error("empirical_stieltjes_derivative: im(z) != 0");
  Complex acc = 0.0;
  for (int k = 0; k < config.size(); ++k) {
    const Complex d = config.positions[k] - z;
    acc += 1.0 / (d * d);
  }
  return acc / static_cast<double>(config.size());
}

double anisotropy(const ParticleConfiguration& config, const FreudModel&,
                  const TestFunction& f, const QuadratureGrid& grid) {
  const int N = config.size();
  const Eigen::ArrayXd& x = config.positions;
  auto quotient = [&](double a, double b) {
    const double d = a - b;
    if (std::abs(d) < 1e-12) return f.df(0.5 * (a + b));
    return (f.f(a) - f.f(b)) / d;
  };
  double self = 0.0;
  for (int k = 0; k < N; ++k) {
    self += f.df(x[k]);
    for (int l = k + 1; l < N; ++l) self += 2.0 * quotient(x[k], x[l]);
  }
  double cross = 0.0;
  for (int k = 0; k < N; ++k) {
    for (Eigen::Index j = 0; j < grid.nodes.size(); ++j) {
      cross += grid.weights[j] * quotient(x[k], grid.nodes[j]);
    }
  }
  double eq = 0.0;
  for (Eigen::Index i = 0; i < grid.nodes.size(); ++i) {
    for (Eigen::Index j = 0; j < grid.nodes.size(); ++j) {
      eq += grid.weights[i] * grid.weights[j] * quotient(grid.nodes[i], grid.nodes[j]);
    }
  }
  return self - 2.0 * N * cross + static_cast<double>(N) * N * eq;
}

Complex loop_observable(const ParticleConfiguration& config, const StieltjesEvaluator& ev,
                        Complex z) {
  if (z.imag() == 0.0) throw std::domain_error("loop_observable: im(z) != 0");
  if (z == Complex(0.0, 0.0)) throw std::domain_error("loop_observable: z != 0");
  const FreudModel& model = ev.model();
  const int N = config.size();
  const Complex gz = g_alpha_complex(model, z);
  const Complex hz = ev.h(z);
  Complex s = 0.0, ds = 0.0, f_sum = 0.0;
  for (int k = 0; k < N; ++k) {
    const double l = config.positions[k];
    const Complex d = l - z;
    s += 1.0 / d;
    ds += 1.0 / (d * d);
    f_sum += (l * model.potential_deriv(l) - gz) / d;
  }
  s /= N;
  ds /= N;
  const Complex p_alpha = s * s + gz / z * s + hz / z;
  const Complex l_n_f = f_sum - static_cast<double>(N) * hz;
  return p_alpha + l_n_f / (static_cast<double>(N) * z) +
         (2.0 / model.beta - 1.0) * ds / static_cast<double>(N);
}

int count_in_interval(const ParticleConfiguration& config, double a, double b) {
  if (a > b) throw std::invalid_argument("count_in_interval: requires a <= b");
  int count = 0;
  for (int k = 0; k < config.size(); ++k) {
    if (config.positions[k] >= a && config.positions[k] <= b) ++count;
  }
  return count;
}

}  // namespace freud
