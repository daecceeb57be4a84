// freud: predictors and desk-scale verification experiments for
// beta-ensembles with Freud weights.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "freud/harness.hpp"

using namespace freud;

namespace {

struct CommonOpts {
  std::string config_path;
  double p = 2.5;
  double beta = 2.0;
  double alpha = 1.0;
  int N = 64;
  int replicas = 500;
  int sweeps = 260;
  int burn_in = 0;  // 0: 20% of sweeps
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;
  std::string format = "json";
  std::string f_name = "x2";
  std::string z_grid = "0.3+0.1i";
  std::string n_list = "64,128,256,512";
  int q = 1;
  int r = 2;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->option_defaults()->always_capture_default();
  cmd->add_option("--p", o.p, "Freud exponent p >= 2");
  cmd->add_option("--beta", o.beta, "inverse temperature beta > 0");
  cmd->add_option("--alpha", o.alpha, "interpolation weight in [0,1]");
  cmd->add_option("--N", o.N, "particle count");
  cmd->add_option("--replicas", o.replicas, "independent chains / draws");
  cmd->add_option("--sweeps", o.sweeps, "Metropolis sweeps per chain");
  cmd->add_option("--burn-in", o.burn_in, "burn-in sweeps (default 20% of sweeps)");
  cmd->add_option("--seed", o.seed, "64-bit master seed");
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  cmd->add_option("--out", o.out, "output file path");
  cmd->add_option("--format", o.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--f", o.f_name, "test function: x, x2, x3, x4, cos, exp-window");
  cmd->add_option("--z-grid", o.z_grid, "comma-separated complex points a+bi");
  cmd->add_option("--N-list", o.n_list, "comma-separated particle counts");
  cmd->add_option("--q", o.q, "moment power q");
  cmd->add_option("--r", o.r, "even trace power r");
  cmd->add_option("--config", o.config_path,
                  "flat key=value config file; command-line flags override");
}

/// expand `--config file` into option tokens placed right after the
/// subcommand, so explicit flags (which come later) take precedence;
/// unknown keys become hard parse errors
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::vector<std::string> inject;
  std::string line;
  while (std::getline(in, line)) {
    const size_t a = line.find_first_not_of(" \t");
    if (a == std::string::npos || line[a] == '#') continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line without '=': " + line);
    auto trim = [](std::string s) {
      const size_t b = s.find_first_not_of(" \t\r");
      const size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    inject.push_back("--" + trim(line.substr(0, eq)));
    inject.push_back(trim(line.substr(eq + 1)));
  }
  auto sub = std::find_if(args.begin(), args.end(),
                          [](const std::string& s) { return !s.empty() && s[0] != '-'; });
  if (sub != args.end()) args.insert(sub + 1, inject.begin(), inject.end());
  return args;
}

RunKnobs knobs_of(const CommonOpts& o) {
  RunKnobs k;
  k.replicas = o.replicas;
  k.sweeps = o.sweeps;
  k.burn_in = o.burn_in > 0 ? o.burn_in : std::max(1, o.sweeps / 5);
  k.seed = o.seed;
  k.threads = o.threads;
  return k;
}

std::vector<Complex> parse_z_list(const std::string& text) {
  std::vector<Complex> zs;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string tok = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (tok.empty()) continue;
    const size_t i_pos = tok.find('i');
    if (i_pos == std::string::npos) {
      zs.emplace_back(std::stod(tok), 0.0);
      continue;
    }
    size_t split = std::string::npos;
    for (size_t k = 1; k < tok.size(); ++k) {
      if ((tok[k] == '+' || tok[k] == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E')
        split = k;
    }
    if (split == std::string::npos) throw CLI::ValidationError("--z-grid", "bad complex");
    zs.emplace_back(std::stod(tok.substr(0, split)),
                    std::stod(tok.substr(split, i_pos - split)));
  }
  if (zs.empty()) throw CLI::ValidationError("--z-grid", "empty list");
  return zs;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw CLI::ValidationError("--N-list", "empty list");
  return out;
}

void emit(const ExperimentReport& rep, const CommonOpts& o) {
  const std::string payload = o.format == "csv" ? rep.to_csv() : rep.to_json();
  if (!o.out.empty()) {
    std::ofstream file(o.out);
    file << payload;
  } else {
    std::cout << payload << "\n";
  }
  for (const auto& res : rep.results) {
    std::printf("  [%-12s] %-22s est=% .6g se=% .3g theory=% .6g\n",
                verdict_name(res.verdict), res.name.c_str(), res.estimate,
                res.std_error, res.theory);
  }
}

int exit_code(const std::vector<ExperimentReport>& reports) {
  bool fail = false, inconclusive = false;
  for (const auto& r : reports) {
    for (const auto& res : r.results) {
      if (res.verdict == VerdictKind::fail) fail = true;
      if (res.verdict == VerdictKind::inconclusive) inconclusive = true;
    }
  }
  if (fail) return 1;
  if (inconclusive) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beta-ensembles with Freud weights: predictors and verification"};
  app.require_subcommand(1);

  CommonOpts o;
  std::vector<ExperimentReport> reports;

  auto* predict = app.add_subcommand("predict", "CLT mean/variance/moment predictors");
  add_common(predict, o);
  predict->callback([&]() {
    FreudModel model(o.p, o.beta, o.alpha, o.N);
    const TestFunction& f = test_function_by_name(o.f_name);
    const CltPrediction pred = clt_prediction(model, f, 4);
    nlohmann::ordered_json j;
    j["subcommand"] = "predict";
    j["config"] = {{"p", o.p}, {"beta", o.beta}, {"alpha", o.alpha}, {"f", o.f_name}};
    j["mean"] = pred.mean;
    j["variance"] = pred.variance;
    j["gaussian_moments"] = pred.moments;
    std::cout << j.dump(2) << "\n";
    std::printf("mean %.10g  variance %.10g\n", pred.mean, pred.variance);
  });

  auto* sample = app.add_subcommand("sample", "run one Metropolis chain, emit snapshots");
  add_common(sample, o);
  sample->callback([&]() {
    FreudModel model(o.p, o.beta, o.alpha, o.N);
    SamplerConfig cfg;
    cfg.model = model;
    cfg.sweeps = o.sweeps;
    cfg.burn_in = o.burn_in > 0 ? o.burn_in : std::max(1, o.sweeps / 5);
    cfg.thinning = 10;
    cfg.seed = o.seed;
    const ChainOutput chain = run_chain(cfg);
    std::string csv = "seed,sweep";
    for (int j = 0; j < o.N; ++j) csv += ",x" + std::to_string(j);
    csv += "\n";
    char buf[64];
    for (size_t s = 0; s < chain.samples.size(); ++s) {
      const int sweep = cfg.burn_in + static_cast<int>(s + 1) * cfg.thinning;
      csv += std::to_string(o.seed) + "," + std::to_string(sweep);
      for (int j = 0; j < o.N; ++j) {
        std::snprintf(buf, sizeof(buf), ",%.17g", chain.samples[s].positions[j]);
        csv += buf;
      }
      csv += "\n";
    }
    nlohmann::ordered_json header;
    header["subcommand"] = "sample";
    header["config"] = {{"p", o.p},         {"beta", o.beta},   {"alpha", o.alpha},
                        {"N", o.N},         {"sweeps", o.sweeps}, {"seed", o.seed},
                        {"thinning", 10},   {"burn_in", cfg.burn_in}};
    header["acceptance_rate"] = chain.acceptance_rate;
    header["final_sigma"] = chain.final_sigma;
    header["n_samples"] = chain.samples.size();
    if (!o.out.empty()) {
      std::ofstream file(o.out);
      file << csv;
      std::ofstream meta(o.out + ".json");
      meta << header.dump(2) << "\n";
    } else {
      std::cout << header.dump(2) << "\n" << csv;
    }
  });

  auto* vclt = app.add_subcommand("verify-clt", "CLT of linear statistics vs theory");
  add_common(vclt, o);
  vclt->callback([&]() {
    FreudModel model(o.p, o.beta, o.alpha, o.N);
    reports.push_back(
        run_clt_experiment(model, test_function_by_name(o.f_name), 4, knobs_of(o)));
    emit(reports.back(), o);
  });

  auto* vll = app.add_subcommand("verify-local-law", "local-law decay rate in N");
  add_common(vll, o);
  vll->callback([&]() {
    FreudModel model(o.p, o.beta, o.alpha, 8);
    const std::vector<Complex> zs = parse_z_list(o.z_grid);
    for (const Complex z : zs) {
      reports.push_back(run_local_law_experiment(model, z, {1, 2},
                                                 parse_int_list(o.n_list), knobs_of(o)));
      emit(reports.back(), o);
    }
  });

  auto* vloop = app.add_subcommand("verify-loop", "exact first-order loop equation");
  add_common(vloop, o);
  vloop->callback([&]() {
    FreudModel model(o.p, o.beta, o.alpha, o.N);
    reports.push_back(
        run_loop_equation_experiment(model, parse_z_list(o.z_grid), knobs_of(o)));
    emit(reports.back(), o);
  });

  auto* fe = app.add_subcommand("free-energy", "free-energy expansion; --verify runs "
                                               "thermodynamic integration");
  bool fe_verify = false;
  add_common(fe, o);
  fe->add_flag("--verify", fe_verify, "run the Monte Carlo thermodynamic integration");
  fe->callback([&]() {
    const FreeEnergyExpansion fex = free_energy_expansion(o.p, o.beta);
    nlohmann::ordered_json j;
    j["subcommand"] = "free-energy";
    j["config"] = {{"p", o.p}, {"beta", o.beta}};
    j["leading"] = fex.leading;
    j["nlogn_coeff"] = fex.nlogn_coeff;
    j["f_minus1"] = fex.f_minus1;
    j["fg_minus1"] = fex.fg_minus1;
    std::cout << j.dump(2) << "\n";
    std::printf("leading %.6f  F_G^{-1} %.6f  F^{-1} %.6f\n", fex.leading, fex.fg_minus1,
                fex.f_minus1);
    if (fe_verify) {
      RunKnobs kn = knobs_of(o);
      kn.thinning = 10;
      reports.push_back(run_thermo_integration(o.p, o.beta, o.N, kn));
      emit(reports.back(), o);
    }
  });

  auto* schatten = app.add_subcommand("schatten", "p-Schatten ball volume expansion");
  add_common(schatten, o);
  schatten->callback([&]() {
    const SchattenCoeffs co = schatten_volume_coeffs(o.p, static_cast<int>(o.beta));
    const FreeEnergyExpansion fex = free_energy_expansion(o.p, o.beta);
    nlohmann::ordered_json j;
    j["subcommand"] = "schatten";
    j["config"] = {{"p", o.p}, {"beta", o.beta}, {"N", o.N}};
    j["coeffs"] = {{"a", co.a}, {"b", co.b}, {"c", co.c}, {"d", co.d}};
    j["log_volume_prediction"] =
        schatten_log_volume(o.p, static_cast<int>(o.beta), o.N,
                            fex.log_partition_prediction(o.N));
    std::cout << j.dump(2) << "\n";
  });

  auto* kls = app.add_subcommand("kls", "finite-N KLS ratio from sampled moments");
  add_common(kls, o);
  kls->callback([&]() {
    reports.push_back(run_kls_experiment(o.p, static_cast<int>(o.beta), o.r, o.q, o.N,
                                         knobs_of(o)));
    emit(reports.back(), o);
  });

  auto* eq = app.add_subcommand("equilibrium", "empirical spectra vs equilibrium CDF");
  add_common(eq, o);
  eq->callback([&]() {
    FreudModel model(o.p, o.beta, o.alpha, 8);
    reports.push_back(
        run_equilibrium_convergence(model, parse_int_list(o.n_list), knobs_of(o)));
    emit(reports.back(), o);
  });

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());  // CLI11 vector parse order
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 64;
  }
  return exit_code(reports);
}
