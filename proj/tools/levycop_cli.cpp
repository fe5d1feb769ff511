// levycop command-line tool: simulation, copula evaluation, moments, Danish
// preprocessing, and model fitting. Exit codes: 0 success, 1 runtime error,
// 2 usage / validation error.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "levycop/inference.hpp"
#include "levycop/io.hpp"
#include "levycop/levy_copula.hpp"
#include "levycop/process_model.hpp"
#include "levycop/simulation.hpp"

namespace {

using namespace levycop;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

bool g_quiet = false;

void say(const std::string& line) {
  if (!g_quiet) std::cout << line << std::endl;
}

double parse_extended(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed on " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

struct ModelFlags {
  double sigma = 0.5;
  double k = 1.0;
  double a1 = 1.0, b1 = 1.0;
  double a2 = 1.0, b2 = 1.0;

  CompoundModel model() const { return {{sigma, k}, {a1, b1}, {a2, b2}}; }
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--sigma", f.sigma, "stability index in (0, 1)")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));
  cmd->add_option("--k", f.k, "directing-measure scale K")->check(CLI::PositiveNumber);
  cmd->add_option("--a1", f.a1, "score shape, dimension 1")->check(CLI::PositiveNumber);
  cmd->add_option("--b1", f.b1, "score rate, dimension 1")->check(CLI::PositiveNumber);
  cmd->add_option("--a2", f.a2, "score shape, dimension 2")->check(CLI::PositiveNumber);
  cmd->add_option("--b2", f.b2, "score rate, dimension 2")->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------- simulate --

int run_simulate(const ModelFlags& mf, double tau, double horizon,
                 std::uint64_t seed, const std::string& out_path) {
  const CompoundModel m = mf.model();
  const JumpPath path = compound_path(m, horizon, {tau}, {seed});

  std::ostringstream csv;
  write_path_csv(csv, path);
  write_file_atomic(out_path, csv.str());

  double c1 = 0.0, c2 = 0.0;
  for (const Jump& j : path.jumps) {
    c1 += j.w1;
    c2 += j.w2;
  }
  say("retained jumps: " + std::to_string(path.jumps.size()));
  say("cumulative w1: " + format_double(c1));
  say("cumulative w2: " + format_double(c2));
  return 0;
}

// ------------------------------------------------------------------ copula --

int run_copula(const AlphaClaytonParams& p, const std::string& s1_str,
               const std::string& s2_str, const std::string& grid_out, double grid_min,
               double grid_max, int grid_n) {
  p.validate();
  if (!grid_out.empty()) {
    std::ostringstream csv;
    csv << "s1,s2,c,d1,d2,dens\n";
    for (int i = 0; i < grid_n; ++i) {
      for (int j = 0; j < grid_n; ++j) {
        const double frac_i = grid_n > 1 ? static_cast<double>(i) / (grid_n - 1) : 0.0;
        const double frac_j = grid_n > 1 ? static_cast<double>(j) / (grid_n - 1) : 0.0;
        const double s1 = grid_min + (grid_max - grid_min) * frac_i;
        const double s2 = grid_min + (grid_max - grid_min) * frac_j;
        csv << format_double(s1) << ',' << format_double(s2) << ','
            << format_double(alpha_clayton(p, s1, s2)) << ','
            << format_double(alpha_clayton_d1(p, s1, s2)) << ','
            << format_double(alpha_clayton_d2(p, s1, s2)) << ','
            << format_double(alpha_clayton_density(p, s1, s2)) << '\n';
      }
    }
    write_file_atomic(grid_out, csv.str());
    say("grid written to " + grid_out);
    return 0;
  }

  const double s1 = parse_extended(s1_str);
  const double s2 = parse_extended(s2_str);
  std::cout << "C = " << format_double(alpha_clayton(p, s1, s2)) << std::endl;
  if (std::isfinite(s1) && std::isfinite(s2)) {
    std::cout << "d1 = " << format_double(alpha_clayton_d1(p, s1, s2)) << std::endl;
    std::cout << "d2 = " << format_double(alpha_clayton_d2(p, s1, s2)) << std::endl;
    std::cout << "dens = " << format_double(alpha_clayton_density(p, s1, s2))
              << std::endl;
  }
  return 0;
}

// ----------------------------------------------------------------- moments --

int run_moments(const ModelFlags& mf, double p, double t_max, int t_steps,
                bool gamma_directing, double dir_a, double dir_b,
                const std::string& out_path) {
  nlohmann::json j;
  std::vector<double> grid;
  for (int i = 1; i <= t_steps; ++i) grid.push_back(t_max * i / t_steps);
  j["t"] = grid;

  if (gamma_directing) {
    const MomentModel m{{dir_a, dir_b}, {mf.a1, mf.b1}, {mf.a2, mf.b2}};
    std::vector<double> mean1, mean2, var1, var2, cov;
    for (double t : grid) {
      mean1.push_back(mean(m, 1, t));
      mean2.push_back(mean(m, 2, t));
      var1.push_back(variance(m, 1, t));
      var2.push_back(variance(m, 2, t));
      cov.push_back(covariance(m, t));
    }
    j["mean1"] = mean1;
    j["mean2"] = mean2;
    j["var1"] = var1;
    j["var2"] = var2;
    j["cov"] = cov;
    j["correlation"] = correlation(m);
  } else {
    const CompoundModel m = mf.model();
    std::vector<double> f1, f2;
    for (double t : grid) {
      f1.push_back(fractional_moment_stable(m, 1, t, p));
      f2.push_back(fractional_moment_stable(m, 2, t, p));
    }
    j["p"] = p;
    j["fractional1"] = f1;
    j["fractional2"] = f2;
  }

  const std::string text = j.dump(2);
  if (out_path.empty()) {
    std::cout << text << std::endl;
  } else {
    write_file_atomic(out_path, text);
    say("moments written to " + out_path);
  }
  return 0;
}

// ------------------------------------------------------- preprocess-danish --

int run_preprocess(const std::string& in_path, const std::string& out_path,
                   double horizon) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "cannot open " << in_path << std::endl;
    return kExitRuntime;
  }
  DanishSummary summary;
  try {
    summary = preprocess_danish(in, horizon);
  } catch (const std::runtime_error& e) {
    std::cerr << "preprocess failed: " << e.what() << std::endl;
    return kExitUsage;
  }
  std::ostringstream csv;
  write_classified_csv(csv, summary.path);
  write_file_atomic(out_path, csv.str());
  say("rows read: " + std::to_string(summary.total_rows));
  say("retained: " + std::to_string(summary.retained));
  say("horizon: " + format_double(summary.path.horizon));
  return 0;
}

// --------------------------------------------------------------------- fit --

void write_plot_csv(const std::string& path, const std::vector<double>& xs,
                    const Ecdf& ecdf, const std::function<double(double)>& fitted) {
  std::ostringstream csv;
  csv << "x,ecdf,fitted\n";
  for (double x : xs) {
    csv << format_double(x) << ',' << format_double(ecdf(x)) << ','
        << format_double(fitted(x)) << '\n';
  }
  write_file_atomic(path, csv.str());
}

void emit_plot_data(const std::string& dir, const ObservationSet& obs,
                    const MarginalFamily& m1, const MarginalFamily& m2, double lambda1,
                    double lambda2, const AlphaClaytonParams& cop) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const double lambda_par = alpha_clayton(cop, lambda1, lambda2);

  std::vector<double> all1 = obs.perp1, all2 = obs.perp2, par1, par2;
  for (const auto& [a, b] : obs.parallel) {
    all1.push_back(a);
    all2.push_back(b);
    par1.push_back(a);
    par2.push_back(b);
  }

  auto emit = [&](const std::string& name, const std::vector<double>& sample,
                  const std::function<double(double)>& fitted) {
    if (sample.size() < 2) return;
    std::vector<double> xs = sample;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    write_plot_csv((fs::path(dir) / name).string(), xs, Ecdf(sample), fitted);
  };

  emit("marginal1.csv", all1, [&](double x) { return m1.cdf(x); });
  emit("marginal2.csv", all2, [&](double x) { return m2.cdf(x); });
  // parallel-component CDF: [lambda_par - C(lambda1 S1(w), lambda2)] / lambda_par
  emit("parallel1.csv", par1, [&](double x) {
    return (lambda_par - alpha_clayton(cop, lambda1 * m1.survival(x), lambda2)) /
           lambda_par;
  });
  emit("parallel2.csv", par2, [&](double x) {
    return (lambda_par - alpha_clayton(cop, lambda1, lambda2 * m2.survival(x))) /
           lambda_par;
  });
  // perpendicular-component CDF:
  // [lambda_j F_j(w) - lambda_par + C(..., at lambda_j S_j(w))] / lambda_j_perp
  emit("perp1.csv", obs.perp1, [&](double x) {
    return (lambda1 * m1.cdf(x) - lambda_par +
            alpha_clayton(cop, lambda1 * m1.survival(x), lambda2)) /
           (lambda1 - lambda_par);
  });
  emit("perp2.csv", obs.perp2, [&](double x) {
    return (lambda2 * m2.cdf(x) - lambda_par +
            alpha_clayton(cop, lambda1, lambda2 * m2.survival(x))) /
           (lambda2 - lambda_par);
  });
}

int run_fit(const std::string& in_path, const std::string& model,
            const std::string& out_path, const std::string& plots_dir, double horizon,
            double eps1, double eps2) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "cannot open " << in_path << std::endl;
    return kExitRuntime;
  }
  // sniff the first row: 3 columns is a plain `time,w1,w2` path (threshold
  // model only), 4 columns is a classified `time,w1,w2,kind` path
  std::string first_line;
  std::getline(in, first_line);
  const bool classified_input =
      std::count(first_line.begin(), first_line.end(), ',') >= 3;
  in.clear();
  in.seekg(0);

  ObservationSet obs;
  try {
    if (classified_input) {
      const ClassifiedPath path = read_classified_csv(in, horizon);
      obs = classify(path);
    } else if (model == "threshold") {
      const JumpPath path = read_path_csv(in, horizon);
      obs = threshold_observations(path, eps1, eps2);
    } else {
      std::cerr << in_path << ": model '" << model
                << "' needs a classified time,w1,w2,kind CSV" << std::endl;
      return kExitUsage;
    }
  } catch (const std::runtime_error& e) {
    std::cerr << "cannot parse " << in_path << ": " << e.what() << std::endl;
    return kExitUsage;
  }
  if (obs.parallel.empty() && obs.perp1.empty() && obs.perp2.empty()) {
    std::cerr << "no observations in " << in_path << std::endl;
    return kExitUsage;
  }

  FitResult fit;
  if (model == "threshold") {
    fit = fit_threshold_model(obs, eps1, eps2);
    fit.fixed["eps1"] = eps1;
    fit.fixed["eps2"] = eps2;
  } else {
    std::vector<double> all1 = obs.perp1, all2 = obs.perp2;
    for (const auto& [a, b] : obs.parallel) {
      all1.push_back(a);
      all2.push_back(b);
    }
    if (all1.size() < 2 || all2.size() < 2) {
      std::cerr << "need at least two weights per dimension" << std::endl;
      return kExitUsage;
    }
    const MarginalSelection sel1 = select_marginal(all1);
    const MarginalSelection sel2 = select_marginal(all2);
    const auto [l1, l2] = rate_estimates(obs);
    const CopulaVariant variant = model == "full"      ? CopulaVariant::full
                                  : model == "symmetric" ? CopulaVariant::symmetric
                                                         : CopulaVariant::clayton;
    fit = fit_copula_two_step(obs, sel1.family, sel2.family, l1, l2, variant);
    fit.fixed["marginal1_p1"] = sel1.family.p1;
    fit.fixed["marginal1_p2"] = sel1.family.p2;
    fit.fixed["marginal2_p1"] = sel2.family.p1;
    fit.fixed["marginal2_p2"] = sel2.family.p2;
    say("marginal 1: " + family_name(sel1.family.tag) +
        " (KS " + format_double(sel1.ks) + ")");
    say("marginal 2: " + family_name(sel2.family.tag) +
        " (KS " + format_double(sel2.ks) + ")");
    if (!plots_dir.empty()) {
      emit_plot_data(plots_dir, obs, sel1.family, sel2.family, l1, l2,
                     copula_params(fit));
    }
  }

  write_file_atomic(out_path, fit_result_json(fit) + "\n");
  say("loglik: " + format_double(fit.loglik));
  say("converged: " + std::string(fit.converged ? "yes" : "no"));
  say("result written to " + out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compound vectors of subordinators: simulation, copulas, inference"};
  app.require_subcommand(1);
  app.add_flag("--quiet", g_quiet, "suppress informational output");

  // simulate
  ModelFlags sim_model;
  double sim_tau = 1e-6, sim_horizon = 1.0;
  std::uint64_t sim_seed = 0;
  std::string sim_out = "path.csv";
  CLI::App* sim = app.add_subcommand("simulate", "simulate a compound jump path");
  add_model_flags(sim, sim_model);
  sim->add_option("--tau", sim_tau, "series truncation level")->check(CLI::PositiveNumber);
  sim->add_option("--horizon", sim_horizon, "time horizon T")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--out", sim_out, "output CSV path");

  // copula
  double cop_sigma = 1.0, cop_a1 = 1.0, cop_a2 = 1.0;
  std::string cop_s1, cop_s2, cop_grid_out;
  double cop_grid_min = 0.1, cop_grid_max = 5.0;
  int cop_grid_n = 50;
  CLI::App* cop = app.add_subcommand("copula", "evaluate the alpha-Clayton Levy copula");
  cop->add_option("--sigma", cop_sigma, "copula parameter sigma > 0")
      ->check(CLI::PositiveNumber);
  cop->add_option("--a1", cop_a1, "alpha1 > 0")->check(CLI::PositiveNumber);
  cop->add_option("--a2", cop_a2, "alpha2 > 0")->check(CLI::PositiveNumber);
  CLI::Option* s1_opt = cop->add_option("--s1", cop_s1, "first argument (or 'inf')");
  CLI::Option* s2_opt = cop->add_option("--s2", cop_s2, "second argument (or 'inf')");
  CLI::Option* grid_opt =
      cop->add_option("--grid-out", cop_grid_out, "emit a grid CSV to this path");
  cop->add_option("--grid-min", cop_grid_min, "grid lower bound");
  cop->add_option("--grid-max", cop_grid_max, "grid upper bound");
  cop->add_option("--grid-n", cop_grid_n, "grid points per axis")
      ->check(CLI::PositiveNumber);
  s1_opt->needs(s2_opt);
  s2_opt->needs(s1_opt);
  grid_opt->excludes(s1_opt);

  // moments
  ModelFlags mom_model;
  double mom_p = 0.49, mom_tmax = 1.0;
  int mom_tsteps = 20;
  bool mom_gamma = false;
  double mom_dir_a = 1.0, mom_dir_b = 1.0;
  std::string mom_out;
  CLI::App* mom = app.add_subcommand("moments", "moment curves over a time grid");
  add_model_flags(mom, mom_model);
  mom->add_option("--p", mom_p, "fractional order, requires p < sigma")
      ->check(CLI::PositiveNumber);
  mom->add_option("--t-max", mom_tmax, "largest time on the grid")
      ->check(CLI::PositiveNumber);
  mom->add_option("--t-steps", mom_tsteps, "number of grid points")
      ->check(CLI::PositiveNumber);
  mom->add_flag("--gamma-directing", mom_gamma,
                "mean/variance/correlation under a Gamma directing measure");
  mom->add_option("--dir-a", mom_dir_a, "Gamma directing shape a")
      ->check(CLI::PositiveNumber);
  mom->add_option("--dir-b", mom_dir_b, "Gamma directing rate b")
      ->check(CLI::PositiveNumber);
  mom->add_option("--out", mom_out, "output JSON path (default: stdout)");

  // preprocess-danish
  std::string dan_in, dan_out = "danish_observations.csv";
  double dan_horizon = 0.0;
  CLI::App* dan = app.add_subcommand("preprocess-danish",
                                     "threshold and classify the Danish fire dataset");
  dan->add_option("--input", dan_in, "raw CSV: date, building loss, content loss")
      ->required();
  dan->add_option("--out", dan_out, "output observations CSV");
  dan->add_option("--horizon", dan_horizon,
                  "override the horizon (default: day span / 365)");

  // fit
  std::string fit_in, fit_model = "full", fit_out = "fit.json", fit_plots;
  double fit_horizon = 0.0, fit_eps1 = 1e-6, fit_eps2 = 1e-6;
  CLI::App* fit = app.add_subcommand("fit", "fit a model to classified observations");
  fit->add_option("--input", fit_in, "observations CSV (time,w1,w2,kind)")->required();
  fit->add_option("--model", fit_model, "full | symmetric | clayton | threshold")
      ->check(CLI::IsMember({"full", "symmetric", "clayton", "threshold"}));
  fit->add_option("--out", fit_out, "FitResult JSON path");
  fit->add_option("--plots-dir", fit_plots, "directory for ECDF-vs-fitted CSVs");
  fit->add_option("--horizon", fit_horizon, "override the observation horizon");
  fit->add_option("--eps1", fit_eps1, "threshold, dimension 1 (threshold model)")
      ->check(CLI::PositiveNumber);
  fit->add_option("--eps2", fit_eps2, "threshold, dimension 2 (threshold model)")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return run_simulate(sim_model, sim_tau, sim_horizon, sim_seed, sim_out);
    }
    if (cop->parsed()) {
      if (cop_grid_out.empty() && cop_s1.empty()) {
        std::cerr << "copula: give either --s1/--s2 or --grid-out" << std::endl;
        return kExitUsage;
      }
      return run_copula({cop_sigma, cop_a1, cop_a2}, cop_s1, cop_s2, cop_grid_out,
                        cop_grid_min, cop_grid_max, cop_grid_n);
    }
    if (mom->parsed()) {
      if (!mom_gamma && !(mom_p < mom_model.sigma)) {
        std::cerr << "moments: --p must be smaller than --sigma (got p=" << mom_p
                  << ", sigma=" << mom_model.sigma << ")" << std::endl;
        return kExitUsage;
      }
      return run_moments(mom_model, mom_p, mom_tmax, mom_tsteps, mom_gamma, mom_dir_a,
                         mom_dir_b, mom_out);
    }
    if (dan->parsed()) {
      return run_preprocess(dan_in, dan_out, dan_horizon);
    }
    if (fit->parsed()) {
      return run_fit(fit_in, fit_model, fit_out, fit_plots, fit_horizon, fit_eps1,
                     fit_eps2);
    }
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitRuntime;
  }
  return kExitUsage;
}
