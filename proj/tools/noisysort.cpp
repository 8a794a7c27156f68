#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "noisysort/closedform.hpp"
#include "noisysort/exact.hpp"
#include "noisysort/experiment.hpp"
#include "noisysort/kernels.hpp"
#include "noisysort/mixing.hpp"
#include "noisysort/seqcore.hpp"
#include "noisysort/verify.hpp"

namespace {

using namespace noisysort;

struct EnergyArgs {
  double lambda = 0.0;
  double noise = 0.0;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* noise_opt = nullptr;

  void attach(CLI::App* cmd) {
    lambda_opt = cmd->add_option("--lambda", lambda, "energy parameter lambda > 0");
    noise_opt =
        cmd->add_option("--noise", noise, "noise level nu > 0; lambda = e^(1/nu)");
    lambda_opt->excludes(noise_opt);
    noise_opt->excludes(lambda_opt);
  }
  bool any() const { return lambda_opt->count() > 0 || noise_opt->count() > 0; }
  Energy resolve() const {
    if (lambda_opt->count() == 0 && noise_opt->count() == 0) {
      throw std::invalid_argument("exactly one of --lambda or --noise is required");
    }
    return noise_opt->count() > 0 ? Energy::from_noise(noise)
                                  : Energy::from_lambda(lambda);
  }
};

struct InputArgs {
  std::string input;
  std::string gen;
  CLI::Option* input_opt = nullptr;
  CLI::Option* gen_opt = nullptr;

  void attach(CLI::App* cmd) {
    input_opt = cmd->add_option("--input", input,
                                "comma-separated start arrangement, e.g. 3,1,2");
    gen_opt = cmd->add_option("--gen", gen,
                              "generator: descending:N | binary:NA,NB | outlier:N");
    input_opt->excludes(gen_opt);
    gen_opt->excludes(input_opt);
  }
  std::vector<double> resolve() const {
    if ((input_opt->count() > 0) == (gen_opt->count() > 0)) {
      throw std::invalid_argument("exactly one of --input or --gen is required");
    }
    if (input_opt->count() > 0) return parse_sequence_csv(input);
    return make_generator_sequence(gen);
  }
};

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisy-comparison sorting chains: simulation, exact stationary laws, "
               "mixing times, and invariant sweeps"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand(
      "simulate", "run seeded replica simulations and export trajectory tables");
  std::vector<std::string> sim_chains;
  ExperimentConfig sim_cfg;
  EnergyArgs sim_energy;
  InputArgs sim_input;
  sim->add_option("--chain", sim_chains, "chain kind: adj | any | any-star")
      ->required()
      ->delimiter(',');
  sim_input.attach(sim);
  sim_energy.attach(sim);
  sim->add_option("--steps", sim_cfg.steps, "steps per replica")
      ->capture_default_str();
  sim->add_option("--replicas", sim_cfg.replicas, "independent replicas")
      ->capture_default_str();
  sim->add_option("--every", sim_cfg.every, "checkpoint interval in steps")
      ->capture_default_str();
  sim->add_option("--burn-in", sim_cfg.burn_in,
                  "fraction of steps discarded in run.json aggregates")
      ->capture_default_str();
  sim->add_option("--seed", sim_cfg.seed, "master seed")->capture_default_str();
  sim->add_option("--out", sim_cfg.out_dir, "output directory")
      ->capture_default_str();
  std::size_t sim_cap = kDefaultStateCap;
  sim->add_option("--state-cap", sim_cap, "accepted for interface uniformity");

  // exact
  auto* exa = app.add_subcommand(
      "exact", "export an exact stationary distribution over all arrangements");
  std::string exa_chain = "adj";
  std::string exa_method = "solve";
  std::string exa_out = "out";
  std::size_t exa_cap = kDefaultStateCap;
  std::uint64_t exa_seed = 0;
  EnergyArgs exa_energy;
  InputArgs exa_input;
  exa->add_option("--chain", exa_chain, "chain kind: adj | any | any-star")
      ->capture_default_str();
  exa_input.attach(exa);
  exa_energy.attach(exa);
  exa->add_option("--method", exa_method, "solve | tree | gibbs")
      ->capture_default_str();
  exa->add_option("--out", exa_out, "output directory")->capture_default_str();
  exa->add_option("--state-cap", exa_cap, "largest allowed state space")
      ->capture_default_str();
  exa->add_option("--seed", exa_seed, "accepted for interface uniformity");

  // verify
  auto* ver = app.add_subcommand(
      "verify", "run the invariant sweeps and write a pass/fail report");
  std::string ver_config;
  std::string ver_out = "out";
  std::size_t ver_cap = kDefaultStateCap;
  ver->add_option("--config", ver_config,
                  "JSON file with grids: triples, lambdas, outlier_ns, ps, "
                  "binary_sizes (defaults used when absent)");
  ver->add_option("--out", ver_out, "output directory")->capture_default_str();
  ver->add_option("--state-cap", ver_cap, "largest allowed state space")
      ->capture_default_str();

  // mixing
  auto* mix = app.add_subcommand(
      "mixing", "measure the empirical mixing time of a small chain");
  std::string mix_chain;
  double mix_eps = 0.25;
  std::string mix_out = "out";
  std::size_t mix_cap = kDefaultStateCap;
  std::uint64_t mix_seed = 0;
  EnergyArgs mix_energy;
  InputArgs mix_input;
  mix->add_option("--chain", mix_chain, "chain kind: adj | any | any-star")
      ->required();
  mix_input.attach(mix);
  mix_energy.attach(mix);
  mix->add_option("--eps", mix_eps, "total-variation threshold in (0,1)")
      ->capture_default_str();
  mix->add_option("--out", mix_out, "output directory")->capture_default_str();
  mix->add_option("--state-cap", mix_cap, "largest allowed state space")
      ->capture_default_str();
  mix->add_option("--seed", mix_seed, "accepted for interface uniformity");

  // outlier
  auto* outc = app.add_subcommand(
      "outlier", "closed-form stationary law and bounds for one outlier element");
  int out_n = 0;
  double out_p = 0.0;
  double out_gap = 1.0;
  std::string out_out = "out";
  EnergyArgs out_energy;
  outc->add_option("--n", out_n, "number of elements (n-1 equal, one larger)")
      ->required();
  auto* p_opt =
      outc->add_option("--p", out_p, "error probability in (0, 1/2]; alternative "
                                     "to --lambda/--noise");
  out_energy.attach(outc);
  p_opt->excludes(out_energy.lambda_opt);
  p_opt->excludes(out_energy.noise_opt);
  outc->add_option("--gap", out_gap, "value gap between the outlier and the rest")
      ->capture_default_str();
  outc->add_option("--out", out_out, "output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      for (const std::string& c : sim_chains) {
        sim_cfg.kinds.push_back(chain_kind_from_string(c));
      }
      sim_cfg.input = sim_input.resolve();
      sim_cfg.generator = sim_input.gen_opt->count() > 0 ? sim_input.gen : "";
      sim_energy.resolve();  // validates the flag pair and the domain up front
      if (sim_energy.noise_opt->count() > 0) {
        sim_cfg.noise = sim_energy.noise;
      } else {
        sim_cfg.lambda = sim_energy.lambda;
      }
      const SimulateResult res = cmd_simulate(sim_cfg);
      std::cout << "wrote " << res.trajectory_csv.string() << ", "
                << res.summary_csv.string() << ", " << res.run_json.string() << '\n';
      for (std::size_t k = 0; k < sim_cfg.kinds.size(); ++k) {
        std::cout << "final mean w (" << to_string(sim_cfg.kinds[k])
                  << ") = " << res.final_mean_w[k] << '\n';
      }
      return 0;
    }

    if (exa->parsed()) {
      const Sequence seq{exa_input.resolve()};
      const auto path = cmd_exact(seq, chain_kind_from_string(exa_chain),
                                  exa_energy.resolve(),
                                  exact_method_from_string(exa_method), exa_cap,
                                  exa_out);
      std::cout << "wrote " << path.string() << '\n';
      return 0;
    }

    if (ver->parsed()) {
      const VerifyConfig cfg = ver_config.empty()
                                   ? default_verify_config()
                                   : parse_verify_config(read_text_file(ver_config));
      std::filesystem::path report_path;
      const VerifyReport report = cmd_verify(cfg, ver_cap, ver_out, &report_path);
      std::size_t passed = 0, failed_required = 0, failed_informational = 0;
      for (const CheckResult& c : report.checks) {
        if (c.pass) {
          ++passed;
          continue;
        }
        (c.required ? failed_required : failed_informational) += 1;
        std::cout << (c.required ? "FAIL " : "info ") << c.check << ' '
                  << c.params.dump() << " margin=" << c.margin << '\n';
      }
      std::cout << "wrote " << report_path.string() << '\n';
      std::cout << passed << '/' << report.checks.size() << " checks passed, "
                << failed_required << " required failures, "
                << failed_informational << " informational failures\n";
      std::cout << (report.required_pass ? "required checks: PASS"
                                         : "required checks: FAIL")
                << '\n';
      return report.required_pass ? 0 : 1;
    }

    if (mix->parsed()) {
      const Sequence seq{mix_input.resolve()};
      const MixingResult res =
          cmd_mixing(seq, chain_kind_from_string(mix_chain), mix_energy.resolve(),
                     mix_eps, mix_cap, mix_out);
      std::cout << "t_mix = " << res.t_mix;
      if (res.has_bound) {
        std::cout << ", coupling bound = " << res.bound << " (p = " << res.p << ")";
      }
      std::cout << '\n';
      std::cout << "wrote " << res.json_path.string() << '\n';
      return 0;
    }

    if (outc->parsed()) {
      double p = out_p;
      double lambda_echo = 0.0;
      if (p_opt->count() == 0) {
        const Energy e = out_energy.resolve();
        p = 1.0 - swap_probability(out_gap, 0.0, e);
        lambda_echo = e.lambda();
      }
      const auto path = cmd_outlier(out_n, p, out_gap, lambda_echo, out_out);
      std::cout << "p = " << p << '\n';
      std::cout << "wrote " << path.string() << '\n';
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
