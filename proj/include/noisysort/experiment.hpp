#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "noisysort/exact.hpp"
#include "noisysort/kernels.hpp"
#include "noisysort/seqcore.hpp"

namespace noisysort {

// A fully reproducible simulation run: the config plus the build determine
// every output byte.
struct ExperimentConfig {
  std::vector<ChainKind> kinds;  // at least one, no duplicates
  std::vector<double> input;     // start arrangement, shared by all replicas
  std::string generator;         // echo of the generator string, "" if explicit
  double lambda = 0.0;           // resolved energy parameter, > 0
  double noise = 0.0;            // > 0 iff lambda came from a noise level
  std::uint64_t steps = 100000;
  std::uint64_t replicas = 200;
  std::uint64_t every = 1000;    // checkpoint interval
  double burn_in = 0.5;          // fraction of steps discarded for run.json rates
  std::uint64_t seed = 0;
  std::string out_dir = "out";
};

Energy config_energy(const ExperimentConfig& cfg);

// "3,1,2" -> {3,1,2}; throws std::invalid_argument on junk or emptiness.
std::vector<double> parse_sequence_csv(const std::string& text);

// descending:N -> (N,...,1); binary:NA,NB -> NB twos then NA ones (the
// reversed arrangement of NA copies of 1 and NB copies of 2); outlier:N ->
// (2,1,...,1). Throws std::invalid_argument on anything else.
std::vector<double> make_generator_sequence(const std::string& gen);

struct SimulateResult {
  std::filesystem::path trajectory_csv;
  std::filesystem::path summary_csv;
  std::filesystem::path run_json;
  std::vector<double> final_mean_w;  // per kind, config order
};

// Writes trajectory.csv (step,replica,chain,w,is_sorted), summary.csv
// (step,chain,mean_w,min_w,max_w,hit_rate) and run.json into cfg.out_dir.
// Checkpoints are 0, every, 2*every, ..., plus the final step. Rows are
// ordered by (step, replica, chain); replica r uses the RNG stream with id r
// under the master seed, and the streams are reused across kinds so kinds see
// common random numbers.
SimulateResult cmd_simulate(const ExperimentConfig& cfg);

enum class ExactMethod { Solve, Tree, Gibbs };

ExactMethod exact_method_from_string(const std::string& s);

// Writes dist.csv (state_index,sequence,w,pi) over the arrangement space of
// the given multiset in lexicographic order; sequence values joined by ';'.
// The gibbs method ignores the kind.
std::filesystem::path cmd_exact(const Sequence& multiset, ChainKind kind,
                                const Energy& e, ExactMethod method,
                                std::size_t state_cap, const std::string& out_dir);

struct MixingResult {
  std::filesystem::path json_path;
  std::uint64_t t_mix = 0;
  bool has_bound = false;  // binary multiset, any-pair kind, p <= 1/2
  double bound = 0.0;
  double p = 0.0;  // error probability, set iff has_bound
};

// Measures the empirical mixing time and, for the any-pair chain on a binary
// multiset with error probability p <= 1/2, the coupling bound. Writes
// mixing.json.
MixingResult cmd_mixing(const Sequence& multiset, ChainKind kind, const Energy& e,
                        double eps, std::size_t state_cap,
                        const std::string& out_dir);

// Writes outlier.json: closed-form stationary laws, expected disorder, and
// (for p < 1/2) the bound comparisons for one outlier above n-1 equal
// elements. lambda_echo is recorded verbatim when the error probability came
// from an energy parameter, 0 when p was given directly.
std::filesystem::path cmd_outlier(int n, double p, double gap, double lambda_echo,
                                  const std::string& out_dir);

}  // namespace noisysort
