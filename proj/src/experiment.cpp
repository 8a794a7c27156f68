#include "noisysort/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "noisysort/closedform.hpp"
#include "noisysort/mixing.hpp"
#include "noisysort/rng.hpp"

namespace noisysort {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

double parse_double_token(const std::string& tok) {
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  double value = 0.0;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw std::invalid_argument("not a number: '" + tok + "'");
  }
  return value;
}

long long parse_int_token(const std::string& tok) {
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  long long value = 0;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw std::invalid_argument("not an integer: '" + tok + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.kinds.empty()) {
    throw std::invalid_argument("simulate: at least one chain kind is required");
  }
  std::set<std::string> seen;
  for (const ChainKind k : cfg.kinds) {
    if (!seen.insert(to_string(k)).second) {
      throw std::invalid_argument("simulate: duplicate chain kind " + to_string(k));
    }
  }
  if (cfg.input.empty()) {
    throw std::invalid_argument("simulate: empty input sequence");
  }
  if (cfg.steps < 1) throw std::invalid_argument("simulate: steps must be >= 1");
  if (cfg.replicas < 1) throw std::invalid_argument("simulate: replicas must be >= 1");
  if (cfg.every < 1) {
    throw std::invalid_argument("simulate: checkpoint interval must be >= 1");
  }
  if (!(cfg.burn_in >= 0.0 && cfg.burn_in < 1.0)) {
    throw std::invalid_argument("simulate: burn-in fraction must lie in [0,1)");
  }
}

std::string join_values(const std::vector<double>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_double(v[i]);
  }
  return out;
}

}  // namespace

Energy config_energy(const ExperimentConfig& cfg) {
  if (cfg.noise > 0.0) return Energy::from_noise(cfg.noise);
  return Energy::from_lambda(cfg.lambda);
}

std::vector<double> parse_sequence_csv(const std::string& text) {
  std::vector<double> out;
  for (const std::string& raw : split(text, ',')) {
    const std::string tok = trim(raw);
    if (tok.empty()) {
      throw std::invalid_argument("sequence list has an empty entry: '" + text + "'");
    }
    out.push_back(parse_double_token(tok));
  }
  if (out.empty()) {
    throw std::invalid_argument("empty sequence list");
  }
  return out;
}

std::vector<double> make_generator_sequence(const std::string& gen) {
  const std::size_t colon = gen.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("generator must look like name:args, got '" + gen +
                                "'");
  }
  const std::string name = gen.substr(0, colon);
  const std::string args = gen.substr(colon + 1);
  if (name == "descending") {
    const long long n = parse_int_token(trim(args));
    if (n < 1) throw std::invalid_argument("descending:N needs N >= 1");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
      v[static_cast<std::size_t>(i)] = static_cast<double>(n - i);
    }
    return v;
  }
  if (name == "binary") {
    const auto parts = split(args, ',');
    if (parts.size() != 2) {
      throw std::invalid_argument("binary:NA,NB needs exactly two counts");
    }
    const long long n_a = parse_int_token(trim(parts[0]));
    const long long n_b = parse_int_token(trim(parts[1]));
    if (n_a < 1 || n_b < 1) {
      throw std::invalid_argument("binary:NA,NB needs NA >= 1 and NB >= 1");
    }
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n_a + n_b));
    v.insert(v.end(), static_cast<std::size_t>(n_b), 2.0);
    v.insert(v.end(), static_cast<std::size_t>(n_a), 1.0);
    return v;
  }
  if (name == "outlier") {
    const long long n = parse_int_token(trim(args));
    if (n < 2) throw std::invalid_argument("outlier:N needs N >= 2");
    std::vector<double> v(static_cast<std::size_t>(n), 1.0);
    v[0] = 2.0;
    return v;
  }
  throw std::invalid_argument("unknown generator '" + name +
                              "'; expected descending, binary, or outlier");
}

SimulateResult cmd_simulate(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const Energy e = config_energy(cfg);
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);

  std::vector<std::uint64_t> checkpoints{0};
  for (std::uint64_t t = cfg.every; t < cfg.steps; t += cfg.every) {
    checkpoints.push_back(t);
  }
  checkpoints.push_back(cfg.steps);

  const std::size_t K = cfg.kinds.size();
  const std::size_t R = static_cast<std::size_t>(cfg.replicas);
  std::vector<std::vector<std::vector<double>>> states(
      K, std::vector<std::vector<double>>(R, cfg.input));
  // one stream per replica, replayed identically by every kind
  std::vector<std::vector<Rng>> rngs(K);
  for (std::size_t k = 0; k < K; ++k) {
    rngs[k].reserve(R);
    for (std::size_t r = 0; r < R; ++r) {
      rngs[k].push_back(make_stream_rng(cfg.seed, static_cast<std::uint64_t>(r)));
    }
  }

  std::string traj = "step,replica,chain,w,is_sorted\n";
  std::string summ = "step,chain,mean_w,min_w,max_w,hit_rate\n";
  std::vector<std::vector<double>> cp_mean(K), cp_min(K), cp_max(K), cp_hit(K);

  std::uint64_t prev = 0;
  for (const std::uint64_t cp : checkpoints) {
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t r = 0; r < R; ++r) {
        for (std::uint64_t t = prev; t < cp; ++t) {
          step_inplace(cfg.kinds[k], states[k][r], e, rngs[k][r]);
        }
      }
    }
    prev = cp;

    std::vector<double> sum(K, 0.0);
    std::vector<double> lo(K, std::numeric_limits<double>::infinity());
    std::vector<double> hi(K, -std::numeric_limits<double>::infinity());
    std::vector<std::uint64_t> hits(K, 0);
    for (std::size_t r = 0; r < R; ++r) {
      for (std::size_t k = 0; k < K; ++k) {
        const std::vector<double>& v = states[k][r];
        const double w = weighted_inversion(Sequence(v));
        const bool sorted = std::is_sorted(v.begin(), v.end());
        traj += std::to_string(cp);
        traj += ',';
        traj += std::to_string(r);
        traj += ',';
        traj += to_string(cfg.kinds[k]);
        traj += ',';
        traj += format_double(w);
        traj += ',';
        traj += sorted ? '1' : '0';
        traj += '\n';
        sum[k] += w;
        lo[k] = std::min(lo[k], w);
        hi[k] = std::max(hi[k], w);
        hits[k] += sorted ? 1 : 0;
      }
    }
    for (std::size_t k = 0; k < K; ++k) {
      const double mean = sum[k] / static_cast<double>(R);
      const double rate = static_cast<double>(hits[k]) / static_cast<double>(R);
      summ += std::to_string(cp);
      summ += ',';
      summ += to_string(cfg.kinds[k]);
      summ += ',';
      summ += format_double(mean);
      summ += ',';
      summ += format_double(lo[k]);
      summ += ',';
      summ += format_double(hi[k]);
      summ += ',';
      summ += format_double(rate);
      summ += '\n';
      cp_mean[k].push_back(mean);
      cp_min[k].push_back(lo[k]);
      cp_max[k].push_back(hi[k]);
      cp_hit[k].push_back(rate);
    }
  }

  ordered_json j;
  {
    ordered_json c;
    std::vector<std::string> names;
    names.reserve(K);
    for (const ChainKind k : cfg.kinds) names.push_back(to_string(k));
    c["chains"] = names;
    if (cfg.generator.empty()) {
      c["generator"] = nullptr;
    } else {
      c["generator"] = cfg.generator;
    }
    c["input"] = cfg.input;
    c["lambda"] = e.lambda();
    if (cfg.noise > 0.0) {
      c["noise"] = cfg.noise;
    } else {
      c["noise"] = nullptr;
    }
    c["steps"] = cfg.steps;
    c["replicas"] = cfg.replicas;
    c["every"] = cfg.every;
    c["burn_in"] = cfg.burn_in;
    c["seed"] = cfg.seed;
    j["config"] = std::move(c);
  }
  const double threshold = cfg.burn_in * static_cast<double>(cfg.steps);
  ordered_json results;
  SimulateResult out;
  for (std::size_t k = 0; k < K; ++k) {
    double pw = 0.0, ph = 0.0;
    std::uint64_t count = 0;
    std::uint64_t from_step = checkpoints.back();
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
      if (static_cast<double>(checkpoints[i]) <= threshold) continue;
      if (count == 0) from_step = checkpoints[i];
      pw += cp_mean[k][i];
      ph += cp_hit[k][i];
      ++count;
    }
    ordered_json rk;
    rk["final_step"] = checkpoints.back();
    rk["final_mean_w"] = cp_mean[k].back();
    rk["final_min_w"] = cp_min[k].back();
    rk["final_max_w"] = cp_max[k].back();
    rk["final_hit_rate"] = cp_hit[k].back();
    ordered_json pb;
    pb["from_step"] = from_step;
    pb["checkpoints"] = count;
    pb["mean_w"] = pw / static_cast<double>(count);
    pb["mean_hit_rate"] = ph / static_cast<double>(count);
    rk["post_burn_in"] = std::move(pb);
    results[to_string(cfg.kinds[k])] = std::move(rk);
    out.final_mean_w.push_back(cp_mean[k].back());
  }
  j["results"] = std::move(results);

  out.trajectory_csv = dir / "trajectory.csv";
  out.summary_csv = dir / "summary.csv";
  out.run_json = dir / "run.json";
  write_file(out.trajectory_csv, traj);
  write_file(out.summary_csv, summ);
  write_file(out.run_json, j.dump(2) + "\n");
  return out;
}

ExactMethod exact_method_from_string(const std::string& s) {
  if (s == "solve") return ExactMethod::Solve;
  if (s == "tree") return ExactMethod::Tree;
  if (s == "gibbs") return ExactMethod::Gibbs;
  throw std::invalid_argument("unknown method '" + s +
                              "'; expected solve, tree, or gibbs");
}

std::filesystem::path cmd_exact(const Sequence& multiset, ChainKind kind,
                                const Energy& e, ExactMethod method,
                                std::size_t state_cap, const std::string& out_dir) {
  const StateSpace space = StateSpace::enumerate(multiset, state_cap);
  Distribution pi;
  switch (method) {
    case ExactMethod::Solve:
      pi = stationary_solve(TransitionMatrix(kind, e, space));
      break;
    case ExactMethod::Tree:
      pi = stationary_tree(TransitionMatrix(kind, e, space));
      break;
    case ExactMethod::Gibbs:
      pi = gibbs_distribution(space, e);
      break;
  }

  std::string csv = "state_index,sequence,w,pi\n";
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    const Sequence& s = space.state(idx);
    csv += std::to_string(idx);
    csv += ',';
    csv += join_values(s.values(), ';');
    csv += ',';
    csv += format_double(weighted_inversion(s));
    csv += ',';
    csv += format_double(pi.probs[idx]);
    csv += '\n';
  }

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const fs::path path = dir / "dist.csv";
  write_file(path, csv);
  return path;
}

MixingResult cmd_mixing(const Sequence& multiset, ChainKind kind, const Energy& e,
                        double eps, std::size_t state_cap,
                        const std::string& out_dir) {
  const StateSpace space = StateSpace::enumerate(multiset, state_cap);
  const TransitionMatrix P(kind, e, space);

  MixingResult res;
  res.t_mix = empirical_mixing_time(P, eps);

  std::set<double> distinct(multiset.values().begin(), multiset.values().end());
  if (distinct.size() == 2 && kind == ChainKind::Any) {
    const double a = *distinct.begin();
    const double b = *std::next(distinct.begin());
    int n_a = 0, n_b = 0;
    for (const double v : multiset.values()) (v == a ? n_a : n_b) += 1;
    try {
      const BinarySpec spec = BinarySpec::from_lambda(a, b, n_a, n_b, e);
      res.p = spec.error_probability();
      res.bound = mixing_bound_any(n_a + n_b, n_a, n_b, res.p, eps);
      res.has_bound = true;
    } catch (const std::domain_error&) {
      // p > 1/2 (lambda < 1): the coupling bound does not apply
    }
  }

  ordered_json j;
  j["chain"] = to_string(kind);
  j["multiset"] = multiset.values();
  j["lambda"] = e.lambda();
  j["eps"] = eps;
  j["states"] = space.size();
  j["t_mix"] = res.t_mix;
  if (res.has_bound) {
    j["p"] = res.p;
    j["bound"] = res.bound;
  } else {
    j["p"] = nullptr;
    j["bound"] = nullptr;
  }

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  res.json_path = dir / "mixing.json";
  write_file(res.json_path, j.dump(2) + "\n");
  return res;
}

std::filesystem::path cmd_outlier(int n, double p, double gap, double lambda_echo,
                                  const std::string& out_dir) {
  if (n < 2) throw std::invalid_argument("outlier: n must be >= 2");
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::invalid_argument("outlier: p must lie in (0, 1/2]");
  }
  if (!(gap > 0.0) || !std::isfinite(gap)) {
    throw std::invalid_argument("outlier: gap must be positive and finite");
  }

  ordered_json j;
  j["n"] = n;
  j["p"] = p;
  j["gap"] = gap;
  if (lambda_echo > 0.0) {
    j["lambda"] = lambda_echo;
  } else {
    j["lambda"] = nullptr;
  }
  ordered_json kinds;
  for (const ChainKind kind : {ChainKind::Adj, ChainKind::Any, ChainKind::AnyStar}) {
    std::vector<double> pi(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
      pi[static_cast<std::size_t>(i - 1)] = outlier_pi(kind, n, p, i);
    }
    ordered_json rk;
    rk["pi"] = pi;
    rk["expected_weight"] = outlier_expected_weight(kind, n, p, gap);
    rk["expected_weight_generic"] = outlier_expected_weight_generic(kind, n, p, gap);
    kinds[to_string(kind)] = std::move(rk);
  }
  j["kinds"] = std::move(kinds);
  if (p < 0.5) {
    const OutlierBounds ob = outlier_bounds(n, p, gap);
    ordered_json b;
    b["pi_adj_sorted"] = ob.pi_adj_sorted;
    b["pi_adj_lower"] = ob.pi_adj_lower;
    b["pi_adj_ok"] = ob.pi_adj_ok;
    b["pi_any_sorted"] = ob.pi_any_sorted;
    b["pi_any_upper"] = ob.pi_any_upper;
    b["pi_any_ok"] = ob.pi_any_ok;
    b["ew_adj"] = ob.ew_adj;
    b["ew_adj_upper"] = ob.ew_adj_upper;
    b["ew_adj_ok"] = ob.ew_adj_ok;
    b["ew_any"] = ob.ew_any;
    b["ew_any_lower"] = ob.ew_any_lower;
    b["ew_any_ok"] = ob.ew_any_ok;
    j["bounds"] = std::move(b);
  } else {
    j["bounds"] = nullptr;  // bounds need p strictly below 1/2
  }

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const fs::path path = dir / "outlier.json";
  write_file(path, j.dump(2) + "\n");
  return path;
}

}  // namespace noisysort
