#include "noisysort/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "noisysort/closedform.hpp"
#include "noisysort/mixing.hpp"

namespace noisysort {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kE = 2.718281828459045;
constexpr double kTreeLambdaMin = 0.006737946999085467;  // e^-5
constexpr double kTreeLambdaMax = 148.4131591025766;     // e^5
constexpr std::size_t kCouplingStateCap = 300;

struct Sink {
  std::vector<CheckResult> checks;
  bool required_pass = true;

  void add(std::string check, ordered_json params, double margin, bool pass,
           bool required) {
    if (required && !pass) required_pass = false;
    checks.push_back(
        CheckResult{std::move(check), std::move(params), margin, pass, required});
  }
};

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  k = std::min(k, n - k);
  std::uint64_t acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    if (acc > cap) return cap + 1;
  }
  return acc;
}

// Shortest-path distances in the transposition graph of the kind; all BFS
// sources, indices aligned with the state space.
std::vector<std::vector<int>> all_pairs_rho(const StateSpace& space, ChainKind kind) {
  const std::size_t N = space.size();
  std::vector<std::vector<std::size_t>> nbrs(N);
  for (std::size_t u = 0; u < N; ++u) {
    const Sequence& s = space.state(u);
    const std::size_t n = s.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t jmax = (kind == ChainKind::Adj) ? i + 2 : n;
      for (std::size_t j = i + 1; j < jmax; ++j) {
        if (s[i] == s[j]) continue;
        nbrs[u].push_back(space.index_of(s.with_swapped(i, j)));
      }
    }
  }
  std::vector<std::vector<int>> dist(N, std::vector<int>(N, -1));
  for (std::size_t src = 0; src < N; ++src) {
    dist[src][src] = 0;
    std::deque<std::size_t> queue{src};
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      for (const std::size_t nb : nbrs[cur]) {
        if (dist[src][nb] >= 0) continue;
        dist[src][nb] = dist[src][cur] + 1;
        queue.push_back(nb);
      }
    }
  }
  return dist;
}

void check_stationary_laws(Sink& sink, const VerifyConfig& cfg,
                           std::size_t state_cap) {
  std::vector<std::vector<double>> multisets;
  for (const auto& t : cfg.triples) multisets.push_back({t[0], t[1], t[2]});
  multisets.push_back({1, 2, 3, 4});
  multisets.push_back({1, 1, 2, 2});

  for (const double lambda : cfg.lambdas) {
    const Energy e = Energy::from_lambda(lambda);
    for (const auto& values : multisets) {
      const Sequence seq{values};
      const StateSpace space = StateSpace::enumerate(seq, state_cap);
      const Distribution gibbs = gibbs_distribution(space, e);
      for (const ChainKind kind : {ChainKind::Adj, ChainKind::AnyStar}) {
        const TransitionMatrix P(kind, e, space);
        const double tv = tv_distance(stationary_solve(P), gibbs);
        sink.add("gibbs-solve-tv",
                 {{"multiset", values}, {"lambda", lambda}, {"chain", to_string(kind)}},
                 1e-10 - tv, tv <= 1e-10, true);
      }
      if (lambda >= kTreeLambdaMin && lambda <= kTreeLambdaMax &&
          space.size() <= kTreeStateCap) {
        for (const ChainKind kind :
             {ChainKind::Adj, ChainKind::Any, ChainKind::AnyStar}) {
          const TransitionMatrix P(kind, e, space);
          const double tv = tv_distance(stationary_tree(P), stationary_solve(P));
          sink.add("tree-solve-tv",
                   {{"multiset", values},
                    {"lambda", lambda},
                    {"chain", to_string(kind)}},
                   1e-8 - tv, tv <= 1e-8, true);
        }
      }
    }
  }
}

void check_reversibility(Sink& sink, const VerifyConfig& cfg) {
  const Sequence abc{{1.0, 2.0, 3.0}};
  const StateSpace space = StateSpace::enumerate(abc);
  const std::vector<std::size_t> cycle{
      space.index_of(Sequence{{1.0, 2.0, 3.0}}),
      space.index_of(Sequence{{2.0, 1.0, 3.0}}),
      space.index_of(Sequence{{2.0, 3.0, 1.0}}),
      space.index_of(Sequence{{3.0, 2.0, 1.0}})};

  for (const double lambda : cfg.lambdas) {
    const Energy e = Energy::from_lambda(lambda);
    const TransitionMatrix P_any(ChainKind::Any, e, space);

    const double ratio = kolmogorov_cycle_ratio(P_any, cycle);
    const double expected = std::pow(lambda, -4.0);
    const double rel = std::fabs(ratio / expected - 1.0);
    sink.add("kolmogorov-witness",
             {{"multiset", {1, 2, 3}}, {"lambda", lambda}, {"expected", expected}},
             1e-12 - rel, rel <= 1e-12, true);

    if (std::fabs(lambda - 1.0) >= 0.1) {
      const double res = detailed_balance_residual(P_any, stationary_solve(P_any));
      sink.add("any-nonreversible", {{"multiset", {1, 2, 3}}, {"lambda", lambda}},
               res - 1e-6, res > 1e-6, true);
    }
    for (const ChainKind kind : {ChainKind::Adj, ChainKind::AnyStar}) {
      const TransitionMatrix P(kind, e, space);
      const double res = detailed_balance_residual(P, stationary_solve(P));
      sink.add("reversible-residual",
               {{"multiset", {1, 2, 3}}, {"lambda", lambda}, {"chain", to_string(kind)}},
               1e-10 - res, res <= 1e-10, true);
    }
  }
}

void check_adjacent_beats_any(Sink& sink, const VerifyConfig& cfg) {
  for (const double lambda : cfg.lambdas) {
    const Energy e = Energy::from_lambda(lambda);
    // Strict theorems on lambda in (1, e]; outside that window the rows are
    // informational (large lambda runs into the 1e-12 absolute slack,
    // lambda < 1 reverses the comparison outright).
    const bool required = lambda > 1.0 && lambda <= kE + 1e-9;
    for (const auto& t : cfg.triples) {
      const AdjBetterResult r = verify_adj_better(t[0], t[1], t[2], e);
      sink.add("adj-better",
               {{"triple", {t[0], t[1], t[2]}}, {"lambda", lambda}},
               r.pi_adj_sorted - r.pi_any_sorted - 1e-12, r.holds, required);

      const std::vector<RatioCheck> rcs = verify_ratio_lemma(t[0], t[1], t[2], e);
      bool all_hold = true;
      double margin = std::numeric_limits<double>::infinity();
      for (const RatioCheck& rc : rcs) {
        all_hold = all_hold && rc.holds;
        margin = std::min(margin, 1.0 - rc.ratio_adj / rc.ratio_any - 1e-12);
      }
      sink.add("ratio-lemma",
               {{"triple", {t[0], t[1], t[2]}},
                {"lambda", lambda},
                {"pairs", rcs.size()}},
               margin, all_hold, required);
    }
  }
}

void check_outlier(Sink& sink, const VerifyConfig& cfg) {
  for (const int n : cfg.outlier_ns) {
    for (const double p : cfg.ps) {
      for (const ChainKind kind : {ChainKind::Adj, ChainKind::Any}) {
        double sum = 0.0;
        for (int i = 1; i <= n; ++i) sum += outlier_pi(kind, n, p, i);
        sink.add("outlier-pi-sum",
                 {{"n", n}, {"p", p}, {"chain", to_string(kind)}},
                 1e-10 - std::fabs(sum - 1.0), std::fabs(sum - 1.0) <= 1e-10, true);

        const double ew = outlier_expected_weight(kind, n, p, 1.0);
        const double gen = outlier_expected_weight_generic(kind, n, p, 1.0);
        const double rel =
            std::fabs(ew - gen) / std::max({std::fabs(ew), std::fabs(gen), 1e-300});
        sink.add("outlier-ew-generic",
                 {{"n", n}, {"p", p}, {"chain", to_string(kind)}}, 1e-10 - rel,
                 rel <= 1e-10, true);
      }

      if (n <= 8) {
        const BinarySpec spec =
            BinarySpec::from_error_probability(1.0, 2.0, n - 1, 1, p);
        const StateSpace space = StateSpace::enumerate(spec.sorted_sequence());
        for (const ChainKind kind : {ChainKind::Adj, ChainKind::Any}) {
          const Distribution pi =
              stationary_solve(TransitionMatrix(kind, spec.energy(), space));
          double worst = 0.0;
          for (int i = 1; i <= n; ++i) {
            std::vector<double> v(static_cast<std::size_t>(n), 1.0);
            v[static_cast<std::size_t>(i - 1)] = 2.0;
            const double exact = pi.probs[space.index_of(Sequence{v})];
            worst = std::max(worst, std::fabs(exact - outlier_pi(kind, n, p, i)));
          }
          sink.add("outlier-pi-exact",
                   {{"n", n}, {"p", p}, {"chain", to_string(kind)}}, 1e-10 - worst,
                   worst <= 1e-10, true);
        }
      }

      if (p < 0.5) {
        const OutlierBounds ob = outlier_bounds(n, p, 1.0);
        sink.add("outlier-bound-pi-adj", {{"n", n}, {"p", p}},
                 ob.pi_adj_sorted - ob.pi_adj_lower, ob.pi_adj_ok, true);
        sink.add("outlier-bound-pi-any", {{"n", n}, {"p", p}},
                 ob.pi_any_upper - ob.pi_any_sorted, ob.pi_any_ok, true);
        sink.add("outlier-bound-ew-adj", {{"n", n}, {"p", p}},
                 ob.ew_adj_upper - ob.ew_adj, ob.ew_adj_ok, true);
        // a theorem only for large n and moderate p; informational elsewhere
        const bool required_any = n >= 30 && p <= 0.25 + 1e-12;
        sink.add("outlier-bound-ew-any", {{"n", n}, {"p", p}},
                 ob.ew_any - ob.ew_any_lower, ob.ew_any_ok, required_any);
      }
    }
  }
}

void check_coupling(Sink& sink, const VerifyConfig& cfg) {
  for (const auto& [n_a, n_b] : cfg.binary_sizes) {
    const int n = n_a + n_b;
    for (const double p : cfg.ps) {
      const BinarySpec spec = BinarySpec::from_error_probability(1.0, 2.0, n_a, n_b, p);
      const Energy& e = spec.energy();
      const StateSpace space = StateSpace::enumerate(spec.sorted_sequence());
      const std::size_t N = space.size();
      const TransitionMatrix P(ChainKind::Any, e, space);
      const std::vector<std::vector<int>> rho = all_pairs_rho(space, ChainKind::Any);
      const double beta = coupling_beta_bound(n, p).tight;

      double worst_sum = 0.0, worst_mx = 0.0, worst_my = 0.0;
      double worst_expected_rho = 0.0;
      std::size_t pairs = 0;

      std::vector<double> marg_x(N), marg_y(N);
      for (std::size_t xi = 0; xi < N; ++xi) {
        const Sequence& x = space.state(xi);
        for (int i = 1; i <= n; ++i) {
          for (int j = i + 1; j <= n; ++j) {
            if (x[static_cast<std::size_t>(i - 1)] ==
                x[static_cast<std::size_t>(j - 1)]) {
              continue;
            }
            ++pairs;
            const CoupledPair cp = make_coupled_pair(x, i, j);
            const std::size_t yi = space.index_of(cp.y);
            const auto table = coupled_joint_table(cp, spec);

            double total = 0.0, expected_rho = 0.0;
            std::fill(marg_x.begin(), marg_x.end(), 0.0);
            std::fill(marg_y.begin(), marg_y.end(), 0.0);
            for (const JointMove& row : table) {
              total += row.prob;
              const std::size_t xn = space.index_of(row.x_next);
              const std::size_t yn = space.index_of(row.y_next);
              marg_x[xn] += row.prob;
              marg_y[yn] += row.prob;
              expected_rho += row.prob * static_cast<double>(rho[xn][yn]);
            }
            worst_sum = std::max(worst_sum, std::fabs(total - 1.0));
            for (std::size_t t = 0; t < N; ++t) {
              worst_mx = std::max(worst_mx, std::fabs(marg_x[t] - P(xi, t)));
              worst_my = std::max(worst_my, std::fabs(marg_y[t] - P(yi, t)));
            }
            worst_expected_rho = std::max(worst_expected_rho, expected_rho);
          }
        }
      }

      const ordered_json params{
          {"n_a", n_a}, {"n_b", n_b}, {"p", p}, {"pairs", pairs}};
      sink.add("coupling-rows-sum", params, 1e-12 - worst_sum, worst_sum <= 1e-12,
               true);
      sink.add("coupling-marginal-x", params, 1e-12 - worst_mx, worst_mx <= 1e-12,
               true);
      sink.add("coupling-marginal-y", params, 1e-12 - worst_my, worst_my <= 1e-12,
               true);
      ordered_json cparams = params;
      cparams["beta"] = beta;
      sink.add("coupling-contraction", cparams, beta - worst_expected_rho,
               worst_expected_rho <= beta + 1e-12, true);
    }
  }
}

void check_binary_mixing(Sink& sink, const VerifyConfig& cfg) {
  for (const auto& [n_a, n_b] : cfg.binary_sizes) {
    const int n = n_a + n_b;
    const BinarySpec spec = BinarySpec::from_error_probability(1.0, 2.0, n_a, n_b, 0.3);
    const StateSpace space = StateSpace::enumerate(spec.sorted_sequence());

    if (n <= 8) {
      const std::vector<std::vector<int>> rho = all_pairs_rho(space, ChainKind::Any);
      int diameter = 0;
      for (const auto& row : rho) {
        for (const int d : row) diameter = std::max(diameter, d);
      }
      const int expected = std::min(n_a, n_b);
      sink.add("binary-diameter", {{"n_a", n_a}, {"n_b", n_b}, {"expected", expected}},
               static_cast<double>(expected - diameter), diameter == expected, true);
    }

    const std::uint64_t t =
        empirical_mixing_time(TransitionMatrix(ChainKind::Any, spec.energy(), space),
                              0.25);
    const double bound = mixing_bound_any(n, n_a, n_b, 0.3, 0.25);
    sink.add("mixing-bound",
             {{"n_a", n_a}, {"n_b", n_b}, {"p", 0.3}, {"eps", 0.25}, {"t_mix", t}},
             bound - static_cast<double>(t), static_cast<double>(t) <= bound, true);
  }
}

void validate_verify_config(const VerifyConfig& cfg) {
  for (const auto& t : cfg.triples) {
    if (!(std::isfinite(t[0]) && std::isfinite(t[1]) && std::isfinite(t[2]))) {
      throw std::invalid_argument("verify: triples must be finite numbers");
    }
    if (!(t[0] <= t[1] && t[1] <= t[2])) {
      throw std::invalid_argument("verify: triples must be ascending a <= b <= c");
    }
    if (t[0] == t[2]) {
      throw std::invalid_argument("verify: triple with all elements equal has no "
                                  "strict comparison content");
    }
  }
  for (const double lambda : cfg.lambdas) {
    if (!(std::isfinite(lambda) && lambda > 0.0)) {
      throw std::invalid_argument("verify: lambdas must be finite and positive");
    }
    if (lambda == 1.0) {
      throw std::invalid_argument(
          "verify: lambda = 1 is the fair coin; every stationary law is uniform "
          "and the strict inequality checks are void. Drop it from the grid.");
    }
  }
  for (const int n : cfg.outlier_ns) {
    if (n < 2) throw std::invalid_argument("verify: outlier_ns entries must be >= 2");
    if (n > 1000000) {
      throw std::invalid_argument("verify: outlier_ns entries above 1e6 are not "
                                  "supported");
    }
  }
  for (const double p : cfg.ps) {
    if (!(p > 0.0 && p <= 0.5)) {
      throw std::invalid_argument("verify: ps entries must lie in (0, 1/2]");
    }
  }
  for (const auto& [n_a, n_b] : cfg.binary_sizes) {
    if (n_a < 1 || n_b < 1) {
      throw std::invalid_argument("verify: binary sizes need n_a >= 1 and n_b >= 1");
    }
    if (binomial_capped(n_a + n_b, n_a, kCouplingStateCap) > kCouplingStateCap) {
      throw std::invalid_argument(
          "verify: binary size " + std::to_string(n_a) + "+" + std::to_string(n_b) +
          " exceeds " + std::to_string(kCouplingStateCap) +
          " arrangements; the exhaustive coupling checks need a smaller space");
    }
  }
}

}  // namespace

VerifyConfig default_verify_config() {
  VerifyConfig cfg;
  cfg.triples = {{1.0, 2.0, 3.0}, {0.0, 1.0, 4.0}, {1.0, 1.0, 2.0}, {2.0, 3.0, 4.0}};
  cfg.lambdas = {0.7, 1.2, kE};
  cfg.outlier_ns = {2, 5, 8, 30, 200};
  cfg.ps = {0.1, 0.25, 0.4};
  cfg.binary_sizes = {{2, 2}, {3, 3}, {2, 4}};
  return cfg;
}

VerifyConfig parse_verify_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("verify: config is not valid JSON: ") +
                                ex.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("verify: config must be a JSON object");
  }

  VerifyConfig cfg = default_verify_config();
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "triples") {
        cfg.triples.clear();
        for (const auto& t : value) {
          if (!t.is_array() || t.size() != 3) {
            throw std::invalid_argument(
                "verify: each triple must be an array of three numbers");
          }
          cfg.triples.push_back({t[0].get<double>(), t[1].get<double>(),
                                 t[2].get<double>()});
        }
      } else if (key == "lambdas") {
        cfg.lambdas = value.get<std::vector<double>>();
      } else if (key == "outlier_ns") {
        cfg.outlier_ns = value.get<std::vector<int>>();
      } else if (key == "ps") {
        cfg.ps = value.get<std::vector<double>>();
      } else if (key == "binary_sizes") {
        cfg.binary_sizes.clear();
        for (const auto& s : value) {
          if (!s.is_array() || s.size() != 2) {
            throw std::invalid_argument(
                "verify: each binary size must be an array [n_a, n_b]");
          }
          cfg.binary_sizes.emplace_back(s[0].get<int>(), s[1].get<int>());
        }
      } else {
        throw std::invalid_argument("verify: unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("verify: malformed config value: ") +
                                ex.what());
  }
  validate_verify_config(cfg);
  return cfg;
}

VerifyReport run_verify(const VerifyConfig& cfg, std::size_t state_cap) {
  validate_verify_config(cfg);
  Sink sink;
  check_stationary_laws(sink, cfg, state_cap);
  check_reversibility(sink, cfg);
  check_adjacent_beats_any(sink, cfg);
  check_outlier(sink, cfg);
  check_coupling(sink, cfg);
  check_binary_mixing(sink, cfg);
  return VerifyReport{std::move(sink.checks), sink.required_pass};
}

VerifyReport cmd_verify(const VerifyConfig& cfg, std::size_t state_cap,
                        const std::string& out_dir,
                        std::filesystem::path* report_path) {
  VerifyReport report = run_verify(cfg, state_cap);

  ordered_json arr = ordered_json::array();
  for (const CheckResult& c : report.checks) {
    ordered_json row;
    row["check"] = c.check;
    row["params"] = c.params;
    row["margin"] = c.margin;
    row["pass"] = c.pass;
    row["required"] = c.required;
    arr.push_back(std::move(row));
  }

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / "report.json";
  std::ofstream out(path, std::ios::binary);
  const std::string text = arr.dump(2) + "\n";
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  if (report_path != nullptr) *report_path = path;
  return report;
}

}  // namespace noisysort
