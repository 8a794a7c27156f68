#include "noisysort/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

namespace noisysort {

double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu) {
  if (mu.size() != nu.size()) {
    throw std::invalid_argument("tv distance: length mismatch (" +
                                std::to_string(mu.size()) + " vs " +
                                std::to_string(nu.size()) + ")");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) acc += std::fabs(mu[i] - nu[i]);
  return 0.5 * acc;
}

double tv_distance(const Distribution& mu, const Distribution& nu) {
  return tv_distance(mu.probs, nu.probs);
}

std::uint64_t empirical_mixing_time(const TransitionMatrix& P, double eps,
                                    std::uint64_t step_cap) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("mixing time: requires 0 < eps < 1");
  }
  const std::size_t N = P.size();
  const Distribution pi = stationary_solve(P);

  // sparse rows; dense-by-state evolution per start
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(N);
  for (std::size_t r = 0; r < N; ++r) {
    for (std::size_t c = 0; c < N; ++c) {
      const double v = P(r, c);
      if (v != 0.0) rows[r].emplace_back(static_cast<std::uint32_t>(c), v);
    }
  }

  std::uint64_t worst_t = 0;
  std::vector<double> v(N), next(N);
  for (std::size_t start = 0; start < N; ++start) {
    std::fill(v.begin(), v.end(), 0.0);
    v[start] = 1.0;
    std::uint64_t t = 0;
    double tv = tv_distance(v, pi.probs);
    // TV to stationarity never increases, so the first crossing is final
    while (tv > eps) {
      if (t >= step_cap) {
        throw std::runtime_error("mixing time: still TV = " + std::to_string(tv) +
                                 " after the cap of " + std::to_string(step_cap) +
                                 " steps");
      }
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t r = 0; r < N; ++r) {
        const double mass = v[r];
        if (mass == 0.0) continue;
        for (const auto& [c, p] : rows[r]) next[c] += mass * p;
      }
      v.swap(next);
      ++t;
      tv = tv_distance(v, pi.probs);
    }
    worst_t = std::max(worst_t, t);
  }
  return worst_t;
}

std::uint64_t empirical_mixing_time(ChainKind kind, const Sequence& multiset,
                                    const Energy& e, double eps, std::size_t state_cap,
                                    std::uint64_t step_cap) {
  return empirical_mixing_time(build_matrix(kind, multiset, e, state_cap), eps,
                               step_cap);
}

CoupledPair make_coupled_pair(const Sequence& x, int i_star, int j_star) {
  const int n = static_cast<int>(x.size());
  if (!(1 <= i_star && i_star < j_star && j_star <= n)) {
    throw std::domain_error("coupled pair: requires 1 <= i* < j* <= n");
  }
  const std::size_t is = static_cast<std::size_t>(i_star - 1);
  const std::size_t js = static_cast<std::size_t>(j_star - 1);
  if (x[is] == x[js]) {
    throw std::domain_error("coupled pair: entries at i* and j* must differ");
  }
  return CoupledPair{x, x.with_swapped(is, js), i_star, j_star};
}

namespace {

void validate_coupled(const CoupledPair& pair, const BinarySpec& spec) {
  to_staircase(pair.x, spec);  // throws unless x is an arrangement of the BinarySpec multiset
  const int n = static_cast<int>(pair.x.size());
  if (!(1 <= pair.i_star && pair.i_star < pair.j_star && pair.j_star <= n)) {
    throw std::domain_error("coupled pair: requires 1 <= i* < j* <= n");
  }
  const std::size_t is = static_cast<std::size_t>(pair.i_star - 1);
  const std::size_t js = static_cast<std::size_t>(pair.j_star - 1);
  if (pair.x[is] == pair.x[js]) {
    throw std::domain_error("coupled pair: entries at i* and j* must differ");
  }
  if (!(pair.y == pair.x.with_swapped(is, js))) {
    throw std::domain_error("coupled pair: y must be x with i*, j* transposed");
  }
}

}  // namespace

std::vector<JointMove> coupled_joint_table(const CoupledPair& pair,
                                           const BinarySpec& spec) {
  validate_coupled(pair, spec);
  const Energy& e = spec.energy();
  const Sequence& x = pair.x;
  const Sequence& y = pair.y;
  const std::size_t is = static_cast<std::size_t>(pair.i_star - 1);
  const std::size_t js = static_cast<std::size_t>(pair.j_star - 1);
  const std::size_t n = x.size();
  const double pick = 2.0 / static_cast<double>(n * (n - 1));

  std::map<std::pair<std::vector<double>, std::vector<double>>, double> rows;
  const auto add = [&rows](const Sequence& xn, const Sequence& yn, double p) {
    if (p > 0.0) rows[{xn.values(), yn.values()}] += p;
  };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (i == is && j == js) {
        // matched proposal of the discrepancy pair: antithetic acceptance,
        // so exactly one chain moves and the pair always merges
        const double qx = swap_probability(x[is], x[js], e);
        const double qy = swap_probability(y[is], y[js], e);
        add(y, y, pick * qx);
        add(x, x, pick * qy);
        continue;
      }
      // y mirrors the proposal with i* and j* exchanging roles
      std::size_t yi = (i == is) ? js : (i == js) ? is : i;
      std::size_t yj = (j == is) ? js : (j == js) ? is : j;
      if (yi > yj) std::swap(yi, yj);
      const double qx = swap_probability(x[i], x[j], e);
      const double qy = swap_probability(y[yi], y[yj], e);
      const Sequence xn = x.with_swapped(i, j);
      const Sequence yn = y.with_swapped(yi, yj);
      const double joint = std::min(qx, qy);
      add(xn, yn, pick * joint);
      add(xn, y, pick * (qx - joint));
      add(x, yn, pick * (qy - joint));
      add(x, y, pick * (1.0 - std::max(qx, qy)));
    }
  }

  std::vector<JointMove> out;
  out.reserve(rows.size());
  for (const auto& [key, p] : rows) {
    out.push_back(JointMove{Sequence(key.first), Sequence(key.second), p});
  }
  return out;
}

std::pair<Sequence, Sequence> coupled_step_any(const CoupledPair& pair,
                                               const BinarySpec& spec, Rng& rng) {
  const auto table = coupled_joint_table(pair, spec);
  const double u = uniform_unit(rng);
  double acc = 0.0;
  for (const auto& row : table) {
    acc += row.prob;
    if (u < acc) return {row.x_next, row.y_next};
  }
  return {table.back().x_next, table.back().y_next};  // rounding dust
}

int rho_distance(const Sequence& x, const Sequence& y, ChainKind kind,
                 const StateSpace& space) {
  const std::size_t from = space.index_of(x);
  const std::size_t to = space.index_of(y);
  if (from == to) return 0;
  const std::size_t N = space.size();
  std::vector<int> dist(N, -1);
  dist[from] = 0;
  std::deque<std::size_t> queue{from};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    const Sequence& s = space.state(cur);
    const std::size_t n = s.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t jmax = (kind == ChainKind::Adj) ? i + 2 : n;
      for (std::size_t j = i + 1; j < jmax; ++j) {
        if (s[i] == s[j]) continue;
        const std::size_t nb = space.index_of(s.with_swapped(i, j));
        if (dist[nb] >= 0) continue;
        dist[nb] = dist[cur] + 1;
        if (nb == to) return dist[nb];
        queue.push_back(nb);
      }
    }
  }
  throw std::runtime_error("rho distance: states are not connected");
}

}  // namespace noisysort
