#include "noisysort/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace noisysort {

namespace {

// Number of distinct arrangements, with early bail once it exceeds the cap.
long double count_arrangements(std::vector<double> sorted, std::size_t cap) {
  const std::size_t n = sorted.size();
  long double count = 1.0L;
  std::size_t i = 0;
  std::size_t placed = 0;
  while (i < n) {
    std::size_t run = 1;
    while (i + run < n && sorted[i + run] == sorted[i]) ++run;
    // multiply by C(placed + run, run) one factor at a time
    for (std::size_t k = 1; k <= run; ++k) {
      count = count * static_cast<long double>(placed + k) / static_cast<long double>(k);
      if (count > 4.0L * static_cast<long double>(cap) + 16.0L && placed + k < n) {
        // keep going only while the bound still matters; the value can only grow
        return count;
      }
    }
    placed += run;
    i += run;
  }
  return count;
}

void lu_partial_pivot_solve(std::vector<double>& a, std::vector<double>& b,
                            std::size_t n) {
  // in-place LU with partial pivoting on the dense row-major system a x = b
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::fabs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::fabs(a[r * n + col]);
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best == 0.0) {
      throw std::runtime_error("stationary solve: singular balance system");
    }
    if (piv != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    const double d = a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / d;
      if (f == 0.0) continue;
      a[r * n + col] = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= a[r * n + c] * b[c];
    b[r] = s / a[r * n + r];
  }
}

double det_with_partial_pivot(std::vector<double>& a, std::size_t n) {
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::fabs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::fabs(a[r * n + col]);
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t c = col; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      det = -det;
    }
    const double d = a[col * n + col];
    det *= d;
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return det;
}

}  // namespace

StateSpace StateSpace::enumerate(const Sequence& multiset, std::size_t cap) {
  std::vector<double> v = multiset.values();
  std::sort(v.begin(), v.end());
  const long double count = count_arrangements(v, cap);
  if (count > static_cast<long double>(cap)) {
    throw std::length_error("state space has " + std::to_string(static_cast<double>(count)) +
                            " arrangements, above the cap of " + std::to_string(cap));
  }
  std::vector<Sequence> states;
  states.reserve(static_cast<std::size_t>(count));
  do {
    states.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return StateSpace(std::move(states));
}

std::size_t StateSpace::index_of(const Sequence& s) const {
  const auto it = std::lower_bound(states_.begin(), states_.end(), s, lex_less);
  if (it == states_.end() || !(*it == s)) {
    throw std::invalid_argument("state is not an arrangement in this space");
  }
  return static_cast<std::size_t>(it - states_.begin());
}

TransitionMatrix::TransitionMatrix(ChainKind kind, const Energy& e, StateSpace space)
    : kind_(kind), energy_(e), space_(std::move(space)) {
  const std::size_t N = space_.size();
  p_.assign(N * N, 0.0);
  for (std::size_t row = 0; row < N; ++row) {
    const Sequence& s = space_.state(row);
    const std::size_t n = s.size();
    double off = 0.0;
    if (n >= 2) {
      const double pick = (kind_ == ChainKind::Adj)
                              ? 1.0 / static_cast<double>(n - 1)
                              : 2.0 / static_cast<double>(n * (n - 1));
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t jmax = (kind_ == ChainKind::Adj) ? i + 2 : n;
        for (std::size_t j = i + 1; j < jmax; ++j) {
          if (s[i] == s[j]) continue;
          double q = swap_probability(s[i], s[j], energy_);
          if (kind_ == ChainKind::AnyStar && j - i > 1) {
            q = std::pow(q, static_cast<double>(j - i));
          }
          const std::size_t to = space_.index_of(s.with_swapped(i, j));
          const double mass = pick * q;
          p_[row * N + to] += mass;
          off += mass;
        }
      }
    }
    p_[row * N + row] = 1.0 - off;
  }
}

TransitionMatrix build_matrix(ChainKind kind, const Sequence& multiset, const Energy& e,
                              std::size_t cap) {
  return TransitionMatrix(kind, e, StateSpace::enumerate(multiset, cap));
}

Distribution stationary_solve(const TransitionMatrix& P) {
  const std::size_t N = P.size();
  std::vector<double> a(N * N);
  std::vector<double> b(N, 0.0);
  // balance equations (P^T - I) pi = 0, last one replaced by sum(pi) = 1
  for (std::size_t r = 0; r < N; ++r) {
    for (std::size_t c = 0; c < N; ++c) {
      a[r * N + c] = P(c, r) - (r == c ? 1.0 : 0.0);
    }
  }
  for (std::size_t c = 0; c < N; ++c) a[(N - 1) * N + c] = 1.0;
  b[N - 1] = 1.0;
  lu_partial_pivot_solve(a, b, N);

  double sum = 0.0;
  for (double& x : b) {
    if (x < 0.0) {
      if (x < -1e-12) {
        throw std::runtime_error("stationary solve: negative probability " +
                                 std::to_string(x));
      }
      x = 0.0;
    }
    sum += x;
  }
  for (double& x : b) x /= sum;

  double residual = 0.0;
  for (std::size_t c = 0; c < N; ++c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < N; ++r) acc += b[r] * P(r, c);
    residual = std::max(residual, std::fabs(acc - b[c]));
  }
  if (!(residual <= 1e-10)) {
    throw std::runtime_error("stationary solve: residual " + std::to_string(residual) +
                             " exceeds 1e-10");
  }
  return Distribution{std::move(b)};
}

Distribution gibbs_distribution(const StateSpace& space, const Energy& e) {
  const std::size_t N = space.size();
  std::vector<double> x(N);
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < N; ++i) {
    x[i] = -2.0 * weighted_inversion(space.state(i)) * e.log_lambda();
    m = std::max(m, x[i]);
  }
  double z = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    x[i] = std::exp(x[i] - m);
    z += x[i];
  }
  for (double& v : x) v /= z;
  return Distribution{std::move(x)};
}

double tree_weight_minor(const TransitionMatrix& P, std::size_t root) {
  const std::size_t N = P.size();
  if (N == 1) return 1.0;  // the empty tree
  const std::size_t M = N - 1;
  std::vector<double> L(M * M, 0.0);
  for (std::size_t u = 0, ru = 0; u < N; ++u) {
    if (u == root) continue;
    double out = 0.0;
    for (std::size_t v = 0, rv = 0; v < N; ++v) {
      const double w = (u == v) ? 0.0 : P(u, v);
      out += w;
      if (v == root) continue;
      if (u != v) L[ru * M + rv] = -w;
      ++rv;
    }
    L[ru * M + ru] = out;
    ++ru;
  }
  return det_with_partial_pivot(L, M);
}

double arborescence_bruteforce(const TransitionMatrix& P, std::size_t root) {
  const std::size_t N = P.size();
  if (N > kBruteForceStateCap) {
    throw std::length_error("arborescence enumeration limited to " +
                            std::to_string(kBruteForceStateCap) + " states, got " +
                            std::to_string(N));
  }
  if (N == 1) return 1.0;
  // candidate out-edges per non-root node
  std::vector<std::size_t> nodes;
  for (std::size_t u = 0; u < N; ++u) {
    if (u != root) nodes.push_back(u);
  }
  std::vector<std::vector<std::size_t>> targets(N);
  for (const std::size_t u : nodes) {
    for (std::size_t v = 0; v < N; ++v) {
      if (v != u && P(u, v) > 0.0) targets[u].push_back(v);
    }
    if (targets[u].empty()) return 0.0;  // u can never reach the root
  }
  std::vector<std::size_t> choice(nodes.size(), 0);
  std::vector<std::size_t> parent(N, N);
  double total = 0.0;
  for (;;) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      parent[nodes[k]] = targets[nodes[k]][choice[k]];
    }
    // a parent assignment is an in-arborescence iff every node reaches the root
    bool ok = true;
    for (const std::size_t start : nodes) {
      std::size_t cur = start, hops = 0;
      while (cur != root && hops <= N) {
        cur = parent[cur];
        ++hops;
      }
      if (cur != root) {
        ok = false;
        break;
      }
    }
    if (ok) {
      double prod = 1.0;
      for (const std::size_t u : nodes) prod *= P(u, parent[u]);
      total += prod;
    }
    // odometer over the choice vector
    std::size_t k = 0;
    while (k < nodes.size()) {
      if (++choice[k] < targets[nodes[k]].size()) break;
      choice[k] = 0;
      ++k;
    }
    if (k == nodes.size()) break;
  }
  return total;
}

Distribution stationary_tree(const TransitionMatrix& P) {
  const std::size_t N = P.size();
  if (N > kTreeStateCap) {
    throw std::length_error("tree method limited to " + std::to_string(kTreeStateCap) +
                            " states, got " + std::to_string(N) +
                            "; use stationary_solve");
  }
  const double lam = P.energy().lambda();
  if (lam < std::exp(-5.0) || lam > std::exp(5.0)) {
    throw std::domain_error("tree method guarded to lambda within [e^-5, e^5]; "
                            "use stationary_solve");
  }
  std::vector<double> w(N);
  double z = 0.0;
  for (std::size_t root = 0; root < N; ++root) {
    double v = tree_weight_minor(P, root);
    if (v < 0.0) v = 0.0;  // clip elimination noise
    w[root] = v;
    z += v;
  }
  if (!(z > 0.0)) {
    throw std::runtime_error("tree method: total arborescence weight is zero");
  }
  for (double& v : w) v /= z;
  return Distribution{std::move(w)};
}

double detailed_balance_residual(const TransitionMatrix& P, const Distribution& pi) {
  const std::size_t N = P.size();
  if (pi.probs.size() != N) {
    throw std::invalid_argument("detailed balance: distribution size mismatch");
  }
  double worst = 0.0;
  for (std::size_t s = 0; s < N; ++s) {
    for (std::size_t t = s + 1; t < N; ++t) {
      worst = std::max(worst, std::fabs(pi.probs[s] * P(s, t) - pi.probs[t] * P(t, s)));
    }
  }
  return worst;
}

double kolmogorov_cycle_ratio(const TransitionMatrix& P,
                              const std::vector<std::size_t>& cycle) {
  std::vector<std::size_t> c = cycle;
  if (c.size() >= 2 && c.front() == c.back()) c.pop_back();
  if (c.size() < 3) {
    throw std::domain_error("cycle ratio needs at least three distinct states");
  }
  const std::size_t N = P.size();
  for (const std::size_t idx : c) {
    if (idx >= N) throw std::invalid_argument("cycle index out of range");
  }
  double fwd = 1.0, rev = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const std::size_t u = c[k];
    const std::size_t v = c[(k + 1) % c.size()];
    const double f = P(u, v), r = P(v, u);
    if (f <= 0.0 || r <= 0.0) {
      throw std::domain_error("cycle has a zero-probability edge between states " +
                              std::to_string(u) + " and " + std::to_string(v));
    }
    fwd *= f;
    rev *= r;
  }
  return fwd / rev;
}

namespace {

void require_not_unit_lambda(const Energy& e, const char* what) {
  if (e.lambda() == 1.0) {
    throw std::domain_error(std::string(what) +
                            ": lambda = 1 makes both laws uniform (equality case)");
  }
}

}  // namespace

AdjBetterResult verify_adj_better(double a, double b, double c, const Energy& e) {
  if (!(a <= b && b <= c)) {
    throw std::domain_error("verify_adj_better: elements must satisfy a <= b <= c");
  }
  if (a == b && b == c) {
    throw std::domain_error("verify_adj_better: elements must not all be equal");
  }
  require_not_unit_lambda(e, "verify_adj_better");
  const Sequence multiset({a, b, c});
  const auto space = StateSpace::enumerate(multiset);
  const std::size_t sorted_idx = space.index_of(sorted_of(multiset));
  const auto pi_adj = stationary_solve(TransitionMatrix(ChainKind::Adj, e, space));
  const auto pi_any = stationary_solve(TransitionMatrix(ChainKind::Any, e, space));
  AdjBetterResult out;
  out.pi_adj_sorted = pi_adj.probs[sorted_idx];
  out.pi_any_sorted = pi_any.probs[sorted_idx];
  out.holds = out.pi_adj_sorted > out.pi_any_sorted + 1e-12;
  return out;
}

std::vector<RatioCheck> verify_ratio_lemma(const Sequence& multiset, const Energy& e,
                                           std::size_t cap) {
  require_not_unit_lambda(e, "verify_ratio_lemma");
  const auto space = StateSpace::enumerate(multiset, cap);
  const auto pi_adj = stationary_solve(TransitionMatrix(ChainKind::Adj, e, space));
  const auto pi_any = stationary_solve(TransitionMatrix(ChainKind::Any, e, space));
  std::vector<RatioCheck> out;
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    const Sequence& s = space.state(idx);
    const double ws = weighted_inversion(s);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == s[i + 1]) continue;
      const Sequence t = s.with_swapped(i, i + 1);
      if (!(weighted_inversion(t) > ws)) continue;
      const std::size_t tdx = space.index_of(t);
      RatioCheck rc;
      rc.from = idx;
      rc.to = tdx;
      rc.ratio_adj = pi_adj.probs[tdx] / pi_adj.probs[idx];
      rc.ratio_any = pi_any.probs[tdx] / pi_any.probs[idx];
      // strict comparison, cross-multiplied so tiny ratios keep full precision
      rc.holds = pi_adj.probs[tdx] * pi_any.probs[idx] <
                 pi_any.probs[tdx] * pi_adj.probs[idx] * (1.0 - 1e-12);
      out.push_back(rc);
    }
  }
  return out;
}

std::vector<RatioCheck> verify_ratio_lemma(double a, double b, double c,
                                           const Energy& e) {
  return verify_ratio_lemma(Sequence({a, b, c}), e);
}

}  // namespace noisysort
