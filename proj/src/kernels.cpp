#include "noisysort/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace noisysort {

std::string to_string(ChainKind kind) {
  switch (kind) {
    case ChainKind::Adj: return "adj";
    case ChainKind::Any: return "any";
    case ChainKind::AnyStar: return "any-star";
  }
  throw std::logic_error("unreachable chain kind");
}

ChainKind chain_kind_from_string(const std::string& s) {
  if (s == "adj") return ChainKind::Adj;
  if (s == "any") return ChainKind::Any;
  if (s == "any-star") return ChainKind::AnyStar;
  throw std::invalid_argument("unknown chain kind '" + s +
                              "' (expected adj | any | any-star)");
}

namespace {

// Uniform unordered pair 0 <= i < j < n, decoded from a single index draw.
void pick_any_pair(Rng& rng, std::size_t n, std::size_t& i, std::size_t& j) {
  std::uint64_t k = uniform_index(rng, n * (n - 1) / 2);
  for (std::size_t a = 0;; ++a) {
    const std::uint64_t row = n - 1 - a;
    if (k < row) {
      i = a;
      j = a + 1 + static_cast<std::size_t>(k);
      return;
    }
    k -= row;
  }
}

double accept_probability(ChainKind kind, double a, double b, std::size_t dist,
                          const Energy& e) {
  double q = swap_probability(a, b, e);
  if (kind == ChainKind::AnyStar && dist > 1) {
    q = std::pow(q, static_cast<double>(dist));
  }
  return q;
}

}  // namespace

Move step_inplace(ChainKind kind, std::vector<double>& v, const Energy& e, Rng& rng) {
  const std::size_t n = v.size();
  if (n < 2) return Move{};
  std::size_t i, j;
  if (kind == ChainKind::Adj) {
    i = static_cast<std::size_t>(uniform_index(rng, n - 1));
    j = i + 1;
  } else {
    pick_any_pair(rng, n, i, j);
  }
  const double q = accept_probability(kind, v[i], v[j], j - i, e);
  const bool accepted = uniform_unit(rng) < q;
  if (accepted) std::swap(v[i], v[j]);
  return Move{static_cast<int>(i + 1), static_cast<int>(j + 1), accepted};
}

std::pair<Sequence, Move> step(ChainKind kind, const Sequence& s, const Energy& e,
                               Rng& rng) {
  std::vector<double> v = s.values();
  const Move mv = step_inplace(kind, v, e, rng);
  return {Sequence(std::move(v)), mv};
}

double transition_probability(ChainKind kind, const Sequence& s, const Sequence& t,
                              const Energy& e) {
  if (s.size() != t.size()) {
    throw std::domain_error("transition_probability: length mismatch");
  }
  {
    std::vector<double> ms = s.values(), mt = t.values();
    std::sort(ms.begin(), ms.end());
    std::sort(mt.begin(), mt.end());
    if (ms != mt) {
      throw std::domain_error("transition_probability: states are not arrangements "
                              "of the same multiset");
    }
  }
  const std::size_t n = s.size();
  if (n < 2) return 1.0;  // only the self-loop exists

  const double pick = (kind == ChainKind::Adj)
                          ? 1.0 / static_cast<double>(n - 1)
                          : 2.0 / static_cast<double>(n * (n - 1));
  const bool self = (s == t);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t jmax = (kind == ChainKind::Adj) ? i + 2 : n;
    for (std::size_t j = i + 1; j < jmax; ++j) {
      if (s[i] == s[j]) continue;  // proposal cannot change the state
      if (self) {
        // accumulate all mass that leaves s; the self-loop is the complement
        total += pick * accept_probability(kind, s[i], s[j], j - i, e);
      } else {
        bool match = true;
        for (std::size_t k = 0; k < n && match; ++k) {
          const double want = (k == i) ? s[j] : (k == j) ? s[i] : s[k];
          match = (t[k] == want);
        }
        if (match) total += pick * accept_probability(kind, s[i], s[j], j - i, e);
      }
    }
  }
  return self ? 1.0 - total : total;
}

}  // namespace noisysort
