#include "noisysort/closedform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace noisysort {

BinarySpec::BinarySpec(double a, double b, int n_a, int n_b, const Energy& e)
    : a_(a), b_(b), n_a_(n_a), n_b_(n_b), energy_(e) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw std::domain_error("binary spec: requires finite a < b");
  }
  if (n_a < 1 || n_b < 1) {
    throw std::domain_error("binary spec: requires n_a >= 1 and n_b >= 1");
  }
}

BinarySpec BinarySpec::from_lambda(double a, double b, int n_a, int n_b,
                                   const Energy& e) {
  return BinarySpec(a, b, n_a, n_b, e);
}

BinarySpec BinarySpec::from_error_probability(double a, double b, int n_a, int n_b,
                                              double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("binary spec: error probability must lie in (0, 1), got " +
                            std::to_string(p));
  }
  const double lambda = std::pow((1.0 - p) / p, 1.0 / (2.0 * (b - a)));
  return BinarySpec(a, b, n_a, n_b, Energy::from_lambda(lambda));
}

double BinarySpec::error_probability() const {
  return 1.0 - swap_probability(b_, a_, energy_);
}

Sequence BinarySpec::sorted_sequence() const {
  std::vector<double> v(static_cast<std::size_t>(n()), a_);
  for (int i = n_a_; i < n(); ++i) v[static_cast<std::size_t>(i)] = b_;
  return Sequence(std::move(v));
}

Sequence BinarySpec::reversed_sequence() const {
  std::vector<double> v(static_cast<std::size_t>(n()), b_);
  for (int i = n_b_; i < n(); ++i) v[static_cast<std::size_t>(i)] = a_;
  return Sequence(std::move(v));
}

Staircase to_staircase(const Sequence& s, const BinarySpec& spec) {
  int seen_a = 0, seen_b = 0;
  Staircase st;
  st.n_a = spec.n_a();
  st.v.reserve(static_cast<std::size_t>(spec.n_b()));
  // walk backwards so each b sees the count of a's after it
  std::vector<int> rev;
  int after = 0;
  for (std::size_t k = s.size(); k-- > 0;) {
    if (s[k] == spec.a()) {
      ++after;
      ++seen_a;
    } else if (s[k] == spec.b()) {
      rev.push_back(after);
      ++seen_b;
    } else {
      throw std::domain_error("staircase: sequence contains a value that is neither a nor b");
    }
  }
  if (seen_a != spec.n_a() || seen_b != spec.n_b()) {
    throw std::domain_error("staircase: sequence is not an arrangement of the BinarySpec multiset");
  }
  st.v.assign(rev.rbegin(), rev.rend());
  return st;
}

Sequence from_staircase(const Staircase& st, const BinarySpec& spec) {
  if (static_cast<int>(st.v.size()) != spec.n_b() || st.n_a != spec.n_a()) {
    throw std::domain_error("staircase: shape does not match the BinarySpec");
  }
  int prev = spec.n_a();
  for (const int x : st.v) {
    if (x < 0 || x > spec.n_a() || x > prev) {
      throw std::domain_error("staircase: entries must be non-increasing within [0, n_a]");
    }
    prev = x;
  }
  std::vector<double> out(static_cast<std::size_t>(spec.n()), spec.a());
  for (int i = 0; i < spec.n_b(); ++i) {
    // the (i+1)-th b has (n_a - v_i) a's and i b's before it
    const int pos = (spec.n_a() - st.v[static_cast<std::size_t>(i)]) + i;
    out[static_cast<std::size_t>(pos)] = spec.b();
  }
  return Sequence(std::move(out));
}

BetaBound coupling_beta_bound(int n, double p) {
  if (n < 2) throw std::domain_error("coupling bound: requires n >= 2");
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::domain_error("coupling bound: requires 0 < p <= 1/2, got " +
                            std::to_string(p));
  }
  const double nn = static_cast<double>(n);
  BetaBound out;
  out.tight = 1.0 - 2.0 * (1.0 + p * (nn - 2.0)) / (nn * (nn - 1.0));
  out.loose = 1.0 - 2.0 * p / (nn - 1.0);
  return out;
}

double mixing_bound_any(int n, int n_a, int n_b, double p, double eps) {
  if (n_a < 1 || n_b < 1 || n != n_a + n_b) {
    throw std::domain_error("mixing bound: requires n = n_a + n_b with both parts >= 1");
  }
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::domain_error("mixing bound: requires 0 < p <= 1/2");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("mixing bound: requires 0 < eps < 1");
  }
  const double n_min = static_cast<double>(n_a < n_b ? n_a : n_b);
  return static_cast<double>(n) * (std::log(n_min) - std::log(eps)) / (2.0 * p);
}

namespace {

void check_outlier_domain(int n, double p, int i) {
  if (n < 1) throw std::domain_error("outlier law: requires n >= 1");
  if (i < 1 || i > n) {
    throw std::domain_error("outlier law: position must satisfy 1 <= i <= n");
  }
  if (!(p > 0.0 && p <= 0.5)) {
    throw std::domain_error("outlier law: requires 0 < p <= 1/2, got " +
                            std::to_string(p));
  }
}

}  // namespace

double outlier_pi(ChainKind kind, int n, double p, int i) {
  check_outlier_domain(n, p, i);
  const double nn = static_cast<double>(n);
  const double ii = static_cast<double>(i);
  if (kind == ChainKind::Any) {
    const double q = 1.0 - p;
    const double d1 = (nn - ii + 1.0) * q + (ii - 1.0) * p;
    const double d2 = (nn - ii) * q + ii * p;
    return nn * p * q / (d1 * d2);
  }
  // adjacent and distance-powered chains share the geometric law; written in
  // terms of r = p/(1-p) so large n stays in range
  if (p == 0.5) return 1.0 / nn;
  const double r = p / (1.0 - p);
  return std::pow(r, nn - ii) * (1.0 - 2.0 * p) /
         ((1.0 - p) * (1.0 - std::pow(r, nn)));
}

double outlier_expected_weight(ChainKind kind, int n, double p, double gap) {
  check_outlier_domain(n, p, 1);
  if (!(gap > 0.0) || !std::isfinite(gap)) {
    throw std::domain_error("outlier law: gap must be finite and > 0");
  }
  const double nn = static_cast<double>(n);
  if (kind == ChainKind::Any) {
    const double q = 1.0 - p;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ii = static_cast<double>(i);
      const double d1 = (ii + 1.0) * q + (nn - ii - 1.0) * p;
      const double d2 = ii * q + (nn - ii) * p;
      sum += ii * q / (d1 * d2);
    }
    return nn * gap * p * sum;
  }
  if (p == 0.5) return gap * (nn - 1.0) / 2.0;  // uniform limit
  const double r = p / (1.0 - p);
  return nn * gap * p *
         (1.0 / (nn * (1.0 - 2.0 * p)) -
          std::pow(r, nn - 1.0) / ((1.0 - p) * (1.0 - std::pow(r, nn))));
}

double outlier_expected_weight_generic(ChainKind kind, int n, double p, double gap) {
  check_outlier_domain(n, p, 1);
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    sum += static_cast<double>(n - i) * gap * outlier_pi(kind, n, p, i);
  }
  return sum;
}

OutlierBounds outlier_bounds(int n, double p, double gap) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::domain_error("outlier bounds: requires 0 < p < 1/2");
  }
  // The adjacent-chain inequalities are strict with slack of order r^(n-1),
  // r = p/(1-p), which underflows past double resolution for moderate n and
  // leaves the two sides bit-identical. The flags therefore assert the bound
  // within a 1e-12 relative guard instead of strictly.
  constexpr double kGuard = 1e-12;
  OutlierBounds out;
  out.pi_adj_sorted = outlier_pi(ChainKind::Adj, n, p, n);
  out.pi_adj_lower = (1.0 - 2.0 * p) / (1.0 - p);
  out.pi_adj_ok = out.pi_adj_sorted >= out.pi_adj_lower * (1.0 - kGuard);
  out.pi_any_sorted = outlier_pi(ChainKind::Any, n, p, n);
  out.pi_any_upper = (1.0 - p) / (static_cast<double>(n) * p);
  out.pi_any_ok = out.pi_any_sorted <= out.pi_any_upper * (1.0 + kGuard);
  out.ew_adj = outlier_expected_weight(ChainKind::Adj, n, p, gap);
  out.ew_adj_upper = gap * p / (1.0 - 2.0 * p);
  out.ew_adj_ok = out.ew_adj <= out.ew_adj_upper * (1.0 + kGuard);
  out.ew_any = outlier_expected_weight(ChainKind::Any, n, p, gap);
  out.ew_any_lower = static_cast<double>(n) * gap * p;
  out.ew_any_ok = out.ew_any >= out.ew_any_lower * (1.0 - kGuard);
  return out;
}

}  // namespace noisysort
