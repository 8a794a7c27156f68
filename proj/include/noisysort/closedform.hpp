#pragma once

#include <utility>
#include <vector>

#include "noisysort/kernels.hpp"
#include "noisysort/seqcore.hpp"

namespace noisysort {

// Two-valued input: n_a copies of a and n_b copies of b with a < b. The error
// probability p is the chance a comparison of (a, b) gets the order wrong;
// p < 1/2 exactly when lambda > 1.
class BinarySpec {
 public:
  static BinarySpec from_lambda(double a, double b, int n_a, int n_b, const Energy& e);
  // lambda recovered from a target error probability: lambda = ((1-p)/p)^(1/(2(b-a)))
  static BinarySpec from_error_probability(double a, double b, int n_a, int n_b,
                                           double p);

  double a() const { return a_; }
  double b() const { return b_; }
  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }
  int n() const { return n_a_ + n_b_; }
  int n_min() const { return n_a_ < n_b_ ? n_a_ : n_b_; }
  const Energy& energy() const { return energy_; }
  double error_probability() const;  // 1 - swap_probability(b, a)
  Sequence sorted_sequence() const;
  Sequence reversed_sequence() const;  // all b before all a

 private:
  BinarySpec(double a, double b, int n_a, int n_b, const Energy& e);
  double a_, b_;
  int n_a_, n_b_;
  Energy energy_;
};

// v_i counts the a's positioned after the i-th b; always non-increasing with
// entries in {0, ..., n_a}. Bijective with the arrangements of the multiset.
struct Staircase {
  std::vector<int> v;
  int n_a = 0;
};

Staircase to_staircase(const Sequence& s, const BinarySpec& spec);
Sequence from_staircase(const Staircase& st, const BinarySpec& spec);

struct BetaBound {
  double tight = 0.0;  // 1 - 2(1 + p(n-2)) / (n(n-1))
  double loose = 0.0;  // 1 - 2p / (n-1)
};

// Path-coupling contraction bound for the unordered-pair chain on binary
// inputs; requires n >= 2 and 0 < p <= 1/2.
BetaBound coupling_beta_bound(int n, double p);

// Mixing-time bound t(eps) <= n (ln n' - ln eps) / (2p) with n' = min(n_a, n_b),
// natural logarithms.
double mixing_bound_any(int n, int n_a, int n_b, double p, double eps);

// One outlier: n-1 copies of a value and one larger value with some gap.
// s^(i) places the outlier at position i; s^(n) is sorted. Closed stationary
// laws for the two chain families (the distance-powered chain shares the
// adjacent law). Domain: 1 <= i <= n, 0 < p <= 1/2 (p = 1/2 degenerates to
// the uniform law 1/n).
double outlier_pi(ChainKind kind, int n, double p, int i);

// Expected stationary disorder for the same input, outlier gap times the
// displacement law.
double outlier_expected_weight(ChainKind kind, int n, double p, double gap);

// Same expectation through the generic sum over outlier_pi; oracle identity.
double outlier_expected_weight_generic(ChainKind kind, int n, double p, double gap);

struct OutlierBounds {
  double pi_adj_sorted = 0.0, pi_adj_lower = 0.0;  // pi_adj(sorted) > (1-2p)/(1-p)
  bool pi_adj_ok = false;
  double pi_any_sorted = 0.0, pi_any_upper = 0.0;  // pi_any(sorted) < (1-p)/(np)
  bool pi_any_ok = false;
  double ew_adj = 0.0, ew_adj_upper = 0.0;  // E_adj < gap * p/(1-2p)
  bool ew_adj_ok = false;
  double ew_any = 0.0, ew_any_lower = 0.0;  // E_any > n * gap * p (fails at small n)
  bool ew_any_ok = false;
};

// Bound record for the one-outlier comparison; 0 < p < 1/2. The last flag is
// reported as computed and is only a theorem for large n. The adjacent-chain
// inequalities are strict with slack of order (p/(1-p))^(n-1), which sinks
// below double resolution for moderate n, so every flag asserts its bound
// within a 1e-12 relative guard rather than strictly.
OutlierBounds outlier_bounds(int n, double p, double gap);

}  // namespace noisysort
