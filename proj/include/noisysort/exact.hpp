#pragma once

#include <cstddef>
#include <vector>

#include "noisysort/kernels.hpp"
#include "noisysort/seqcore.hpp"

namespace noisysort {

inline constexpr std::size_t kDefaultStateCap = 5040;
inline constexpr std::size_t kTreeStateCap = 200;
inline constexpr std::size_t kBruteForceStateCap = 8;

// All distinct arrangements of a multiset, in lexicographic order.
class StateSpace {
 public:
  static StateSpace enumerate(const Sequence& multiset,
                              std::size_t cap = kDefaultStateCap);

  std::size_t size() const { return states_.size(); }
  const Sequence& state(std::size_t idx) const { return states_.at(idx); }
  const std::vector<Sequence>& states() const { return states_; }
  std::size_t index_of(const Sequence& s) const;  // throws if absent

 private:
  explicit StateSpace(std::vector<Sequence> states) : states_(std::move(states)) {}
  std::vector<Sequence> states_;
};

// Dense row-stochastic one-step matrix over a StateSpace.
class TransitionMatrix {
 public:
  TransitionMatrix(ChainKind kind, const Energy& e, StateSpace space);

  ChainKind kind() const { return kind_; }
  const Energy& energy() const { return energy_; }
  const StateSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  double operator()(std::size_t from, std::size_t to) const {
    return p_[from * space_.size() + to];
  }

 private:
  ChainKind kind_;
  Energy energy_;
  StateSpace space_;
  std::vector<double> p_;
};

TransitionMatrix build_matrix(ChainKind kind, const Sequence& multiset, const Energy& e,
                              std::size_t cap = kDefaultStateCap);

// Probability vector over the states of some StateSpace, entries >= 0, sum 1.
struct Distribution {
  std::vector<double> probs;
};

// Stationary distribution via the singular balance system with one equation
// replaced by sum(pi) = 1, solved by partially pivoted elimination. Throws a
// runtime error if the verified residual ||pi P - pi||_inf exceeds 1e-10.
Distribution stationary_solve(const TransitionMatrix& P);

// Gibbs law pi(s) proportional to lambda^(-2 w(s)); the stationary law of the
// adjacent-swap and distance-powered chains.
Distribution gibbs_distribution(const StateSpace& space, const Energy& e);

// Unnormalized in-tree weight W(root): determinant of the graph Laplacian of
// the off-diagonal transition weights with the root row and column deleted
// (all-minors matrix-tree theorem for in-arborescences).
double tree_weight_minor(const TransitionMatrix& P, std::size_t root);

// Same weight by explicit enumeration of all in-arborescences; spaces of at
// most kBruteForceStateCap states.
double arborescence_bruteforce(const TransitionMatrix& P, std::size_t root);

// Stationary law through the Markov chain tree theorem. Guarded to spaces of
// at most kTreeStateCap states and lambda within [e^-5, e^5]; use
// stationary_solve outside that range.
Distribution stationary_tree(const TransitionMatrix& P);

// max over ordered pairs of |pi_s P(s,t) - pi_t P(t,s)|; zero iff reversible.
double detailed_balance_residual(const TransitionMatrix& P, const Distribution& pi);

// Product of forward transition probabilities around the cycle divided by the
// product of reverse ones. The cycle is a list of state indices; it is closed
// implicitly (a repeated final index equal to the first is also accepted).
// Equals 1 on every cycle iff the chain is reversible. Throws on cycles with
// a zero-probability edge in either direction.
double kolmogorov_cycle_ratio(const TransitionMatrix& P,
                              const std::vector<std::size_t>& cycle);

struct AdjBetterResult {
  double pi_adj_sorted = 0.0;
  double pi_any_sorted = 0.0;
  bool holds = false;  // pi_adj_sorted > pi_any_sorted + 1e-12
};

// Exact three-element comparison of the two chains at the ascending-sorted
// state. Requires a <= b <= c, not all equal, lambda != 1.
AdjBetterResult verify_adj_better(double a, double b, double c, const Energy& e);

struct RatioCheck {
  std::size_t from = 0;  // state s
  std::size_t to = 0;    // state s' reached by one adjacent swap, w(s') > w(s)
  double ratio_adj = 0.0;
  double ratio_any = 0.0;
  bool holds = false;  // pi_adj ratio strictly below pi_any ratio (1e-12 relative slack)
};

// Ratio comparison over every adjacent-swap pair with increasing disorder.
// Exact solves of both chains; lambda != 1 required.
std::vector<RatioCheck> verify_ratio_lemma(const Sequence& multiset, const Energy& e,
                                           std::size_t cap = kDefaultStateCap);
std::vector<RatioCheck> verify_ratio_lemma(double a, double b, double c,
                                           const Energy& e);

}  // namespace noisysort
