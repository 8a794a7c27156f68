#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "noisysort/closedform.hpp"
#include "noisysort/exact.hpp"

namespace noisysort {

inline constexpr std::uint64_t kDefaultStepCap = 1'000'000;

double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu);
double tv_distance(const Distribution& mu, const Distribution& nu);

// Smallest t with max over start states of TV(delta_s P^t, pi) <= eps,
// measured by exact distribution evolution. TV to stationarity is
// non-increasing in t, so each start is evolved to its first crossing.
// Throws past step_cap, reporting the worst TV reached.
std::uint64_t empirical_mixing_time(ChainKind kind, const Sequence& multiset,
                                    const Energy& e, double eps,
                                    std::size_t state_cap = kDefaultStateCap,
                                    std::uint64_t step_cap = kDefaultStepCap);
std::uint64_t empirical_mixing_time(const TransitionMatrix& P, double eps,
                                    std::uint64_t step_cap = kDefaultStepCap);

// A coupled pair of arrangements at coupling distance one: y is x with the
// (distinct-valued) entries at positions i_star < j_star transposed.
// Positions are 1-based as in Move.
struct CoupledPair {
  Sequence x;
  Sequence y;
  int i_star = 0;
  int j_star = 0;
};

CoupledPair make_coupled_pair(const Sequence& x, int i_star, int j_star);

struct JointMove {
  Sequence x_next;
  Sequence y_next;
  double prob = 0.0;
};

// One-step joint law of the path coupling for the unordered-pair chain on a
// binary input. Rows sum to one; each marginal equals the chain's own
// transition law. The pair bijection matches proposals (i*,k) in x with
// (j*,k) in y, (k,j*) in x with (k,i*) in y, (i*,j*) with itself, and every
// disjoint pair with itself; overlapping moves are coupled through the
// min/max split.
std::vector<JointMove> coupled_joint_table(const CoupledPair& pair,
                                           const BinarySpec& spec);

// Samples one row of the joint table; consumes a single draw.
std::pair<Sequence, Sequence> coupled_step_any(const CoupledPair& pair,
                                               const BinarySpec& spec, Rng& rng);

// Coupling distance: length of the shortest path between x and y in the
// positive-probability transition graph of the kind (self-loops excluded).
// The graph does not depend on lambda.
int rho_distance(const Sequence& x, const Sequence& y, ChainKind kind,
                 const StateSpace& space);

}  // namespace noisysort
