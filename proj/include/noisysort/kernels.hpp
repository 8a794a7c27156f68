#pragma once

#include <string>
#include <utility>
#include <vector>

#include "noisysort/seqcore.hpp"

namespace noisysort {

// Adj: propose a uniform adjacent pair (n-1 choices).
// Any: propose a uniform unordered pair (n choose 2).
// AnyStar: like Any, but the acceptance probability is raised to the power
//          of the position distance j - i.
enum class ChainKind { Adj, Any, AnyStar };

std::string to_string(ChainKind kind);                 // "adj" | "any" | "any-star"
ChainKind chain_kind_from_string(const std::string&);  // inverse, throws on junk

// Trace of one proposal; positions are 1-based, i < j. A sequence of length 1
// has no proposals and reports {0, 0, false}.
struct Move {
  int i = 0;
  int j = 0;
  bool accepted = false;
};

// One transition of the chosen chain, in place. Consumes exactly two draws:
// the pair pick and the acceptance draw.
Move step_inplace(ChainKind kind, std::vector<double>& v, const Energy& e, Rng& rng);

// Pure flavour of the same transition.
std::pair<Sequence, Move> step(ChainKind kind, const Sequence& s, const Energy& e,
                               Rng& rng);

// Exact one-step probability P(s -> t). The self-loop mass P(s, s) is the
// complement of all accepted proposals that change the state, so rows sum to
// one by construction. Throws if s and t are not arrangements of the same
// multiset.
double transition_probability(ChainKind kind, const Sequence& s, const Sequence& t,
                              const Energy& e);

}  // namespace noisysort
