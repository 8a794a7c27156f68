#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "noisysort/exact.hpp"
#include "noisysort/kernels.hpp"

using namespace noisysort;

TEST_CASE("chain kind names round trip") {
  for (const ChainKind k : {ChainKind::Adj, ChainKind::Any, ChainKind::AnyStar}) {
    CHECK(chain_kind_from_string(to_string(k)) == k);
  }
  CHECK(to_string(ChainKind::AnyStar) == "any-star");
  CHECK_THROWS_AS(chain_kind_from_string("anystar"), std::invalid_argument);
  CHECK_THROWS_AS(chain_kind_from_string(""), std::invalid_argument);
}

TEST_CASE("step consumes exactly two draws") {
  const Energy e = Energy::from_lambda(2.0);
  for (const ChainKind kind : {ChainKind::Adj, ChainKind::Any, ChainKind::AnyStar}) {
    Rng rng = make_stream_rng(9, 2);
    Rng twin = rng;
    std::vector<double> v{4.0, 1.0, 3.0, 2.0};
    step_inplace(kind, v, e, rng);
    twin.discard(2);
    CHECK(rng == twin);
  }
}

TEST_CASE("single-element sequences never move") {
  const Energy e = Energy::from_lambda(2.0);
  Rng rng = make_stream_rng(1, 1);
  Rng before = rng;
  std::vector<double> v{5.0};
  const Move mv = step_inplace(ChainKind::Any, v, e, rng);
  CHECK(mv.i == 0);
  CHECK(mv.j == 0);
  CHECK_FALSE(mv.accepted);
  CHECK(v == std::vector<double>{5.0});
  CHECK(rng == before);  // no proposals exist, no draws consumed
}

TEST_CASE("moves are well-formed and applied correctly") {
  const Energy e = Energy::from_lambda(1.5);
  Rng rng = make_stream_rng(77, 0);
  Sequence s{{3.0, 1.0, 4.0, 1.0, 5.0}};
  for (int t = 0; t < 500; ++t) {
    const auto [next, mv] = step(ChainKind::Any, s, e, rng);
    CHECK(1 <= mv.i);
    CHECK(mv.i < mv.j);
    CHECK(mv.j <= 5);
    if (mv.accepted) {
      CHECK(next == s.with_swapped(static_cast<std::size_t>(mv.i - 1),
                                   static_cast<std::size_t>(mv.j - 1)));
    } else {
      CHECK(next == s);
    }
    s = next;
  }
}

TEST_CASE("adjacent chain proposes only neighbours") {
  const Energy e = Energy::from_lambda(2.0);
  Rng rng = make_stream_rng(4, 4);
  std::vector<double> v{5.0, 4.0, 3.0, 2.0, 1.0};
  for (int t = 0; t < 400; ++t) {
    const Move mv = step_inplace(ChainKind::Adj, v, e, rng);
    CHECK(mv.j == mv.i + 1);
  }
}

TEST_CASE("one-step frequencies match the kernel") {
  const Energy e = Energy::from_lambda(std::exp(1.0));
  Rng rng = make_stream_rng(2024, 0);
  const int trials = 50000;
  int corrected = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> v{2.0, 1.0};
    step_inplace(ChainKind::Adj, v, e, rng);
    corrected += (v[0] == 1.0) ? 1 : 0;
  }
  const double freq = static_cast<double>(corrected) / trials;
  CHECK(std::fabs(freq - 0.88079707797788243) < 0.01);
}

TEST_CASE("transition probabilities: values, rows, and errors") {
  const Energy e = Energy::from_lambda(std::exp(1.0));
  const Sequence abc{{1.0, 2.0, 3.0}};

  // single proposal routes, assembled from the acceptance law
  CHECK(transition_probability(ChainKind::Adj, abc, Sequence{{2.0, 1.0, 3.0}}, e) ==
        doctest::Approx(0.5 * swap_probability(1.0, 2.0, e)).epsilon(1e-15));
  CHECK(transition_probability(ChainKind::Any, abc, Sequence{{2.0, 1.0, 3.0}}, e) ==
        doctest::Approx(swap_probability(1.0, 2.0, e) / 3.0).epsilon(1e-15));
  // the distance-2 proposal is impossible for the adjacent chain
  CHECK(transition_probability(ChainKind::Adj, abc, Sequence{{3.0, 2.0, 1.0}}, e) ==
        0.0);
  CHECK(transition_probability(ChainKind::Any, abc, Sequence{{3.0, 2.0, 1.0}}, e) ==
        doctest::Approx(swap_probability(1.0, 3.0, e) / 3.0).epsilon(1e-15));
  // the careful chain squares the acceptance across distance two
  CHECK(transition_probability(ChainKind::AnyStar, Sequence{{3.0, 1.0, 2.0}},
                               Sequence{{2.0, 1.0, 3.0}}, e) ==
        doctest::Approx(std::pow(swap_probability(3.0, 2.0, e), 2.0) / 3.0)
            .epsilon(1e-15));

  // equal elements produce no state change mass
  CHECK(transition_probability(ChainKind::Any, Sequence{{1.0, 1.0}},
                               Sequence{{1.0, 1.0}}, e) == 1.0);

  // rows sum to one over the whole space
  for (const ChainKind kind : {ChainKind::Adj, ChainKind::Any, ChainKind::AnyStar}) {
    for (const Energy& le : {e, Energy::from_lambda(0.7)}) {
      const StateSpace space = StateSpace::enumerate(Sequence{{1.0, 1.0, 2.0, 2.0}});
      for (const Sequence& s : space.states()) {
        double total = 0.0;
        for (const Sequence& t : space.states()) {
          const double p = transition_probability(kind, s, t, le);
          CHECK(p >= 0.0);
          total += p;
        }
        CHECK(std::fabs(total - 1.0) <= 1e-12);
      }
    }
  }

  CHECK(transition_probability(ChainKind::Adj, Sequence{{2.0}}, Sequence{{2.0}}, e) ==
        1.0);
  CHECK_THROWS_AS(transition_probability(ChainKind::Adj, abc,
                                         Sequence{{1.0, 2.0, 4.0}}, e),
                  std::domain_error);
  CHECK_THROWS_AS(transition_probability(ChainKind::Adj, abc, Sequence{{1.0, 2.0}}, e),
                  std::domain_error);
}

TEST_CASE("kernel matches transition probabilities empirically") {
  const Energy e = Energy::from_lambda(1.5);
  const Sequence start{{2.0, 3.0, 1.0}};
  const StateSpace space = StateSpace::enumerate(start);
  Rng rng = make_stream_rng(55, 1);
  const int trials = 60000;
  std::vector<int> counts(space.size(), 0);
  for (int t = 0; t < trials; ++t) {
    const auto [next, mv] = step(ChainKind::AnyStar, start, e, rng);
    counts[space.index_of(next)] += 1;
  }
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    const double expect =
        transition_probability(ChainKind::AnyStar, start, space.state(idx), e);
    const double freq = static_cast<double>(counts[idx]) / trials;
    CHECK(std::fabs(freq - expect) < 0.01);
  }
}
