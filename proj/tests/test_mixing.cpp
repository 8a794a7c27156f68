#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"
#include "noisysort/mixing.hpp"

using namespace noisysort;

TEST_CASE("total variation distance") {
  CHECK(tv_distance({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tv_distance({0.5, 0.5}, {0.5, 0.5}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tv_distance({0.7, 0.3}, {0.4, 0.6}) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_THROWS_AS(tv_distance({1.0}, {0.5, 0.5}), std::invalid_argument);

  Distribution mu, nu;
  mu.probs = {0.25, 0.75};
  nu.probs = {0.75, 0.25};
  CHECK(tv_distance(mu, nu) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("mixing time on the two-element chain") {
  const Sequence two{{1.0, 2.0}};
  const Energy e = Energy::from_lambda(2.718281828459045);
  // both transition rows already equal the stationary law, so one step
  // suffices for any eps below the worst initial distance of 0.8808
  CHECK(empirical_mixing_time(ChainKind::Adj, two, e, 0.1) == 1);
  CHECK(empirical_mixing_time(ChainKind::Adj, two, e, 0.99) == 0);

  CHECK_THROWS_AS(empirical_mixing_time(ChainKind::Adj, two, e, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(empirical_mixing_time(ChainKind::Adj, two, e, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(empirical_mixing_time(ChainKind::Adj, two, e, -0.5),
                  std::domain_error);
}

TEST_CASE("mixing time is monotone in eps and honors the step cap") {
  const Sequence trip{{1.0, 2.0, 3.0}};
  const Energy e = Energy::from_lambda(2.718281828459045);
  const std::uint64_t loose = empirical_mixing_time(ChainKind::Any, trip, e, 0.25);
  const std::uint64_t tight = empirical_mixing_time(ChainKind::Any, trip, e, 0.1);
  CHECK(tight >= loose);
  CHECK(loose >= 1);

  const StateSpace space = StateSpace::enumerate(trip);
  const TransitionMatrix P(ChainKind::Any, e, space);
  CHECK(empirical_mixing_time(P, 0.25) == loose);
  CHECK_THROWS_AS(empirical_mixing_time(P, 1e-15, /*step_cap=*/1),
                  std::runtime_error);
}

TEST_CASE("coupled pair construction") {
  const Sequence x{{2.0, 1.0, 1.0, 2.0}};
  const CoupledPair pair = make_coupled_pair(x, 2, 4);
  CHECK(pair.x == x);
  CHECK(pair.y == Sequence{{2.0, 2.0, 1.0, 1.0}});
  CHECK(pair.i_star == 2);
  CHECK(pair.j_star == 4);

  CHECK_THROWS_AS(make_coupled_pair(x, 0, 2), std::domain_error);
  CHECK_THROWS_AS(make_coupled_pair(x, 2, 2), std::domain_error);
  CHECK_THROWS_AS(make_coupled_pair(x, 3, 2), std::domain_error);
  CHECK_THROWS_AS(make_coupled_pair(x, 1, 5), std::domain_error);
  // positions 2 and 3 hold equal values; the pair would not differ
  CHECK_THROWS_AS(make_coupled_pair(x, 2, 3), std::domain_error);
}

TEST_CASE("joint table on the two-element input merges in one step") {
  const BinarySpec spec = BinarySpec::from_error_probability(1.0, 2.0, 1, 1, 0.25);
  const CoupledPair pair = make_coupled_pair(Sequence{{2.0, 1.0}}, 1, 2);
  const std::vector<JointMove> tbl = coupled_joint_table(pair, spec);
  REQUIRE(tbl.size() == 2);
  CHECK(tbl[0].x_next == Sequence{{1.0, 2.0}});
  CHECK(tbl[0].y_next == Sequence{{1.0, 2.0}});
  CHECK(tbl[0].prob == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(tbl[1].x_next == Sequence{{2.0, 1.0}});
  CHECK(tbl[1].y_next == Sequence{{2.0, 1.0}});
  CHECK(tbl[1].prob == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("joint table marginals reproduce the unordered-pair kernel") {
  const BinarySpec spec = BinarySpec::from_error_probability(1.0, 2.0, 2, 2, 0.25);
  const StateSpace space = StateSpace::enumerate(spec.sorted_sequence());
  const TransitionMatrix P(ChainKind::Any, spec.energy(), space);
  for (std::size_t si = 0; si < space.size(); ++si) {
    const Sequence& x = space.state(si);
    for (int i = 1; i <= 4; ++i) {
      for (int j = i + 1; j <= 4; ++j) {
        if (x.values()[static_cast<std::size_t>(i - 1)] ==
            x.values()[static_cast<std::size_t>(j - 1)]) {
          continue;
        }
        const CoupledPair pair = make_coupled_pair(x, i, j);
        const std::vector<JointMove> tbl = coupled_joint_table(pair, spec);
        std::vector<double> marg_x(space.size(), 0.0);
        std::vector<double> marg_y(space.size(), 0.0);
        double total = 0.0;
        for (const JointMove& mv : tbl) {
          CHECK(mv.prob > 0.0);
          total += mv.prob;
          marg_x[space.index_of(mv.x_next)] += mv.prob;
          marg_y[space.index_of(mv.y_next)] += mv.prob;
        }
        CHECK(std::fabs(total - 1.0) <= 1e-15);
        const std::size_t xi = space.index_of(pair.x);
        const std::size_t yi = space.index_of(pair.y);
        for (std::size_t t = 0; t < space.size(); ++t) {
          CHECK(std::fabs(marg_x[t] - P(xi, t)) <= 1e-15);
          CHECK(std::fabs(marg_y[t] - P(yi, t)) <= 1e-15);
        }
      }
    }
  }

  CoupledPair bad = make_coupled_pair(spec.reversed_sequence(), 1, 3);
  bad.y = bad.x;  // no longer a transposition of x
  CHECK_THROWS_AS(coupled_joint_table(bad, spec), std::domain_error);
}

TEST_CASE("expected coupling distance contracts below the bound") {
  const int n = 6;
  const double p = 0.3;
  const BinarySpec spec = BinarySpec::from_error_probability(1.0, 2.0, 3, 3, p);
  const StateSpace space = StateSpace::enumerate(spec.sorted_sequence());
  const double beta = coupling_beta_bound(n, p).tight;
  double worst = 0.0;
  for (std::size_t si = 0; si < space.size(); ++si) {
    const Sequence& x = space.state(si);
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        if (x.values()[static_cast<std::size_t>(i - 1)] ==
            x.values()[static_cast<std::size_t>(j - 1)]) {
          continue;
        }
        const CoupledPair pair = make_coupled_pair(x, i, j);
        double expected = 0.0;
        for (const JointMove& mv : coupled_joint_table(pair, spec)) {
          expected += mv.prob *
                      rho_distance(mv.x_next, mv.y_next, ChainKind::Any, space);
        }
        if (expected > worst) worst = expected;
      }
    }
  }
  CHECK(worst <= beta + 1e-12);
  CHECK(beta == doctest::Approx(1.0 - 4.4 / 30.0).epsilon(1e-15));
}

TEST_CASE("sampled coupling steps follow the joint table") {
  const BinarySpec spec = BinarySpec::from_error_probability(1.0, 2.0, 2, 2, 0.25);
  const CoupledPair pair = make_coupled_pair(Sequence{{2.0, 1.0, 2.0, 1.0}}, 1, 2);
  const std::vector<JointMove> tbl = coupled_joint_table(pair, spec);

  std::map<std::pair<std::vector<double>, std::vector<double>>, double> want;
  for (const JointMove& mv : tbl) {
    want[{mv.x_next.values(), mv.y_next.values()}] = mv.prob;
  }

  Rng rng = make_stream_rng(99, 0);
  const int draws = 20000;
  std::map<std::pair<std::vector<double>, std::vector<double>>, int> seen;
  for (int k = 0; k < draws; ++k) {
    const auto [xn, yn] = coupled_step_any(pair, spec, rng);
    seen[{xn.values(), yn.values()}] += 1;
  }
  for (const auto& [key, count] : seen) {
    REQUIRE(want.count(key) == 1);  // sampler never leaves the table support
    CHECK(std::fabs(static_cast<double>(count) / draws - want.at(key)) < 0.02);
  }

  // identical seeds replay the identical trajectory of joint rows
  Rng r1 = make_stream_rng(7, 3);
  Rng r2 = make_stream_rng(7, 3);
  for (int k = 0; k < 100; ++k) {
    const auto a = coupled_step_any(pair, spec, r1);
    const auto b = coupled_step_any(pair, spec, r2);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
  }
}

TEST_CASE("coupling distance in the transition graph") {
  const Sequence trip{{1.0, 2.0, 3.0}};
  const StateSpace space = StateSpace::enumerate(trip);
  const Sequence sorted{{1.0, 2.0, 3.0}};
  const Sequence rev{{3.0, 2.0, 1.0}};
  CHECK(rho_distance(sorted, sorted, ChainKind::Any, space) == 0);
  CHECK(rho_distance(sorted, Sequence{{2.0, 1.0, 3.0}}, ChainKind::Adj, space) == 1);
  // one long transposition for the unordered-pair chain, three adjacent swaps
  CHECK(rho_distance(sorted, rev, ChainKind::Any, space) == 1);
  CHECK(rho_distance(sorted, rev, ChainKind::AnyStar, space) == 1);
  CHECK(rho_distance(sorted, rev, ChainKind::Adj, space) == 3);

  const Sequence bin{{1.0, 1.0, 2.0, 2.0}};
  const StateSpace bspace = StateSpace::enumerate(bin);
  CHECK(rho_distance(Sequence{{1.0, 1.0, 2.0, 2.0}},
                     Sequence{{2.0, 2.0, 1.0, 1.0}}, ChainKind::Any, bspace) == 2);

  CHECK_THROWS_AS(rho_distance(sorted, Sequence{{1.0, 2.0, 4.0}}, ChainKind::Any,
                               space),
                  std::invalid_argument);
}
