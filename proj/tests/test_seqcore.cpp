#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "noisysort/seqcore.hpp"

using namespace noisysort;

TEST_CASE("energy construction and validation") {
  const Energy e = Energy::from_lambda(2.0);
  CHECK(e.lambda() == 2.0);
  CHECK(e.log_lambda() == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  const Energy nu = Energy::from_noise(5.0);
  CHECK(nu.log_lambda() == 0.2);  // exactly 1/noise
  CHECK(nu.lambda() == doctest::Approx(1.2214027581601699).epsilon(1e-15));

  CHECK(Energy::from_lambda(1.0).lambda() == 1.0);  // fair coin is allowed here
  CHECK_THROWS_AS(Energy::from_lambda(0.0), std::domain_error);
  CHECK_THROWS_AS(Energy::from_lambda(-2.0), std::domain_error);
  CHECK_THROWS_AS(Energy::from_lambda(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(Energy::from_lambda(HUGE_VAL), std::domain_error);
  CHECK_THROWS_AS(Energy::from_noise(0.0), std::domain_error);
  CHECK_THROWS_AS(Energy::from_noise(-1.0), std::domain_error);
  CHECK_THROWS_AS(Energy::from_noise(HUGE_VAL), std::domain_error);
  // noise so small that exp(1/noise) overflows
  CHECK_THROWS_AS(Energy::from_noise(1e-4), std::domain_error);
}

TEST_CASE("sequence invariants") {
  const Sequence s{{3.0, 1.0, 2.0}};
  CHECK(s.size() == 3);
  CHECK(s[0] == 3.0);
  CHECK_FALSE(s.is_sorted());
  CHECK(Sequence{{1.0, 1.0, 2.0}}.is_sorted());
  CHECK(Sequence{{7.0}}.is_sorted());

  const Sequence t = s.with_swapped(0, 2);
  CHECK(t == Sequence{{2.0, 1.0, 3.0}});
  CHECK(s == Sequence{{3.0, 1.0, 2.0}});  // original untouched

  CHECK_THROWS_AS(Sequence{std::vector<double>{}}, std::domain_error);
  CHECK_THROWS_AS((Sequence{{1.0, std::nan("")}}), std::domain_error);
  CHECK_THROWS_AS(Sequence{{HUGE_VAL}}, std::domain_error);

  // -0.0 is collapsed so state identity is plain value identity
  const Sequence z{{-0.0, 1.0}};
  CHECK(!std::signbit(z[0]));
  CHECK(z == Sequence{{0.0, 1.0}});
}

TEST_CASE("lexicographic order") {
  CHECK(lex_less(Sequence{{1.0, 2.0}}, Sequence{{2.0, 1.0}}));
  CHECK_FALSE(lex_less(Sequence{{2.0, 1.0}}, Sequence{{1.0, 2.0}}));
  CHECK_FALSE(lex_less(Sequence{{1.0, 2.0}}, Sequence{{1.0, 2.0}}));
  CHECK(lex_less(Sequence{{1.0, 2.0}}, Sequence{{1.0, 2.0, 0.0}}));
}

TEST_CASE("swap probability is a stable logistic") {
  const Energy e = Energy::from_lambda(std::exp(1.0));
  CHECK(swap_probability(2.0, 1.0, e) ==
        doctest::Approx(0.88079707797788243).epsilon(1e-15));
  CHECK(swap_probability(1.0, 2.0, e) ==
        doctest::Approx(0.11920292202211755).epsilon(1e-15));
  CHECK(swap_probability(1.0, 1.0, e) == 0.5);
  CHECK(swap_probability(4.0, -3.0, Energy::from_lambda(1.0)) == 0.5);

  // complementary pairs sum to one across magnitudes and lambdas
  for (const double lambda : {0.25, 0.7, 1.5, 20.0}) {
    const Energy le = Energy::from_lambda(lambda);
    for (const double a : {-3.0, 0.0, 1.0, 2.5}) {
      for (const double b : {-1.0, 0.5, 2.0, 40.0}) {
        const double sum = swap_probability(a, b, le) + swap_probability(b, a, le);
        CHECK(std::fabs(sum - 1.0) <= 1e-15);
      }
    }
  }

  // no overflow at extreme separations; limits are exact
  CHECK(swap_probability(1e6, 0.0, e) == 1.0);
  CHECK(swap_probability(0.0, 1e6, e) == 0.0);

  // a larger lead makes the correcting swap more likely when lambda > 1
  CHECK(swap_probability(5.0, 1.0, e) > swap_probability(2.0, 1.0, e));
  // and less likely when lambda < 1
  const Energy low = Energy::from_lambda(0.7);
  CHECK(swap_probability(5.0, 1.0, low) < swap_probability(2.0, 1.0, low));

  CHECK_THROWS_AS(swap_probability(std::nan(""), 1.0, e), std::domain_error);
  CHECK_THROWS_AS(swap_probability(1.0, HUGE_VAL, e), std::domain_error);
}

TEST_CASE("weighted inversion and the displacement identity") {
  CHECK(weighted_inversion(Sequence{{5.0, 2.0, 3.0}}) == 5.0);
  CHECK(weighted_inversion(Sequence{{1.0, 2.0, 3.0}}) == 0.0);
  CHECK(weighted_inversion(Sequence{{3.0, 2.0, 1.0}}) == 4.0);
  CHECK(weighted_inversion(Sequence{{2.0, 2.0, 2.0}}) == 0.0);
  CHECK(weighted_inversion(Sequence{{9.0}}) == 0.0);

  Rng rng = make_stream_rng(17, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 8);
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(uniform_index(rng, 6));
    const Sequence s{v};
    // integer values keep both sums exact, so the identity is an equality
    CHECK(weighted_inversion(s) == displacement_inversion(s));
  }
}

TEST_CASE("sorted_of") {
  CHECK(sorted_of(Sequence{{3.0, 1.0, 2.0, 1.0}}) == Sequence{{1.0, 1.0, 2.0, 3.0}});
  CHECK(sorted_of(Sequence{{1.0}}) == Sequence{{1.0}});
}

TEST_CASE("stream rng derivation") {
  Rng a = make_stream_rng(42, 0);
  Rng b = make_stream_rng(42, 0);
  Rng c = make_stream_rng(42, 1);
  Rng d = make_stream_rng(43, 0);
  CHECK(a() == b());
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a != d);

  Rng u = make_stream_rng(7, 3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t k = uniform_index(u, 10);
    CHECK(k < 10);
    seen.insert(k);
  }
  CHECK(seen.size() == 10);

  for (int i = 0; i < 2000; ++i) {
    const double x = uniform_unit(u);
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("sample_comparison matches the logistic law") {
  const Energy e = Energy::from_lambda(std::exp(1.0));
  Rng rng = make_stream_rng(123, 5);
  const int trials = 100000;
  int swaps = 0;
  for (int i = 0; i < trials; ++i) {
    swaps += sample_comparison(1.0, 2.0, e, rng) ? 1 : 0;
  }
  const double freq = static_cast<double>(swaps) / trials;
  // p = 0.1192, sigma ~ 0.001 over 1e5 draws; 0.01 is a ten-sigma belt
  CHECK(std::fabs(freq - 0.11920292202211755) < 0.01);
}
