#include "doctest.h"
#include "support.hpp"

using namespace lgorb;

TEST_SUITE("group") {
  TEST_CASE("mu2 on the line") {
    const DiagGroup g({{Rational(1, 2)}}, 1);
    CHECK(g.order() == 2);
    const RingPtr r = Ring::make({{"x", 1}});
    CHECK(g.act(1, Poly::variable(r, 0)) == -Poly::variable(r, 0));
    const auto s = sectors(g);
    REQUIRE(s.size() == 2);
    CHECK(s[0].is_identity());
    CHECK(s[0].n_fixed() == 1);
    CHECK(s[0].denominator == CycNum(1));
    CHECK(s[1].n_fixed() == 0);
    CHECK(s[1].denominator == CycNum(2));
  }

  TEST_CASE("trivial group") {
    const DiagGroup g({}, 2);
    CHECK(g.order() == 1);
    CHECK(sectors(g).front().n_fixed() == 2);
  }

  TEST_CASE("mu3 on the Fermat cubic") {
    const DiagGroup g({{Rational(1, 3), Rational(2, 3)}}, 2);
    CHECK(g.order() == 3);
    CHECK(g.eigenvalues(g.generator_element(0))[0] == CycNum::zeta(3, 1));
    CHECK(g.eigenvalues(g.generator_element(0))[1] == CycNum::zeta(3, 2));
    const RingPtr r = Ring::make({{"x", 1}, {"y", 1}});
    CHECK_NOTHROW(g.check_invariant(Poly::parse("x^3 + y^3", r)));
    CHECK_NOTHROW(g.check_invariant(Poly::parse("x*y", r)));
    CHECK_THROWS_AS(g.check_invariant(Poly::parse("x^2*y + x*y", r)), Error);
  }

  TEST_CASE("partial fixed locus") {
    const DiagGroup g({{Rational(0), Rational(1, 2)}}, 2);
    const auto s = make_sector(g, g.generator_element(0));
    CHECK(s.fixed_vars == std::vector<std::size_t>{0});
    CHECK(s.moving_eigenvalues.size() == 1);
    CHECK(s.moving_eigenvalues[0] == CycNum(-1));
    CHECK(s.denominator == CycNum(2));
  }

  TEST_CASE("group law on mu2 x mu6") {
    const DiagGroup g({{Rational(1, 2), Rational(0)}, {Rational(1, 3), Rational(1, 6)}}, 2);
    CHECK(g.order() == 12);
    for (std::size_t a = 0; a < g.order(); ++a) {
      CHECK(g.multiply(a, g.inverse(a)) == 0);
      CHECK(g.index_of(g.element(a).exps) == a);
      for (std::size_t b = 0; b < g.order(); ++b) {
        CHECK(g.multiply(a, b) == g.multiply(b, a));
        for (std::size_t v = 0; v < 2; ++v)
          CHECK(g.eigenvalue(g.multiply(a, b), v) == g.eigenvalue(a, v) * g.eigenvalue(b, v));
      }
    }
  }

  TEST_CASE("order cap") { CHECK_THROWS_AS(DiagGroup({{Rational(1, 97)}}, 1, 50), Error); }
}
