#include "doctest.h"
#include "support.hpp"

using namespace lgorb;
using lgorb::testing::evaluate;
using lgorb::testing::random_poly;

namespace {
RingPtr xy(Rational wx = 1, Rational wy = 1) { return Ring::make({{"x", wx}, {"y", wy}}); }
Poly P(const char* s, const RingPtr& r, unsigned m = 1) { return Poly::parse(s, r, m); }
}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("parse") {
    const RingPtr r = xy();
    const Poly p = P("x^3 + 2*x*y", r);
    CHECK(p.size() == 2);
    Monomial x3, xy1;
    x3[0] = 3;
    xy1[0] = 1;
    xy1[1] = 1;
    CHECK(p.coefficient(x3) == CycNum(1));
    CHECK(p.coefficient(xy1) == CycNum(2));
    CHECK(P("x - x", r).is_zero());
    CHECK(P("z(2,1)*x", r, 2) == -Poly::variable(r, 0));
    CHECK(P("(x+y)^2", r) == P("x^2 + 2*x*y + y^2", r));
    CHECK(P("-3/2*x", r) == Poly::variable(r, 0) * CycNum(Rational(-3, 2)));
  }

  TEST_CASE("parse errors carry positions") {
    const RingPtr r = xy();
    CHECK_THROWS_AS(P("x + q", r), ParseError);
    CHECK_THROWS_AS(P("x^", r), ParseError);
    CHECK_THROWS_AS(P("x^-1", r), ParseError);
    CHECK_THROWS_AS(P("x +", r), ParseError);
    CHECK_THROWS_AS(P("z(3,1)*x", r, 2), Error);
    try {
      P("x + q", r);
    } catch (const ParseError& e) {
      CHECK(e.position() == 4);
    }
  }

  TEST_CASE("derive") {
    const RingPtr r = xy();
    CHECK(P("x^3", r).derive("x") == P("3*x^2", r));
    CHECK(P("x^3", r).derive("y").is_zero());
    CHECK(P("x^2*y + y^2", r).derive("x") == P("2*x*y", r));
  }

  TEST_CASE("restrict") {
    const RingPtr r = xy();
    CHECK(P("x^2 + y^2", r).restrict(std::vector<std::string>{"y"}) == P("x^2", r));
    CHECK(P("x*y", r).restrict(std::vector<std::string>{"y"}).is_zero());
    CHECK(P("x^2 + y^2", r).restrict(std::vector<std::string>{}) == P("x^2 + y^2", r));
  }

  TEST_CASE("weighted degree") {
    CHECK(P("x^3 + y^3", xy()).weighted_degree_check(3));
    CHECK(P("x^3 + y^2", xy(2, 3)).weighted_degree_check(6));
    CHECK(!P("x^3 + y", xy()).weighted_degree_check(3));
    CHECK(*P("x^2*y", xy(Rational(1, 3), Rational(1, 2))).homogeneous_degree() == Rational(7, 6));
  }

  TEST_CASE("ring axioms and evaluation on random inputs") {
    std::mt19937 rng(5);
    const RingPtr r = xy();
    const std::vector<std::complex<double>> pt{{0.3, -0.7}, {1.1, 0.2}};
    for (int trial = 0; trial < 40; ++trial) {
      const unsigned m = trial % 2 ? 3 : 1;
      const Poly a = random_poly(rng, r, 3, 4, m), b = random_poly(rng, r, 3, 4, m), c = random_poly(rng, r, 2, 3, m);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
      CHECK(std::abs(evaluate(a * b, pt) - evaluate(a, pt) * evaluate(b, pt)) < 1e-6 * (1 + std::abs(evaluate(a * b, pt))));
      CHECK(a.derive(0).derive(1) == a.derive(1).derive(0));
      CHECK((a * b).derive(0) == a.derive(0) * b + a * b.derive(0));
    }
  }

  TEST_CASE("print then parse is the identity") {
    std::mt19937 rng(8);
    const RingPtr r = xy();
    for (int trial = 0; trial < 30; ++trial) {
      const unsigned m = trial % 3 ? 5 : 1;
      const Poly a = random_poly(rng, r, 4, 5, m);
      CHECK(Poly::parse(a.str(), r, m) == a);
    }
  }

  TEST_CASE("monomial order refines weighted degree") {
    const RingPtr r = xy(2, 3);
    const auto mons = r->monomials_of_degree(6);
    CHECK(mons.size() == 2);
    for (const auto& m : mons) CHECK(r->degree(m) == 6);
    Monomial x, y;
    x[0] = 1;
    y[1] = 1;
    CHECK(r->less(x, y));
  }
}
