#include <algorithm>

#include "doctest.h"
#include "support.hpp"

using namespace lgorb;
using lgorb::testing::koszul_power;
using lgorb::testing::one_var;

namespace {
using Pairs = std::vector<std::pair<std::string, std::string>>;

PolyMatrix lift(const RingPtr& r, const Matrix& m) {
  PolyMatrix out(r, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Poly(r, m(i, j));
  return out;
}

// S P S^{-1} on both parities; S must preserve the generator weights.
EquivMF conjugate(const EquivMF& P, const Matrix& S) {
  const RingPtr& r = P.model()->ring();
  const Matrix Si = S.inverse();
  std::vector<BlockAction> rho;
  for (const auto& b : P.rho_generators()) rho.push_back(BlockAction{S * b.even * Si, S * b.odd * Si});
  return EquivMF(P.model(), lift(r, S) * P.A() * lift(r, Si), lift(r, S) * P.B() * lift(r, Si), rho, P.weights_even(),
                 P.weights_odd(), P.name() + "'");
}
}  // namespace

TEST_SUITE("ext") {
  TEST_CASE("hand-computed cases on x^2") {
    const ModelPtr T = one_var(2, 1);
    const EquivMF PT = koszul(Pairs{{"x", "x"}}, T);
    const ExtBasis e = ext_basis(PT, PT);
    CHECK(e.dim(0) == 1);
    CHECK(e.dim(1) == 1);
    CHECK(euler_characteristic(PT, PT) == 0);

    const ModelPtr M = one_var(2, 2);
    const EquivMF P = koszul(Pairs{{"x", "x"}}, M);
    const EquivMF Q = twist(P, {Rational(1, 2)});
    CHECK(ext_basis(P, P).dim(0) == 1);
    CHECK(ext_basis(P, P).dim(1) == 0);
    CHECK(euler_characteristic(P, P) == 1);
    CHECK(euler_characteristic(P, Q) == -1);
  }

  TEST_CASE("Hom between Koszul factorizations of x^n") {
    for (int n = 2; n <= 6; ++n) {
      const ModelPtr M = one_var(n, 1);
      for (int a = 1; a < n; ++a)
        for (int b = 1; b < n; ++b) {
          const ExtBasis e = ext_basis(koszul_power(M, n, a), koszul_power(M, n, b));
          const std::size_t expected = static_cast<std::size_t>(std::min({a, b, n - a, n - b}));
          CHECK(e.dim(0) == expected);
          CHECK(e.dim(1) == expected);
        }
    }
  }

  TEST_CASE("contractible objects have no Ext") {
    const ModelPtr M = one_var(3, 3);
    const EquivMF C = koszul(Pairs{{"1", "x^3"}}, M);
    for (int a = 1; a < 3; ++a) {
      const EquivMF P = koszul_power(M, 3, a, 1);
      CHECK(ext_basis(P, C).dim(0) + ext_basis(P, C).dim(1) == 0);
      CHECK(ext_basis(C, P).dim(0) + ext_basis(C, P).dim(1) == 0);
    }
  }

  TEST_CASE("the identity is a nonzero class") {
    const ModelPtr M = one_var(4, 4);
    for (int a = 1; a < 4; ++a) {
      const EquivMF P = koszul_power(M, 4, a, 2);
      const ExtBasis e = ext_basis(P, P);
      ExtDecomposer dec(P, P, e);
      const auto coeffs = dec.decompose(identity_morphism(P), Rational(0));
      CHECK(std::any_of(coeffs.begin(), coeffs.end(), [](const CycNum& c) { return !c.is_zero(); }));
    }
  }

  TEST_CASE("averaging projector agrees with the diagonal fast path") {
    for (int n : {2, 4}) {
      const ModelPtr M = one_var(n, n);
      for (int a = 1; a < n; ++a) {
        const EquivMF S = direct_sum(koszul_power(M, n, a, 0), koszul_power(M, n, a, 1));
        Matrix g(2, 2);
        g(0, 0) = CycNum(1);
        g(0, 1) = CycNum(2);
        g(1, 0) = CycNum(1);
        g(1, 1) = CycNum(3);
        const EquivMF C = conjugate(S, g);
        CHECK(!C.rho(C.model()->group().generator_element(0)).even.is_diagonal());
        for (int b = 1; b < n; ++b) {
          const EquivMF K = koszul_power(M, n, b, 1);
          CHECK(ext_basis(C, K).dim(0) == ext_basis(S, K).dim(0));
          CHECK(ext_basis(C, K).dim(1) == ext_basis(S, K).dim(1));
          CHECK(ext_basis(K, C).dim(0) == ext_basis(K, S).dim(0));
          CHECK(ext_basis(K, C).dim(1) == ext_basis(K, S).dim(1));
        }
        CHECK(euler_characteristic(C, C) == euler_characteristic(S, S));
      }
    }
  }

  TEST_CASE("ungraded inputs are rejected") {
    const ModelPtr M = one_var(2, 2, false);
    const EquivMF P = koszul(Pairs{{"x", "x"}}, M);
    try {
      euler_characteristic(P, P);
      FAIL("ungraded Ext accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GradingRequired);
    }
  }

  TEST_CASE("homotopy identity") {
    const ModelPtr M = LGModel::make({{"x", 1}, {"y", 1}}, "x^3 + y^3", {}, true);
    CHECK(homotopy_identity_holds(koszul(Pairs{{"x", "x^2"}, {"y", "y^2"}}, M)));
    CHECK(homotopy_identity_holds(koszul(Pairs{{"x+y", "x^2-x*y+y^2"}}, M)));
  }

  TEST_CASE("Cardy trace of identities is the Euler characteristic") {
    const ModelPtr M = one_var(4, 4);
    for (int a = 1; a < 4; ++a)
      for (int b = 1; b < 4; ++b) {
        const EquivMF P = koszul_power(M, 4, a, 1), Q = koszul_power(M, 4, b, 2);
        const ExtBasis e = ext_basis(P, Q);
        ExtDecomposer dec(P, Q, e);
        const CycNum tr =
            cardy_trace(P, Q, identity_morphism(P), Rational(0), identity_morphism(Q), Rational(0), e, dec);
        CHECK(tr == CycNum(euler_characteristic(P, Q)));
      }
  }

  TEST_CASE("Cardy trace of an exact endomorphism vanishes") {
    const ModelPtr M = one_var(3, 1);
    const EquivMF P = koszul_power(M, 3, 1);
    const ExtBasis e = ext_basis(P, P);
    ExtDecomposer dec(P, P, e);
    // a = d(E_01) is exact of degree eff(0) - eff(1) + d/2.
    Morphism h{identity_morphism(P).matrix, 1};
    h.matrix(0, 0) = Poly(M->ring());
    h.matrix(1, 1) = Poly(M->ring());
    h.matrix(0, 1) = Poly(M->ring(), CycNum(1));
    const Morphism a = hom_differential(P, P, h);
    if (!a.matrix.is_zero()) {
      const Rational ta = P.effective_degrees()[0] - P.effective_degrees()[1] + M->degree() / 2;
      CHECK(cardy_trace(P, P, a, ta, identity_morphism(P), Rational(0), e, dec).is_zero());
    }
  }
}
