#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "support.hpp"

using namespace lgorb;
using lgorb::testing::koszul_power;
using lgorb::testing::one_var;

namespace {
using Pairs = std::vector<std::pair<std::string, std::string>>;

// Whether delta_Q = S delta_P S^{-1} for some signed permutation S preserving parity.
bool equal_up_to_signed_permutation(const EquivMF& P, const EquivMF& Q) {
  const std::size_t r = P.rank();
  if (Q.rank() != r) return false;
  std::vector<std::size_t> se(r), so(r);
  std::iota(se.begin(), se.end(), 0);
  do {
    std::iota(so.begin(), so.end(), 0);
    do {
      for (unsigned signs = 0; signs < (1u << (2 * r)); ++signs) {
        auto sg = [&](std::size_t k) { return (signs >> k) & 1u ? CycNum(-1) : CycNum(1); };
        bool ok = true;
        for (std::size_t i = 0; i < r && ok; ++i)
          for (std::size_t j = 0; j < r && ok; ++j) {
            ok = Q.A()(i, j) == P.A()(se[i], so[j]) * (sg(i) * sg(r + j)) &&
                 Q.B()(i, j) == P.B()(so[i], se[j]) * (sg(r + i) * sg(j));
          }
        if (ok) return true;
      }
    } while (std::next_permutation(so.begin(), so.end()));
  } while (std::next_permutation(se.begin(), se.end()));
  return false;
}

std::vector<Poly> chern_tops(const EquivMF& P) {
  std::vector<Poly> out;
  for (const auto& L : fixed_loci(*P.model())) out.push_back(chern_sector(P, L).top_poly);
  return out;
}
}  // namespace

TEST_SUITE("mf") {
  TEST_CASE("koszul examples") {
    const ModelPtr M = one_var(2, 1);
    const EquivMF P = koszul(Pairs{{"x", "x"}}, M);
    CHECK(P.rank() == 1);
    CHECK(P.A()(0, 0) == Poly::parse("x", M->ring()));
    CHECK(P.B()(0, 0) == Poly::parse("x", M->ring()));

    const ModelPtr M2 = LGModel::make({{"x", 1}, {"y", 1}}, "x^2 + y^2", {}, true);
    const EquivMF K = koszul(Pairs{{"x", "x"}, {"y", "y"}}, M2);
    CHECK(K.rank() == 2);
    CHECK((K.A() * K.B()).is_scalar_multiple_of_identity(M2->potential()));
    CHECK((K.B() * K.A()).is_scalar_multiple_of_identity(M2->potential()));

    const EquivMF C = koszul(Pairs{{"1", "x^2"}}, M);
    CHECK((C.A().has_unit_entry() || C.B().has_unit_entry()));
  }

  TEST_CASE("koszul construction errors") {
    const ModelPtr M = one_var(2, 2);
    CHECK_THROWS_AS(koszul(Pairs{{"x", "x^2"}}, M), Error);
    const ModelPtr M2 =
        LGModel::make({{"x", 1}, {"y", 1}}, "x^2 + y^2", {{Rational(1, 2), Rational(0)}}, true, kDefaultGroupOrderCap, 4);
    try {
      koszul(Pairs{{"x + z(4,1)*y", "x - z(4,1)*y"}}, M2);
      FAIL("non-semi-invariant entries accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Equivariance);
    }
  }

  TEST_CASE("validation rejects bad explicit data") {
    const ModelPtr M = one_var(2, 2);
    const RingPtr r = M->ring();
    const PolyMatrix A = PolyMatrix::from_strings(r, {{"x"}}, 2);
    const std::vector<BlockAction> good{{Matrix::diagonal({CycNum(1)}), Matrix::diagonal({CycNum(-1)})}};
    const std::vector<BlockAction> bad{{Matrix::diagonal({CycNum(1)}), Matrix::diagonal({CycNum(1)})}};
    CHECK_NOTHROW(EquivMF(M, A, A, good, std::vector<Rational>{0}, std::vector<Rational>{-1}));
    CHECK_THROWS_AS(EquivMF(M, A, A, bad, std::vector<Rational>{0}, std::vector<Rational>{-1}), Error);
    CHECK_THROWS_AS(EquivMF(M, A, A * A, good, std::nullopt, std::nullopt), Error);
    CHECK_THROWS_AS(EquivMF(M, A, A, good, std::vector<Rational>{0}, std::vector<Rational>{0}), Error);
    const std::vector<BlockAction> not_hom{{Matrix::diagonal({CycNum::zeta(4, 1)}), Matrix::diagonal({-CycNum::zeta(4, 1)})}};
    CHECK_THROWS_AS(EquivMF(M, A, A, not_hom, std::nullopt, std::nullopt), Error);
  }

  TEST_CASE("model validation") {
    CHECK_THROWS_AS(LGModel::make({{"x", 1}}, "x^2 + 1", {}, false), Error);
    CHECK_THROWS_AS(LGModel::make({{"x", 1}}, "x^2 + x^3", {}, true), Error);
    CHECK_THROWS_AS(LGModel::make({{"x", 1}}, "x^3", {{Rational(1, 2)}}, true), Error);
    CHECK_NOTHROW(LGModel::make({{"x", 1}}, "x^2 + x^3", {}, false));
  }

  TEST_CASE("external tensor of rank-one Koszul factorizations") {
    const ModelPtr Mx = LGModel::make({{"x", 1}}, "x^2", {}, true);
    const ModelPtr My = LGModel::make({{"y", 1}}, "y^2", {}, true);
    const EquivMF T = external_tensor(koszul(Pairs{{"x", "x"}}, Mx), koszul(Pairs{{"y", "y"}}, My));
    const EquivMF K = koszul(Pairs{{"x", "x"}, {"y", "y"}}, T.model());
    CHECK(T.rank() == 2);
    CHECK(equal_up_to_signed_permutation(K, T));
  }

  TEST_CASE("tensor rank and contractibility") {
    const ModelPtr M = one_var(3, 3);
    const EquivMF P = koszul_power(M, 3, 1, 1), Q = koszul_power(M, 3, 2, 2);
    const EquivMF PQ = external_tensor(P, Q);
    CHECK(PQ.rank() == 2 * P.rank() * Q.rank());
    const EquivMF C = koszul(Pairs{{"1", "x^3"}}, M);
    for (const Poly& t : chern_tops(external_tensor(P, C))) CHECK(t.is_zero());
    for (const Poly& t : chern_tops(tensor(P, C))) CHECK(t.is_zero());
  }

  TEST_CASE("dual") {
    const ModelPtr M = one_var(2, 2);
    const EquivMF P = koszul(Pairs{{"x", "x"}}, M);
    const EquivMF D = dual(P);
    CHECK(D.rank() == P.rank());
    CHECK(D.A()(0, 0) == Poly::parse("x", M->ring()));
    CHECK(D.B()(0, 0) == Poly::parse("-x", M->ring()));
    CHECK((D.A() * D.B()).is_scalar_multiple_of_identity(-M->potential()));
    for (int n = 2; n <= 4; ++n) {
      const ModelPtr Mn = one_var(n, n);
      for (int a = 1; a < n; ++a)
        for (int j = 0; j < n; ++j) {
          const EquivMF K = koszul_power(Mn, n, a, j);
          CHECK(chern_tops(dual(dual(K))) == chern_tops(K));
        }
    }
  }

  TEST_CASE("twist") {
    const ModelPtr M = one_var(2, 2);
    const EquivMF P = koszul(Pairs{{"x", "x"}}, M);
    const EquivMF T0 = twist(P, {Rational(0)});
    CHECK(T0.rho(1).even == P.rho(1).even);
    CHECK(T0.rho(1).odd == P.rho(1).odd);
    const EquivMF T = twist(P, {Rational(1, 2)});
    CHECK(T.rho(1).even == CycNum(-1) * P.rho(1).even);
    CHECK(T.rho(1).odd == CycNum(-1) * P.rho(1).odd);
    const EquivMF TT = twist(T, {Rational(1, 2)});
    CHECK(TT.rho(1).even == P.rho(1).even);
    CHECK_THROWS_AS(twist(P, {Rational(1, 3)}), Error);
  }

  TEST_CASE("restriction to sectors") {
    const ModelPtr M = one_var(2, 2);
    const EquivMF P = koszul(Pairs{{"x", "x"}}, M);
    const RestrictedMF g = restrict_to_sector(P, M->sectors()[1]);
    CHECK(g.A.is_zero());
    CHECK(g.B.is_zero());
    CHECK(g.rho_even == Matrix::diagonal({CycNum(1)}));
    CHECK(g.rho_odd == Matrix::diagonal({CycNum(-1)}));
    const RestrictedMF e = restrict_to_sector(P, M->sectors()[0]);
    CHECK(e.A == P.A());
    CHECK(e.B == P.B());
    const EquivMF C = koszul(Pairs{{"1", "x^2"}}, M);
    const RestrictedMF c = restrict_to_sector(C, M->sectors()[1]);
    CHECK((c.A.has_unit_entry() || c.B.has_unit_entry()));
  }

  TEST_CASE("auto-derived structures are equivariant on the mu3 Fermat model") {
    const ModelPtr M =
        LGModel::make({{"x", 1}, {"y", 1}}, "x^3 + y^3", {{Rational(1, 3), Rational(2, 3)}}, true);
    const Pairs ps[] = {{{"x", "x^2"}, {"y", "y^2"}}, {{"x^2", "x"}, {"y", "y^2"}}, {{"x^2", "x"}, {"y^2", "y"}}};
    for (const auto& p : ps) {
      const EquivMF K = koszul(p, M);
      for (std::size_t g = 0; g < M->group().order(); ++g) {
        const PolyMatrix gA = M->group().act(g, K.A());
        const PolyMatrix gB = M->group().act(g, K.B());
        auto scal = [&](const Matrix& m) {
          PolyMatrix out(M->ring(), m.rows(), m.cols());
          for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Poly(M->ring(), m(i, j));
          return out;
        };
        CHECK(scal(K.rho(g).even) * gA == K.A() * scal(K.rho(g).odd));
        CHECK(scal(K.rho(g).odd) * gB == K.B() * scal(K.rho(g).even));
      }
    }
  }

  TEST_CASE("morphism helpers") {
    const ModelPtr M = one_var(3, 1);
    const EquivMF P = koszul_power(M, 3, 1);
    const Morphism id = identity_morphism(P);
    CHECK(is_closed(P, P, id));
    Morphism h{PolyMatrix(M->ring(), 2, 2), 1};
    h.matrix(0, 1) = Poly::parse("1", M->ring());
    const Morphism dh = hom_differential(P, P, h);
    CHECK(dh.parity == 0);
    CHECK(is_closed(P, P, dh));
    CHECK(compose(id, dh).matrix == dh.matrix);
  }
}
