#include "doctest.h"
#include "support.hpp"

using namespace lgorb;
using lgorb::testing::koszul_power;
using lgorb::testing::one_var;
using lgorb::testing::random_poly;

namespace {
using Pairs = std::vector<std::pair<std::string, std::string>>;

Morphism scalar_morphism(const RingPtr& r, const Matrix& m) {
  Morphism out{PolyMatrix(r, m.rows(), m.cols()), 0};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.matrix(i, j) = Poly(r, m(i, j));
  return out;
}
}  // namespace

TEST_SUITE("chern") {
  TEST_CASE("calibration case") {
    const ModelPtr M = one_var(2, 2);
    const EquivMF P = koszul(Pairs{{"x", "x"}}, M);
    const auto loci = fixed_loci(*M);
    const SectorClass g = chern_sector(P, loci[1]);
    CHECK(g.raw_form == DiffForm::function(Poly(M->ring(), CycNum(2))));
    CHECK(g.top_poly == Poly(loci[1].ring, CycNum(2)));
    CHECK(chern_sector(P, loci[0]).top_poly.is_zero());
    // rho(g) is not closed, so only the direct expansion of str(rho(g) (I - d delta)) is meaningful.
    const Morphism a = scalar_morphism(M->ring(), P.rho_full(1));
    try {
      boundary_bulk(P, a, loci[0]);
      FAIL("non-closed input accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Contract);
    }
    const DiffForm s = supertrace(P.rho(1).even, P.rho(1).odd, exp_neg(d_matrix(P.A(), P.B()), 1));
    CHECK(s.component(1).is_zero());
    CHECK(s.component(0) == Poly(M->ring(), CycNum(2)));
  }

  TEST_CASE("contractible factorizations have vanishing classes") {
    for (int n = 2; n <= 4; ++n) {
      const ModelPtr M = one_var(n, n);
      const EquivMF C = koszul(Pairs{{"1", "x^" + std::to_string(n)}}, M);
      for (const auto& L : fixed_loci(*M)) CHECK(chern_sector(C, L).top_poly.is_zero());
    }
  }

  TEST_CASE("boundary-bulk of the identity is the Chern character") {
    const ModelPtr M = LGModel::make({{"x", 1}, {"y", 1}}, "x^3 + y^3", {{Rational(1, 3), Rational(1, 3)}}, true);
    const EquivMF K = koszul(Pairs{{"x", "x^2"}, {"y", "y^2"}}, M);
    for (const auto& L : fixed_loci(*M))
      CHECK(boundary_bulk(K, identity_morphism(K), L).top_poly == chern_sector(K, L).top_poly);
  }

  TEST_CASE("exact endomorphisms have vanishing boundary-bulk image") {
    std::mt19937 rng(31);
    const ModelPtr M = LGModel::make({{"x", 1}, {"y", 1}}, "x^3 + y^3", {}, true);
    const EquivMF K = koszul(Pairs{{"x", "x^2"}, {"y", "y^2"}}, M);
    const auto loci = fixed_loci(*M);
    for (int trial = 0; trial < 10; ++trial) {
      Morphism h{PolyMatrix(M->ring(), 4, 4), 1};
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if ((i < 2) != (j < 2)) h.matrix(i, j) = random_poly(rng, M->ring(), 2, 2);
      const Morphism a = hom_differential(K, K, h);
      CHECK(boundary_bulk(K, a, loci[0]).top_poly.is_zero());
    }
  }

  TEST_CASE("additivity under direct sums") {
    const ModelPtr M = one_var(4, 4);
    const auto loci = fixed_loci(*M);
    for (int a = 1; a < 4; ++a)
      for (int b = 1; b < 4; ++b) {
        const EquivMF P = koszul_power(M, 4, a, 1), Q = koszul_power(M, 4, b, 3);
        const EquivMF S = direct_sum(P, Q);
        for (const auto& L : loci)
          CHECK(chern_sector(S, L).top_poly == chern_sector(P, L).top_poly + chern_sector(Q, L).top_poly);
      }
  }

  TEST_CASE("multiplicativity under external tensor products") {
    const ModelPtr Mx = one_var(3, 3);
    const ModelPtr My = LGModel::make({{"y", 1}}, "y^4", {{Rational(1, 2)}}, true);
    const auto lx = fixed_loci(*Mx), ly = fixed_loci(*My);
    for (int a = 1; a < 3; ++a)
      for (int b = 1; b < 4; ++b) {
        const EquivMF P = koszul_power(Mx, 3, a, 1);
        const EquivMF Q = koszul(Pairs{{"y^" + std::to_string(b), "y^" + std::to_string(4 - b)}}, My);
        const EquivMF T = external_tensor(P, Q);
        const ModelPtr& MM = T.model();
        for (const auto& Lp : lx)
          for (const auto& Lq : ly) {
            const unsigned m = MM->conductor();
            auto lifted = [m](std::vector<CycNum> v) {
              for (auto& e : v) e = e.lifted(m);
              return v;
            };
            auto eig = lifted(Mx->group().eigenvalues(Lp.sector.element));
            for (const auto& e : lifted(My->group().eigenvalues(Lq.sector.element))) eig.push_back(e);
            std::size_t el = 0;
            while (lifted(MM->group().eigenvalues(el)) != eig) ++el;
            const FixedLocus L = fixed_locus(*MM, MM->sectors()[el]);
            const Poly cp = chern_sector(P, Lp).top_poly, cq = chern_sector(Q, Lq).top_poly;
            // Embed the two local rings into the product locus ring.
            std::vector<int> ip(Lp.n_fixed()), iq(Lq.n_fixed());
            for (std::size_t v = 0; v < ip.size(); ++v) ip[v] = static_cast<int>(v);
            for (std::size_t v = 0; v < iq.size(); ++v) iq[v] = static_cast<int>(Lp.n_fixed() + v);
            const Poly expected = L.reduce(cp.remap(L.ring, ip) * CycNum(Rational(1), m) * cq.remap(L.ring, iq));
            CHECK(chern_sector(T, L).top_poly == expected);
          }
      }
  }

  TEST_CASE("flat connection perturbations keep the class") {
    std::mt19937 rng(2);
    const ModelPtr M = LGModel::make({{"x", 1}, {"y", 1}}, "x^3 + y^3", {}, true);
    const EquivMF K = koszul(Pairs{{"x", "x^2"}, {"y", "y^2"}}, M);
    const FixedLocus L = fixed_loci(*M)[0];
    const Poly base = chern_sector(K, L).top_poly;
    for (int trial = 0; trial < 5; ++trial) {
      FormMatrix gamma(M->ring(), 4, 2);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if ((i < 2) == (j < 2))
            for (std::uint32_t S : {1u, 2u}) gamma(i, j).add(S, random_poly(rng, M->ring(), 2, 2));
      CHECK(chern_sector(K, L, gamma).top_poly == base);
    }
  }
}
