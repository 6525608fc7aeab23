#include "doctest.h"
#include "support.hpp"

using namespace lgorb;
using lgorb::testing::random_poly;

namespace {
DiffForm random_form(std::mt19937& rng, const RingPtr& r) {
  DiffForm f(r);
  const std::uint32_t full = (1u << r->nvars()) - 1;
  for (std::uint32_t S = 0; S <= full; ++S)
    if (rng() % 2) f.add(S, random_poly(rng, r, 2, 2));
  return f;
}

FormMatrix random_matrix(std::mt19937& rng, const RingPtr& r, std::size_t n, std::size_t even, int total_parity) {
  FormMatrix m(r, n, even);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_form(rng, r);
  return total_parity < 0 ? m : m.total_parity_part(total_parity);
}
}  // namespace

TEST_SUITE("forms") {
  TEST_CASE("wedge signs") {
    CHECK(wedge_sign(0b01, 0b10) == 1);
    CHECK(wedge_sign(0b10, 0b01) == -1);
    CHECK(wedge_sign(0b01, 0b01) == 0);
    CHECK(wedge_sign(0b100, 0b011) == 1);
    CHECK(wedge_sign(0b010, 0b101) == -1);
  }

  TEST_CASE("d squares to zero and satisfies Leibniz") {
    std::mt19937 rng(3);
    const RingPtr r = Ring::make({{"x", 1}, {"y", 1}, {"z", 1}});
    for (int trial = 0; trial < 30; ++trial) {
      const DiffForm a = random_form(rng, r), b = random_form(rng, r);
      CHECK(a.d().d().is_zero());
      const DiffForm ae = a.parity_part(0), ao = a.parity_part(1);
      CHECK(wedge(ae, b).d() == wedge(ae.d(), b) + wedge(ae, b.d()));
      CHECK(wedge(ao, b).d() == wedge(ao.d(), b) - wedge(ao, b.d()));
    }
  }

  TEST_CASE("d of matrices") {
    const RingPtr r = Ring::make({{"x", 1}});
    const PolyMatrix X = PolyMatrix::from_strings(r, {{"x"}}, 1);
    const FormMatrix dm = d_matrix(X, X);
    CHECK(dm(0, 0).is_zero());
    CHECK(dm(0, 1) == DiffForm::term(Poly::parse("1", r), 1));
    CHECK(dm(1, 0) == DiffForm::term(Poly::parse("1", r), 1));
    const PolyMatrix C = PolyMatrix::from_strings(r, {{"3"}}, 1);
    CHECK(d_matrix(C, C).is_zero());
    const FormMatrix d2 = d_entrywise(PolyMatrix::from_strings(r, {{"x^2"}}, 1), 1);
    CHECK(d2(0, 0) == DiffForm::term(Poly::parse("2*x", r), 1));
  }

  TEST_CASE("truncated exponential") {
    const RingPtr r = Ring::make({{"x", 1}});
    const std::size_t n = 2;
    const FormMatrix zero(r, n, 1);
    CHECK(exp_neg(zero, 1) == FormMatrix::identity(r, n, 1));
    const PolyMatrix X = PolyMatrix::from_strings(r, {{"x"}}, 1);
    const FormMatrix dd = d_matrix(X, X);
    CHECK(exp_neg(dd, 1) == FormMatrix::identity(r, n, 1) - dd);
  }

  TEST_CASE("supertraces") {
    const RingPtr r0 = Ring::make({});
    const FormMatrix I = FormMatrix::identity(r0, 2, 1);
    const Matrix e = Matrix::diagonal({CycNum(1)}), o = Matrix::diagonal({CycNum(-1)});
    CHECK(supertrace(e, o, I) == DiffForm::function(Poly(r0, CycNum(2))));
    CHECK(supertrace(I).is_zero());
    const RingPtr r = Ring::make({{"x", 1}});
    const PolyMatrix X = PolyMatrix::from_strings(r, {{"x"}}, 1);
    CHECK(supertrace(d_matrix(X, X)).is_zero());
  }

  TEST_CASE("supertrace of a supercommutator vanishes") {
    std::mt19937 rng(17);
    const RingPtr r = Ring::make({{"x", 1}, {"y", 1}});
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 2 + trial % 3, even = 1 + trial % 2;
      const int px = trial % 2, py = (trial / 2) % 2;
      const FormMatrix X = random_matrix(rng, r, n, even, px), Y = random_matrix(rng, r, n, even, py);
      CHECK(supertrace(supercommutator(X, Y)).is_zero());
    }
  }

  TEST_CASE("matrix product is associative") {
    std::mt19937 rng(4);
    const RingPtr r = Ring::make({{"x", 1}, {"y", 1}});
    for (int trial = 0; trial < 10; ++trial) {
      const FormMatrix a = random_matrix(rng, r, 2, 1, -1), b = random_matrix(rng, r, 2, 1, -1),
                       c = random_matrix(rng, r, 2, 1, -1);
      CHECK((a * b) * c == a * (b * c));
    }
  }
}
