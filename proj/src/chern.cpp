#include "lgorb/chern.hpp"

namespace lgorb {

namespace {

SectorClass finish(const DiffForm& raw, const FixedLocus& locus) {
  return SectorClass{locus.sector.element, raw, top_coefficient(raw, locus)};
}

}  // namespace

Poly top_coefficient(const DiffForm& raw, const FixedLocus& locus) {
  return locus.reduce(locus.localize(raw.component(locus.sector.fixed_mask)));
}

SectorClass chern_sector(const EquivMF& P, const FixedLocus& locus) {
  const RestrictedMF R = restrict_to_sector(P, locus.sector);
  const FormMatrix E = exp_neg(d_matrix(R.A, R.B), static_cast<unsigned>(locus.n_fixed()));
  return finish(supertrace(R.rho_even, R.rho_odd, E), locus);
}

SectorClass chern_sector(const EquivMF& P, const FixedLocus& locus, const FormMatrix& gamma) {
  const RestrictedMF R = restrict_to_sector(P, locus.sector);
  const std::size_t r = R.A.rows();
  if (gamma.size() != 2 * r || gamma.even() != r)
    throw Error(ErrorKind::Contract, "chern", "connection form has the wrong size");
  const FormMatrix rho = FormMatrix::from_scalar(R.rho_full(), R.A.ring(), r);
  if (!(rho * gamma == gamma * rho))
    throw Error(ErrorKind::Contract, "chern", "connection form does not commute with rho(g)");
  const FormMatrix delta = FormMatrix::from_poly(R.delta(), r);
  const FormMatrix curvature = d_matrix(R.A, R.B) + supercommutator(gamma, delta);
  const FormMatrix E = exp_neg(curvature, static_cast<unsigned>(locus.n_fixed()));
  return finish(supertrace(R.rho_even, R.rho_odd, E), locus);
}

SectorClass boundary_bulk(const EquivMF& P, const Morphism& a, const FixedLocus& locus) {
  if (!is_closed(P, P, a)) throw Error(ErrorKind::Contract, "chern", "boundary-bulk input is not closed");
  const RestrictedMF R = restrict_to_sector(P, locus.sector);
  const std::size_t r = R.A.rows();
  const std::size_t n = P.model()->ring()->nvars();
  const std::uint32_t moving = ((n >= 32) ? ~0u : ((1u << n) - 1u)) & ~locus.sector.fixed_mask;
  const PolyMatrix a_restricted = a.matrix.map([&](const Poly& p) { return p.restrict(moving); });
  const FormMatrix lhs = FormMatrix::from_poly(a_restricted, r) * FormMatrix::from_scalar(R.rho_full(), R.A.ring(), r);
  const FormMatrix E = exp_neg(d_matrix(R.A, R.B), static_cast<unsigned>(locus.n_fixed()));
  return finish(supertrace(lhs * E), locus);
}

}  // namespace lgorb
