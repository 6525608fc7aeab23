#pragma once

#include "lgorb/forms.hpp"
#include "lgorb/mf.hpp"
#include "lgorb/residue.hpp"

namespace lgorb {

/// A class in H(Omega_{X^g}, -dw_g) ~ Jac(w_g) dx_g.
struct SectorClass {
  std::size_t sector = 0;
  /// Inhomogeneous representative over the model ring, moving coordinates set to 0.
  DiffForm raw_form;
  /// Coefficient of dx_g over the locus ring, in normal form modulo Jac(w_g).
  Poly top_poly;
};

/// str(rho(g) exp(-d delta |_{X^g})).
SectorClass chern_sector(const EquivMF& P, const FixedLocus& locus);
/// As chern_sector, with connection d + Gamma: d delta is replaced by
/// [d + Gamma, delta] = d delta + [Gamma, delta] on the fixed locus. Gamma must
/// be an even-block one-form matrix commuting with rho(g).
SectorClass chern_sector(const EquivMF& P, const FixedLocus& locus, const FormMatrix& gamma);
/// str(a rho(g) exp(-d delta |_{X^g})); `a` must be closed.
SectorClass boundary_bulk(const EquivMF& P, const Morphism& a, const FixedLocus& locus);

/// Extracts and reduces the dx_g coefficient of a form over the model ring.
Poly top_coefficient(const DiffForm& raw, const FixedLocus& locus);

}  // namespace lgorb
