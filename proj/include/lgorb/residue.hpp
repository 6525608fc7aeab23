#pragma once

#include <vector>

#include "lgorb/groebner.hpp"
#include "lgorb/group.hpp"
#include "lgorb/linalg.hpp"
#include "lgorb/poly.hpp"

namespace lgorb {

class LGModel;

/// Data for Res[h dx / (d_1 w, ..., d_n w)] by the transformation law:
/// x_i^{N_i} = sum_j a_ij d_j w, and Res[h dx/(dw)] is the coefficient of
/// x^{N-1} in h det(a).
struct ResidueProblem {
  RingPtr ring;
  Poly w;
  std::vector<Poly> partials;
  GroebnerBasis jacobian;
  std::vector<unsigned> lift_exponents;
  PolyMatrix cofactors;
  Poly det_cofactors;
};

/// Requires an isolated critical point. Validates the lift identity.
ResidueProblem residue_problem(const Poly& w);
CycNum residue(const Poly& h, const ResidueProblem& rp);
/// det of the Hessian matrix of w.
Poly hessian(const Poly& w);
/// G_ij = Res[e_i e_j dx/(dw)].
Matrix residue_gram(const ResidueProblem& rp, const std::vector<Monomial>& basis);

/// The fixed locus of one sector with its restricted potential w_g written
/// over the fixed coordinates only.
struct FixedLocus {
  Sector sector;
  RingPtr ring;               // fixed coordinates, in ascending order
  std::vector<int> to_local;  // model variable -> local index or -1
  Poly w;
  std::vector<Monomial> basis;  // standard monomials of Jac(w_g); {1} when n_g = 0
  ResidueProblem residue;

  std::size_t n_fixed() const noexcept { return sector.n_fixed(); }
  /// Sets moving coordinates to 0 and rewrites over the local ring.
  Poly localize(const Poly& p) const;
  /// Normal form modulo Jac(w_g).
  Poly reduce(const Poly& local) const;
};

/// Throws a model error when the sector's critical locus is not isolated.
FixedLocus fixed_locus(const LGModel& model, const Sector& s);
std::vector<FixedLocus> fixed_loci(const LGModel& model);

/// Indices into locus.basis of the classes m dx_g fixed by every group element.
std::vector<std::size_t> invariant_classes(const FixedLocus& locus, const DiagGroup& group);

/// Orientation sign attached to a sector of dimension n.
int pairing_sign(std::size_t n);

/// (1/|G|) pairing_sign(n_g) Res[t1 t2 dx/(dw_g)] / prod(1 - lambda^{-1}),
/// for top coefficients t1, t2 over the locus ring.
CycNum sector_pairing(const Poly& top1, const Poly& top2, const FixedLocus& locus, std::size_t group_order);

/// Gram matrix of sector_pairing on the standard monomial basis.
Matrix sector_gram(const FixedLocus& locus, std::size_t group_order);

}  // namespace lgorb
