#pragma once

#include <optional>
#include <vector>

#include "lgorb/poly.hpp"

namespace lgorb {

/// Reduced Groebner basis under the ring's monomial order.
///
/// When built with cofactor tracking, `cofactors[k]` expresses generator k in
/// terms of the input polynomials: basis[k] = sum_j cofactors[k][j] * inputs[j].
struct GroebnerBasis {
  RingPtr ring;
  std::vector<Poly> basis;
  std::vector<Poly> inputs;
  std::vector<std::vector<Poly>> cofactors;

  bool is_unit_ideal() const;
  /// True iff no standard monomial is divisible by an arbitrary power of
  /// some variable, i.e. the quotient ring is finite-dimensional.
  bool zero_dimensional() const;
};

GroebnerBasis buchberger(const std::vector<Poly>& gens, bool track_cofactors = false);

struct Reduction {
  Poly remainder;
  /// p = sum_k basis_cofactors[k] * basis[k] + remainder.
  std::vector<Poly> basis_cofactors;
  /// p = sum_j input_cofactors[j] * inputs[j] + remainder; filled only when
  /// the basis tracks cofactors.
  std::vector<Poly> input_cofactors;
};

Reduction normal_form(const Poly& p, const GroebnerBasis& gb, bool with_cofactors);
Poly normal_form(const Poly& p, const GroebnerBasis& gb);

struct MilnorData {
  /// nullopt means the Jacobian quotient is infinite-dimensional.
  std::optional<std::size_t> milnor_number;
  std::vector<Monomial> standard_monomials;
  GroebnerBasis jacobian;
};

/// Milnor number and monomial basis of k[x]/(d_1 w, ..., d_n w).
MilnorData milnor_data(const Poly& w, bool track_cofactors = false);

/// Monomials outside the leading-term ideal, ascending; empty if infinite.
std::vector<Monomial> standard_monomials(const GroebnerBasis& gb);

}  // namespace lgorb
