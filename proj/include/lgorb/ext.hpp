#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lgorb/mf.hpp"

namespace lgorb {

struct ExtOptions {
  /// Extra room added above the computed upper degree bound.
  Rational degree_window_slack{0};
  /// Number of times the window may widen by d before giving up.
  unsigned max_widenings = 8;
};

/// The graded Hom complex Hom(P, Q) with d(f) = delta_Q f - (-1)^{|f|} f delta_P.
///
/// The piece C_{t,p} holds maps of internal degree t and parity p; entry
/// (i, j) of such a map has polynomial degree t + eff_P(j) - eff_Q(i). The
/// differential sends C_{t,p} to C_{t + d/2, 1 - p}.
class HomComplex {
public:
  struct Coordinate {
    std::size_t row, col;
    Monomial mono;
  };
  struct Piece {
    Rational degree;
    int parity = 0;
    std::vector<Coordinate> basis;
    std::map<std::pair<std::size_t, std::array<std::uint16_t, kMaxVars>>, std::size_t> index;
    /// Columns span the G-invariant subspace, in full coordinates.
    Matrix invariants;
  };

  HomComplex(const EquivMF& P, const EquivMF& Q);

  const EquivMF& source() const noexcept { return P_; }
  const EquivMF& target() const noexcept { return Q_; }
  const Rational& half_degree() const noexcept { return half_d_; }

  const Piece& piece(const Rational& t, int parity);
  /// Matrix of d from piece(t, p) to piece(t + d/2, 1 - p), full coordinates.
  Matrix differential(const Rational& t, int parity);
  /// Invariant coboundaries landing in piece(t, p), as columns.
  Matrix coboundaries(const Rational& t, int parity);
  /// Invariant cocycles in piece(t, p), as columns.
  Matrix cocycles(const Rational& t, int parity);

  Morphism to_morphism(const Piece& piece, const Matrix& columns, std::size_t col) const;
  /// Coordinates of f in piece(t, p); nullopt if f has terms outside it.
  std::optional<std::vector<CycNum>> coordinates(const Morphism& f, const Rational& t);

  /// Internal degrees t <= hi for which some piece is nonempty, ascending.
  std::vector<Rational> candidate_degrees(const Rational& hi) const;
  /// Smallest degree with a nonempty piece.
  Rational lowest_degree() const;
  /// max(eff_Q(i) - eff_P(j)) + socle degree of Jac(w) + d.
  Rational default_upper_bound() const;

private:
  Piece build_piece(const Rational& t, int parity) const;
  Matrix invariant_basis(const Piece& piece) const;

  const EquivMF& P_;
  const EquivMF& Q_;
  Rational half_d_;
  std::vector<Rational> eff_P_, eff_Q_;
  bool diagonal_rho_ = true;
  std::map<std::pair<Rational, int>, Piece> pieces_;
};

/// Cohomology of the invariant complex in one bidegree, with representatives.
struct ExtGroup {
  Rational degree;
  int parity = 0;
  std::vector<Morphism> reps;
};

struct ExtBasis {
  std::vector<ExtGroup> groups;
  Rational window_low, window_high;
  std::size_t dim(int parity) const;
  /// All representatives with their (degree, parity), in group order.
  std::vector<std::pair<const ExtGroup*, const Morphism*>> elements() const;
};

ExtBasis ext_basis(const EquivMF& P, const EquivMF& Q, const ExtOptions& options = {});
/// dim Ext^0 - dim Ext^1 on G-invariants.
long euler_characteristic(const EquivMF& P, const EquivMF& Q, const ExtOptions& options = {});

/// Writes cocycles of Hom(P, Q) in a fixed Ext basis modulo coboundaries.
class ExtDecomposer {
public:
  ExtDecomposer(const EquivMF& P, const EquivMF& Q, const ExtBasis& basis);
  /// Coefficients of z along every element of basis.elements(); z must be a
  /// homogeneous invariant cocycle of the given degree and parity.
  std::vector<CycNum> decompose(const Morphism& z, const Rational& degree);

private:
  HomComplex complex_;
  const ExtBasis& basis_;
  std::map<std::pair<Rational, int>, std::pair<Matrix, std::vector<std::size_t>>> systems_;
};

/// str of c -> (-1)^{|a||c|} b c a on Ext(P, Q), for a in Ext(P, P) of degree
/// ta and b in Ext(Q, Q) of degree tb.
CycNum cardy_trace(const EquivMF& P, const EquivMF& Q, const Morphism& a, const Rational& ta, const Morphism& b,
                   const Rational& tb, const ExtBasis& basis_PQ, ExtDecomposer& decomposer);

/// Checks d_i w Id = delta d_i(delta) + d_i(delta) delta for every variable.
bool homotopy_identity_holds(const EquivMF& P);

}  // namespace lgorb
