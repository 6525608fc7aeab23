#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lgorb/group.hpp"
#include "lgorb/linalg.hpp"
#include "lgorb/poly.hpp"

namespace lgorb {

class LGModel;
using ModelPtr = std::shared_ptr<const LGModel>;

/// Affine orbifold [A^n/G] with invariant potential w.
class LGModel {
public:
  /// Scalars live in Q(zeta_m) with m = lcm(group conductor, field_conductor).
  LGModel(RingPtr ring, Poly w, DiagGroup group, bool graded, unsigned field_conductor = 1);
  static ModelPtr make(RingPtr ring, Poly w, DiagGroup group, bool graded, unsigned field_conductor = 1);
  static ModelPtr make(std::vector<VarSpec> vars, std::string_view potential,
                       std::vector<std::vector<Rational>> generators, bool graded,
                       std::size_t order_cap = kDefaultGroupOrderCap, unsigned field_conductor = 1);

  const RingPtr& ring() const noexcept { return ring_; }
  const Poly& potential() const noexcept { return w_; }
  const DiagGroup& group() const noexcept { return group_; }
  unsigned conductor() const noexcept { return conductor_; }
  bool graded() const noexcept { return degree_.has_value(); }
  /// Weighted degree of w; requires graded().
  const Rational& degree() const;
  const std::vector<Sector>& sectors() const noexcept { return sectors_; }

  /// Same coordinates and group, different potential.
  ModelPtr with_potential(Poly w) const;
  bool same_as(const LGModel& other) const;

  /// Throws unless every sector with fixed coordinates has an isolated
  /// critical point (finite Milnor number of the restricted potential).
  void require_isolated() const;

private:
  RingPtr ring_;
  Poly w_;
  DiagGroup group_;
  unsigned conductor_ = 1;
  std::optional<Rational> degree_;
  std::vector<Sector> sectors_;
};

/// Scalar action of one group element on P^0 and P^1.
struct BlockAction {
  Matrix even;
  Matrix odd;
};

/// A G-equivariant matrix factorization (P^0, P^1, A: P^1 -> P^0, B: P^0 -> P^1)
/// with AB = BA = w Id. In block form on P^0 + P^1, delta = [[0, A], [B, 0]].
///
/// Generator weights follow deg A_ij = we_i - wo_j and deg B_ij = d + wo_i - we_j.
class EquivMF {
public:
  EquivMF(ModelPtr model, PolyMatrix A, PolyMatrix B, std::vector<BlockAction> rho_generators,
          std::optional<std::vector<Rational>> weights_even, std::optional<std::vector<Rational>> weights_odd,
          std::string name = {});

  const ModelPtr& model() const noexcept { return model_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t rank() const noexcept { return A_.rows(); }
  const PolyMatrix& A() const noexcept { return A_; }
  const PolyMatrix& B() const noexcept { return B_; }
  /// Full 2r x 2r odd operator.
  PolyMatrix delta() const;

  const std::vector<BlockAction>& rho_generators() const noexcept { return rho_gens_; }
  const BlockAction& rho(std::size_t element) const { return rho_elements_.at(element); }
  /// Block-diagonal 2r x 2r matrix of rho(element).
  Matrix rho_full(std::size_t element) const;

  bool graded() const noexcept { return weights_even_.has_value(); }
  const std::optional<std::vector<Rational>>& weights_even() const noexcept { return weights_even_; }
  const std::optional<std::vector<Rational>>& weights_odd() const noexcept { return weights_odd_; }
  /// Internal degree of each basis vector of P^0 + P^1 for which delta is
  /// homogeneous of degree d/2. Requires graded().
  std::vector<Rational> effective_degrees() const;

  EquivMF renamed(std::string name) const;

private:
  void validate();

  ModelPtr model_;
  PolyMatrix A_, B_;
  std::vector<BlockAction> rho_gens_;
  std::vector<BlockAction> rho_elements_;
  std::optional<std::vector<Rational>> weights_even_, weights_odd_;
  std::string name_;
};

struct KoszulPair {
  Poly a;
  Poly b;
};

/// Koszul factorization delta = sum_i (a_i e_i^ + b_i iota_i) on the exterior
/// algebra of rank k; rank 2^{k-1}. rho is derived from the characters of
/// semi-invariant a_i, times an optional base character on generators.
EquivMF koszul(const std::vector<KoszulPair>& pairs, ModelPtr model, std::string name = {},
               const std::vector<Rational>& base_character = {});
EquivMF koszul(const std::vector<std::pair<std::string, std::string>>& pairs, ModelPtr model,
               std::string name = {});

EquivMF direct_sum(const EquivMF& P, const EquivMF& Q);
/// Internal tensor product over a common coordinate space; potentials add.
EquivMF tensor(const EquivMF& P, const EquivMF& Q);
/// Product of the two models with potentials added. Variables are renamed
/// with suffixes _1/_2 only when the names clash.
ModelPtr product_model(const ModelPtr& a, const ModelPtr& b);
/// P boxtimes Q over product_model(P.model(), Q.model()).
EquivMF external_tensor(const EquivMF& P, const EquivMF& Q);
/// Factorization of -w with A = B^T, B = -A^T, rho = (rho^{-1})^T.
EquivMF dual(const EquivMF& P);
/// Multiplies rho(g_k) by exp(2 pi i character[k]).
EquivMF twist(const EquivMF& P, const std::vector<Rational>& character);

/// (X x X, -w(x) + w(y)) with the group G x G, together with the diagonal
/// kernel: the sum over h in G of the Koszul factorizations of the graphs
/// y = h x, with G x G permuting the summands.
struct DiagonalKernel {
  ModelPtr product;
  EquivMF kernel;
};
DiagonalKernel diagonal_kernel(const ModelPtr& model);

/// Restriction of P to the fixed locus of a sector.
struct RestrictedMF {
  PolyMatrix A, B;
  Matrix rho_even, rho_odd;
  Sector sector;

  PolyMatrix delta() const;
  Matrix rho_full() const;
};
RestrictedMF restrict_to_sector(const EquivMF& P, const Sector& s);

/// Homogeneous element of Hom(P, Q) stored as a full 2r_Q x 2r_P matrix with
/// the even block structure (rows: Q^0 then Q^1; columns: P^0 then P^1).
struct Morphism {
  PolyMatrix matrix;
  int parity = 0;
};

Morphism identity_morphism(const EquivMF& P);
/// d(f) = delta_Q f - (-1)^{|f|} f delta_P.
Morphism hom_differential(const EquivMF& P, const EquivMF& Q, const Morphism& f);
bool is_closed(const EquivMF& P, const EquivMF& Q, const Morphism& f);
Morphism compose(const Morphism& g, const Morphism& f);
/// Super transpose Pi^{|a|} a^T with Pi = diag(1, -1): an endomorphism of P
/// becomes one of dual(P).
Morphism dual_morphism(const EquivMF& P, const Morphism& a);

/// Sign used when permuting odd direction vectors; exposed for tests.
int koszul_sign(unsigned mask, unsigned index);

}  // namespace lgorb
