#pragma once

#include <map>
#include <vector>

#include "lgorb/poly.hpp"

namespace lgorb {

inline constexpr std::size_t kDefaultGroupOrderCap = 10000;

/// Finite abelian group acting diagonally on the coordinates.
///
/// Generator k scales coordinate i by exp(2 pi i a[k][i]). A group element is
/// stored as its exponent vector e with eigenvalue zeta_m^{e_i} on x_i, where
/// m is the common conductor. Functions transform contragrediently:
/// (g.p)(x) = p(g^{-1} x).
class DiagGroup {
public:
  struct Element {
    std::vector<unsigned> exps;
    std::size_t parent = 0;     // BFS tree parent
    std::size_t generator = 0;  // this = parent * generators[generator]
  };

  DiagGroup() = default;
  DiagGroup(std::vector<std::vector<Rational>> generators, std::size_t nvars,
            std::size_t order_cap = kDefaultGroupOrderCap);

  /// Group on the disjoint union of coordinates; generators of `a` first.
  static DiagGroup product(const DiagGroup& a, const DiagGroup& b, std::size_t order_cap = kDefaultGroupOrderCap);

  unsigned conductor() const noexcept { return m_; }
  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t num_generators() const noexcept { return gens_.size(); }
  const std::vector<std::vector<Rational>>& generators() const noexcept { return gens_; }
  const std::vector<unsigned>& generator_exps(std::size_t k) const { return gen_exps_.at(k); }
  /// Index of the element reached from the identity by generator k.
  std::size_t generator_element(std::size_t k) const { return gen_elements_.at(k); }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  const Element& element(std::size_t i) const { return elements_.at(i); }

  std::size_t index_of(const std::vector<unsigned>& exps) const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;

  CycNum eigenvalue(std::size_t element, std::size_t var) const;
  std::vector<CycNum> eigenvalues(std::size_t element) const;
  /// Order of the generator's exponent vector.
  unsigned generator_order(std::size_t k) const;

  /// g.p = p(g^{-1} x).
  Poly act(std::size_t element, const Poly& p) const;
  PolyMatrix act(std::size_t element, const PolyMatrix& m) const;

  /// Throws a model error naming the first generator that moves w.
  void check_invariant(const Poly& w) const;

  bool same_as(const DiagGroup& other) const;

private:
  void enumerate(std::size_t order_cap);

  unsigned m_ = 1;
  std::size_t nvars_ = 0;
  std::vector<std::vector<Rational>> gens_;
  std::vector<std::vector<unsigned>> gen_exps_;
  std::vector<std::size_t> gen_elements_;
  std::vector<Element> elements_;
  std::map<std::vector<unsigned>, std::size_t> index_;
};

/// One component X^g of the inertia stack.
struct Sector {
  std::size_t element = 0;
  std::vector<unsigned> exps;
  std::uint32_t fixed_mask = 0;
  std::vector<std::size_t> fixed_vars;
  std::vector<std::size_t> moving_vars;
  std::vector<CycNum> moving_eigenvalues;
  /// prod over moving eigenvalues of (1 - lambda^{-1}).
  CycNum denominator{1};

  std::size_t n_fixed() const noexcept { return fixed_vars.size(); }
  bool is_identity() const noexcept { return moving_vars.empty() && element == 0; }
};

Sector make_sector(const DiagGroup& group, std::size_t element);
/// One sector per element in enumeration order; the identity comes first.
std::vector<Sector> sectors(const DiagGroup& group);

}  // namespace lgorb
