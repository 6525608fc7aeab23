#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgorb/linalg.hpp"
#include "lgorb/poly.hpp"

namespace lgorb {

/// Differential form sum_S f_S dx_S with dx_S in ascending variable order.
/// Components are keyed by the bitmask of S; zero components are dropped.
class DiffForm {
public:
  explicit DiffForm(RingPtr ring);
  /// The 0-form f.
  static DiffForm function(const Poly& f);
  /// f dx_S.
  static DiffForm term(const Poly& f, std::uint32_t mask);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::map<std::uint32_t, Poly>& components() const noexcept { return comps_; }
  Poly component(std::uint32_t mask) const;
  bool is_zero() const noexcept { return comps_.empty(); }
  /// Form parity when all components have the same degree parity.
  std::optional<int> parity() const;
  /// Components whose degree has the given parity.
  DiffForm parity_part(int p) const;

  void add(std::uint32_t mask, const Poly& f);
  DiffForm& operator+=(const DiffForm& o);
  DiffForm& operator-=(const DiffForm& o);
  DiffForm& operator*=(const CycNum& c);
  /// Multiplies every coefficient by the function f.
  DiffForm& operator*=(const Poly& f);
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  friend DiffForm operator*(DiffForm a, const CycNum& c) { return a *= c; }
  DiffForm operator-() const;
  friend bool operator==(const DiffForm& a, const DiffForm& b);
  friend bool operator!=(const DiffForm& a, const DiffForm& b) { return !(a == b); }

  /// Exterior derivative.
  DiffForm d() const;
  std::string str() const;

private:
  RingPtr ring_;
  std::map<std::uint32_t, Poly> comps_;
};

/// Sign of dx_S ^ dx_T relative to dx_{S u T}; 0 when S and T meet.
int wedge_sign(std::uint32_t S, std::uint32_t T);
DiffForm wedge(const DiffForm& a, const DiffForm& b);

/// Square matrix of forms acting on a super vector space whose first `even`
/// basis vectors are even. Entries are read as alpha E_ij with the form on the
/// left, so (alpha E_ij)(beta E_jk) = (-1)^{(p_i + p_j)|beta|} alpha^beta E_ik.
class FormMatrix {
public:
  FormMatrix(RingPtr ring, std::size_t n, std::size_t even);
  static FormMatrix identity(RingPtr ring, std::size_t n, std::size_t even);
  static FormMatrix from_poly(const PolyMatrix& m, std::size_t even);
  static FormMatrix from_scalar(const Matrix& m, RingPtr ring, std::size_t even);

  std::size_t size() const noexcept { return n_; }
  std::size_t even() const noexcept { return even_; }
  int index_parity(std::size_t i) const noexcept { return i < even_ ? 0 : 1; }
  const RingPtr& ring() const noexcept { return ring_; }
  DiffForm& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const DiffForm& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  bool is_zero() const;

  /// Part of total parity p (form degree plus p_i + p_j).
  FormMatrix total_parity_part(int p) const;

  friend FormMatrix operator+(const FormMatrix& a, const FormMatrix& b);
  friend FormMatrix operator-(const FormMatrix& a, const FormMatrix& b);
  friend FormMatrix operator*(const FormMatrix& a, const FormMatrix& b);
  friend FormMatrix operator*(const CycNum& c, const FormMatrix& a);
  friend bool operator==(const FormMatrix& a, const FormMatrix& b);

private:
  RingPtr ring_;
  std::size_t n_ = 0, even_ = 0;
  std::vector<DiffForm> data_;
};

/// Entrywise exterior derivative of a polynomial matrix.
FormMatrix d_entrywise(const PolyMatrix& m, std::size_t even);
/// d(delta) for delta = [[0, A], [B, 0]].
FormMatrix d_matrix(const PolyMatrix& A, const PolyMatrix& B);
/// sum_{k <= max_form_degree} (-M)^k / k!.
FormMatrix exp_neg(const FormMatrix& M, unsigned max_form_degree);
/// sum_i (-1)^{p_i} M_ii.
DiffForm supertrace(const FormMatrix& M);
/// str(rho M) for block-diagonal scalar rho.
DiffForm supertrace(const Matrix& rho_even, const Matrix& rho_odd, const FormMatrix& M);
/// XY - (-1)^{|X||Y|} YX, extended bilinearly over total parity.
FormMatrix supercommutator(const FormMatrix& X, const FormMatrix& Y);

}  // namespace lgorb
