#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgorb/scalars.hpp"

namespace lgorb {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector. Entries past the ring's variable count stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  std::uint16_t operator[](std::size_t i) const { return e[i]; }
  std::uint16_t& operator[](std::size_t i) { return e[i]; }

  unsigned total_degree() const;
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  bool is_one() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }
};

struct VarSpec {
  std::string name;
  Rational weight{1};
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Polynomial ring Q(zeta)[x_1..x_n] with positive rational weights.
///
/// Monomials are ordered by weighted degree, ties broken reverse
/// lexicographically. Weights are scaled internally to integers.
class Ring {
public:
  explicit Ring(std::vector<VarSpec> vars);
  static RingPtr make(std::vector<VarSpec> vars);

  std::size_t nvars() const noexcept { return vars_.size(); }
  const VarSpec& var(std::size_t i) const { return vars_.at(i); }
  const std::vector<VarSpec>& vars() const noexcept { return vars_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Weight of variable i times weight_scale(); always a positive integer.
  long int_weight(std::size_t i) const { return int_weights_[i]; }
  /// lcm of the weight denominators.
  long weight_scale() const noexcept { return scale_; }
  long int_degree(const Monomial& m) const;
  Rational degree(const Monomial& m) const;

  /// Strict monomial order: true iff a < b.
  bool less(const Monomial& a, const Monomial& b) const;

  /// The ring on the listed variables (in the listed order).
  RingPtr subring(const std::vector<std::size_t>& indices) const;

  bool same_as(const Ring& other) const;

  /// All monomials of integer weighted degree `deg` (in scaled units).
  std::vector<Monomial> monomials_of_degree(long deg) const;

private:
  std::vector<VarSpec> vars_;
  std::vector<long> int_weights_;
  long scale_ = 1;
};

struct MonomialLess {
  const Ring* ring;
  bool operator()(const Monomial& a, const Monomial& b) const { return ring->less(a, b); }
};

/// Sparse polynomial with CycNum coefficients. No zero coefficients are stored.
class Poly {
public:
  using TermMap = std::map<Monomial, CycNum, MonomialLess>;

  /// Placeholder without a ring; assign before use.
  Poly() = default;
  explicit Poly(RingPtr ring);
  Poly(RingPtr ring, const CycNum& constant);
  static Poly variable(RingPtr ring, std::size_t i);
  static Poly monomial(RingPtr ring, const Monomial& m, const CycNum& c = CycNum(1));

  /// Parses the polynomial grammar: + - * / ^, integer literals, declared
  /// variable names, parentheses and z(m,k) for zeta_m^k. Every z(m,k) needs
  /// m to divide `conductor`.
  static Poly parse(std::string_view text, RingPtr ring, unsigned conductor = 1);

  const RingPtr& ring() const noexcept { return ring_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term.
  CycNum constant_term() const;
  CycNum coefficient(const Monomial& m) const;

  /// Requires !is_zero().
  const Monomial& lead_monomial() const { return terms_.rbegin()->first; }
  const CycNum& lead_coeff() const { return terms_.rbegin()->second; }

  void add_term(const Monomial& m, const CycNum& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const CycNum& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const CycNum& c) { return a *= c; }
  friend Poly operator*(const CycNum& c, Poly a) { return a *= c; }
  Poly operator-() const;
  Poly pow(unsigned e) const;
  /// Adds c * m * p to this.
  void add_scaled(const Poly& p, const Monomial& m, const CycNum& c);

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derive(std::size_t var) const;
  Poly derive(std::string_view var) const;
  /// Sets every variable whose bit is set in `zero_mask` to 0.
  Poly restrict(std::uint32_t zero_mask) const;
  Poly restrict(const std::vector<std::string>& zero_vars) const;
  /// x_i -> factors[i] * x_i.
  Poly scale_vars(const std::vector<CycNum>& factors) const;
  /// Ring homomorphism sending x_i to images[i]; images share one ring.
  Poly substitute(const std::vector<Poly>& images, RingPtr target) const;
  /// Renames variables: x_i -> target variable index_map[i]. Variables that
  /// map to -1 must not occur.
  Poly remap(RingPtr target, const std::vector<int>& index_map) const;

  /// Bitmask of variables that occur.
  std::uint32_t support() const;
  bool weighted_degree_check(const Rational& d) const;
  /// The common weighted degree when homogeneous; nullopt for 0 or mixed.
  std::optional<Rational> homogeneous_degree() const;

  std::string str() const;

private:
  RingPtr ring_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Dense matrix of polynomials over one ring.
class PolyMatrix {
public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
  static PolyMatrix identity(RingPtr ring, std::size_t n);
  static PolyMatrix from_strings(RingPtr ring, const std::vector<std::vector<std::string>>& rows,
                                 unsigned conductor);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const RingPtr& ring() const noexcept { return ring_; }
  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix transpose() const;
  PolyMatrix operator-() const;
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const CycNum& c, const PolyMatrix& a);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

  bool is_zero() const;
  /// True if some entry is a nonzero constant.
  bool has_unit_entry() const;
  bool is_scalar_multiple_of_identity(const Poly& p) const;

  template <class F>
  PolyMatrix map(F&& f) const {
    PolyMatrix out(ring_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = f(data_[k]);
    return out;
  }

  /// Places `block` with its top-left corner at (r, c).
  void set_block(std::size_t r, std::size_t c, const PolyMatrix& block);
  PolyMatrix block(std::size_t r, std::size_t c, std::size_t nr, std::size_t nc) const;

  std::vector<std::vector<std::string>> to_strings() const;

private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Poly> data_;
};

/// Determinant by cofactor expansion (small sizes only).
Poly determinant(const PolyMatrix& m);

}  // namespace lgorb
