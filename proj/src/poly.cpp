#include "lgorb/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>

namespace lgorb {

// ---------------------------------------------------------------------------
// Monomial

unsigned Monomial::total_degree() const {
  unsigned s = 0;
  for (auto x : e) s += x;
  return s;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e[i] > other.e[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e[i] && other.e[i]) return false;
  return true;
}

bool Monomial::is_one() const {
  for (auto x : e)
    if (x) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

// ---------------------------------------------------------------------------
// Ring

Ring::Ring(std::vector<VarSpec> vars) : vars_(std::move(vars)) {
  if (vars_.size() > kMaxVars)
    throw Error(ErrorKind::Resource, "poly", "at most " + std::to_string(kMaxVars) + " variables");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].weight <= 0)
      throw Error(ErrorKind::Input, "poly", "weight of '" + vars_[i].name + "' must be positive");
    if (vars_[i].name.empty()) throw Error(ErrorKind::Input, "poly", "empty variable name");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[j].name == vars_[i].name)
        throw Error(ErrorKind::Input, "poly", "duplicate variable '" + vars_[i].name + "'");
  }
  Integer l = 1;
  for (const auto& v : vars_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.weight.get_den_mpz_t());
  scale_ = l.get_si();
  for (const auto& v : vars_) {
    Rational s = v.weight * Rational(l);
    int_weights_.push_back(s.get_num().get_si());
  }
}

RingPtr Ring::make(std::vector<VarSpec> vars) { return std::make_shared<const Ring>(std::move(vars)); }

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

long Ring::int_degree(const Monomial& m) const {
  long d = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) d += int_weights_[i] * m.e[i];
  return d;
}

Rational Ring::degree(const Monomial& m) const {
  Rational r(int_degree(m), scale_);
  r.canonicalize();
  return r;
}

bool Ring::less(const Monomial& a, const Monomial& b) const {
  const long da = int_degree(a), db = int_degree(b);
  if (da != db) return da < db;
  for (std::size_t i = vars_.size(); i-- > 0;) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  }
  return false;
}

RingPtr Ring::subring(const std::vector<std::size_t>& indices) const {
  std::vector<VarSpec> v;
  for (auto i : indices) v.push_back(vars_.at(i));
  return make(std::move(v));
}

bool Ring::same_as(const Ring& other) const {
  if (this == &other) return true;
  if (vars_.size() != other.vars_.size()) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name != other.vars_[i].name || vars_[i].weight != other.vars_[i].weight) return false;
  return true;
}

std::vector<Monomial> Ring::monomials_of_degree(long deg) const {
  std::vector<Monomial> out;
  if (deg < 0) return out;
  Monomial cur;
  const std::size_t n = vars_.size();
  // Depth-first over variables with remaining degree budget.
  auto rec = [&](auto&& self, std::size_t i, long remaining) -> void {
    if (i == n) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    const long w = int_weights_[i];
    for (long k = 0; k * w <= remaining; ++k) {
      cur.e[i] = static_cast<std::uint16_t>(k);
      self(self, i + 1, remaining - k * w);
    }
    cur.e[i] = 0;
  };
  rec(rec, 0, deg);
  std::sort(out.begin(), out.end(), [this](const Monomial& a, const Monomial& b) { return less(a, b); });
  return out;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(RingPtr ring) : ring_(std::move(ring)), terms_(MonomialLess{ring_.get()}) {}

Poly::Poly(RingPtr ring, const CycNum& constant) : Poly(std::move(ring)) {
  if (!constant.is_zero()) terms_.emplace(Monomial{}, constant);
}

Poly Poly::variable(RingPtr ring, std::size_t i) {
  Monomial m;
  m.e.at(i) = 1;
  return monomial(std::move(ring), m);
}

Poly Poly::monomial(RingPtr ring, const Monomial& m, const CycNum& c) {
  Poly p(std::move(ring));
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

CycNum Poly::constant_term() const { return coefficient(Monomial{}); }

CycNum Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? CycNum() : it->second;
}

void Poly::add_term(const Monomial& m, const CycNum& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(a.ring_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const CycNum& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result(ring_, CycNum(1));
  Poly base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

void Poly::add_scaled(const Poly& p, const Monomial& m, const CycNum& c) {
  for (const auto& [mp, cp] : p.terms_) add_term(mp * m, cp * c);
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [m, c] : a.terms_) {
    if (it->first != m || it->second != c) return false;
    ++it;
  }
  return true;
}

Poly Poly::derive(std::size_t var) const {
  Poly r(ring_);
  for (const auto& [m, c] : terms_) {
    if (m.e[var] == 0) continue;
    Monomial mm = m;
    mm.e[var] -= 1;
    r.add_term(mm, c * CycNum(static_cast<long>(m.e[var])));
  }
  return r;
}

Poly Poly::derive(std::string_view var) const {
  auto idx = ring_->index_of(var);
  if (!idx) throw Error(ErrorKind::Input, "poly", "unknown variable '" + std::string(var) + "'");
  return derive(*idx);
}

Poly Poly::restrict(std::uint32_t zero_mask) const {
  Poly r(ring_);
  for (const auto& [m, c] : terms_) {
    bool keep = true;
    for (std::size_t i = 0; i < ring_->nvars(); ++i)
      if ((zero_mask >> i & 1u) && m.e[i]) keep = false;
    if (keep) r.terms_.emplace_hint(r.terms_.end(), m, c);
  }
  return r;
}

Poly Poly::restrict(const std::vector<std::string>& zero_vars) const {
  std::uint32_t mask = 0;
  for (const auto& v : zero_vars) {
    auto idx = ring_->index_of(v);
    if (!idx) throw Error(ErrorKind::Input, "poly", "unknown variable '" + v + "'");
    mask |= 1u << *idx;
  }
  return restrict(mask);
}

Poly Poly::scale_vars(const std::vector<CycNum>& factors) const {
  Poly r(ring_);
  for (const auto& [m, c] : terms_) {
    CycNum k = c;
    for (std::size_t i = 0; i < ring_->nvars(); ++i)
      if (m.e[i]) k *= factors[i].pow(m.e[i]);
    r.add_term(m, k);
  }
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images, RingPtr target) const {
  Poly r(target);
  std::vector<std::vector<Poly>> powers(ring_->nvars());
  for (const auto& [m, c] : terms_) {
    Poly t(target, c);
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      if (!m.e[i]) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly(target, CycNum(1)));
      while (pw.size() <= m.e[i]) pw.push_back(pw.back() * images.at(i));
      t *= pw[m.e[i]];
    }
    r += t;
  }
  return r;
}

Poly Poly::remap(RingPtr target, const std::vector<int>& index_map) const {
  Poly r(target);
  for (const auto& [m, c] : terms_) {
    Monomial mm;
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      if (!m.e[i]) continue;
      if (index_map.at(i) < 0)
        throw Error(ErrorKind::Contract, "poly", "variable '" + ring_->var(i).name + "' has no image");
      mm.e[static_cast<std::size_t>(index_map[i])] = m.e[i];
    }
    r.add_term(mm, c);
  }
  return r;
}

std::uint32_t Poly::support() const {
  std::uint32_t s = 0;
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < ring_->nvars(); ++i)
      if (m.e[i]) s |= 1u << i;
  return s;
}

bool Poly::weighted_degree_check(const Rational& d) const {
  for (const auto& [m, c] : terms_)
    if (ring_->degree(m) != d) return false;
  return true;
}

std::optional<Rational> Poly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  const Rational d = ring_->degree(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (ring_->degree(m) != d) return std::nullopt;
  return d;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Monomial& m = it->first;
    const CycNum& c = it->second;
    std::string mono;
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      if (!m.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->var(i).name;
      if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
    }
    std::string coeff;
    bool negative = false;
    if (c.needs_parens()) {
      coeff = "(" + c.str() + ")";
    } else {
      std::string s = c.str();
      if (s.front() == '-') {
        negative = true;
        s.erase(s.begin());
      }
      coeff = s;
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      os << coeff;
    } else if (coeff == "1") {
      os << mono;
    } else {
      os << coeff << "*" << mono;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
  Parser(std::string_view text, RingPtr ring, unsigned conductor)
      : s_(text), ring_(std::move(ring)), conductor_(conductor) {}

  Poly parse() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (peek('/')) {
        const std::size_t at = pos_;
        ++pos_;
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail(d.is_zero() ? "division by zero" : "division by a non-constant");
        }
        acc *= d.constant_term().inverse();
      } else {
        return acc;
      }
    }
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("malformed exponent");
      const std::string digits(s_.substr(start, pos_ - start));
      if (digits.size() > 4) {
        pos_ = start;
        fail("exponent too large");
      }
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  long integer_literal() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    const std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 9) fail("integer too large");
    const long v = std::stol(digits);
    return neg ? -v : v;
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      expect(')');
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer z(std::string(s_.substr(start, pos_ - start)), 10);
      return Poly(ring_, CycNum(Rational(z)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "z" && peek('(')) return root_literal(start);
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      return Poly::variable(ring_, *idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Poly root_literal(std::size_t start) {
    expect('(');
    const long m = integer_literal();
    expect(',');
    const long k = integer_literal();
    expect(')');
    if (m <= 0) {
      pos_ = start;
      fail("root of unity order must be positive");
    }
    if (conductor_ % static_cast<unsigned long>(m) != 0) {
      pos_ = start;
      fail("conductor mismatch: z(" + std::to_string(m) + ",...) not in Q(zeta_" + std::to_string(conductor_) +
           ")");
    }
    return Poly(ring_, CycNum::root_of_unity(conductor_, static_cast<unsigned>(m), k));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  RingPtr ring_;
  unsigned conductor_;
};

}  // namespace

Poly Poly::parse(std::string_view text, RingPtr ring, unsigned conductor) {
  return Parser(text, std::move(ring), conductor).parse();
}

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, Poly(ring)) {}

PolyMatrix PolyMatrix::identity(RingPtr ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly(ring, CycNum(1));
  return m;
}

PolyMatrix PolyMatrix::from_strings(RingPtr ring, const std::vector<std::vector<std::string>>& rows,
                                    unsigned conductor) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr ? rows[0].size() : 0;
  PolyMatrix m(ring, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (rows[i].size() != nc) throw Error(ErrorKind::Input, "poly", "ragged matrix rows");
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = Poly::parse(rows[i][j], ring, conductor);
  }
  return m;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

PolyMatrix PolyMatrix::operator-() const {
  return map([](const Poly& p) { return -p; });
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::Contract, "poly", "matrix dimension mismatch");
  PolyMatrix r(a.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Poly& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Poly& y = b(k, j);
        if (!y.is_zero()) r(i, j) += x * y;
      }
    }
  return r;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::Contract, "poly", "matrix dimension mismatch");
  PolyMatrix r = a;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
  return r;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::Contract, "poly", "matrix dimension mismatch");
  PolyMatrix r = a;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
  return r;
}

PolyMatrix operator*(const CycNum& c, const PolyMatrix& a) {
  return a.map([&](const Poly& p) { return p * c; });
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool PolyMatrix::has_unit_entry() const {
  return std::any_of(data_.begin(), data_.end(), [](const Poly& p) { return !p.is_zero() && p.is_constant(); });
}

bool PolyMatrix::is_scalar_multiple_of_identity(const Poly& p) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j ? (*this)(i, j) != p : !(*this)(i, j).is_zero()) return false;
    }
  return true;
}

void PolyMatrix::set_block(std::size_t r, std::size_t c, const PolyMatrix& block) {
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) (*this)(r + i, c + j) = block(i, j);
}

PolyMatrix PolyMatrix::block(std::size_t r, std::size_t c, std::size_t nr, std::size_t nc) const {
  PolyMatrix b(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r + i, c + j);
  return b;
}

std::vector<std::vector<std::string>> PolyMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).str());
  return out;
}

Poly determinant(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::Contract, "poly", "determinant of a non-square matrix");
  if (n == 0) return Poly(m.ring(), CycNum(1));
  if (n == 1) return m(0, 0);
  Poly det(m.ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    PolyMatrix minor(m.ring(), n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        minor(i - 1, cc++) = m(i, k);
      }
    }
    Poly term = m(0, j) * determinant(minor);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace lgorb
