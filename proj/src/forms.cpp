#include "lgorb/forms.hpp"

#include <bit>
#include <sstream>

namespace lgorb {

DiffForm::DiffForm(RingPtr ring) : ring_(std::move(ring)) {}

DiffForm DiffForm::function(const Poly& f) { return term(f, 0); }

DiffForm DiffForm::term(const Poly& f, std::uint32_t mask) {
  DiffForm out(f.ring());
  out.add(mask, f);
  return out;
}

Poly DiffForm::component(std::uint32_t mask) const {
  auto it = comps_.find(mask);
  return it == comps_.end() ? Poly(ring_) : it->second;
}

std::optional<int> DiffForm::parity() const {
  std::optional<int> p;
  for (const auto& [mask, f] : comps_) {
    const int q = std::popcount(mask) % 2;
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p ? p : std::optional<int>(0);
}

DiffForm DiffForm::parity_part(int p) const {
  DiffForm out(ring_);
  for (const auto& [mask, f] : comps_)
    if (std::popcount(mask) % 2 == p) out.comps_.emplace(mask, f);
  return out;
}

void DiffForm::add(std::uint32_t mask, const Poly& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = comps_.emplace(mask, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
  for (const auto& [mask, f] : o.comps_) add(mask, f);
  return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& o) {
  for (const auto& [mask, f] : o.comps_) add(mask, -f);
  return *this;
}

DiffForm& DiffForm::operator*=(const CycNum& c) {
  if (c.is_zero()) {
    comps_.clear();
    return *this;
  }
  for (auto& [mask, f] : comps_) f *= c;
  return *this;
}

DiffForm& DiffForm::operator*=(const Poly& g) {
  for (auto it = comps_.begin(); it != comps_.end();) {
    it->second *= g;
    it = it->second.is_zero() ? comps_.erase(it) : std::next(it);
  }
  return *this;
}

DiffForm DiffForm::operator-() const {
  DiffForm out(*this);
  for (auto& [mask, f] : out.comps_) f = -f;
  return out;
}

bool operator==(const DiffForm& a, const DiffForm& b) {
  if (a.comps_.size() != b.comps_.size()) return false;
  for (const auto& [mask, f] : a.comps_) {
    auto it = b.comps_.find(mask);
    if (it == b.comps_.end() || it->second != f) return false;
  }
  return true;
}

DiffForm DiffForm::d() const {
  DiffForm out(ring_);
  for (const auto& [mask, f] : comps_)
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
      if (mask >> i & 1u) continue;
      Poly df = f.derive(i);
      if (df.is_zero()) continue;
      const int s = wedge_sign(1u << i, mask);
      out.add(mask | (1u << i), s < 0 ? -df : df);
    }
  return out;
}

std::string DiffForm::str() const {
  if (comps_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mask, f] : comps_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << f.str() << ")";
    for (std::size_t i = 0; i < ring_->nvars(); ++i)
      if (mask >> i & 1u) os << "*d" << ring_->var(i).name;
  }
  return os.str();
}

int wedge_sign(std::uint32_t S, std::uint32_t T) {
  if (S & T) return 0;
  unsigned inversions = 0;
  for (std::uint32_t t = T; t; t &= t - 1) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(t));
    inversions += static_cast<unsigned>(std::popcount(S >> (bit + 1)));
  }
  return inversions % 2 ? -1 : 1;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  DiffForm out(a.ring());
  for (const auto& [S, f] : a.components())
    for (const auto& [T, g] : b.components()) {
      const int s = wedge_sign(S, T);
      if (s == 0) continue;
      Poly fg = f * g;
      out.add(S | T, s < 0 ? -fg : fg);
    }
  return out;
}

// ---------------------------------------------------------------------------

FormMatrix::FormMatrix(RingPtr ring, std::size_t n, std::size_t even)
    : ring_(ring), n_(n), even_(even), data_(n * n, DiffForm(ring)) {}

FormMatrix FormMatrix::identity(RingPtr ring, std::size_t n, std::size_t even) {
  FormMatrix m(ring, n, even);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = DiffForm::function(Poly(ring, CycNum(1)));
  return m;
}

FormMatrix FormMatrix::from_poly(const PolyMatrix& p, std::size_t even) {
  FormMatrix m(p.ring(), p.rows(), even);
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) m(i, j) = DiffForm::function(p(i, j));
  return m;
}

FormMatrix FormMatrix::from_scalar(const Matrix& s, RingPtr ring, std::size_t even) {
  FormMatrix m(ring, s.rows(), even);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (!s(i, j).is_zero()) m(i, j) = DiffForm::function(Poly(ring, s(i, j)));
  return m;
}

bool FormMatrix::is_zero() const {
  for (const auto& f : data_)
    if (!f.is_zero()) return false;
  return true;
}

FormMatrix FormMatrix::total_parity_part(int p) const {
  FormMatrix out(ring_, n_, even_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const int block = (index_parity(i) + index_parity(j)) % 2;
      out(i, j) = (*this)(i, j).parity_part(((p - block) % 2 + 2) % 2);
    }
  return out;
}

FormMatrix operator+(const FormMatrix& a, const FormMatrix& b) {
  FormMatrix out = a;
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

FormMatrix operator-(const FormMatrix& a, const FormMatrix& b) {
  FormMatrix out = a;
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

FormMatrix operator*(const CycNum& c, const FormMatrix& a) {
  FormMatrix out = a;
  for (auto& f : out.data_) f *= c;
  return out;
}

FormMatrix operator*(const FormMatrix& a, const FormMatrix& b) {
  if (a.n_ != b.n_ || a.even_ != b.even_)
    throw Error(ErrorKind::Contract, "forms", "form matrix dimensions differ");
  const std::size_t n = a.n_;
  FormMatrix out(a.ring_, n, a.even_);
  // Odd-degree parts of b pick up the sign of the block they pass.
  std::vector<DiffForm> b_neg(n * n, DiffForm(a.ring_));
  for (std::size_t k = 0; k < n * n; ++k) b_neg[k] = b.data_[k].parity_part(0) - b.data_[k].parity_part(1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const DiffForm& x = a(i, j);
      if (x.is_zero()) continue;
      const bool flip = (a.index_parity(i) + a.index_parity(j)) % 2 == 1;
      for (std::size_t k = 0; k < n; ++k) {
        const DiffForm& y = flip ? b_neg[j * n + k] : b(j, k);
        if (!y.is_zero()) out(i, k) += wedge(x, y);
      }
    }
  return out;
}

bool operator==(const FormMatrix& a, const FormMatrix& b) {
  return a.n_ == b.n_ && a.even_ == b.even_ && a.data_ == b.data_;
}

FormMatrix d_entrywise(const PolyMatrix& m, std::size_t even) {
  FormMatrix out(m.ring(), m.rows(), even);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = DiffForm::function(m(i, j)).d();
  return out;
}

FormMatrix d_matrix(const PolyMatrix& A, const PolyMatrix& B) {
  const std::size_t r = A.rows();
  PolyMatrix delta(A.ring(), 2 * r, 2 * r);
  delta.set_block(0, r, A);
  delta.set_block(r, 0, B);
  return d_entrywise(delta, r);
}

FormMatrix exp_neg(const FormMatrix& M, unsigned max_form_degree) {
  const RingPtr& ring = M.ring();
  FormMatrix sum = FormMatrix::identity(ring, M.size(), M.even());
  FormMatrix power = sum;
  const FormMatrix neg = CycNum(-1) * M;
  for (unsigned k = 1; k <= max_form_degree; ++k) {
    power = CycNum(Rational(1, k)) * (power * neg);
    if (power.is_zero()) break;
    sum = sum + power;
  }
  return sum;
}

DiffForm supertrace(const FormMatrix& M) {
  DiffForm out(M.ring());
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (M.index_parity(i)) out -= M(i, i);
    else out += M(i, i);
  }
  return out;
}

DiffForm supertrace(const Matrix& rho_even, const Matrix& rho_odd, const FormMatrix& M) {
  const std::size_t r = rho_even.rows();
  if (rho_odd.rows() != r || 2 * r != M.size() || M.even() != r)
    throw Error(ErrorKind::Contract, "forms", "supertrace: dimension mismatch");
  DiffForm out(M.ring());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      if (!rho_even(i, k).is_zero()) out += M(k, i) * rho_even(i, k);
      if (!rho_odd(i, k).is_zero()) out -= M(r + k, r + i) * rho_odd(i, k);
    }
  return out;
}

FormMatrix supercommutator(const FormMatrix& X, const FormMatrix& Y) {
  FormMatrix out(X.ring(), X.size(), X.even());
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      const FormMatrix x = X.total_parity_part(p), y = Y.total_parity_part(q);
      out = out + x * y;
      out = (p && q) ? out + y * x : out - y * x;
    }
  return out;
}

}  // namespace lgorb
