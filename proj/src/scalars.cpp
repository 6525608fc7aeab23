#include "lgorb/scalars.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace lgorb {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConductorMismatch: return "conductor-mismatch";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Model: return "model";
    case ErrorKind::Equivariance: return "equivariance";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::GradingRequired: return "grading-required";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Contract: return "contract";
    case ErrorKind::Input: return "input";
  }
  return "unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw Error(ErrorKind::Input, "scalars", "empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorKind::Input, "scalars", "malformed rational '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "scalars", "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

unsigned totient(unsigned m) {
  unsigned result = m;
  unsigned n = m;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

struct Field {
  unsigned m = 1;
  unsigned phi = 1;
  std::vector<long> poly;  // monic, degree phi
};

std::vector<long> compute_cyclotomic(unsigned m) {
  // x^m - 1 divided by every Phi_d with d | m, d < m.
  std::vector<long> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const auto& den = cyclotomic_polynomial(d);
    const std::size_t dd = den.size() - 1;
    std::vector<long> quot(num.size() - dd, 0);
    for (std::size_t i = num.size() - 1; i + 1 > dd; --i) {
      const long c = num[i];  // den is monic
      quot[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
      if (i == dd) break;
    }
    num = std::move(quot);
  }
  return num;
}

std::mutex& registry_mutex() {
  static std::mutex mu;
  return mu;
}

const Field& field(unsigned m) {
  static std::map<unsigned, std::unique_ptr<Field>> registry;
  {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry.find(m);
    if (it != registry.end()) return *it->second;
  }
  auto poly = cyclotomic_polynomial(m);
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& slot = registry[m];
  if (!slot) {
    slot = std::make_unique<Field>();
    slot->m = m;
    slot->phi = totient(m);
    slot->poly = std::move(poly);
  }
  return *slot;
}

// Reduces a coefficient vector of any length modulo Phi_m in place.
void reduce(const Field& f, std::vector<Rational>& v) {
  const std::size_t phi = f.phi;
  for (std::size_t i = v.size(); i-- > phi;) {
    if (v[i] == 0) continue;
    const Rational c = v[i];
    for (std::size_t j = 0; j < phi; ++j) {
      if (f.poly[j] != 0) v[i - phi + j] -= c * f.poly[j];
    }
    v[i] = 0;
  }
  v.resize(phi);
}

std::vector<Rational> power_vector(const Field& f, long k) {
  long e = k % static_cast<long>(f.m);
  if (e < 0) e += f.m;
  std::vector<Rational> v(static_cast<std::size_t>(std::max<long>(e + 1, f.phi)), 0);
  v[static_cast<std::size_t>(e)] = 1;
  reduce(f, v);
  return v;
}

// Dense polynomial helpers over Q used by the inverse.
using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  // a - q*b
  QPoly r = a;
  if (!q.empty() && !b.empty()) {
    if (r.size() < q.size() + b.size() - 1) r.resize(q.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= q[i] * b[j];
    }
  }
  trim(r);
  return r;
}

void divmod(QPoly a, const QPoly& b, QPoly& quot, QPoly& rem) {
  trim(a);
  quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const Rational lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Rational c = a.back() / lead;
    quot[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    trim(a);
  }
  rem = std::move(a);
  trim(quot);
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw Error(ErrorKind::Contract, "scalars", "conductor must be positive");
  static std::map<unsigned, std::vector<long>> cache;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<long> p;
  if (m == 1) {
    p = {-1, 1};
  } else {
    p = compute_cyclotomic(m);
  }
  return cache.emplace(m, std::move(p)).first->second;
}

CycNum::CycNum() : m_(1), c_(1, 0) {}
CycNum::CycNum(long value) : m_(1), c_(1, Rational(value)) {}
CycNum::CycNum(const Rational& value, unsigned conductor) : m_(conductor) {
  if (conductor == 0) throw Error(ErrorKind::Contract, "scalars", "conductor must be positive");
  c_.assign(field(conductor).phi, 0);
  c_[0] = value;
}

CycNum CycNum::zeta(unsigned conductor, long k) {
  const Field& f = field(conductor);
  return CycNum(conductor, power_vector(f, k));
}

CycNum CycNum::root_of_unity(unsigned conductor, unsigned order, long power) {
  if (order == 0 || conductor % order != 0) {
    throw Error(ErrorKind::ConductorMismatch, "scalars",
                "root of unity of order " + std::to_string(order) + " does not live in Q(zeta_" +
                    std::to_string(conductor) + ")");
  }
  return zeta(conductor, static_cast<long>(conductor / order) * power);
}

unsigned CycNum::common_conductor(unsigned a, unsigned b) {
  if (a == b) return a;
  if (a % b == 0) return a;
  if (b % a == 0) return b;
  throw Error(ErrorKind::ConductorMismatch, "scalars",
              "cannot combine Q(zeta_" + std::to_string(a) + ") with Q(zeta_" + std::to_string(b) + ")");
}

CycNum CycNum::lifted(unsigned m) const {
  if (m == m_) return *this;
  if (m % m_ != 0) {
    throw Error(ErrorKind::ConductorMismatch, "scalars",
                "cannot lift Q(zeta_" + std::to_string(m_) + ") into Q(zeta_" + std::to_string(m) + ")");
  }
  const Field& f = field(m);
  const unsigned step = m / m_;
  std::vector<Rational> out(f.phi, 0);
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    auto pv = power_vector(f, static_cast<long>(j * step));
    for (std::size_t i = 0; i < f.phi; ++i) out[i] += c_[j] * pv[i];
  }
  return CycNum(m, std::move(out));
}

bool CycNum::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool CycNum::is_one() const { return is_rational() && c_[0] == 1; }

Rational CycNum::to_rational() const {
  if (!is_rational()) throw Error(ErrorKind::Contract, "scalars", "value " + str() + " is not rational");
  return c_[0];
}

bool CycNum::is_integer() const { return is_rational() && c_[0].get_den() == 1; }

CycNum& CycNum::operator+=(const CycNum& o) {
  const unsigned m = common_conductor(m_, o.m_);
  if (m != m_) *this = lifted(m);
  if (m != o.m_) return *this += o.lifted(m);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
  const unsigned m = common_conductor(m_, o.m_);
  if (m != m_) *this = lifted(m);
  if (m != o.m_) return *this -= o.lifted(m);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) {
  const unsigned m = common_conductor(m_, o.m_);
  if (m != m_) *this = lifted(m);
  if (m != o.m_) return *this *= o.lifted(m);
  if (o.is_rational()) {
    for (auto& q : c_) q *= o.c_[0];
    return *this;
  }
  if (is_rational()) {
    const Rational s = c_[0];
    c_ = o.c_;
    for (auto& q : c_) q *= s;
    return *this;
  }
  const Field& f = field(m);
  std::vector<Rational> prod(2 * f.phi - 1, 0);
  for (std::size_t i = 0; i < f.phi; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < f.phi; ++j) {
      if (o.c_[j] == 0) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  reduce(f, prod);
  c_ = std::move(prod);
  return *this;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "scalars", "inverse of zero");
  if (is_rational()) return CycNum(m_, [&] {
    std::vector<Rational> v(c_.size(), 0);
    v[0] = 1 / c_[0];
    return v;
  }());
  // Extended Euclid on (Phi_m, a): track s with s*a = r (mod Phi_m).
  const Field& f = field(m_);
  QPoly r0(f.poly.begin(), f.poly.end());
  QPoly r1 = c_;
  trim(r1);
  QPoly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    QPoly q, r;
    divmod(r0, r1, q, r);
    QPoly s = sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r1 is a nonzero constant because Phi_m is irreducible.
  const Rational k = r1.at(0);
  std::vector<Rational> out(f.phi, 0);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    if (i < f.phi) {
      out[i] = s1[i] / k;
    } else {
      out.resize(s1.size(), 0);
      out[i] = s1[i] / k;
    }
  }
  reduce(f, out);
  return CycNum(m_, std::move(out));
}

CycNum& CycNum::operator/=(const CycNum& o) { return *this *= o.inverse(); }

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

CycNum CycNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNum result(Rational(1), m_);
  CycNum base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.m_ == b.m_) return a.c_ == b.c_;
  const unsigned m = CycNum::common_conductor(a.m_, b.m_);
  return a.lifted(m).c_ == b.lifted(m).c_;
}

bool CycNum::needs_parens() const {
  int nonzero = 0;
  for (const auto& q : c_)
    if (q != 0) ++nonzero;
  return nonzero > 1;
}

std::string CycNum::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Rational& q = c_[i];
    if (q == 0) continue;
    const bool neg = q < 0;
    const Rational mag = neg ? Rational(-q) : q;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << "*";
      os << "z(" << m_ << "," << i << ")";
    }
  }
  if (first) return "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.str(); }

}  // namespace lgorb
