#pragma once

#include <complex>
#include <random>
#include <string>
#include <vector>

#include "lgorb/hrr.hpp"

namespace lgorb::testing {

inline ModelPtr one_var(int n, int group_order, bool graded = true) {
  std::vector<std::vector<Rational>> gens;
  if (group_order > 1) gens.push_back({Rational(1) / group_order});
  return LGModel::make({{"x", Rational(1)}}, "x^" + std::to_string(n), gens, graded);
}

inline std::string power(const char* var, int k) {
  if (k == 0) return "1";
  return k == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(k);
}

/// Koszul(x^a; x^{n-a}) twisted by the character j/group_order.
inline EquivMF koszul_power(const ModelPtr& M, int n, int a, int j = 0) {
  EquivMF P = koszul(std::vector<std::pair<std::string, std::string>>{{power("x", a), power("x", n - a)}}, M,
                     "K" + std::to_string(a) + "_" + std::to_string(j));
  if (j == 0 || M->group().num_generators() == 0) return P;
  return twist(P, {Rational(j) / static_cast<long>(M->group().order())}).renamed(P.name());
}

/// The corpus {Koszul(x^a; x^{n-a}) (x) chi_j}.
inline std::vector<EquivMF> power_corpus(const ModelPtr& M, int n) {
  std::vector<EquivMF> out;
  const int order = static_cast<int>(M->group().order());
  for (int a = 1; a < n; ++a)
    for (int j = 0; j < order; ++j) out.push_back(koszul_power(M, n, a, j));
  return out;
}

inline std::complex<double> numeric(const CycNum& c) {
  std::complex<double> z = 0;
  const double m = c.conductor();
  for (std::size_t k = 0; k < c.coeffs().size(); ++k)
    z += c.coeffs()[k].get_d() * std::polar(1.0, 2 * M_PI * static_cast<double>(k) / m);
  return z;
}

inline CycNum random_cyc(std::mt19937& rng, unsigned m, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 4);
  CycNum out;
  for (unsigned k = 0; k < m; ++k) out += CycNum(Rational(num(rng)) / den(rng)) * CycNum::zeta(m, k);
  return out;
}

inline Poly random_poly(std::mt19937& rng, const RingPtr& ring, unsigned max_deg, std::size_t terms, unsigned m = 1) {
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  Poly p(ring);
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial mono;
    for (std::size_t v = 0; v < ring->nvars(); ++v) mono[v] = static_cast<std::uint16_t>(deg(rng));
    p.add_term(mono, random_cyc(rng, m, 3));
  }
  return p;
}

/// Evaluates p at a point of C^n.
inline std::complex<double> evaluate(const Poly& p, const std::vector<std::complex<double>>& pt) {
  std::complex<double> s = 0;
  for (const auto& [mono, c] : p.terms()) {
    std::complex<double> t = numeric(c);
    for (std::size_t v = 0; v < pt.size(); ++v) t *= std::pow(pt[v], static_cast<int>(mono[v]));
    s += t;
  }
  return s;
}

}  // namespace lgorb::testing
