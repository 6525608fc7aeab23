#include "lgorb/group.hpp"

#include <deque>
#include <numeric>

namespace lgorb {

DiagGroup::DiagGroup(std::vector<std::vector<Rational>> generators, std::size_t nvars, std::size_t order_cap)
    : nvars_(nvars), gens_(std::move(generators)) {
  Integer l = 1;
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    if (gens_[k].size() != nvars_)
      throw Error(ErrorKind::Input, "group",
                  "generator " + std::to_string(k) + " has " + std::to_string(gens_[k].size()) +
                      " entries, expected " + std::to_string(nvars_));
    for (auto& a : gens_[k]) {
      a.canonicalize();
      if (a < 0 || a >= 1)
        throw Error(ErrorKind::Input, "group", "generator entries must lie in [0,1), got " + to_string(a));
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
    }
  }
  if (l > 1000000) throw Error(ErrorKind::Resource, "group", "conductor too large");
  m_ = static_cast<unsigned>(l.get_ui());
  for (const auto& g : gens_) {
    std::vector<unsigned> e;
    for (const auto& a : g) e.push_back(static_cast<unsigned>(Rational(a * m_).get_num().get_ui()));
    gen_exps_.push_back(std::move(e));
  }
  enumerate(order_cap);
}

void DiagGroup::enumerate(std::size_t order_cap) {
  elements_.clear();
  index_.clear();
  elements_.push_back(Element{std::vector<unsigned>(nvars_, 0), 0, 0});
  index_[elements_[0].exps] = 0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      std::vector<unsigned> e = elements_[cur].exps;
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = (e[i] + gen_exps_[k][i]) % m_;
      if (index_.count(e)) continue;
      if (elements_.size() >= order_cap)
        throw Error(ErrorKind::Resource, "group", "group order exceeds cap " + std::to_string(order_cap));
      index_[e] = elements_.size();
      elements_.push_back(Element{std::move(e), cur, k});
      queue.push_back(elements_.size() - 1);
    }
  }
  gen_elements_.clear();
  for (std::size_t k = 0; k < gens_.size(); ++k) gen_elements_.push_back(index_of(gen_exps_[k]));
}

DiagGroup DiagGroup::product(const DiagGroup& a, const DiagGroup& b, std::size_t order_cap) {
  std::vector<std::vector<Rational>> gens;
  const std::size_t n = a.nvars_ + b.nvars_;
  for (const auto& g : a.gens_) {
    std::vector<Rational> v(g);
    v.resize(n, Rational(0));
    gens.push_back(std::move(v));
  }
  for (const auto& g : b.gens_) {
    std::vector<Rational> v(a.nvars_, Rational(0));
    v.insert(v.end(), g.begin(), g.end());
    gens.push_back(std::move(v));
  }
  return DiagGroup(std::move(gens), n, order_cap);
}

std::size_t DiagGroup::index_of(const std::vector<unsigned>& exps) const {
  auto it = index_.find(exps);
  if (it == index_.end()) throw Error(ErrorKind::Contract, "group", "exponent vector is not a group element");
  return it->second;
}

std::size_t DiagGroup::multiply(std::size_t a, std::size_t b) const {
  std::vector<unsigned> e(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) e[i] = (elements_[a].exps[i] + elements_[b].exps[i]) % m_;
  return index_of(e);
}

std::size_t DiagGroup::inverse(std::size_t a) const {
  std::vector<unsigned> e(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) e[i] = (m_ - elements_[a].exps[i]) % m_;
  return index_of(e);
}

CycNum DiagGroup::eigenvalue(std::size_t element, std::size_t var) const {
  return CycNum::zeta(m_, elements_.at(element).exps.at(var));
}

std::vector<CycNum> DiagGroup::eigenvalues(std::size_t element) const {
  std::vector<CycNum> out;
  for (std::size_t i = 0; i < nvars_; ++i) out.push_back(eigenvalue(element, i));
  return out;
}

unsigned DiagGroup::generator_order(std::size_t k) const {
  unsigned o = 1;
  for (auto e : gen_exps_.at(k)) {
    if (e == 0) continue;
    const unsigned ord = m_ / std::gcd(m_, e);
    o = std::lcm(o, ord);
  }
  return o;
}

Poly DiagGroup::act(std::size_t element, const Poly& p) const {
  std::vector<CycNum> f;
  for (std::size_t i = 0; i < nvars_; ++i) f.push_back(CycNum::zeta(m_, -static_cast<long>(elements_[element].exps[i])));
  return p.scale_vars(f);
}

PolyMatrix DiagGroup::act(std::size_t element, const PolyMatrix& m) const {
  return m.map([&](const Poly& p) { return act(element, p); });
}

void DiagGroup::check_invariant(const Poly& w) const {
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    if (act(gen_elements_[k], w) != w)
      throw Error(ErrorKind::Model, "group", "potential is not invariant under generator " + std::to_string(k));
  }
}

bool DiagGroup::same_as(const DiagGroup& other) const {
  return m_ == other.m_ && nvars_ == other.nvars_ && gens_ == other.gens_;
}

Sector make_sector(const DiagGroup& group, std::size_t element) {
  Sector s;
  s.element = element;
  s.exps = group.element(element).exps;
  s.denominator = CycNum(Rational(1), group.conductor());
  for (std::size_t i = 0; i < group.nvars(); ++i) {
    if (s.exps[i] == 0) {
      s.fixed_vars.push_back(i);
      s.fixed_mask |= 1u << i;
    } else {
      s.moving_vars.push_back(i);
      const CycNum lambda = group.eigenvalue(element, i);
      s.moving_eigenvalues.push_back(lambda);
      s.denominator *= CycNum(1) - lambda.inverse();
    }
  }
  return s;
}

std::vector<Sector> sectors(const DiagGroup& group) {
  std::vector<Sector> out;
  for (std::size_t g = 0; g < group.order(); ++g) out.push_back(make_sector(group, g));
  return out;
}

}  // namespace lgorb
