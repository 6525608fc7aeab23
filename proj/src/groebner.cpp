#include "lgorb/groebner.hpp"

#include <algorithm>
#include <set>

namespace lgorb {

namespace {

struct Element {
  Poly poly;
  std::vector<Poly> cof;  // in terms of the inputs
};

// Reduces `p` fully against `basis`; accumulates input cofactors into `cof`
// (when tracking) so that original p == sum cof_j * input_j + result.
Poly reduce_tracked(Poly p, const std::vector<Element>& basis, std::vector<Poly>* cof, bool tracking) {
  const RingPtr& ring = p.ring();
  Poly rem(ring);
  while (!p.is_zero()) {
    const Monomial lt = p.lead_monomial();
    const CycNum lc = p.lead_coeff();
    const Element* red = nullptr;
    for (const auto& e : basis)
      if (e.poly.lead_monomial().divides(lt)) {
        red = &e;
        break;
      }
    if (!red) {
      rem.add_term(lt, lc);
      p.add_term(lt, -lc);
      continue;
    }
    const Monomial q = lt / red->poly.lead_monomial();
    const CycNum c = lc / red->poly.lead_coeff();
    p.add_scaled(red->poly, q, -c);
    if (tracking)
      for (std::size_t j = 0; j < cof->size(); ++j) (*cof)[j].add_scaled(red->cof[j], q, c);
  }
  return rem;
}

}  // namespace

bool GroebnerBasis::is_unit_ideal() const {
  return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero();
}

bool GroebnerBasis::zero_dimensional() const {
  for (std::size_t i = 0; i < ring->nvars(); ++i) {
    bool found = false;
    for (const auto& g : basis) {
      const Monomial& m = g.lead_monomial();
      bool pure = m[i] > 0;
      for (std::size_t k = 0; k < ring->nvars() && pure; ++k)
        if (k != i && m[k]) pure = false;
      if (pure || m.is_one()) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

GroebnerBasis buchberger(const std::vector<Poly>& gens, bool track_cofactors) {
  if (gens.empty()) throw Error(ErrorKind::Contract, "groebner", "empty generator list");
  const RingPtr ring = gens[0].ring();
  const std::size_t ninputs = gens.size();

  std::vector<Element> G;
  auto unit_cof = [&](std::size_t j) {
    std::vector<Poly> c(track_cofactors ? ninputs : 0, Poly(ring));
    if (track_cofactors) c[j] = Poly(ring, CycNum(1));
    return c;
  };

  using Pair = std::pair<std::size_t, std::size_t>;
  std::vector<Pair> pairs;

  auto add = [&](Element e) {
    if (e.poly.is_zero()) return;
    const CycNum inv = e.poly.lead_coeff().inverse();
    e.poly *= inv;
    for (auto& c : e.cof) c *= inv;
    const std::size_t idx = G.size();
    for (std::size_t i = 0; i < idx; ++i) pairs.emplace_back(i, idx);
    G.push_back(std::move(e));
  };

  for (std::size_t j = 0; j < ninputs; ++j) {
    if (!gens[j].ring()->same_as(*ring))
      throw Error(ErrorKind::Contract, "groebner", "generators over different rings");
    Element e{gens[j], unit_cof(j)};
    std::vector<Poly> cof(track_cofactors ? ninputs : 0, Poly(ring));
    Poly r = reduce_tracked(e.poly, G, &cof, track_cofactors);
    for (std::size_t k = 0; k < cof.size(); ++k) e.cof[k] -= cof[k];
    e.poly = std::move(r);
    add(std::move(e));
  }

  auto pair_lcm = [&](const Pair& p) { return lcm(G[p.first].poly.lead_monomial(), G[p.second].poly.lead_monomial()); };

  while (!pairs.empty()) {
    // Normal selection: smallest lcm first.
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      return ring->less(pair_lcm(a), pair_lcm(b));
    });
    const Pair pr = *best;
    pairs.erase(best);
    const Element& f = G[pr.first];
    const Element& g = G[pr.second];
    const Monomial& lf = f.poly.lead_monomial();
    const Monomial& lg = g.poly.lead_monomial();
    if (lf.coprime(lg)) continue;
    const Monomial L = lcm(lf, lg);
    // Both are monic.
    Element s{Poly(ring), std::vector<Poly>(track_cofactors ? ninputs : 0, Poly(ring))};
    s.poly.add_scaled(f.poly, L / lf, CycNum(1));
    s.poly.add_scaled(g.poly, L / lg, CycNum(-1));
    if (track_cofactors)
      for (std::size_t j = 0; j < ninputs; ++j) {
        s.cof[j].add_scaled(f.cof[j], L / lf, CycNum(1));
        s.cof[j].add_scaled(g.cof[j], L / lg, CycNum(-1));
      }
    std::vector<Poly> cof(track_cofactors ? ninputs : 0, Poly(ring));
    Poly r = reduce_tracked(s.poly, G, &cof, track_cofactors);
    if (r.is_zero()) continue;
    for (std::size_t k = 0; k < cof.size(); ++k) s.cof[k] -= cof[k];
    s.poly = std::move(r);
    add(std::move(s));
  }

  // Minimalize.
  std::vector<Element> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < G.size() && !redundant; ++k) {
      if (k == i) continue;
      const Monomial& a = G[k].poly.lead_monomial();
      const Monomial& b = G[i].poly.lead_monomial();
      if (a.divides(b) && (a != b || k < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  // Interreduce tails.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Element> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    Element& e = minimal[i];
    const Monomial lt = e.poly.lead_monomial();
    Poly tail = e.poly;
    tail.add_term(lt, -e.poly.lead_coeff());
    std::vector<Poly> cof(track_cofactors ? ninputs : 0, Poly(ring));
    Poly r = reduce_tracked(tail, others, &cof, track_cofactors);
    r.add_term(lt, CycNum(1));
    for (std::size_t k = 0; k < cof.size(); ++k) e.cof[k] -= cof[k];
    e.poly = std::move(r);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Element& a, const Element& b) {
    return ring->less(a.poly.lead_monomial(), b.poly.lead_monomial());
  });

  GroebnerBasis gb;
  gb.ring = ring;
  gb.inputs = gens;
  for (auto& e : minimal) {
    gb.basis.push_back(std::move(e.poly));
    if (track_cofactors) gb.cofactors.push_back(std::move(e.cof));
  }
  return gb;
}

Reduction normal_form(const Poly& p, const GroebnerBasis& gb, bool with_cofactors) {
  const RingPtr& ring = p.ring();
  Reduction out{Poly(ring), {}, {}};
  if (with_cofactors) out.basis_cofactors.assign(gb.basis.size(), Poly(ring));
  Poly work = p;
  while (!work.is_zero()) {
    const Monomial lt = work.lead_monomial();
    const CycNum lc = work.lead_coeff();
    std::size_t k = 0;
    for (; k < gb.basis.size(); ++k)
      if (gb.basis[k].lead_monomial().divides(lt)) break;
    if (k == gb.basis.size()) {
      out.remainder.add_term(lt, lc);
      work.add_term(lt, -lc);
      continue;
    }
    const Monomial q = lt / gb.basis[k].lead_monomial();
    const CycNum c = lc / gb.basis[k].lead_coeff();
    work.add_scaled(gb.basis[k], q, -c);
    if (with_cofactors) out.basis_cofactors[k].add_term(q, c);
  }
  if (with_cofactors && !gb.cofactors.empty()) {
    out.input_cofactors.assign(gb.inputs.size(), Poly(ring));
    for (std::size_t k = 0; k < gb.basis.size(); ++k)
      for (std::size_t j = 0; j < gb.inputs.size(); ++j)
        out.input_cofactors[j] += out.basis_cofactors[k] * gb.cofactors[k][j];
  } else if (with_cofactors && gb.basis.empty()) {
    out.input_cofactors.assign(gb.inputs.size(), Poly(ring));
  }
  return out;
}

Poly normal_form(const Poly& p, const GroebnerBasis& gb) { return normal_form(p, gb, false).remainder; }

std::vector<Monomial> standard_monomials(const GroebnerBasis& gb) {
  if (!gb.zero_dimensional()) return {};
  const RingPtr& ring = gb.ring;
  auto standard = [&](const Monomial& m) {
    for (const auto& g : gb.basis)
      if (g.lead_monomial().divides(m)) return false;
    return true;
  };
  std::vector<Monomial> out;
  if (!standard(Monomial{})) return out;
  std::vector<Monomial> frontier{Monomial{}};
  auto cmp = [&](const Monomial& a, const Monomial& b) { return a.e < b.e; };
  std::set<Monomial, decltype(cmp)> seen(cmp);
  seen.insert(Monomial{});
  while (!frontier.empty()) {
    Monomial m = frontier.back();
    frontier.pop_back();
    out.push_back(m);
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      Monomial n = m;
      n[i] += 1;
      if (seen.count(n) || !standard(n)) continue;
      seen.insert(n);
      frontier.push_back(n);
    }
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ring->less(a, b); });
  return out;
}

MilnorData milnor_data(const Poly& w, bool track_cofactors) {
  const RingPtr& ring = w.ring();
  MilnorData md;
  md.jacobian.ring = ring;
  if (ring->nvars() == 0) {
    md.milnor_number = 1;
    md.standard_monomials = {Monomial{}};
    return md;
  }
  std::vector<Poly> partials;
  for (std::size_t i = 0; i < ring->nvars(); ++i) partials.push_back(w.derive(i));
  const bool all_zero = std::all_of(partials.begin(), partials.end(), [](const Poly& p) { return p.is_zero(); });
  if (all_zero) {
    md.jacobian.inputs = partials;
    return md;  // zero ideal in positive dimension: infinite
  }
  md.jacobian = buchberger(partials, track_cofactors);
  if (!md.jacobian.zero_dimensional()) return md;
  md.standard_monomials = standard_monomials(md.jacobian);
  md.milnor_number = md.standard_monomials.size();
  return md;
}

}  // namespace lgorb
