#include "lgorb/residue.hpp"

#include "lgorb/mf.hpp"

namespace lgorb {

namespace {
constexpr unsigned kMaxLiftExponent = 512;
}

ResidueProblem residue_problem(const Poly& w) {
  const RingPtr& ring = w.ring();
  const std::size_t n = ring->nvars();
  ResidueProblem rp;
  rp.ring = ring;
  rp.w = w;
  rp.cofactors = PolyMatrix(ring, n, n);
  if (n == 0) {
    rp.det_cofactors = Poly(ring, CycNum(1));
    return rp;
  }
  for (std::size_t i = 0; i < n; ++i) rp.partials.push_back(w.derive(i));
  MilnorData md = milnor_data(w, true);
  if (!md.milnor_number) throw Error(ErrorKind::Model, "residue", "critical point of " + w.str() + " is not isolated");
  rp.jacobian = std::move(md.jacobian);
  for (std::size_t i = 0; i < n; ++i) {
    const Poly xi = Poly::variable(ring, i);
    Poly power = xi;
    unsigned N = 1;
    for (;; ++N, power *= xi) {
      if (N > kMaxLiftExponent) throw Error(ErrorKind::Resource, "residue", "lift exponent search exceeded bound");
      Reduction red = normal_form(power, rp.jacobian, true);
      if (!red.remainder.is_zero()) continue;
      Poly check(ring);
      for (std::size_t j = 0; j < n; ++j) {
        rp.cofactors(i, j) = red.input_cofactors[j];
        check += red.input_cofactors[j] * rp.partials[j];
      }
      if (check != power) throw Error(ErrorKind::Contract, "residue", "lift identity failed for " + power.str());
      break;
    }
    rp.lift_exponents.push_back(N);
  }
  rp.det_cofactors = determinant(rp.cofactors);
  return rp;
}

CycNum residue(const Poly& h, const ResidueProblem& rp) {
  if (rp.ring->nvars() == 0) return h.constant_term();
  const Poly f = normal_form(h, rp.jacobian) * rp.det_cofactors;
  Monomial target;
  for (std::size_t i = 0; i < rp.lift_exponents.size(); ++i)
    target[i] = static_cast<std::uint16_t>(rp.lift_exponents[i] - 1);
  return f.coefficient(target);
}

Poly hessian(const Poly& w) {
  const std::size_t n = w.ring()->nvars();
  PolyMatrix H(w.ring(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Poly di = w.derive(i);
    for (std::size_t j = 0; j < n; ++j) H(i, j) = di.derive(j);
  }
  return n == 0 ? Poly(w.ring(), CycNum(1)) : determinant(H);
}

Matrix residue_gram(const ResidueProblem& rp, const std::vector<Monomial>& basis) {
  Matrix g(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      g(i, j) = residue(Poly::monomial(rp.ring, basis[i] * basis[j]), rp);
  return g;
}

Poly FixedLocus::localize(const Poly& p) const {
  const std::size_t n = to_local.size();
  const std::uint32_t moving = ((n >= 32) ? ~0u : ((1u << n) - 1u)) & ~sector.fixed_mask;
  return p.restrict(moving).remap(ring, to_local);
}

Poly FixedLocus::reduce(const Poly& local) const {
  if (ring->nvars() == 0) return local;
  return normal_form(local, residue.jacobian);
}

FixedLocus fixed_locus(const LGModel& model, const Sector& s) {
  FixedLocus L;
  L.sector = s;
  L.ring = model.ring()->subring(s.fixed_vars);
  L.to_local.assign(model.ring()->nvars(), -1);
  for (std::size_t k = 0; k < s.fixed_vars.size(); ++k) L.to_local[s.fixed_vars[k]] = static_cast<int>(k);
  L.w = L.localize(model.potential());
  if (s.n_fixed() > 0 && L.w.is_zero())
    throw Error(ErrorKind::Model, "residue",
                "potential vanishes on the fixed locus of group element " + std::to_string(s.element));
  L.residue = residue_problem(L.w);
  L.basis = s.n_fixed() == 0 ? std::vector<Monomial>{Monomial{}} : standard_monomials(L.residue.jacobian);
  return L;
}

std::vector<FixedLocus> fixed_loci(const LGModel& model) {
  std::vector<FixedLocus> out;
  for (const auto& s : model.sectors()) out.push_back(fixed_locus(model, s));
  return out;
}

std::vector<std::size_t> invariant_classes(const FixedLocus& locus, const DiagGroup& group) {
  std::vector<std::size_t> out;
  const auto& fixed = locus.sector.fixed_vars;
  for (std::size_t b = 0; b < locus.basis.size(); ++b) {
    bool invariant = true;
    for (std::size_t k = 0; k < group.num_generators() && invariant; ++k) {
      const auto& e = group.generator_exps(k);
      unsigned long total = 0;
      for (std::size_t v = 0; v < fixed.size(); ++v) total += static_cast<unsigned long>(e[fixed[v]]) * (locus.basis[b][v] + 1u);
      invariant = total % group.conductor() == 0;
    }
    if (invariant) out.push_back(b);
  }
  return out;
}

int pairing_sign(std::size_t n) { return (n * (n + 1) / 2) % 2 ? -1 : 1; }

CycNum sector_pairing(const Poly& top1, const Poly& top2, const FixedLocus& locus, std::size_t group_order) {
  if (top1.is_zero() || top2.is_zero()) return CycNum(0);
  CycNum r = residue(top1 * top2, locus.residue);
  if (r.is_zero()) return r;
  r *= CycNum(Rational(pairing_sign(locus.n_fixed()), static_cast<long>(group_order)));
  return r / locus.sector.denominator;
}

Matrix sector_gram(const FixedLocus& locus, std::size_t group_order) {
  const std::size_t mu = locus.basis.size();
  Matrix g(mu, mu);
  for (std::size_t i = 0; i < mu; ++i)
    for (std::size_t j = 0; j < mu; ++j)
      g(i, j) = sector_pairing(Poly::monomial(locus.ring, locus.basis[i]), Poly::monomial(locus.ring, locus.basis[j]),
                               locus, group_order);
  return g;
}

}  // namespace lgorb
