#include "lgorb/hrr.hpp"

#include <algorithm>

namespace lgorb {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::ExtSkipped: return "ext-skipped";
  }
  return "?";
}

namespace {

void require_same_model(const EquivMF& P, const EquivMF& Q) {
  if (!P.model()->same_as(*Q.model()))
    throw Error(ErrorKind::Model, "hrr", "factorizations '" + P.name() + "' and '" + Q.name() + "' live on different models");
}

}  // namespace

CycNum hrr_value(const EquivMF& P, const EquivMF& Q, const std::vector<FixedLocus>& loci) {
  const EquivMF Pd = dual(P);
  const std::size_t order = P.model()->group().order();
  CycNum chi;
  for (const auto& L : loci) chi += sector_pairing(chern_sector(Q, L).top_poly, chern_sector(Pd, L).top_poly, L, order);
  return chi;
}

HRRReport verify_hrr(const EquivMF& P, const EquivMF& Q, const ExtOptions& options) {
  require_same_model(P, Q);
  const ModelPtr& model = P.model();
  const std::vector<FixedLocus> loci = fixed_loci(*model);
  const EquivMF Pd = dual(P);
  const std::size_t order = model->group().order();
  HRRReport rep;
  rep.model = model;
  rep.p_name = P.name();
  rep.q_name = Q.name();
  for (const auto& L : loci) {
    SectorRow row;
    row.element = L.sector.element;
    row.exps = L.sector.exps;
    row.n_fixed = L.n_fixed();
    row.denominator = L.sector.denominator;
    row.top_q = chern_sector(Q, L).top_poly;
    row.top_p_dual = chern_sector(Pd, L).top_poly;
    row.contribution = sector_pairing(row.top_q, row.top_p_dual, L, order);
    rep.chi_hrr += row.contribution;
    rep.sectors.push_back(std::move(row));
  }
  rep.integral = rep.chi_hrr.is_integer();
  if (model->graded() && P.graded() && Q.graded()) {
    rep.chi_ext = euler_characteristic(P, Q, options);
    rep.verdict = rep.chi_hrr == CycNum(*rep.chi_ext) ? Verdict::Equal : Verdict::Mismatch;
  }
  return rep;
}

CycNum boundary_bulk_pairing(const EquivMF& P, const Morphism& a, const EquivMF& Q, const Morphism& b,
                             const std::vector<FixedLocus>& loci) {
  const EquivMF Pd = dual(P);
  const Morphism ad = dual_morphism(P, a);
  const std::size_t order = P.model()->group().order();
  CycNum total;
  for (const auto& L : loci)
    total += sector_pairing(boundary_bulk(Q, b, L).top_poly, boundary_bulk(Pd, ad, L).top_poly, L, order);
  return total;
}

CardyReport verify_cardy(const EquivMF& P, const EquivMF& Q, const ExtOptions& options) {
  require_same_model(P, Q);
  const std::vector<FixedLocus> loci = fixed_loci(*P.model());
  const ExtBasis ePP = ext_basis(P, P, options);
  const ExtBasis eQQ = ext_basis(Q, Q, options);
  const ExtBasis ePQ = ext_basis(P, Q, options);
  ExtDecomposer dec(P, Q, ePQ);
  CardyReport rep;
  rep.p_name = P.name();
  rep.q_name = Q.name();
  rep.ext_pp = ePP.elements().size();
  rep.ext_qq = eQQ.elements().size();
  rep.ext_pq = ePQ.elements().size();
  const auto as = ePP.elements();
  const auto bs = eQQ.elements();
  for (std::size_t i = 0; i < as.size(); ++i)
    for (std::size_t j = 0; j < bs.size(); ++j) {
      CardyEntry e;
      e.a_index = i;
      e.b_index = j;
      e.a_degree = as[i].first->degree;
      e.a_parity = as[i].first->parity;
      e.b_degree = bs[j].first->degree;
      e.b_parity = bs[j].first->parity;
      e.trace = cardy_trace(P, Q, *as[i].second, e.a_degree, *bs[j].second, e.b_degree, ePQ, dec);
      e.pairing = boundary_bulk_pairing(P, *as[i].second, Q, *bs[j].second, loci);
      e.equal = e.trace == e.pairing;
      rep.all_equal = rep.all_equal && e.equal;
      rep.entries.push_back(std::move(e));
    }
  return rep;
}

DiagonalReport verify_diagonal_decomposition(const ModelPtr& model) {
  DiagonalReport rep;
  rep.model = model;
  const std::vector<FixedLocus> loci = fixed_loci(*model);
  std::optional<DiagonalKernel> built;
  try {
    built = diagonal_kernel(model);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Construction && e.kind() != ErrorKind::Resource) throw;
    rep.applicable = false;
    rep.reason = e.what();
    return rep;
  }
  const DiagonalKernel& dk = *built;

  const DiagGroup& GG = dk.product->group();
  const std::size_t order = model->group().order();
  // Only G-invariant classes m dx_g survive on the orbifold.
  std::vector<Matrix> eta;
  std::vector<std::vector<std::size_t>> inv;
  for (const auto& L : loci) {
    inv.push_back(invariant_classes(L, model->group()));
    const Matrix full = sector_gram(L, order);
    Matrix e(inv.back().size(), inv.back().size());
    for (std::size_t i = 0; i < inv.back().size(); ++i)
      for (std::size_t j = 0; j < inv.back().size(); ++j) e(i, j) = full(inv.back()[i], inv.back()[j]);
    eta.push_back(std::move(e));
  }

  for (std::size_t g = 0; g < loci.size(); ++g)
    for (std::size_t h = 0; h < loci.size(); ++h) {
      std::vector<unsigned> exps = loci[g].sector.exps;
      exps.insert(exps.end(), loci[h].sector.exps.begin(), loci[h].sector.exps.end());
      const std::size_t el = GG.index_of(exps);
      const FixedLocus LL = fixed_locus(*dk.product, dk.product->sectors()[el]);
      const Poly top = chern_sector(dk.kernel, LL).top_poly;
      // Split each standard monomial of the product locus into its two factors.
      const std::size_t ng = loci[g].n_fixed();
      const auto& bg = loci[g].basis;
      const auto& bh = loci[h].basis;
      Matrix full_C(bg.size(), bh.size());
      for (const auto& [mono, c] : top.terms()) {
        Monomial left, right;
        for (std::size_t v = 0; v < ng; ++v) left[v] = mono[v];
        for (std::size_t v = 0; v < loci[h].n_fixed(); ++v) right[v] = mono[ng + v];
        const auto li = std::find(bg.begin(), bg.end(), left);
        const auto ri = std::find(bh.begin(), bh.end(), right);
        if (li == bg.end() || ri == bh.end())
          throw Error(ErrorKind::Contract, "hrr", "product Jacobian basis is not the Kuenneth product basis");
        full_C(static_cast<std::size_t>(li - bg.begin()), static_cast<std::size_t>(ri - bh.begin())) += c;
      }
      // The kernel's trace produces lambda_{-1}(N) where the pairing divides by
      // lambda_{-1}(N^v); they differ by (-1)^{rk N} det(N).
      CycNum kunneth(Rational(1), model->conductor());
      for (const auto& lambda : loci[g].sector.moving_eigenvalues) kunneth *= -lambda.inverse();
      Matrix C(inv[g].size(), inv[h].size());
      for (std::size_t i = 0; i < inv[g].size(); ++i)
        for (std::size_t j = 0; j < inv[h].size(); ++j) C(i, j) = kunneth * full_C(inv[g][i], inv[h][j]);
      const Matrix lhs = eta[g] * C * eta[h];
      for (std::size_t i = 0; i < inv[g].size(); ++i)
        for (std::size_t j = 0; j < inv[h].size(); ++j) {
          DiagonalEntry e;
          e.sector_left = loci[g].sector.element;
          e.sector_right = loci[h].sector.element;
          e.i = inv[g][i];
          e.j = inv[h][j];
          e.lhs = lhs(i, j);
          e.rhs = g == h ? eta[g](i, j) : CycNum(0);
          e.equal = e.lhs == e.rhs;
          rep.all_equal = rep.all_equal && e.equal;
          rep.entries.push_back(std::move(e));
        }
    }
  return rep;
}

}  // namespace lgorb
