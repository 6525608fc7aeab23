#include "lgorb/ext.hpp"

#include <algorithm>
#include <set>

namespace lgorb {

namespace {

bool is_integral(const Rational& q) { return q.get_den() == 1; }

std::pair<std::size_t, std::array<std::uint16_t, kMaxVars>> key(std::size_t flat, const Monomial& m) {
  return {flat, m.e};
}

}  // namespace

HomComplex::HomComplex(const EquivMF& P, const EquivMF& Q) : P_(P), Q_(Q) {
  const ModelPtr& model = P.model();
  if (!model->same_as(*Q.model())) throw Error(ErrorKind::Model, "ext", "Hom complex needs a common model");
  if (!model->graded() || !P.graded() || !Q.graded())
    throw Error(ErrorKind::GradingRequired, "ext", "Ext needs a quasi-homogeneous potential and graded factorizations");
  half_d_ = model->degree() / 2;
  eff_P_ = P.effective_degrees();
  eff_Q_ = Q.effective_degrees();
  for (const auto* mf : {&P, &Q})
    for (const auto& ra : mf->rho_generators())
      if (!ra.even.is_diagonal() || !ra.odd.is_diagonal()) diagonal_rho_ = false;
}

std::vector<Rational> HomComplex::candidate_degrees(const Rational& hi) const {
  const long L = P_.model()->ring()->weight_scale();
  std::set<Rational> out;
  for (const auto& eq : eff_Q_)
    for (const auto& ep : eff_P_) {
      const Rational base = eq - ep;
      for (long k = 0;; ++k) {
        const Rational t = base + Rational(k) / L;
        if (t > hi) break;
        out.insert(t);
      }
    }
  return {out.begin(), out.end()};
}

Rational HomComplex::lowest_degree() const {
  Rational lo = eff_Q_[0] - eff_P_[0];
  for (const auto& eq : eff_Q_)
    for (const auto& ep : eff_P_) lo = std::min(lo, Rational(eq - ep));
  return lo;
}

Rational HomComplex::default_upper_bound() const {
  const auto& model = *P_.model();
  Rational hi = eff_Q_[0] - eff_P_[0];
  for (const auto& eq : eff_Q_)
    for (const auto& ep : eff_P_) hi = std::max(hi, Rational(eq - ep));
  const Rational& d = model.degree();
  Rational sigma = 0;
  for (const auto& v : model.ring()->vars()) sigma += d - 2 * v.weight;
  return hi + sigma + d;
}

HomComplex::Piece HomComplex::build_piece(const Rational& t, int parity) const {
  const RingPtr& ring = P_.model()->ring();
  const long L = ring->weight_scale();
  const std::size_t rows = eff_Q_.size(), cols = eff_P_.size();
  const std::size_t rq = rows / 2, rp = cols / 2;
  Piece piece;
  piece.degree = t;
  piece.parity = parity;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const int par = (i >= rq ? 1 : 0) + (j >= rp ? 1 : 0);
      if (par % 2 != parity) continue;
      const Rational e = (t + eff_P_[j] - eff_Q_[i]) * L;
      if (e < 0 || !is_integral(e)) continue;
      for (const auto& m : ring->monomials_of_degree(e.get_num().get_si())) {
        piece.index[key(i * cols + j, m)] = piece.basis.size();
        piece.basis.push_back(Coordinate{i, j, m});
      }
    }
  piece.invariants = invariant_basis(piece);
  return piece;
}

Matrix HomComplex::invariant_basis(const Piece& piece) const {
  const DiagGroup& G = P_.model()->group();
  const unsigned m = G.conductor();
  const std::size_t N = piece.basis.size();
  const std::size_t rq = Q_.rank(), rp = P_.rank();
  auto rho_entry = [](const BlockAction& ba, std::size_t r, std::size_t a, std::size_t b) -> CycNum {
    if ((a < r) != (b < r)) return CycNum(0);
    return a < r ? ba.even(a, b) : ba.odd(a - r, b - r);
  };
  auto monomial_character = [&](std::size_t element, const Monomial& mono) {
    long e = 0;
    const auto& exps = G.element(element).exps;
    for (std::size_t v = 0; v < exps.size(); ++v) e += static_cast<long>(exps[v]) * mono[v];
    return CycNum::zeta(m, -e);
  };

  if (diagonal_rho_) {
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < N; ++k) {
      const auto& c = piece.basis[k];
      bool invariant = true;
      for (std::size_t g = 0; g < G.num_generators() && invariant; ++g) {
        const std::size_t el = G.generator_element(g);
        const CycNum chi = rho_entry(Q_.rho_generators()[g], rq, c.row, c.row) * monomial_character(el, c.mono) /
                           rho_entry(P_.rho_generators()[g], rp, c.col, c.col);
        invariant = chi.is_one();
      }
      if (invariant) keep.push_back(k);
    }
    Matrix inv(N, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) inv(keep[k], k) = CycNum(1);
    return inv;
  }

  // Averaging projector (1/|G|) sum_g g*, with g*f = rho_Q(g) (g.f) rho_P(g)^{-1}.
  Matrix proj(N, N);
  const std::size_t cols = 2 * rp;
  for (std::size_t g = 0; g < G.order(); ++g) {
    const BlockAction& RQ = Q_.rho(g);
    const BlockAction& RPg = P_.rho(g);
    const BlockAction RPinv{RPg.even.inverse(), RPg.odd.inverse()};
    for (std::size_t k = 0; k < N; ++k) {
      const auto& c = piece.basis[k];
      const CycNum chi = monomial_character(g, c.mono);
      for (std::size_t a = 0; a < 2 * rq; ++a) {
        const CycNum qa = rho_entry(RQ, rq, a, c.row);
        if (qa.is_zero()) continue;
        for (std::size_t b = 0; b < cols; ++b) {
          const CycNum pb = rho_entry(RPinv, rp, c.col, b);
          if (pb.is_zero()) continue;
          auto it = piece.index.find(key(a * cols + b, c.mono));
          if (it == piece.index.end())
            throw Error(ErrorKind::Construction, "ext", "rho does not preserve the internal grading");
          proj(it->second, k) += qa * chi * pb;
        }
      }
    }
  }
  proj = CycNum(Rational(1, static_cast<unsigned long>(G.order()))) * proj;
  return column_basis(proj);
}

const HomComplex::Piece& HomComplex::piece(const Rational& t, int parity) {
  auto k = std::make_pair(t, parity);
  auto it = pieces_.find(k);
  if (it == pieces_.end()) it = pieces_.emplace(k, build_piece(t, parity)).first;
  return it->second;
}

Matrix HomComplex::differential(const Rational& t, int parity) {
  const Piece& src = piece(t, parity);
  const Piece& dst = piece(t + half_d_, 1 - parity);
  const PolyMatrix dQ = Q_.delta(), dP = P_.delta();
  const std::size_t cols = 2 * P_.rank();
  Matrix D(dst.basis.size(), src.basis.size());
  auto put = [&](std::size_t row, std::size_t col, const Poly& p, std::size_t k, bool negate) {
    for (const auto& [mono, c] : p.terms()) {
      auto it = dst.index.find(key(row * cols + col, mono));
      if (it == dst.index.end())
        throw Error(ErrorKind::Contract, "ext", "differential leaves its degree piece: inconsistent gradings");
      if (negate) D(it->second, k) -= c;
      else D(it->second, k) += c;
    }
  };
  for (std::size_t k = 0; k < src.basis.size(); ++k) {
    const auto& c = src.basis[k];
    const Poly m = Poly::monomial(P_.model()->ring(), c.mono);
    for (std::size_t a = 0; a < dQ.rows(); ++a)
      if (!dQ(a, c.row).is_zero()) put(a, c.col, dQ(a, c.row) * m, k, false);
    // -(-1)^p f delta_P
    for (std::size_t b = 0; b < dP.cols(); ++b)
      if (!dP(c.col, b).is_zero()) put(c.row, b, m * dP(c.col, b), k, parity == 0);
  }
  return D;
}

Matrix HomComplex::coboundaries(const Rational& t, int parity) {
  const Rational s = t - half_d_;
  const Matrix D = differential(s, 1 - parity);
  return column_basis(D * piece(s, 1 - parity).invariants);
}

Matrix HomComplex::cocycles(const Rational& t, int parity) {
  const Matrix& inv = piece(t, parity).invariants;
  const Matrix D = differential(t, parity);
  return inv * nullspace(D * inv);
}

Morphism HomComplex::to_morphism(const Piece& p, const Matrix& columns, std::size_t col) const {
  const RingPtr& ring = P_.model()->ring();
  PolyMatrix m(ring, 2 * Q_.rank(), 2 * P_.rank());
  for (std::size_t k = 0; k < p.basis.size(); ++k) {
    const CycNum& v = columns(k, col);
    if (!v.is_zero()) m(p.basis[k].row, p.basis[k].col).add_term(p.basis[k].mono, v);
  }
  return Morphism{std::move(m), p.parity};
}

std::optional<std::vector<CycNum>> HomComplex::coordinates(const Morphism& f, const Rational& t) {
  const Piece& p = piece(t, f.parity);
  const std::size_t cols = 2 * P_.rank();
  std::vector<CycNum> v(p.basis.size());
  for (std::size_t i = 0; i < f.matrix.rows(); ++i)
    for (std::size_t j = 0; j < f.matrix.cols(); ++j)
      for (const auto& [mono, c] : f.matrix(i, j).terms()) {
        auto it = p.index.find(key(i * cols + j, mono));
        if (it == p.index.end()) return std::nullopt;
        v[it->second] = c;
      }
  return v;
}

std::size_t ExtBasis::dim(int parity) const {
  std::size_t n = 0;
  for (const auto& g : groups)
    if (g.parity == parity) n += g.reps.size();
  return n;
}

std::vector<std::pair<const ExtGroup*, const Morphism*>> ExtBasis::elements() const {
  std::vector<std::pair<const ExtGroup*, const Morphism*>> out;
  for (const auto& g : groups)
    for (const auto& r : g.reps) out.emplace_back(&g, &r);
  return out;
}

namespace {

ExtGroup cohomology(HomComplex& C, const Rational& t, int parity) {
  ExtGroup g{t, parity, {}};
  const Matrix Z = C.cocycles(t, parity);
  if (Z.cols() == 0) return g;
  const Matrix B = C.coboundaries(t, parity);
  Matrix M = hcat(B, Z);
  const auto piv = row_reduce(M);
  for (auto p : piv)
    if (p >= B.cols()) g.reps.push_back(C.to_morphism(C.piece(t, parity), Z, p - B.cols()));
  return g;
}

}  // namespace

ExtBasis ext_basis(const EquivMF& P, const EquivMF& Q, const ExtOptions& options) {
  P.model()->require_isolated();
  HomComplex C(P, Q);
  const Rational d = P.model()->degree();
  Rational hi = C.default_upper_bound() + options.degree_window_slack;
  for (unsigned attempt = 0;; ++attempt) {
    ExtBasis basis;
    basis.window_low = C.lowest_degree();
    basis.window_high = hi;
    bool guard_clean = true;
    for (const auto& t : C.candidate_degrees(hi + d))
      for (int p = 0; p < 2; ++p) {
        ExtGroup g = cohomology(C, t, p);
        if (g.reps.empty()) continue;
        if (t > hi) guard_clean = false;
        else basis.groups.push_back(std::move(g));
      }
    if (guard_clean) return basis;
    if (attempt >= options.max_widenings)
      throw Error(ErrorKind::Resource, "ext", "degree window kept widening; Ext does not appear to be bounded");
    hi += d;
  }
}

long euler_characteristic(const EquivMF& P, const EquivMF& Q, const ExtOptions& options) {
  const ExtBasis b = ext_basis(P, Q, options);
  return static_cast<long>(b.dim(0)) - static_cast<long>(b.dim(1));
}

ExtDecomposer::ExtDecomposer(const EquivMF& P, const EquivMF& Q, const ExtBasis& basis)
    : complex_(P, Q), basis_(basis) {}

std::vector<CycNum> ExtDecomposer::decompose(const Morphism& z, const Rational& degree) {
  const auto elements = basis_.elements();
  std::vector<CycNum> out(elements.size());
  auto k = std::make_pair(degree, z.parity);
  auto it = systems_.find(k);
  if (it == systems_.end()) {
    std::vector<std::size_t> which;
    const auto& piece = complex_.piece(degree, z.parity);
    Matrix reps(piece.basis.size(), 0);
    for (std::size_t e = 0; e < elements.size(); ++e) {
      if (elements[e].first->degree != degree || elements[e].first->parity != z.parity) continue;
      auto v = complex_.coordinates(*elements[e].second, degree);
      Matrix col(piece.basis.size(), 1);
      for (std::size_t i = 0; i < v->size(); ++i) col(i, 0) = (*v)[i];
      reps = hcat(reps, col);
      which.push_back(e);
    }
    it = systems_.emplace(k, std::make_pair(hcat(reps, complex_.coboundaries(degree, z.parity)), which)).first;
  }
  const auto& [S, which] = it->second;
  auto v = complex_.coordinates(z, degree);
  if (!v) throw Error(ErrorKind::Contract, "ext", "morphism is not homogeneous of the requested degree");
  Matrix col(v->size(), 1);
  for (std::size_t i = 0; i < v->size(); ++i) col(i, 0) = (*v)[i];
  if (!(complex_.differential(degree, z.parity) * col).is_zero())
    throw Error(ErrorKind::Contract, "ext", "morphism is not closed");
  std::vector<CycNum> x;
  if (!solve(S, *v, x)) throw Error(ErrorKind::Contract, "ext", "morphism is not an invariant cocycle");
  for (std::size_t i = 0; i < which.size(); ++i) out[which[i]] = x[i];
  return out;
}

CycNum cardy_trace(const EquivMF& P, const EquivMF& Q, const Morphism& a, const Rational& ta, const Morphism& b,
                   const Rational& tb, const ExtBasis& basis_PQ, ExtDecomposer& decomposer) {
  if (!is_closed(P, P, a) || !is_closed(Q, Q, b)) throw Error(ErrorKind::Contract, "ext", "cardy input is not closed");
  CycNum trace;
  if (ta + tb != 0 || (a.parity + b.parity) % 2 != 0) return trace;
  const auto elements = basis_PQ.elements();
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const auto& [group, c] = elements[e];
    const Morphism z = compose(b, compose(*c, a));
    const std::vector<CycNum> coeffs = decomposer.decompose(z, group->degree);
    const int sign = ((c->parity + a.parity * c->parity) % 2) ? -1 : 1;
    trace += sign < 0 ? -coeffs[e] : coeffs[e];
  }
  return trace;
}

bool homotopy_identity_holds(const EquivMF& P) {
  const PolyMatrix delta = P.delta();
  const Poly& w = P.model()->potential();
  for (std::size_t i = 0; i < P.model()->ring()->nvars(); ++i) {
    const PolyMatrix di = delta.map([&](const Poly& p) { return p.derive(i); });
    if (!(delta * di + di * delta).is_scalar_multiple_of_identity(w.derive(i))) return false;
  }
  return true;
}

}  // namespace lgorb
