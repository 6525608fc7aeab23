#include "lgorb/mf.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "lgorb/groebner.hpp"

namespace lgorb {

namespace {

PolyMatrix mul(const Matrix& s, const PolyMatrix& p) {
  PolyMatrix r(p.ring(), s.rows(), p.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t k = 0; k < s.cols(); ++k) {
      if (s(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < p.cols(); ++j)
        if (!p(k, j).is_zero()) r(i, j) += p(k, j) * s(i, k);
    }
  return r;
}

PolyMatrix mul(const PolyMatrix& p, const Matrix& s) {
  PolyMatrix r(p.ring(), p.rows(), s.cols());
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t k = 0; k < p.cols(); ++k) {
      if (p(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < s.cols(); ++j)
        if (!s(k, j).is_zero()) r(i, j) += p(i, k) * s(k, j);
    }
  return r;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

PolyMatrix poly_block_diag(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix r(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

CycNum character_value(unsigned conductor, const Rational& c) {
  Rational q = c;
  q.canonicalize();
  Integer num = q.get_num() % q.get_den();
  if (num < 0) num += q.get_den();
  const unsigned long den = q.get_den().get_ui();
  if (conductor % den != 0)
    throw Error(ErrorKind::Equivariance, "mf",
                "character value exp(2 pi i " + to_string(c) + ") does not live in Q(zeta_" +
                    std::to_string(conductor) + ")");
  return CycNum::root_of_unity(conductor, static_cast<unsigned>(den), num.get_si());
}

/// Ratio c with g.p = c p, or nullopt if p is not semi-invariant.
std::optional<CycNum> semi_invariant_character(const DiagGroup& G, std::size_t element, const Poly& p) {
  if (p.is_zero()) return CycNum(1);
  const Poly gp = G.act(element, p);
  const CycNum c = gp.lead_coeff() / p.lead_coeff();
  if (gp != p * c) return std::nullopt;
  return c;
}

struct KoszulOperator {
  std::vector<unsigned> even_masks, odd_masks;
  PolyMatrix A, B;
};

KoszulOperator koszul_operator(const std::vector<KoszulPair>& pairs, const RingPtr& ring) {
  const unsigned k = static_cast<unsigned>(pairs.size());
  KoszulOperator op;
  std::vector<unsigned> masks(1u << k);
  for (unsigned m = 0; m < masks.size(); ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
  for (unsigned m : masks) (std::popcount(m) % 2 ? op.odd_masks : op.even_masks).push_back(m);
  const std::size_t r = op.even_masks.size();
  std::vector<long> pos(1u << k, -1);
  for (std::size_t i = 0; i < r; ++i) pos[op.even_masks[i]] = static_cast<long>(i);
  for (std::size_t i = 0; i < r; ++i) pos[op.odd_masks[i]] = static_cast<long>(i);
  op.A = PolyMatrix(ring, r, r);
  op.B = PolyMatrix(ring, r, r);
  auto apply = [&](unsigned S, bool from_even) {
    const std::size_t col = static_cast<std::size_t>(pos[S]);
    PolyMatrix& target = from_even ? op.B : op.A;
    for (unsigned i = 0; i < k; ++i) {
      const int sgn = koszul_sign(S, i);
      if (S >> i & 1u) {
        const unsigned T = S & ~(1u << i);
        Poly term = pairs[i].b;
        if (sgn < 0) term = -term;
        target(static_cast<std::size_t>(pos[T]), col) += term;
      } else {
        const unsigned T = S | (1u << i);
        Poly term = pairs[i].a;
        if (sgn < 0) term = -term;
        target(static_cast<std::size_t>(pos[T]), col) += term;
      }
    }
  };
  for (unsigned S : op.even_masks) apply(S, true);
  for (unsigned S : op.odd_masks) apply(S, false);
  return op;
}

std::pair<std::vector<Rational>, std::vector<Rational>> weights_from_effective(const std::vector<Rational>& eff,
                                                                               std::size_t r, const Rational& d) {
  std::vector<Rational> we, wo;
  for (std::size_t i = 0; i < r; ++i) we.push_back(-eff[i]);
  for (std::size_t i = 0; i < r; ++i) wo.push_back(-eff[r + i] - d / 2);
  return {we, wo};
}

}  // namespace

int koszul_sign(unsigned mask, unsigned index) { return std::popcount(mask & ((1u << index) - 1u)) % 2 ? -1 : 1; }

// ---------------------------------------------------------------------------
// LGModel

LGModel::LGModel(RingPtr ring, Poly w, DiagGroup group, bool graded, unsigned field_conductor)
    : ring_(std::move(ring)), w_(std::move(w)), group_(std::move(group)) {
  if (field_conductor == 0) throw Error(ErrorKind::Input, "mf", "field conductor must be positive");
  conductor_ = std::lcm(group_.conductor(), field_conductor);
  if (group_.nvars() != ring_->nvars())
    throw Error(ErrorKind::Model, "mf", "group acts on a different number of coordinates");
  if (!w_.ring()->same_as(*ring_)) throw Error(ErrorKind::Model, "mf", "potential over a different ring");
  if (w_.is_zero()) throw Error(ErrorKind::Model, "mf", "potential is zero");
  if (!w_.constant_term().is_zero()) throw Error(ErrorKind::Model, "mf", "critical value must be 0: w(0) != 0");
  group_.check_invariant(w_);
  if (graded) {
    degree_ = w_.homogeneous_degree();
    if (!degree_) throw Error(ErrorKind::Model, "mf", "potential is not quasi-homogeneous for the given weights");
  }
  sectors_ = lgorb::sectors(group_);
}

ModelPtr LGModel::make(RingPtr ring, Poly w, DiagGroup group, bool graded, unsigned field_conductor) {
  return std::make_shared<const LGModel>(std::move(ring), std::move(w), std::move(group), graded, field_conductor);
}

ModelPtr LGModel::make(std::vector<VarSpec> vars, std::string_view potential,
                       std::vector<std::vector<Rational>> generators, bool graded, std::size_t order_cap,
                       unsigned field_conductor) {
  RingPtr ring = Ring::make(std::move(vars));
  DiagGroup group(std::move(generators), ring->nvars(), order_cap);
  Poly w = Poly::parse(potential, ring, std::lcm(group.conductor(), std::max(1u, field_conductor)));
  return make(ring, std::move(w), std::move(group), graded, field_conductor);
}

const Rational& LGModel::degree() const {
  if (!degree_) throw Error(ErrorKind::GradingRequired, "mf", "model is ungraded");
  return *degree_;
}

ModelPtr LGModel::with_potential(Poly w) const { return make(ring_, std::move(w), group_, graded(), conductor_); }

bool LGModel::same_as(const LGModel& other) const {
  return this == &other || (ring_->same_as(*other.ring_) && w_ == other.w_ && group_.same_as(other.group_));
}

void LGModel::require_isolated() const {
  for (const auto& s : sectors_) {
    if (s.fixed_vars.empty()) continue;
    const std::uint32_t moving = ((1u << ring_->nvars()) - 1u) & ~s.fixed_mask;
    RingPtr sub = ring_->subring(s.fixed_vars);
    std::vector<int> map(ring_->nvars(), -1);
    for (std::size_t k = 0; k < s.fixed_vars.size(); ++k) map[s.fixed_vars[k]] = static_cast<int>(k);
    const Poly wg = w_.restrict(moving).remap(sub, map);
    if (!milnor_data(wg).milnor_number)
      throw Error(ErrorKind::Model, "mf",
                  "critical locus is not isolated on the sector of element " + std::to_string(s.element));
  }
}

// ---------------------------------------------------------------------------
// EquivMF

EquivMF::EquivMF(ModelPtr model, PolyMatrix A, PolyMatrix B, std::vector<BlockAction> rho_generators,
                 std::optional<std::vector<Rational>> weights_even, std::optional<std::vector<Rational>> weights_odd,
                 std::string name)
    : model_(std::move(model)),
      A_(std::move(A)),
      B_(std::move(B)),
      rho_gens_(std::move(rho_generators)),
      weights_even_(std::move(weights_even)),
      weights_odd_(std::move(weights_odd)),
      name_(std::move(name)) {
  validate();
}

void EquivMF::validate() {
  const std::size_t r = A_.rows();
  const std::string who = name_.empty() ? std::string("factorization") : "factorization '" + name_ + "'";
  if (r == 0 || A_.cols() != r || B_.rows() != r || B_.cols() != r)
    throw Error(ErrorKind::Construction, "mf", who + ": A and B must be square of equal positive rank");
  if (!A_.ring()->same_as(*model_->ring()) || !B_.ring()->same_as(*model_->ring()))
    throw Error(ErrorKind::Construction, "mf", who + ": matrices over a different ring");
  const Poly& w = model_->potential();
  if (!(A_ * B_).is_scalar_multiple_of_identity(w) || !(B_ * A_).is_scalar_multiple_of_identity(w))
    throw Error(ErrorKind::Construction, "mf", who + ": AB = BA = w Id fails");

  const DiagGroup& G = model_->group();
  if (rho_gens_.size() != G.num_generators())
    throw Error(ErrorKind::Equivariance, "mf",
                who + ": expected " + std::to_string(G.num_generators()) + " generator actions");
  for (std::size_t k = 0; k < rho_gens_.size(); ++k) {
    const auto& ra = rho_gens_[k];
    if (ra.even.rows() != r || ra.even.cols() != r || ra.odd.rows() != r || ra.odd.cols() != r)
      throw Error(ErrorKind::Equivariance, "mf", who + ": rho matrices have the wrong size");
    const std::size_t g = G.generator_element(k);
    if (mul(ra.even, G.act(g, A_)) != mul(A_, ra.odd) || mul(ra.odd, G.act(g, B_)) != mul(B_, ra.even))
      throw Error(ErrorKind::Equivariance, "mf",
                  who + ": not equivariant under generator " + std::to_string(k));
  }
  // Extend rho along the BFS tree, then check every Cayley-graph edge.
  const unsigned m = G.conductor();
  rho_elements_.assign(G.order(), BlockAction{Matrix::identity(r, m), Matrix::identity(r, m)});
  for (std::size_t e = 1; e < G.order(); ++e) {
    const auto& el = G.element(e);
    const auto& parent = rho_elements_[el.parent];
    const auto& gen = rho_gens_[el.generator];
    rho_elements_[e] = BlockAction{parent.even * gen.even, parent.odd * gen.odd};
  }
  for (std::size_t e = 0; e < G.order(); ++e)
    for (std::size_t k = 0; k < rho_gens_.size(); ++k) {
      const std::size_t next = G.multiply(e, G.generator_element(k));
      if (rho_elements_[next].even != rho_elements_[e].even * rho_gens_[k].even ||
          rho_elements_[next].odd != rho_elements_[e].odd * rho_gens_[k].odd)
        throw Error(ErrorKind::Equivariance, "mf", who + ": rho is not a homomorphism on G");
    }

  if (weights_even_.has_value() != weights_odd_.has_value())
    throw Error(ErrorKind::Input, "mf", who + ": give both weights_even and weights_odd or neither");
  if (weights_even_) {
    if (!model_->graded())
      throw Error(ErrorKind::GradingRequired, "mf", who + ": generator weights given for an ungraded model");
    if (weights_even_->size() != r || weights_odd_->size() != r)
      throw Error(ErrorKind::Input, "mf", who + ": weight vectors must have length " + std::to_string(r));
    const Rational& d = model_->degree();
    const RingPtr& ring = model_->ring();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        if (!A_(i, j).is_zero() && !A_(i, j).weighted_degree_check((*weights_even_)[i] - (*weights_odd_)[j]))
          throw Error(ErrorKind::Construction, "mf", who + ": A entry (" + std::to_string(i) + "," +
                                                          std::to_string(j) + ") has the wrong degree");
        if (!B_(i, j).is_zero() && !B_(i, j).weighted_degree_check(d + (*weights_odd_)[i] - (*weights_even_)[j]))
          throw Error(ErrorKind::Construction, "mf", who + ": B entry (" + std::to_string(i) + "," +
                                                          std::to_string(j) + ") has the wrong degree");
      }
    (void)ring;
  }
}

PolyMatrix EquivMF::delta() const {
  const std::size_t r = rank();
  PolyMatrix d(model_->ring(), 2 * r, 2 * r);
  d.set_block(0, r, A_);
  d.set_block(r, 0, B_);
  return d;
}

Matrix EquivMF::rho_full(std::size_t element) const {
  const auto& ra = rho(element);
  return block_diag(ra.even, ra.odd);
}

std::vector<Rational> EquivMF::effective_degrees() const {
  if (!graded()) throw Error(ErrorKind::GradingRequired, "mf", "factorization '" + name_ + "' has no gradings");
  const Rational half = model_->degree() / 2;
  std::vector<Rational> eff;
  for (const auto& x : *weights_even_) eff.push_back(-x);
  for (const auto& x : *weights_odd_) eff.push_back(-x - half);
  return eff;
}

EquivMF EquivMF::renamed(std::string name) const {
  EquivMF copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

// ---------------------------------------------------------------------------
// Constructors

EquivMF koszul(const std::vector<KoszulPair>& pairs, ModelPtr model, std::string name,
               const std::vector<Rational>& base_character) {
  if (pairs.empty()) throw Error(ErrorKind::Construction, "mf", "koszul needs at least one pair");
  if (pairs.size() > 10) throw Error(ErrorKind::Resource, "mf", "koszul rank too large");
  const RingPtr& ring = model->ring();
  Poly sum(ring);
  for (const auto& p : pairs) sum += p.a * p.b;
  if (sum != model->potential())
    throw Error(ErrorKind::Construction, "mf", "koszul: sum a_i b_i = " + sum.str() + " differs from w");

  const KoszulOperator op = koszul_operator(pairs, ring);
  const std::size_t r = op.even_masks.size();
  const DiagGroup& G = model->group();
  if (!base_character.empty() && base_character.size() != G.num_generators())
    throw Error(ErrorKind::Input, "mf", "base character needs one value per generator");

  std::vector<BlockAction> rho;
  for (std::size_t k = 0; k < G.num_generators(); ++k) {
    const std::size_t g = G.generator_element(k);
    std::vector<CycNum> chi;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::optional<CycNum> ca = semi_invariant_character(G, g, pairs[i].a);
      std::optional<CycNum> cb = semi_invariant_character(G, g, pairs[i].b);
      if (!ca || !cb)
        throw Error(ErrorKind::Equivariance, "mf",
                    "koszul pair " + std::to_string(i) + " is not semi-invariant under generator " +
                        std::to_string(k) + "; supply explicit rho matrices");
      CycNum c = pairs[i].a.is_zero() ? cb->inverse() : *ca;
      if (!pairs[i].b.is_zero() && (*cb) * c != CycNum(1))
        throw Error(ErrorKind::Equivariance, "mf",
                    "koszul pair " + std::to_string(i) + " has mismatched characters; supply explicit rho matrices");
      chi.push_back(c);
    }
    const CycNum base = base_character.empty() ? CycNum(Rational(1), G.conductor())
                                               : character_value(G.conductor(), base_character[k]);
    auto mu = [&](unsigned S) {
      CycNum v = base;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (S >> i & 1u) v *= chi[i].inverse();
      return v;
    };
    std::vector<CycNum> de, dodd;
    for (unsigned S : op.even_masks) de.push_back(mu(S));
    for (unsigned S : op.odd_masks) dodd.push_back(mu(S));
    rho.push_back(BlockAction{Matrix::diagonal(de), Matrix::diagonal(dodd)});
  }

  std::optional<std::vector<Rational>> we, wo;
  if (model->graded()) {
    const Rational& d = model->degree();
    std::vector<Rational> deg_a;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [a, b] = pairs[i];
      Rational da = 0;
      if (!a.is_zero()) {
        auto h = a.homogeneous_degree();
        if (!h) throw Error(ErrorKind::Construction, "mf", "koszul entry a_" + std::to_string(i) + " is not homogeneous");
        da = *h;
      } else if (!b.is_zero()) {
        auto h = b.homogeneous_degree();
        if (!h) throw Error(ErrorKind::Construction, "mf", "koszul entry b_" + std::to_string(i) + " is not homogeneous");
        da = d - *h;
      }
      if (!b.is_zero() && !b.weighted_degree_check(d - da))
        throw Error(ErrorKind::Construction, "mf", "koszul entry b_" + std::to_string(i) + " is not homogeneous of degree d - deg a");
      deg_a.push_back(da);
    }
    auto eff = [&](unsigned S) {
      Rational e = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (S >> i & 1u) e += d / 2 - deg_a[i];
      return e;
    };
    std::vector<Rational> all;
    for (unsigned S : op.even_masks) all.push_back(eff(S));
    for (unsigned S : op.odd_masks) all.push_back(eff(S));
    auto [e, o] = weights_from_effective(all, r, d);
    we = std::move(e);
    wo = std::move(o);
  }
  return EquivMF(std::move(model), op.A, op.B, std::move(rho), std::move(we), std::move(wo), std::move(name));
}

EquivMF koszul(const std::vector<std::pair<std::string, std::string>>& pairs, ModelPtr model, std::string name) {
  std::vector<KoszulPair> kp;
  for (const auto& [a, b] : pairs)
    kp.push_back(KoszulPair{Poly::parse(a, model->ring(), model->conductor()),
                            Poly::parse(b, model->ring(), model->conductor())});
  return koszul(kp, std::move(model), std::move(name));
}

EquivMF direct_sum(const EquivMF& P, const EquivMF& Q) {
  if (!P.model()->same_as(*Q.model())) throw Error(ErrorKind::Model, "mf", "direct sum over different models");
  std::vector<BlockAction> rho;
  for (std::size_t k = 0; k < P.rho_generators().size(); ++k)
    rho.push_back(BlockAction{block_diag(P.rho_generators()[k].even, Q.rho_generators()[k].even),
                              block_diag(P.rho_generators()[k].odd, Q.rho_generators()[k].odd)});
  std::optional<std::vector<Rational>> we, wo;
  if (P.graded() && Q.graded()) {
    we = *P.weights_even();
    we->insert(we->end(), Q.weights_even()->begin(), Q.weights_even()->end());
    wo = *P.weights_odd();
    wo->insert(wo->end(), Q.weights_odd()->begin(), Q.weights_odd()->end());
  }
  return EquivMF(P.model(), poly_block_diag(P.A(), Q.A()), poly_block_diag(P.B(), Q.B()), std::move(rho),
                 std::move(we), std::move(wo), P.name() + "+" + Q.name());
}

namespace {

// Super tensor product. `pmap`/`qmap` send each factor's variables into the
// target ring; `rho_pairs[k]` names, for target generator k, the generator
// indices of P and Q it restricts to (-1 for the trivial action).
EquivMF tensor_impl(const EquivMF& P, const EquivMF& Q, ModelPtr target, const std::vector<int>& pmap,
                    const std::vector<int>& qmap, const std::vector<std::pair<long, long>>& rho_pairs,
                    std::string name) {
  const RingPtr& ring = target->ring();
  const std::size_t rP = P.rank(), rQ = Q.rank();
  const std::size_t nP = 2 * rP, nQ = 2 * rQ;
  auto par = [](std::size_t idx, std::size_t r) { return idx < r ? 0 : 1; };

  std::vector<std::size_t> index(nP * nQ);
  std::size_t even_pos = 0, odd_pos = 0;
  const std::size_t rT = 2 * rP * rQ;
  for (int parity_p = 0; parity_p < 2; ++parity_p)
    for (std::size_t p = 0; p < nP; ++p) {
      if (par(p, rP) != parity_p) continue;
      for (std::size_t q = 0; q < nQ; ++q)
        if (par(q, rQ) == parity_p) index[p * nQ + q] = even_pos++;
    }
  for (int parity_p = 0; parity_p < 2; ++parity_p)
    for (std::size_t p = 0; p < nP; ++p) {
      if (par(p, rP) != parity_p) continue;
      for (std::size_t q = 0; q < nQ; ++q)
        if (par(q, rQ) != parity_p) index[p * nQ + q] = rT + odd_pos++;
    }

  const PolyMatrix dP = P.delta().map([&](const Poly& x) { return x.remap(ring, pmap); });
  const PolyMatrix dQ = Q.delta().map([&](const Poly& x) { return x.remap(ring, qmap); });
  PolyMatrix dT(ring, 2 * rT, 2 * rT);
  for (std::size_t p = 0; p < nP; ++p)
    for (std::size_t q = 0; q < nQ; ++q) {
      const std::size_t col = index[p * nQ + q];
      for (std::size_t p2 = 0; p2 < nP; ++p2)
        if (!dP(p2, p).is_zero()) dT(index[p2 * nQ + q], col) += dP(p2, p);
      for (std::size_t q2 = 0; q2 < nQ; ++q2)
        if (!dQ(q2, q).is_zero()) dT(index[p * nQ + q2], col) += par(p, rP) ? -dQ(q2, q) : dQ(q2, q);
    }

  const unsigned m = target->conductor();
  std::vector<BlockAction> rho;
  for (const auto& [kp, kq] : rho_pairs) {
    const Matrix rp = kp < 0 ? Matrix::identity(nP, m)
                             : block_diag(P.rho_generators()[static_cast<std::size_t>(kp)].even,
                                          P.rho_generators()[static_cast<std::size_t>(kp)].odd);
    const Matrix rq = kq < 0 ? Matrix::identity(nQ, m)
                             : block_diag(Q.rho_generators()[static_cast<std::size_t>(kq)].even,
                                          Q.rho_generators()[static_cast<std::size_t>(kq)].odd);
    Matrix full(2 * rT, 2 * rT);
    for (std::size_t p = 0; p < nP; ++p)
      for (std::size_t q = 0; q < nQ; ++q)
        for (std::size_t p2 = 0; p2 < nP; ++p2) {
          if (rp(p2, p).is_zero()) continue;
          for (std::size_t q2 = 0; q2 < nQ; ++q2)
            if (!rq(q2, q).is_zero()) full(index[p2 * nQ + q2], index[p * nQ + q]) = rp(p2, p) * rq(q2, q);
        }
    BlockAction ba{Matrix(rT, rT), Matrix(rT, rT)};
    for (std::size_t i = 0; i < rT; ++i)
      for (std::size_t j = 0; j < rT; ++j) {
        ba.even(i, j) = full(i, j);
        ba.odd(i, j) = full(rT + i, rT + j);
      }
    rho.push_back(std::move(ba));
  }

  std::optional<std::vector<Rational>> we, wo;
  if (target->graded() && P.graded() && Q.graded() && P.model()->degree() == target->degree() &&
      Q.model()->degree() == target->degree()) {
    const auto eP = P.effective_degrees(), eQ = Q.effective_degrees();
    std::vector<Rational> eff(2 * rT);
    for (std::size_t p = 0; p < nP; ++p)
      for (std::size_t q = 0; q < nQ; ++q) eff[index[p * nQ + q]] = eP[p] + eQ[q];
    auto [e, o] = weights_from_effective(eff, rT, target->degree());
    we = std::move(e);
    wo = std::move(o);
  }
  return EquivMF(std::move(target), dT.block(0, rT, rT, rT), dT.block(rT, 0, rT, rT), std::move(rho), std::move(we),
                 std::move(wo), std::move(name));
}

ModelPtr product_model_impl(const ModelPtr& a, const ModelPtr& b, bool force_suffix) {
  bool clash = force_suffix;
  for (const auto& v : a->ring()->vars())
    if (b->ring()->index_of(v.name)) clash = true;
  std::vector<VarSpec> vars;
  for (auto v : a->ring()->vars()) {
    if (clash) v.name += "_1";
    vars.push_back(v);
  }
  for (auto v : b->ring()->vars()) {
    if (clash) v.name += "_2";
    vars.push_back(v);
  }
  RingPtr ring = Ring::make(std::move(vars));
  const std::size_t na = a->ring()->nvars(), nb = b->ring()->nvars();
  std::vector<int> amap(na), bmap(nb);
  for (std::size_t i = 0; i < na; ++i) amap[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < nb; ++i) bmap[i] = static_cast<int>(na + i);
  Poly w = a->potential().remap(ring, amap) + b->potential().remap(ring, bmap);
  const bool graded = a->graded() && b->graded() && a->degree() == b->degree();
  return LGModel::make(ring, std::move(w), DiagGroup::product(a->group(), b->group()), graded,
                       std::lcm(a->conductor(), b->conductor()));
}

}  // namespace

EquivMF tensor(const EquivMF& P, const EquivMF& Q) {
  const ModelPtr& mp = P.model();
  const ModelPtr& mq = Q.model();
  if (!mp->ring()->same_as(*mq->ring()) || !mp->group().same_as(mq->group()))
    throw Error(ErrorKind::Model, "mf", "internal tensor needs a common coordinate space and group");
  const bool graded = mp->graded() && mq->graded() && mp->degree() == mq->degree();
  ModelPtr target = LGModel::make(mp->ring(), mp->potential() + mq->potential(), mp->group(), graded,
                                  std::lcm(mp->conductor(), mq->conductor()));
  std::vector<int> id(mp->ring()->nvars());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  std::vector<std::pair<long, long>> rp;
  for (std::size_t k = 0; k < mp->group().num_generators(); ++k)
    rp.emplace_back(static_cast<long>(k), static_cast<long>(k));
  return tensor_impl(P, Q, std::move(target), id, id, rp, P.name() + "*" + Q.name());
}

ModelPtr product_model(const ModelPtr& a, const ModelPtr& b) { return product_model_impl(a, b, false); }

EquivMF external_tensor(const EquivMF& P, const EquivMF& Q) {
  ModelPtr target = product_model(P.model(), Q.model());
  const std::size_t na = P.model()->ring()->nvars(), nb = Q.model()->ring()->nvars();
  std::vector<int> pmap(na), qmap(nb);
  for (std::size_t i = 0; i < na; ++i) pmap[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < nb; ++i) qmap[i] = static_cast<int>(na + i);
  std::vector<std::pair<long, long>> rp;
  for (std::size_t k = 0; k < P.model()->group().num_generators(); ++k) rp.emplace_back(static_cast<long>(k), -1);
  for (std::size_t k = 0; k < Q.model()->group().num_generators(); ++k) rp.emplace_back(-1, static_cast<long>(k));
  return tensor_impl(P, Q, std::move(target), pmap, qmap, rp, P.name() + "x" + Q.name());
}

EquivMF dual(const EquivMF& P) {
  ModelPtr model = P.model()->with_potential(-P.model()->potential());
  std::vector<BlockAction> rho;
  for (const auto& ra : P.rho_generators())
    rho.push_back(BlockAction{ra.even.inverse().transpose(), ra.odd.inverse().transpose()});
  std::optional<std::vector<Rational>> we, wo;
  if (P.graded()) {
    const Rational& d = P.model()->degree();
    we.emplace();
    wo.emplace();
    for (const auto& x : *P.weights_even()) we->push_back(-x);
    for (const auto& x : *P.weights_odd()) wo->push_back(-x - d);
  }
  return EquivMF(std::move(model), P.B().transpose(), -P.A().transpose(), std::move(rho), std::move(we),
                 std::move(wo), P.name() + "^v");
}

EquivMF twist(const EquivMF& P, const std::vector<Rational>& character) {
  const DiagGroup& G = P.model()->group();
  if (character.size() != G.num_generators())
    throw Error(ErrorKind::Input, "mf", "twist character needs one value per generator");
  std::vector<BlockAction> rho;
  for (std::size_t k = 0; k < character.size(); ++k) {
    const CycNum c = character_value(G.conductor(), character[k]);
    rho.push_back(BlockAction{c * P.rho_generators()[k].even, c * P.rho_generators()[k].odd});
  }
  try {
    return EquivMF(P.model(), P.A(), P.B(), std::move(rho), P.weights_even(), P.weights_odd(), P.name() + "(chi)");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Equivariance)
      throw Error(ErrorKind::Equivariance, "mf", "twist character is not well-defined on G");
    throw;
  }
}

DiagonalKernel diagonal_kernel(const ModelPtr& model) {
  ModelPtr product = product_model_impl(model->with_potential(-model->potential()), model, true);
  const RingPtr& ring = product->ring();
  const DiagGroup& G = model->group();
  const std::size_t n = model->ring()->nvars();
  const std::size_t order = G.order();

  // Per summand h: sections s_i = y_i - h_i x_i and telescoping cofactors.
  std::vector<KoszulOperator> ops;
  for (std::size_t h = 0; h < order; ++h) {
    std::vector<Poly> y, u;
    for (std::size_t i = 0; i < n; ++i) {
      y.push_back(Poly::variable(ring, n + i));
      u.push_back(Poly::variable(ring, i) * G.eigenvalue(h, i));
    }
    std::vector<KoszulPair> pairs;
    for (std::size_t i = 0; i < n; ++i) {
      Poly t(ring);
      for (const auto& [mono, c] : model->potential().terms()) {
        const unsigned e = mono[i];
        if (e == 0) continue;
        Poly term(ring, c);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || mono[j] == 0) continue;
          term *= (j < i ? y[j] : u[j]).pow(mono[j]);
        }
        Poly dd(ring);
        for (unsigned k = 0; k < e; ++k) dd += y[i].pow(k) * u[i].pow(e - 1 - k);
        t += term * dd;
      }
      pairs.push_back(KoszulPair{y[i] - u[i], std::move(t)});
    }
    Poly sum(ring);
    for (const auto& p : pairs) sum += p.a * p.b;
    if (sum != product->potential())
      throw Error(ErrorKind::Construction, "mf", "diagonal cofactors do not sum to the product potential");
    ops.push_back(koszul_operator(pairs, ring));
  }
  const std::size_t r1 = ops[0].even_masks.size();
  const std::size_t r = r1 * order;
  PolyMatrix A(ring, r, r), B(ring, r, r);
  for (std::size_t h = 0; h < order; ++h) {
    A.set_block(h * r1, h * r1, ops[h].A);
    B.set_block(h * r1, h * r1, ops[h].B);
  }

  const DiagGroup& GG = product->group();
  const unsigned m = GG.conductor();
  std::vector<BlockAction> rho;
  for (std::size_t k = 0; k < GG.num_generators(); ++k) {
    // Generator k is (g_k, 1) for k < |gens|, else (1, g_{k - |gens|}).
    const bool left = k < G.num_generators();
    const std::size_t g = G.generator_element(left ? k : k - G.num_generators());
    const std::size_t g1 = left ? g : 0, g2 = left ? 0 : g;
    BlockAction ba{Matrix(r, r, CycNum(Rational(0), m)), Matrix(r, r, CycNum(Rational(0), m))};
    for (std::size_t h = 0; h < order; ++h) {
      const std::size_t h2 = G.multiply(G.multiply(g2, h), G.inverse(g1));
      auto mu = [&](unsigned S) {
        CycNum v(Rational(1), m);
        for (std::size_t i = 0; i < n; ++i)
          if (S >> i & 1u) v *= G.eigenvalue(g2, i);
        return v;
      };
      for (std::size_t s = 0; s < r1; ++s) {
        ba.even(h2 * r1 + s, h * r1 + s) = mu(ops[h].even_masks[s]);
        ba.odd(h2 * r1 + s, h * r1 + s) = mu(ops[h].odd_masks[s]);
      }
    }
    rho.push_back(std::move(ba));
  }

  std::optional<std::vector<Rational>> we, wo;
  if (product->graded()) {
    const Rational& d = product->degree();
    std::vector<Rational> eff(2 * r);
    for (std::size_t h = 0; h < order; ++h)
      for (std::size_t s = 0; s < r1; ++s) {
        auto e = [&](unsigned S) {
          Rational v = 0;
          for (std::size_t i = 0; i < n; ++i)
            if (S >> i & 1u) v += d / 2 - model->ring()->var(i).weight;
          return v;
        };
        eff[h * r1 + s] = e(ops[h].even_masks[s]);
        eff[r + h * r1 + s] = e(ops[h].odd_masks[s]);
      }
    auto [e, o] = weights_from_effective(eff, r, d);
    we = std::move(e);
    wo = std::move(o);
  }
  EquivMF kernel(product, std::move(A), std::move(B), std::move(rho), std::move(we), std::move(wo), "Delta");
  return DiagonalKernel{std::move(product), std::move(kernel)};
}

// ---------------------------------------------------------------------------
// Restriction and morphisms

PolyMatrix RestrictedMF::delta() const {
  const std::size_t r = A.rows();
  PolyMatrix d(A.ring(), 2 * r, 2 * r);
  d.set_block(0, r, A);
  d.set_block(r, 0, B);
  return d;
}

Matrix RestrictedMF::rho_full() const { return block_diag(rho_even, rho_odd); }

RestrictedMF restrict_to_sector(const EquivMF& P, const Sector& s) {
  const std::size_t n = P.model()->ring()->nvars();
  const std::uint32_t moving = (n >= 32 ? ~0u : ((1u << n) - 1u)) & ~s.fixed_mask;
  auto res = [&](const Poly& p) { return p.restrict(moving); };
  const auto& ra = P.rho(s.element);
  return RestrictedMF{P.A().map(res), P.B().map(res), ra.even, ra.odd, s};
}

Morphism identity_morphism(const EquivMF& P) {
  return Morphism{PolyMatrix::identity(P.model()->ring(), 2 * P.rank()), 0};
}

Morphism hom_differential(const EquivMF& P, const EquivMF& Q, const Morphism& f) {
  PolyMatrix left = Q.delta() * f.matrix;
  PolyMatrix right = f.matrix * P.delta();
  return Morphism{f.parity ? left + right : left - right, 1 - f.parity};
}

bool is_closed(const EquivMF& P, const EquivMF& Q, const Morphism& f) {
  return hom_differential(P, Q, f).matrix.is_zero();
}

Morphism compose(const Morphism& g, const Morphism& f) { return Morphism{g.matrix * f.matrix, (g.parity + f.parity) % 2}; }

Morphism dual_morphism(const EquivMF& P, const Morphism& a) {
  PolyMatrix t = a.matrix.transpose();
  if (a.parity) {
    const std::size_t r = P.rank();
    for (std::size_t i = r; i < 2 * r; ++i)
      for (std::size_t j = 0; j < 2 * r; ++j) t(i, j) = -t(i, j);
  }
  return Morphism{std::move(t), a.parity};
}

}  // namespace lgorb
