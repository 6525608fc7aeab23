#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgorb/chern.hpp"
#include "lgorb/ext.hpp"

namespace lgorb {

enum class Verdict { Equal, Mismatch, ExtSkipped };
const char* to_string(Verdict v);

struct SectorRow {
  std::size_t element = 0;
  std::vector<unsigned> exps;
  std::size_t n_fixed = 0;
  CycNum denominator;
  Poly top_q;
  Poly top_p_dual;
  CycNum contribution;
};

struct HRRReport {
  ModelPtr model;
  std::string p_name, q_name;
  std::vector<SectorRow> sectors;
  CycNum chi_hrr;
  std::optional<long> chi_ext;
  Verdict verdict = Verdict::ExtSkipped;
  bool integral = false;
};

/// sum_g sector_pairing(ch_g(Q), ch_g(P^v)) against dim Ext^0 - dim Ext^1.
HRRReport verify_hrr(const EquivMF& P, const EquivMF& Q, const ExtOptions& options = {});
/// The HRR side only.
CycNum hrr_value(const EquivMF& P, const EquivMF& Q, const std::vector<FixedLocus>& loci);

/// Sector-summed pairing of boundary-bulk images of b (on Q) and a^v (on P^v).
CycNum boundary_bulk_pairing(const EquivMF& P, const Morphism& a, const EquivMF& Q, const Morphism& b,
                             const std::vector<FixedLocus>& loci);

struct CardyEntry {
  std::size_t a_index = 0, b_index = 0;
  Rational a_degree, b_degree;
  int a_parity = 0, b_parity = 0;
  CycNum trace;
  CycNum pairing;
  bool equal = false;
};

struct CardyReport {
  std::string p_name, q_name;
  std::size_t ext_pp = 0, ext_qq = 0, ext_pq = 0;
  std::vector<CardyEntry> entries;
  bool all_equal = true;
};

CardyReport verify_cardy(const EquivMF& P, const EquivMF& Q, const ExtOptions& options = {});

struct DiagonalEntry {
  std::size_t sector_left = 0, sector_right = 0;
  std::size_t i = 0, j = 0;
  CycNum lhs, rhs;
  bool equal = false;
};

struct DiagonalReport {
  ModelPtr model;
  bool applicable = true;
  std::string reason;
  std::vector<DiagonalEntry> entries;
  bool all_equal = true;
};

/// Expands ch(Delta) = sum T^i x T_i in the product of sector bases and checks
/// sum_i <gamma, T^i><T_i, gamma'> = <gamma, gamma'> on all basis pairs.
DiagonalReport verify_diagonal_decomposition(const ModelPtr& model);

}  // namespace lgorb
