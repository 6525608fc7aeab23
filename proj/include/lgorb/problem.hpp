#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lgorb/ext.hpp"
#include "lgorb/mf.hpp"

namespace lgorb {

/// A parsed problem file: one model and its named factorizations.
struct Problem {
  ModelPtr model;
  /// Factorizations in name order.
  std::map<std::string, EquivMF> mfs;
  ExtOptions ext;
  std::size_t group_order_cap = kDefaultGroupOrderCap;

  /// Throws an input error naming the missing factorization.
  const EquivMF& mf(const std::string& name) const;
};

/// Failures are rethrown as input errors prefixed with the JSON location
/// ("mfs.P.koszul[0][1]") of the offending value.
Problem load_problem(const nlohmann::json& doc);
Problem load_problem_file(const std::string& path);

}  // namespace lgorb
