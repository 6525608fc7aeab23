#include "lgorb/problem.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace lgorb {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& loc, const std::string& what) {
  throw Error(ErrorKind::Input, "cli", loc + ": " + what);
}

// Runs f, attaching loc to any failure that does not already carry a location.
template <class F>
auto located(const std::string& loc, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Input && e.module() == "cli") throw;
    throw Error(e.kind() == ErrorKind::Parse ? ErrorKind::Input : e.kind(), "cli", loc + ": " + e.what());
  } catch (const json::exception& e) {
    fail(loc, e.what());
  }
}

void check_keys(const json& obj, const std::string& loc, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(loc, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(loc + "." + key, "unknown field");
  }
}

const json& require(const json& obj, const char* key, const std::string& loc) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(loc, std::string("missing field '") + key + "'");
  return *it;
}

const json& array_at(const json& v, const std::string& loc) {
  if (!v.is_array()) fail(loc, "expected an array");
  return v;
}

std::string string_at(const json& v, const std::string& loc) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(loc, "expected a string");
}

Rational rational_at(const json& v, const std::string& loc) {
  return located(loc, [&] { return parse_rational(string_at(v, loc)); });
}

std::vector<Rational> rationals_at(const json& v, const std::string& loc) {
  std::vector<Rational> out;
  const json& arr = array_at(v, loc);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(rational_at(arr[i], loc + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<std::string>> string_rows(const json& v, const std::string& loc) {
  std::vector<std::vector<std::string>> rows;
  const json& arr = array_at(v, loc);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string rl = loc + "[" + std::to_string(i) + "]";
    std::vector<std::string> row;
    const json& r = array_at(arr[i], rl);
    for (std::size_t j = 0; j < r.size(); ++j) row.push_back(string_at(r[j], rl + "[" + std::to_string(j) + "]"));
    if (!rows.empty() && row.size() != rows.front().size()) fail(rl, "ragged matrix row");
    rows.push_back(std::move(row));
  }
  return rows;
}

PolyMatrix poly_matrix_at(const json& v, const std::string& loc, const ModelPtr& model) {
  const auto rows = string_rows(v, loc);
  PolyMatrix m(model->ring(), rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(i, j) = located(loc + "[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                        [&] { return Poly::parse(rows[i][j], model->ring(), model->conductor()); });
  return m;
}

Matrix scalar_matrix_at(const json& v, const std::string& loc, const ModelPtr& model) {
  const PolyMatrix pm = poly_matrix_at(v, loc, model);
  Matrix m(pm.rows(), pm.cols());
  for (std::size_t i = 0; i < pm.rows(); ++i)
    for (std::size_t j = 0; j < pm.cols(); ++j) {
      if (!pm(i, j).is_constant())
        fail(loc + "[" + std::to_string(i) + "][" + std::to_string(j) + "]", "equivariant structure entries must be scalars");
      m(i, j) = pm(i, j).constant_term();
    }
  return m;
}

class MFResolver {
public:
  MFResolver(const json& defs, ModelPtr model) : defs_(defs), model_(std::move(model)) {}

  std::map<std::string, EquivMF> resolve_all() {
    for (const auto& [name, def] : defs_.items()) get(name, "mfs");
    return std::move(done_);
  }

private:
  const EquivMF& get(const std::string& name, const std::string& from) {
    if (const auto it = done_.find(name); it != done_.end()) return it->second;
    const auto def = defs_.find(name);
    if (def == defs_.end()) fail(from, "unknown factorization '" + name + "'");
    if (!active_.insert(name).second) fail(from, "factorization '" + name + "' depends on itself");
    const std::string loc = "mfs." + name;
    EquivMF built = located(loc, [&] { return build(name, *def, loc); });
    active_.erase(name);
    return done_.emplace(name, std::move(built)).first->second;
  }

  std::vector<const EquivMF*> operands(const json& v, const std::string& loc) {
    const json& arr = array_at(v, loc);
    if (arr.empty()) fail(loc, "expected at least one factorization name");
    std::vector<const EquivMF*> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string l = loc + "[" + std::to_string(i) + "]";
      out.push_back(&get(string_at(arr[i], l), l));
    }
    return out;
  }

  EquivMF build(const std::string& name, const json& def, const std::string& loc) {
    if (!def.is_object()) fail(loc, "expected an object");
    if (def.contains("koszul")) {
      check_keys(def, loc, {"koszul", "twist"});
      const std::string kl = loc + ".koszul";
      const auto rows = string_rows(require(def, "koszul", loc), kl);
      std::vector<KoszulPair> pairs;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string rl = kl + "[" + std::to_string(i) + "]";
        if (rows[i].size() != 2) fail(rl, "expected a pair [a, b]");
        KoszulPair p;
        p.a = located(rl + "[0]", [&] { return Poly::parse(rows[i][0], model_->ring(), model_->conductor()); });
        p.b = located(rl + "[1]", [&] { return Poly::parse(rows[i][1], model_->ring(), model_->conductor()); });
        pairs.push_back(std::move(p));
      }
      std::vector<Rational> base;
      if (def.contains("twist")) base = rationals_at(def["twist"], loc + ".twist");
      return koszul(pairs, model_, name, base);
    }
    if (def.contains("matrices")) {
      check_keys(def, loc, {"matrices", "rho", "weights_even", "weights_odd"});
      const json& mats = def["matrices"];
      check_keys(mats, loc + ".matrices", {"A", "B"});
      PolyMatrix A = poly_matrix_at(require(mats, "A", loc + ".matrices"), loc + ".matrices.A", model_);
      PolyMatrix B = poly_matrix_at(require(mats, "B", loc + ".matrices"), loc + ".matrices.B", model_);
      std::vector<BlockAction> rho;
      if (def.contains("rho")) {
        const json& arr = array_at(def["rho"], loc + ".rho");
        for (std::size_t k = 0; k < arr.size(); ++k) {
          const std::string rl = loc + ".rho[" + std::to_string(k) + "]";
          check_keys(arr[k], rl, {"even", "odd"});
          rho.push_back(BlockAction{scalar_matrix_at(require(arr[k], "even", rl), rl + ".even", model_),
                                    scalar_matrix_at(require(arr[k], "odd", rl), rl + ".odd", model_)});
        }
      } else {
        const std::size_t r = A.rows();
        for (std::size_t k = 0; k < model_->group().num_generators(); ++k)
          rho.push_back(BlockAction{Matrix::identity(r, model_->conductor()), Matrix::identity(r, model_->conductor())});
      }
      if (def.contains("weights_even") != def.contains("weights_odd"))
        fail(loc, "weights_even and weights_odd must be given together");
      std::optional<std::vector<Rational>> we, wo;
      if (def.contains("weights_even")) {
        we = rationals_at(def["weights_even"], loc + ".weights_even");
        wo = rationals_at(def["weights_odd"], loc + ".weights_odd");
      }
      return EquivMF(model_, std::move(A), std::move(B), std::move(rho), std::move(we), std::move(wo), name);
    }
    if (def.contains("twist_of")) {
      check_keys(def, loc, {"twist_of", "twist"});
      const EquivMF& base = get(string_at(def["twist_of"], loc + ".twist_of"), loc + ".twist_of");
      return twist(base, rationals_at(require(def, "twist", loc), loc + ".twist")).renamed(name);
    }
    if (def.contains("dual")) {
      check_keys(def, loc, {"dual"});
      return dual(get(string_at(def["dual"], loc + ".dual"), loc + ".dual")).renamed(name);
    }
    if (def.contains("tensor") || def.contains("sum")) {
      const bool is_tensor = def.contains("tensor");
      const char* key = is_tensor ? "tensor" : "sum";
      check_keys(def, loc, {key});
      const auto ops = operands(def[key], loc + "." + key);
      EquivMF acc = *ops.front();
      for (std::size_t i = 1; i < ops.size(); ++i) acc = is_tensor ? tensor(acc, *ops[i]) : direct_sum(acc, *ops[i]);
      return acc.renamed(name);
    }
    fail(loc, "expected one of koszul, matrices, twist_of, dual, tensor, sum");
  }

  const json& defs_;
  ModelPtr model_;
  std::map<std::string, EquivMF> done_;
  std::set<std::string> active_;
};

}  // namespace

const EquivMF& Problem::mf(const std::string& name) const {
  const auto it = mfs.find(name);
  if (it == mfs.end()) throw Error(ErrorKind::Input, "cli", "no factorization named '" + name + "'");
  return it->second;
}

Problem load_problem(const json& doc) {
  check_keys(doc, "problem", {"variables", "potential", "group", "mfs", "options"});
  Problem pb;
  bool graded = true;
  unsigned field_conductor = 1;
  if (doc.contains("options")) {
    const json& opt = doc["options"];
    check_keys(opt, "options", {"graded", "group_order_cap", "degree_window_slack", "field_conductor"});
    located("options", [&] {
      if (opt.contains("graded")) graded = opt["graded"].get<bool>();
      if (opt.contains("group_order_cap")) pb.group_order_cap = opt["group_order_cap"].get<std::size_t>();
      if (opt.contains("field_conductor")) field_conductor = opt["field_conductor"].get<unsigned>();
      return 0;
    });
    if (field_conductor == 0) fail("options.field_conductor", "must be positive");
    if (opt.contains("degree_window_slack"))
      pb.ext.degree_window_slack = rational_at(opt["degree_window_slack"], "options.degree_window_slack");
  }

  std::vector<VarSpec> vars;
  const json& jv = array_at(require(doc, "variables", "problem"), "variables");
  for (std::size_t i = 0; i < jv.size(); ++i) {
    const std::string loc = "variables[" + std::to_string(i) + "]";
    check_keys(jv[i], loc, {"name", "weight"});
    VarSpec v;
    v.name = string_at(require(jv[i], "name", loc), loc + ".name");
    v.weight = jv[i].contains("weight") ? rational_at(jv[i]["weight"], loc + ".weight") : Rational(1);
    vars.push_back(std::move(v));
  }

  std::vector<std::vector<Rational>> gens;
  if (doc.contains("group")) {
    const json& jg = array_at(doc["group"], "group");
    for (std::size_t k = 0; k < jg.size(); ++k) gens.push_back(rationals_at(jg[k], "group[" + std::to_string(k) + "]"));
  }
  const std::string potential = string_at(require(doc, "potential", "problem"), "potential");
  pb.model = located("model", [&] {
    return LGModel::make(std::move(vars), potential, std::move(gens), graded, pb.group_order_cap, field_conductor);
  });

  if (doc.contains("mfs")) {
    const json& defs = doc["mfs"];
    if (!defs.is_object()) fail("mfs", "expected an object keyed by name");
    pb.mfs = MFResolver(defs, pb.model).resolve_all();
  }
  return pb;
}

Problem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Input, "cli", path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Input, "cli", path + ": " + e.what());
  }
  return load_problem(doc);
}

}  // namespace lgorb
