#include "lgorb/report.hpp"

#include <sstream>

namespace lgorb {

using nlohmann::json;

namespace {

json exps_json(const std::vector<unsigned>& exps) {
  json a = json::array();
  for (unsigned e : exps) a.push_back(e);
  return a;
}

json basis_json(const FixedLocus& L) {
  json a = json::array();
  for (const auto& m : L.basis) a.push_back(Poly::monomial(L.ring, m).str());
  return a;
}

std::string verdict_of(bool ok) { return ok ? "equal" : "mismatch"; }

std::string sector_label(const json& s) {
  std::ostringstream os;
  os << "g" << s["element"].get<std::size_t>() << " (";
  bool first = true;
  for (const auto& e : s["exponents"]) {
    os << (first ? "" : ",") << e.get<unsigned>();
    first = false;
  }
  os << ") fixed {";
  first = true;
  for (const auto& v : s["fixed"]) {
    os << (first ? "" : ",") << v.get<std::string>();
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace

json sector_json(const LGModel& model, const Sector& s) {
  json fixed = json::array();
  for (std::size_t v : s.fixed_vars) fixed.push_back(model.ring()->var(v).name);
  return json{{"element", s.element},
              {"exponents", exps_json(s.exps)},
              {"fixed", fixed},
              {"denominator", s.denominator.str()}};
}

json model_json(const LGModel& model, const std::vector<FixedLocus>& loci) {
  json vars = json::array();
  for (const auto& v : model.ring()->vars()) vars.push_back(json{{"name", v.name}, {"weight", to_string(v.weight)}});
  json gens = json::array();
  for (const auto& g : model.group().generators()) {
    json row = json::array();
    for (const auto& q : g) row.push_back(to_string(q));
    gens.push_back(row);
  }
  json sectors = json::array();
  for (const auto& L : loci) {
    json s = sector_json(model, L.sector);
    s["milnor_number"] = L.basis.size();
    s["basis"] = basis_json(L);
    sectors.push_back(s);
  }
  json out{{"variables", vars},
           {"potential", model.potential().str()},
           {"graded", model.graded()},
           {"conductor", model.conductor()},
           {"group", json{{"order", model.group().order()}, {"generators", gens}}},
           {"sectors", sectors}};
  if (model.graded()) out["degree"] = to_string(model.degree());
  return out;
}

json validate_json(const Problem& pb, const std::vector<FixedLocus>& loci) {
  json mfs = json::array();
  for (const auto& [name, P] : pb.mfs) {
    json m{{"name", name}, {"rank", P.rank()}, {"graded", P.graded()}};
    m["same_model"] = P.model()->same_as(*pb.model);
    mfs.push_back(m);
  }
  return json{{"command", "validate"}, {"model", model_json(*pb.model, loci)}, {"mfs", mfs}};
}

json chern_json(const EquivMF& P, const std::vector<FixedLocus>& loci) {
  json sectors = json::array();
  for (const auto& L : loci) {
    const SectorClass c = chern_sector(P, L);
    json s = sector_json(*P.model(), L.sector);
    s["form"] = c.raw_form.str();
    s["top"] = c.top_poly.str();
    sectors.push_back(s);
  }
  return json{{"command", "chern"}, {"mf", P.name()}, {"rank", P.rank()}, {"sectors", sectors}};
}

json to_json(const HRRReport& r) {
  json sectors = json::array();
  for (const auto& row : r.sectors) {
    json s = sector_json(*r.model, r.model->sectors()[row.element]);
    s["top_q"] = row.top_q.str();
    s["top_p_dual"] = row.top_p_dual.str();
    s["contribution"] = row.contribution.str();
    sectors.push_back(s);
  }
  json out{{"command", "hrr"},      {"p", r.p_name},          {"q", r.q_name},
           {"sectors", sectors},    {"chi_hrr", r.chi_hrr.str()}, {"integral", r.integral},
           {"verdict", to_string(r.verdict)}};
  out["chi_ext"] = r.chi_ext ? json(*r.chi_ext) : json(nullptr);
  return out;
}

json to_json(const CardyReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back(json{{"a", e.a_index},
                           {"b", e.b_index},
                           {"a_degree", to_string(e.a_degree)},
                           {"a_parity", e.a_parity},
                           {"b_degree", to_string(e.b_degree)},
                           {"b_parity", e.b_parity},
                           {"trace", e.trace.str()},
                           {"pairing", e.pairing.str()},
                           {"equal", e.equal}});
  return json{{"command", "cardy"},
              {"p", r.p_name},
              {"q", r.q_name},
              {"ext_dims", json{{"pp", r.ext_pp}, {"qq", r.ext_qq}, {"pq", r.ext_pq}}},
              {"entries", entries},
              {"verdict", verdict_of(r.all_equal)}};
}

json to_json(const DiagonalReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back(json{{"left", e.sector_left},
                           {"right", e.sector_right},
                           {"i", e.i},
                           {"j", e.j},
                           {"lhs", e.lhs.str()},
                           {"rhs", e.rhs.str()},
                           {"equal", e.equal}});
  json out{{"command", "diagonal"}, {"applicable", r.applicable}, {"entries", entries}};
  if (!r.applicable) {
    out["reason"] = r.reason;
    out["verdict"] = "not-applicable";
  } else {
    out["verdict"] = verdict_of(r.all_equal);
  }
  return out;
}

std::string render_text(const json& r) {
  std::ostringstream os;
  const std::string cmd = r.value("command", "");
  if (cmd == "validate") {
    const json& m = r["model"];
    os << "model: w = " << m["potential"].get<std::string>() << " over";
    for (const auto& v : m["variables"]) os << " " << v["name"].get<std::string>() << "[" << v["weight"].get<std::string>() << "]";
    os << "\n";
    if (m.contains("degree")) os << "degree: " << m["degree"].get<std::string>() << "\n";
    os << "group order: " << m["group"]["order"] << ", conductor " << m["conductor"] << "\n";
    for (const auto& s : m["sectors"])
      os << "  " << sector_label(s) << " mu=" << s["milnor_number"] << " denominator " << s["denominator"].get<std::string>()
         << "\n";
    for (const auto& f : r["mfs"])
      os << "mf " << f["name"].get<std::string>() << ": rank " << f["rank"] << (f["graded"].get<bool>() ? ", graded" : "")
         << "\n";
    os << "ok\n";
  } else if (cmd == "chern") {
    os << "ch(" << r["mf"].get<std::string>() << "), rank " << r["rank"] << "\n";
    for (const auto& s : r["sectors"]) os << "  " << sector_label(s) << ": " << s["top"].get<std::string>() << "\n";
  } else if (cmd == "chi") {
    os << "chi(" << r["p"].get<std::string>() << ", " << r["q"].get<std::string>() << ") = " << r["chi_ext"] << "\n";
  } else if (cmd == "hrr") {
    os << "hrr(" << r["p"].get<std::string>() << ", " << r["q"].get<std::string>() << ")\n";
    for (const auto& s : r["sectors"])
      os << "  " << sector_label(s) << ": " << s["contribution"].get<std::string>() << "\n";
    os << "chi_hrr = " << r["chi_hrr"].get<std::string>() << "\n";
    os << "chi_ext = " << (r["chi_ext"].is_null() ? std::string("skipped") : r["chi_ext"].dump()) << "\n";
    os << "verdict: " << r["verdict"].get<std::string>() << "\n";
  } else if (cmd == "cardy") {
    os << "cardy(" << r["p"].get<std::string>() << ", " << r["q"].get<std::string>() << "): dim Ext(P,P)=" << r["ext_dims"]["pp"]
       << " dim Ext(Q,Q)=" << r["ext_dims"]["qq"] << " dim Ext(P,Q)=" << r["ext_dims"]["pq"] << "\n";
    for (const auto& e : r["entries"])
      os << "  a" << e["a"] << " b" << e["b"] << ": trace " << e["trace"].get<std::string>() << ", pairing "
         << e["pairing"].get<std::string>() << (e["equal"].get<bool>() ? "" : "  MISMATCH") << "\n";
    os << "verdict: " << r["verdict"].get<std::string>() << "\n";
  } else if (cmd == "diagonal") {
    if (r.contains("reason")) os << "not applicable: " << r["reason"].get<std::string>() << "\n";
    for (const auto& e : r["entries"])
      os << "  (g" << e["left"] << "," << e["i"] << ") x (g" << e["right"] << "," << e["j"] << "): "
         << e["lhs"].get<std::string>() << " vs " << e["rhs"].get<std::string>() << (e["equal"].get<bool>() ? "" : "  MISMATCH")
         << "\n";
    os << "verdict: " << r["verdict"].get<std::string>() << "\n";
  } else {
    os << r.dump(2) << "\n";
  }
  return os.str();
}

}  // namespace lgorb
