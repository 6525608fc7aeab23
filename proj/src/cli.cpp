#include "lgorb/cli.hpp"

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "lgorb/report.hpp"

namespace lgorb {

using nlohmann::json;

namespace {

struct Args {
  std::string file;
  std::string format = "text";
  std::string mf, p, q;
};

CLI::App* add_command(CLI::App& app, const char* name, const char* help, Args& a) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("file", a.file, "problem file (JSON)")->required();
  sub->add_option("--format", a.format, "output format")->check(CLI::IsMember({"json", "text"}));
  return sub;
}

void emit(const json& report, const Args& a, std::ostream& out) {
  if (a.format == "json")
    out << report.dump(2) << "\n";
  else
    out << render_text(report);
}

int exit_for(const json& report) {
  const std::string v = report.value("verdict", "equal");
  return v == "mismatch" ? kExitMismatch : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orbifold Chern characters, residue pairings and Euler characteristics of equivariant matrix factorizations",
               "lgorb"};
  app.require_subcommand(1);
  Args a;
  CLI::App* validate = add_command(app, "validate", "parse and check a problem file", a);
  CLI::App* chern = add_command(app, "chern", "sector Chern characters of one factorization", a);
  chern->add_option("--mf", a.mf, "factorization name")->required();
  CLI::App* chi = add_command(app, "chi", "Euler characteristic of Hom(P, Q) from graded Ext", a);
  CLI::App* hrr = add_command(app, "hrr", "compare the HRR sum with the Ext Euler characteristic", a);
  CLI::App* cardy = add_command(app, "cardy", "check the Cardy condition on Ext bases", a);
  for (CLI::App* sub : {chi, hrr, cardy}) {
    sub->add_option("--p", a.p, "source factorization")->required();
    sub->add_option("--q", a.q, "target factorization")->required();
  }
  CLI::App* diagonal = add_command(app, "diagonal", "check the decomposition of the diagonal", a);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    const Problem pb = load_problem_file(a.file);
    const std::vector<FixedLocus> loci = fixed_loci(*pb.model);
    json report;
    if (validate->parsed()) {
      pb.model->require_isolated();
      report = validate_json(pb, loci);
    } else if (chern->parsed()) {
      const EquivMF& P = pb.mf(a.mf);
      report = chern_json(P, P.model()->same_as(*pb.model) ? loci : fixed_loci(*P.model()));
    } else if (chi->parsed()) {
      const long v = euler_characteristic(pb.mf(a.p), pb.mf(a.q), pb.ext);
      report = json{{"command", "chi"}, {"p", a.p}, {"q", a.q}, {"chi_ext", v}};
    } else if (hrr->parsed()) {
      const HRRReport r = verify_hrr(pb.mf(a.p), pb.mf(a.q), pb.ext);
      report = to_json(r);
      if (!r.integral) report["verdict"] = "mismatch";
    } else if (cardy->parsed()) {
      report = to_json(verify_cardy(pb.mf(a.p), pb.mf(a.q), pb.ext));
    } else if (diagonal->parsed()) {
      report = to_json(verify_diagonal_decomposition(pb.model));
    }
    emit(report, a, out);
    return exit_for(report);
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "] " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error [internal] " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace lgorb
