#include <array>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "pma/cocycle.hpp"
#include "pma/construct.hpp"
#include "pma/json_io.hpp"
#include "pma/kernels.hpp"
#include "pma/resolution.hpp"
#include "pma/rootdatum.hpp"
#include "pma/tqdouble.hpp"

namespace {

using namespace pma;

// Verdict commands exit 0 when the claim holds and 1 when it fails; a
// structurally bad invocation or input file exits 2; refusing to start a
// scan larger than the budget exits 3. Reports are byte-identical across
// runs with equal inputs and config.
constexpr int exit_holds = 0;
constexpr int exit_fails = 1;
constexpr int exit_bad_input = 2;
constexpr int exit_budget = 3;

struct RunConfig {
  std::int64_t budget = default_scan_budget;
  int jobs = 1;
  std::int64_t seed = 0;
  std::string out_path;  // empty writes to stdout
};

Json load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

void emit(const Json& report, const RunConfig& rc) {
  const std::string text = report.dump(2) + "\n";
  if (rc.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(rc.out_path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + rc.out_path);
  out << text;
}

Json report_head(const char* tool, const char* action, const char* claim, const RunConfig& rc) {
  Json r = Json::object();
  r["schema"] = schema_version;
  r["tool"] = tool;
  r["action"] = action;
  r["claim"] = claim;
  r["config"] = Json{{"budget", rc.budget}, {"jobs", rc.jobs}, {"seed", rc.seed}};
  return r;
}

// Runs independent subtasks, concurrently when jobs > 1. Every task owns
// its own result slot and the collected exception is always the first
// task's, so the report never depends on scheduling.
void run_tasks(std::vector<std::function<void()>> tasks, int jobs) {
  if (jobs <= 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::vector<std::future<void>> fs;
  fs.reserve(tasks.size());
  for (auto& t : tasks) fs.push_back(std::async(std::launch::async, std::move(t)));
  std::exception_ptr err;
  for (auto& f : fs) {
    try {
      f.get();
    } catch (...) {
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

struct CochainInput {
  std::optional<CocycleSpec> spec;
  Cochain3 phi;
  Json echo;
};

CochainInput load_cochain(const std::string& spec_path, const std::string& table_path) {
  if (spec_path.empty() == table_path.empty())
    throw ParseError("give exactly one of --spec and --table");
  CochainInput in;
  if (!spec_path.empty()) {
    in.spec = read_spec_document(load_document(spec_path));
    in.phi = phi_cochain(*in.spec);
    in.echo = Json{{"spec", spec_json(*in.spec)}};
  } else {
    in.phi = read_table_document(load_document(table_path));
    const std::int64_t o = in.phi.group.order();
    in.echo = Json{{"table", Json{{"moduli", in.phi.group.moduli}, {"values", o * o * o}}}};
  }
  return in;
}

struct CocycleVerdict {
  bool is_cocycle = false;
  std::string violation;
  std::optional<std::array<GroupElem, 4>> counterexample;
};

// Budget-gated pentagon + normalization verdict; on failure the table is
// rescanned once more to surface the first violating tuple.
CocycleVerdict check_cocycle(const Cochain3& phi, std::int64_t budget) {
  CocycleVerdict v;
  v.is_cocycle = is_cocycle(phi, budget);
  if (v.is_cocycle) return v;
  const CochainTable t = tabulate3(phi);
  if (!table_is_normalized(t)) {
    v.violation = "normalization";
    return v;
  }
  const std::int64_t q = pentagon_scan(t);
  v.violation = "pentagon";
  if (q >= 0) {
    const std::int64_t n = t.n;
    const std::int64_t d = q % n, c = q / n % n, b = q / n / n % n, a = q / n / n / n;
    v.counterexample = {elem_at(phi.group, a), elem_at(phi.group, b), elem_at(phi.group, c),
                        elem_at(phi.group, d)};
  }
  return v;
}

void put_verdict(Json& r, const CocycleVerdict& v) {
  r["is_cocycle"] = v.is_cocycle;
  if (!v.is_cocycle) {
    r["violation"] = v.violation;
    if (v.counterexample) {
      Json ce = Json::array();
      for (const GroupElem& e : *v.counterexample) ce.push_back(elem_json(e));
      r["counterexample"] = ce;
    }
  }
}

Json axiom_json(const AxiomResult& ar) {
  Json j = Json::object();
  j["pass"] = ar.pass;
  if (!ar.pass) {
    Json w = Json::array();
    for (const GroupElem& e : ar.where) w.push_back(elem_json(e));
    j["where"] = w;
  }
  return j;
}

Json index_pair_json(const std::pair<std::size_t, std::size_t>& p) {
  return Json::array({p.first + 1, p.second + 1});
}

Json verification_json(const RootDatumReport& rep) {
  Json v = Json::object();
  v["shapes"] = rep.shapes;
  v["entry_bounds"] = rep.entry_bounds;
  v["ts_identity"] = rep.ts_identity;
  v["diagram_match"] = rep.diagram_match;
  if (rep.diagram_violation) v["diagram_violation"] = index_pair_json(*rep.diagram_violation);
  v["congruences"] = rep.congruences;
  if (rep.congruence_violation)
    v["congruence_violation"] = index_pair_json(*rep.congruence_violation);
  v["pass"] = rep.pass();
  return v;
}

int cmd_cocycle_eval(const RunConfig& rc, const std::string& spec_path,
                     const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y,
                     const std::vector<std::int64_t>& z) {
  const CocycleSpec a = read_spec_document(load_document(spec_path));
  const FinAbGroup& G = a.group;
  if (x.size() != G.rank() || y.size() != G.rank() || z.size() != G.rank())
    throw ParseError("--x/--y/--z need one exponent per group factor");
  const GroupElem ex = make_elem(G, x), ey = make_elem(G, y), ez = make_elem(G, z);
  Json r = report_head("cocycle", "eval", "value of the representative cocycle at one triple", rc);
  r["inputs"] =
      Json{{"spec", spec_json(a)}, {"x", elem_json(ex)}, {"y", elem_json(ey)}, {"z", elem_json(ez)}};
  r["phase"] = phase_json(phi_eval(a, ex, ey, ez));
  emit(r, rc);
  return exit_holds;
}

int cmd_cocycle_check(const RunConfig& rc, const std::string& spec_path,
                      const std::string& table_path) {
  const CochainInput in = load_cochain(spec_path, table_path);
  Json r = report_head("cocycle", "check",
                       "the cochain is normalized and satisfies the pentagon identity", rc);
  r["inputs"] = in.echo;
  const CocycleVerdict v = check_cocycle(in.phi, rc.budget);
  put_verdict(r, v);
  emit(r, rc);
  return v.is_cocycle ? exit_holds : exit_fails;
}

int cmd_cocycle_classify(const RunConfig& rc, const std::string& spec_path,
                         const std::string& table_path) {
  const CochainInput in = load_cochain(spec_path, table_path);
  Json r = report_head("cocycle", "classify",
                       "the unique canonical constant block cohomologous to the input", rc);
  r["inputs"] = in.echo;
  const CocycleVerdict v = check_cocycle(in.phi, rc.budget);
  put_verdict(r, v);
  if (!v.is_cocycle) {
    emit(r, rc);
    return exit_fails;
  }
  r["constants"] = spec_json(classify(in.phi));
  emit(r, rc);
  return exit_holds;
}

int cmd_cocycle_is_coboundary(const RunConfig& rc, const std::string& spec_path,
                              const std::string& table_path) {
  const CochainInput in = load_cochain(spec_path, table_path);
  Json r = report_head("cocycle", "is-coboundary", "the 3-cocycle is a coboundary", rc);
  r["inputs"] = in.echo;
  const CocycleVerdict v = check_cocycle(in.phi, rc.budget);
  put_verdict(r, v);
  if (!v.is_cocycle) {
    emit(r, rc);
    return exit_fails;
  }
  const auto witness = is_coboundary(in.phi);
  r["coboundary"] = witness.has_value();
  if (witness) {
    const std::size_t n = in.phi.group.rank();
    Json g = Json::object();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::string key = std::to_string(i + 1) + "," + std::to_string(j + 1);
        g[key] = phase_json((*witness)[pair_index(n, i, j)]);
      }
    r["witness_gammas"] = g;
  }
  emit(r, rc);
  return witness ? exit_holds : exit_fails;
}

int cmd_double_check(const RunConfig& rc, const std::string& spec_path) {
  const CocycleSpec a = read_spec_document(load_document(spec_path));
  const Cochain3 phi = phi_cochain(a);
  bool by_constants = false, by_scan = false, assoc = false;
  MajidReport mj;
  run_tasks({[&] { by_constants = is_abelian_spec(a); },
             [&] { by_scan = is_abelian_bruteforce(phi, rc.budget); },
             [&] { assoc = double_is_associative(phi, rc.budget); },
             [&] { mj = majid_axiom_check(phi, rc.budget); }},
            rc.jobs);
  if (by_constants != by_scan)
    throw std::logic_error("abelianness decisions disagree");
  Json r = report_head("double", "check", "the twisted double of this cocycle is abelian", rc);
  r["inputs"] = Json{{"spec", spec_json(a)}};
  r["abelian_spec"] = by_constants;
  r["abelian_bruteforce"] = by_scan;
  r["abelian"] = by_scan;
  r["associative"] = assoc;
  r["majid_axioms"] = Json{{"quasi_assoc", axiom_json(mj.quasi_assoc)},
                           {"unit", axiom_json(mj.unit)},
                           {"pentagon", axiom_json(mj.pentagon)},
                           {"middle_unit", axiom_json(mj.middle_unit)},
                           {"antipode", axiom_json(mj.antipode)},
                           {"zigzag", axiom_json(mj.zigzag)},
                           {"all_pass", mj.all_pass()}};
  emit(r, rc);
  return by_scan ? exit_holds : exit_fails;
}

int cmd_resolve_verify(const RunConfig& rc, const std::string& spec_path) {
  const CocycleSpec a = read_spec_document(load_document(spec_path));
  const bool abelian = is_abelian_spec(a);
  Json r = report_head("resolve", "verify",
                       "the cocycle pulls back to a coboundary of the squared group", rc);
  r["inputs"] = Json{{"spec", spec_json(a)}};
  r["abelian"] = abelian;
  if (!abelian) {
    r["resolved"] = false;
    r["obstruction"] = obstruction_check(a);
    emit(r, rc);
    return exit_fails;
  }
  const bool ok = verify_resolution(a, rc.budget);
  r["resolved"] = ok;
  if (ok) {
    r["witness"] = "J_a";
  } else if (const auto ce = resolution_counterexample(a, a, rc.budget)) {
    Json t = Json::array();
    for (const GroupElem& e : *ce) t.push_back(elem_json(e));
    r["counterexample"] = t;
  }
  emit(r, rc);
  return ok ? exit_holds : exit_fails;
}

int cmd_rootdatum_verify(const RunConfig& rc, const std::string& datum_path) {
  const RootDatum D = read_datum_document(load_document(datum_path));
  const RootDatumReport rep = verify_root_datum(D);
  Json r = report_head("rootdatum", "verify",
                       "the datum satisfies the inverse, diagram and congruence requirements", rc);
  r["inputs"] = Json{{"datum", datum_json(D)}};
  r["verification"] = verification_json(rep);
  if (rep.pass()) {
    const auto a = determine_a(D);
    if (!a) throw std::logic_error("verified datum lost its constants");
    r["constants"] = spec_json(*a);
    r["genuine"] = genuine_flag(*a);
    const YDModuleData V = build_yd_module(D);
    r["module_descends"] = yd_module_descends(V, D.base);
    r["braiding_matches"] = braiding_of_yd(V) == D.diagram;
  }
  emit(r, rc);
  return rep.pass() ? exit_holds : exit_fails;
}

int cmd_construct_cartan(const RunConfig& rc, const std::string& matrix_path,
                         const std::vector<std::int64_t>& orders) {
  const IntMat C = read_cartan_document(load_document(matrix_path));
  const CartanConstruction cc = cartan_construction(C, orders);
  Json r = report_head("construct", "cartan",
                       "a verified root datum realizing the Cartan-matrix braiding", rc);
  r["inputs"] = Json{{"cartan_matrix", intmat_json(C)}, {"orders", cc.orders}};
  r["symmetrizer"] = cc.d;
  Json comps = Json::array();
  for (const auto& comp : cc.components) {
    Json one = Json::array();
    for (std::size_t v : comp) one.push_back(v + 1);
    comps.push_back(one);
  }
  r["components"] = comps;
  r["datum"] = datum_json(cc.datum);
  const RootDatumReport rep = verify_root_datum(cc.datum);
  r["verification"] = verification_json(rep);
  r["constants"] = spec_json(cc.constants);
  r["genuine"] = cc.genuine;
  emit(r, rc);
  return rep.pass() ? exit_holds : exit_fails;
}

int cmd_construct_standard(const RunConfig& rc, const std::string& diagram_path) {
  const GeneralizedDynkinDiagram D = read_diagram_document(load_document(diagram_path));
  const StandardConstruction sc = standard_construction(D);
  Json r = report_head("construct", "standard",
                       "a verified root datum whose module reproduces the diagram labels", rc);
  r["inputs"] = Json{{"diagram", diagram_json(D)}};
  r["refused"] = sc.refused;
  if (sc.refused) {
    r["reason"] = sc.reason;
    emit(r, rc);
    return exit_fails;
  }
  r["m"] = sc.m;
  if (sc.one_param_m) r["one_param_m"] = *sc.one_param_m;
  r["datum"] = datum_json(*sc.datum);
  const RootDatumReport rep = verify_root_datum(*sc.datum);
  r["verification"] = verification_json(rep);
  r["constants"] = spec_json(*sc.constants);
  r["genuine"] = sc.genuine;
  emit(r, rc);
  return rep.pass() ? exit_holds : exit_fails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact 3-cocycle, twisted-double and root-datum toolkit"};
  app.require_subcommand(1);

  RunConfig rc;
  app.add_option("--budget", rc.budget, "largest brute-force tuple count before refusing (exit 3)")
      ->envname("PMA_BUDGET")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--jobs", rc.jobs, "worker threads for independent sub-checks")
      ->envname("PMA_JOBS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", rc.seed, "seed echoed into the report, for sampled test drivers")
      ->envname("PMA_SEED")
      ->capture_default_str();
  app.add_option("--json", rc.out_path, "write the report to this file instead of stdout");

  std::string spec_path, table_path, datum_path, matrix_path, diagram_path;
  std::vector<std::int64_t> ex, ey, ez, orders;
  std::function<int()> run;

  CLI::App* cocycle = app.add_subcommand("cocycle", "normalized 3-cocycles on finite abelian groups");
  cocycle->require_subcommand(1);
  cocycle->fallthrough();

  CLI::App* c_eval = cocycle->add_subcommand("eval", "evaluate a constant block at one triple");
  c_eval->fallthrough();
  c_eval->add_option("--spec", spec_path, "constant block file")->required();
  c_eval->add_option("--x", ex, "first argument exponents")->required()->delimiter(',');
  c_eval->add_option("--y", ey, "second argument exponents")->required()->delimiter(',');
  c_eval->add_option("--z", ez, "third argument exponents")->required()->delimiter(',');
  c_eval->callback([&] { run = [&] { return cmd_cocycle_eval(rc, spec_path, ex, ey, ez); }; });

  const auto add_cochain_opts = [&](CLI::App* cmd) {
    cmd->fallthrough();
    cmd->add_option("--spec", spec_path, "constant block file");
    cmd->add_option("--table", table_path, "full value table file");
  };

  CLI::App* c_check = cocycle->add_subcommand("check", "decide the 3-cocycle conditions");
  add_cochain_opts(c_check);
  c_check->callback([&] { run = [&] { return cmd_cocycle_check(rc, spec_path, table_path); }; });

  CLI::App* c_classify =
      cocycle->add_subcommand("classify", "find the cohomologous canonical constant block");
  add_cochain_opts(c_classify);
  c_classify->callback(
      [&] { run = [&] { return cmd_cocycle_classify(rc, spec_path, table_path); }; });

  CLI::App* c_cob = cocycle->add_subcommand("is-coboundary", "decide coboundary-ness exactly");
  add_cochain_opts(c_cob);
  c_cob->callback(
      [&] { run = [&] { return cmd_cocycle_is_coboundary(rc, spec_path, table_path); }; });

  CLI::App* dbl = app.add_subcommand("double", "twisted quantum double of the group");
  dbl->require_subcommand(1);
  dbl->fallthrough();
  CLI::App* d_check =
      dbl->add_subcommand("check", "abelianness, associativity and the quasi-bialgebra axioms");
  d_check->fallthrough();
  d_check->add_option("--spec", spec_path, "constant block file")->required();
  d_check->callback([&] { run = [&] { return cmd_double_check(rc, spec_path); }; });

  CLI::App* resolve = app.add_subcommand("resolve", "resolution over the squared group");
  resolve->require_subcommand(1);
  resolve->fallthrough();
  CLI::App* r_verify = resolve->add_subcommand("verify", "resolve the cocycle or report the obstruction");
  r_verify->fallthrough();
  r_verify->add_option("--spec", spec_path, "constant block file")->required();
  r_verify->callback([&] { run = [&] { return cmd_resolve_verify(rc, spec_path); }; });

  CLI::App* rootdatum = app.add_subcommand("rootdatum", "root data over squared abelian groups");
  rootdatum->require_subcommand(1);
  rootdatum->fallthrough();
  CLI::App* rd_verify = rootdatum->add_subcommand("verify", "verify a datum and derive its constants");
  rd_verify->fallthrough();
  rd_verify->add_option("--datum", datum_path, "root datum file")->required();
  rd_verify->callback([&] { run = [&] { return cmd_rootdatum_verify(rc, datum_path); }; });

  CLI::App* construct = app.add_subcommand("construct", "build root data from classification input");
  construct->require_subcommand(1);
  construct->fallthrough();
  CLI::App* k_cartan = construct->add_subcommand("cartan", "datum from a Cartan matrix");
  k_cartan->fallthrough();
  k_cartan->add_option("--matrix", matrix_path, "Cartan matrix file")->required();
  k_cartan->add_option("--orders", orders, "one odd modulus per connected component")
      ->delimiter(',');
  k_cartan->callback([&] { run = [&] { return cmd_construct_cartan(rc, matrix_path, orders); }; });
  CLI::App* k_std = construct->add_subcommand("standard", "datum from a labeled diagram");
  k_std->fallthrough();
  k_std->add_option("--diagram", diagram_path, "diagram file with q_ii and q_tilde labels")
      ->required();
  k_std->callback([&] { run = [&] { return cmd_construct_standard(rc, diagram_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_bad_input;
  }

  try {
    return run();
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return exit_budget;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_input;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_bad_input;
  }
}
