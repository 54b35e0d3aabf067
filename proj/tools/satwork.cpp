// Command-line front end. JSON reports go to stdout, notes to stderr.
// Exit codes: 0 pass, 1 checks failed, 2 usage or input error.

#include <optional>
#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "satwork/equivalence.hpp"
#include "satwork/ev_engine.hpp"
#include "satwork/families.hpp"
#include "satwork/hfcode.hpp"
#include "satwork/io.hpp"
#include "satwork/parser.hpp"
#include "satwork/relational.hpp"
#include "satwork/tarski.hpp"

using namespace satwork;
namespace fs = std::filesystem;

namespace {

struct UsageError : Error {
  using Error::Error;
};

// Set when --seed is given; echoed into object outputs.
std::optional<std::uint64_t> g_seed;

int emit(Json j, bool ok) {
  if (g_seed && j.is_object()) j["seed"] = *g_seed;
  std::cout << j.dump(2) << "\n";
  return ok ? 0 : 1;
}

// Accepts a truth class or the output of convert --class.
TruthClass load_truth(const std::string& file) {
  Json j = load_json(file);
  if (j.is_object() && j.contains("truth")) j = j.at("truth");
  return truthclass_from_json(j, fs::path(file).parent_path());
}

Json vars_json(const VariableSet& vs) {
  Json j = Json::array();
  for (Variable v : vs) j.push_back(v.name());
  return j;
}

std::vector<Formula> universe_file(const std::string& path) {
  Json j = load_json(path);
  if (j.is_object() && j.contains("universe")) j = j.at("universe");
  if (!j.is_array()) throw InputError("universe file must be a JSON array of formula strings");
  std::vector<Formula> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw InputError("universe entries must be strings");
    out.push_back(parse_formula(x.get<std::string>()));
  }
  return out;
}

std::vector<Formula> gather(const std::string& file, const std::vector<std::string>& texts) {
  std::vector<Formula> out;
  if (!file.empty()) out = universe_file(file);
  for (const auto& t : texts) out.push_back(parse_formula(t));
  if (out.empty()) throw UsageError("no formulas given (use --universe or --formula)");
  return out;
}

Backend structure_arg(const std::string& path) {
  if (path.empty()) throw UsageError("--structure is required");
  return structure_from_json(load_json(path), fs::path(path).parent_path());
}

SatClass class_arg(const std::string& path) { return satclass_from_json(load_json(path), fs::path(path).parent_path()); }

Json inspect(const std::string& text, std::uint64_t budget) {
  Formula f = parse_formula(text);
  Json j;
  j["formula"] = print_compact(f);
  try {
    j["expanded"] = print(f, 4096);
  } catch (const BudgetExceeded&) {
  }
  j["depth"] = to_string(f.depth());
  j["free_vars"] = vars_json(f.free_vars());
  j["sentence"] = f.is_sentence();
  j["node_count"] = to_string(f.node_count());
  j["ast_size"] = to_string(f.ast_size());
  j["compressed"] = f.has_compressed_nodes();
  j["direct_subformulas"] = formulas_to_json(f.direct_subformulas());
  try {
    Template t = template_of(f, budget);
    Json holes = Json::array();
    for (std::size_t i = 0; i < t.fresh.size(); ++i) holes.push_back({{"var", t.fresh[i].name()}, {"term", print_compact(t.holes[i])}});
    j["template"] = {{"skeleton", print_compact(t.skeleton)}, {"holes", holes}};
  } catch (const BudgetExceeded& e) {
    j["template"] = {{"error", e.what()}};
  }
  try {
    HFCode c = godel_code(f, budget);
    if (auto v = c.value()) {
      j["code"] = to_string(*v);
    } else {
      j["code"] = {{"bit_bound", c.bit_bound()}};
    }
  } catch (const BudgetExceeded& e) {
    j["code"] = {{"error", e.what()}, {"required_nodes", to_string(e.required())}};
  }
  if (auto m = match_eta(f)) j["eta"] = {{"a", to_string(m->a)}, {"prefix_length", to_string(m->prefix.length())}};
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"satwork: satisfaction-class workbench"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for randomized runs (recorded in reports)");

  std::string formula, class_file, truth_file, structure, universe, config, mode = "strict", set_text;
  std::vector<std::string> formulas;
  std::uint64_t budget = std::uint64_t{1} << 20;
  bool dump_chain = false;
  Value ta = 0, tb = 0;
  int rounds = 1;

  auto* inspect_cmd = app.add_subcommand("inspect", "depth, free variables, template and code of a formula");
  inspect_cmd->add_option("--formula", formula)->required();
  inspect_cmd->add_option("--budget", budget, "node budget for templates and codes");

  auto* sat_cmd = app.add_subcommand("check-sat", "verify a satisfaction class");
  sat_cmd->add_option("--class", class_file)->required();
  sat_cmd->add_option("--mode", mode)->check(CLI::IsMember({"strict", "fragment"}));

  auto* reg_cmd = app.add_subcommand("check-reg", "check regularity of a satisfaction class");
  reg_cmd->add_option("--class", class_file)->required();

  auto* qc_cmd = app.add_subcommand("check-qc", "quantifier correctness of domain formulas");
  qc_cmd->add_option("--class", class_file)->required();
  qc_cmd->add_option("--formula", formulas, "restrict to these formulas");

  auto* ct_cmd = app.add_subcommand("check-ct", "check the CT- axioms on a truth class");
  ct_cmd->add_option("--truth", truth_file)->required();

  auto* convert_cmd = app.add_subcommand("convert", "satisfaction class to truth class or back");
  auto* conv_class = convert_cmd->add_option("--class", class_file);
  auto* conv_truth = convert_cmd->add_option("--truth", truth_file);
  conv_class->excludes(conv_truth);

  auto* tarski_cmd = app.add_subcommand("tarski", "Tarskian satisfaction class of a universe");
  tarski_cmd->add_option("--structure", structure)->required();
  tarski_cmd->add_option("--universe", universe);
  tarski_cmd->add_option("--formula", formulas);

  auto* step_cmd = app.add_subcommand("ev-step", "one extension step with optional seeding");
  step_cmd->add_option("--config", config)->required();
  step_cmd->add_flag("--dump-chain", dump_chain);

  auto* chain_cmd = app.add_subcommand("ev-chain", "unseeded steps over the depth filtration of a universe");
  chain_cmd->add_option("--structure", structure)->required();
  chain_cmd->add_option("--universe", universe);
  chain_cmd->add_option("--formula", formulas);

  auto* def_cmd = app.add_subcommand("definability", "plant quantifier-correctness failures at a set of counts");
  def_cmd->add_option("--set", set_text, "comma-separated eta counts")->required();
  def_cmd->add_option("--config", config, "JSON with backend, scan_max, b0, m1, m2, chain_length, schedule");

  auto* ntype_cmd = app.add_subcommand("ntype", "back-and-forth equivalence and enumerated types");
  ntype_cmd->add_option("--structure", structure)->required();
  ntype_cmd->add_option("--a", ta)->required();
  ntype_cmd->add_option("--b", tb)->required();
  ntype_cmd->add_option("--n", rounds)->required();

  try {
    app.parse(argc, argv);
    if (app.count("--seed")) g_seed = seed;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*inspect_cmd) return emit(inspect(formula, budget), true);

    if (*sat_cmd) {
      Report r = verify_satclass(class_arg(class_file), mode == "strict" ? VerifyMode::Strict : VerifyMode::Fragment);
      return emit(report_to_json(r), r.ok());
    }
    if (*reg_cmd) {
      Report r = check_regular(class_arg(class_file));
      return emit(report_to_json(r), r.ok());
    }
    if (*qc_cmd) {
      SatClass s = class_arg(class_file);
      std::vector<Formula> targets;
      for (const auto& t : formulas) targets.push_back(parse_formula(t));
      if (targets.empty()) {
        FormulaSet d = class_domain(s);
        targets.assign(d.begin(), d.end());
        std::sort(targets.begin(), targets.end());
      }
      Json out = Json::array();
      bool ok = true;
      for (const auto& f : targets) {
        QcStatus q = qc_formula(s, f);
        ok = ok && q.kind != QcKind::Fails;
        Json e{{"formula", print_compact(f)}, {"status", to_string(q.kind)}};
        if (q.block) e["block"] = print_compact(*q.block);
        if (q.witness) e["asn"] = assignment_to_json(*q.witness);
        out.push_back(e);
      }
      return emit({{"ok", ok}, {"formulas", out}}, ok);
    }
    if (*ct_cmd) {
      TruthClass t = load_truth(truth_file);
      CtReport r = check_ct(t);
      return emit(ct_report_to_json(r), r.ok());
    }
    if (*convert_cmd) {
      if (!class_file.empty()) {
        Conversion c = s_to_t(class_arg(class_file));
        return emit({{"certified", c.certified}, {"truth", truthclass_to_json(c.truth)}}, c.certified);
      }
      if (truth_file.empty()) throw UsageError("convert needs --class or --truth");
      TruthClass t = load_truth(truth_file);
      try {
        return emit({{"class", satclass_to_json(t_to_s(t))}}, true);
      } catch (const ClosureError& e) {
        return emit({{"error", e.what()}, {"missing", formulas_to_json(e.missing())}}, false);
      }
    }
    if (*tarski_cmd) {
      SatClass s = tarski_satclass(gather(universe, formulas), structure_arg(structure));
      return emit(satclass_to_json(s), true);
    }
    if (*step_cmd) {
      StepInput in = step_from_json(load_json(config), fs::path(config).parent_path());
      StepResult r = ev_step(in.config, in.universe);
      Report theta = verify_theta(r, in.config);
      Json out{{"theta", report_to_json(theta)}, {"class", satclass_to_json(r.s)}};
      if (dump_chain) out["chain"] = chain_state_to_json(r);
      return emit(out, theta.ok());
    }
    if (*chain_cmd) {
      Backend b = structure_arg(structure);
      std::vector<Formula> u = gather(universe, formulas);
      SatClass s = ev_chain(no_pathology_step(), SatClass(b, {}, true), u);
      return emit(satclass_to_json(s), true);
    }
    if (*def_cmd) {
      std::set<BigNat> targets;
      std::stringstream ss(set_text);
      for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty()) continue;
        targets.insert(parse_bignat(item));
      }
      DefinabilityParams p;
      if (!config.empty()) {
        Json j = load_json(config);
        if (j.contains("backend")) p.backend = structure_from_json(j.at("backend"), fs::path(config).parent_path());
        p.scan_max = j.value("scan_max", p.scan_max);
        if (j.contains("b0")) p.b0 = j.at("b0").get<std::uint64_t>();
        p.m1 = j.value("m1", p.m1);
        p.m2 = j.value("m2", p.m2);
        p.chain_length = j.value("chain_length", p.chain_length);
        for (const auto& x : j.value("schedule", Json::array())) p.schedule.push_back(parse_bignat(x.is_string() ? x.get<std::string>() : x.dump()));
      }
      DefinabilityResult r = definability_run(targets, p);
      Json rec = Json::array();
      for (const auto& x : r.recovered) rec.push_back(Json::parse(to_string(x)));
      bool theta = std::all_of(r.step_reports.begin(), r.step_reports.end(), [](const Report& x) { return x.ok(); });
      Json reports = Json::array();
      for (const auto& x : r.step_reports) reports.push_back(report_to_json(x));
      return emit({{"recovered", rec}, {"theta_ok", theta}, {"steps", reports}}, theta && r.recovered == targets);
    }
    if (*ntype_cmd) {
      Backend b = structure_arg(structure);
      if (rounds < 0) throw UsageError("--n must be non-negative");
      Json out{{"a", ta}, {"b", tb}, {"n", rounds}, {"ef_equiv", ef_equiv(ta, tb, rounds, b)}};
      if (rounds <= 2 && b.carrier().size() <= 4) {
        auto tpa = tp_exhaustive(ta, rounds, b), tpb = tp_exhaustive(tb, rounds, b);
        Json diff = Json::array();
        std::size_t held = 0;
        for (std::size_t i = 0; i < tpa.size(); ++i) {
          held += tpa[i].holds;
          if (tpa[i].holds != tpb[i].holds) diff.push_back(print(tpa[i].formula));
        }
        out["enumerated"] = tpa.size();
        out["satisfied_by_a"] = held;
        out["separating"] = diff;
      }
      return emit(out, true);
    }
  } catch (const SyntaxError& e) {
    std::cerr << "satwork: " << e.what() << "\n";
    emit({{"error", e.what()}, {"column", e.column()}}, false);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "satwork: " << e.what() << "\n";
    emit({{"error", e.what()}}, false);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "satwork: " << e.what() << "\n";
    emit({{"error", e.what()}}, false);
    return 2;
  } catch (const UnsupportedEnumeration& e) {
    std::cerr << "satwork: " << e.what() << "\n";
    emit({{"error", e.what()}}, false);
    return 2;
  } catch (const std::exception& e) {
    // Construction, scheduling and budget failures are reported, not crashes.
    std::cerr << "satwork: " << e.what() << "\n";
    return emit({{"error", e.what()}}, false);
  }
  return 2;
}
