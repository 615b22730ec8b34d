// Command line front end: model checking, satisfiability, validity,
// formula translations, the QBF reduction, model listing, and fragment
// classification over the teamlogic headers.
//
// Exit codes: 0 = true / satisfiable / valid / success,
//             1 = false / unsatisfiable / not valid,
//             2 = usage, parse, or limit errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "teamlogic/teamlogic.hpp"

namespace {

using namespace teamlogic;

struct CommonOpts {
  std::string inline_formula;
  std::string formula_file;
  bool machine = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Exactly one of the inline argument and --file may be used.
std::string formula_text(const CommonOpts& opts) {
  if (opts.inline_formula.empty() == opts.formula_file.empty())
    throw std::runtime_error(
        "give the formula either inline or with --file, not both");
  if (!opts.formula_file.empty()) return slurp(opts.formula_file);
  return opts.inline_formula;
}

void add_formula_source(CLI::App* cmd, CommonOpts& opts, const char* what) {
  cmd->add_option("formula", opts.inline_formula, what);
  cmd->add_option("--file", opts.formula_file, "read the input from a file");
  cmd->add_flag("--machine", opts.machine,
                "one parseable result line, no prose");
}

// Limit plumbing: every limit has a flag, an environment fallback, and the
// library default, in that order of precedence.
struct Limits {
  EvalConfig cfg;
  DecideLimits decide;
  std::size_t tqbf_vars = kDefaultTqbfVars;
  std::size_t models_width = kMaxAllTeamsWidth;
  bool eliminate_first = false;
};

void add_eval_limits(CLI::App* cmd, Limits& lim) {
  cmd->add_option("--max-split", lim.cfg.max_split_size,
                  "largest team split by | or otimes")
      ->envname("TEAMLOGIC_MAX_SPLIT");
  cmd->add_option("--max-subset", lim.cfg.max_subset_size,
                  "largest team swept for subteams by -->")
      ->envname("TEAMLOGIC_MAX_SUBSET");
  cmd->add_flag("--eliminate-first", lim.eliminate_first,
                "rewrite derived operators into the ~ core before evaluating");
}

void add_decide_limits(CLI::App* cmd, Limits& lim) {
  cmd->add_option("--max-brute-width", lim.decide.max_brute_width,
                  "most variables the brute-force team sweep accepts")
      ->envname("TEAMLOGIC_MAX_BRUTE_WIDTH");
  cmd->add_option("--max-assignment-vars", lim.decide.max_assignment_vars,
                  "most variables the singleton solvers accept")
      ->envname("TEAMLOGIC_MAX_ASSIGNMENT_VARS");
}

EvalConfig eval_config(const Limits& lim) {
  EvalConfig cfg = lim.cfg;
  if (lim.eliminate_first)
    cfg.derived_mode = EvalConfig::DerivedMode::EliminateFirst;
  return cfg;
}

void warn_brute_width(const Limits& lim) {
  if (lim.decide.max_brute_width > kDefaultBruteWidth)
    std::cerr << "warning: brute-force width " << lim.decide.max_brute_width
              << " sweeps 2^(2^" << lim.decide.max_brute_width
              << ") teams; expect it to be slow\n";
}

std::string join_rows(const Team& team) {
  std::string out;
  for (std::size_t i = 0; i < team.size(); ++i) {
    if (i) out += ',';
    out += row_string(team.codes()[i], team.width());
  }
  return out.empty() ? std::string("-") : out;
}

int report_mc(const Verdict& v, bool machine) {
  std::cout << (v.answer ? "true" : "false") << '\n';
  (void)machine;  // both modes already fit on one line
  return v.answer ? 0 : 1;
}

int report_sat(const Verdict& v, bool machine) {
  const char* verdict = v.answer ? "satisfiable" : "unsatisfiable";
  if (machine) {
    std::cout << verdict << " method=" << v.method;
    if (v.witness) std::cout << " witness=" << join_rows(*v.witness);
    std::cout << '\n';
  } else {
    std::cout << verdict << " (method: " << v.method << ")\n";
    if (v.witness) {
      std::cout << "witness:\n";
      write_team(std::cout, *v.witness);
    }
  }
  return v.answer ? 0 : 1;
}

int report_val(const Verdict& v, bool machine) {
  const char* verdict = v.answer ? "valid" : "not valid";
  if (machine) {
    std::cout << (v.answer ? "valid" : "not-valid") << " method=" << v.method;
    if (v.witness) std::cout << " countermodel=" << join_rows(*v.witness);
    std::cout << '\n';
  } else {
    std::cout << verdict << " (method: " << v.method << ")\n";
    if (v.witness) {
      std::cout << "countermodel:\n";
      write_team(std::cout, *v.witness);
    }
  }
  return v.answer ? 0 : 1;
}

Formula run_pass(const std::string& pass, const Formula& f) {
  if (pass == "eliminate") return eliminate_derived(f);
  if (pass == "dep2indep") return dep_to_indep(f);
  if (pass == "eraseindep") return erase_indep(f);
  if (pass == "incl2pl") return incl_to_biconditional(f);
  if (pass == "sat2val") return sat_to_val(f);
  if (pass == "val2sat") return val_to_sat(f);
  throw std::runtime_error("unknown pass '" + pass + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"propositional team semantics toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  Limits lim;
  std::string team_path;
  std::string pass;
  std::string team_out;
  std::string formula_out;
  bool split_or = false;

  CLI::App* mc = app.add_subcommand("mc", "does a team satisfy a formula");
  add_formula_source(mc, opts, "formula to check");
  mc->add_option("--team", team_path, "team file (header row, then 0/1 rows)")
      ->required();
  add_eval_limits(mc, lim);

  CLI::App* sat = app.add_subcommand(
      "sat", "is the formula satisfied by some nonempty team");
  add_formula_source(sat, opts, "formula to test");
  add_eval_limits(sat, lim);
  add_decide_limits(sat, lim);

  CLI::App* val = app.add_subcommand(
      "val", "is the formula satisfied by every nonempty team");
  add_formula_source(val, opts, "formula to test");
  add_eval_limits(val, lim);
  add_decide_limits(val, lim);

  CLI::App* translate =
      app.add_subcommand("translate", "rewrite a formula and print it");
  add_formula_source(translate, opts, "formula to rewrite");
  translate
      ->add_option("--pass", pass,
                   "one of: eliminate, dep2indep, eraseindep, incl2pl, "
                   "sat2val, val2sat")
      ->required()
      ->check(CLI::IsMember({"eliminate", "dep2indep", "eraseindep", "incl2pl",
                             "sat2val", "val2sat"}));

  CLI::App* reduce = app.add_subcommand(
      "reduce-tqbf", "turn a closed prenex QBF into a model checking instance");
  add_formula_source(reduce, opts, "QBF, e.g. \"E x1 A x2 : x1 | -x2\"");
  reduce->add_option("--max-tqbf-vars", lim.tqbf_vars,
                     "most quantified variables the reduction accepts")
      ->envname("TEAMLOGIC_MAX_TQBF_VARS");
  reduce->add_flag("--split-or", split_or,
                   "translate the matrix | to the splitting |");
  reduce->add_option("--team-out", team_out, "also write the team file here");
  reduce->add_option("--formula-out", formula_out,
                     "also write the formula here");

  CLI::App* models = app.add_subcommand(
      "models", "list every satisfying team over the formula's variables");
  add_formula_source(models, opts, "formula to enumerate");
  add_eval_limits(models, lim);
  models->add_option("--max-width", lim.models_width,
                     "most variables to enumerate teams over")
      ->envname("TEAMLOGIC_MAX_MODELS_WIDTH");

  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "name the formula's fragment and its complexity");
  add_formula_source(classify_cmd, opts, "formula to classify");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (mc->parsed()) {
    Team team = read_team_file(team_path);
    Formula f = parse(formula_text(opts));
    Verdict v = decide(f, Problem::Mc, team, eval_config(lim), lim.decide);
    return report_mc(v, opts.machine);
  }
  if (sat->parsed()) {
    warn_brute_width(lim);
    Formula f = parse(formula_text(opts));
    Verdict v = decide(f, Problem::Sat, std::nullopt, eval_config(lim),
                       lim.decide);
    return report_sat(v, opts.machine);
  }
  if (val->parsed()) {
    warn_brute_width(lim);
    Formula f = parse(formula_text(opts));
    Verdict v = decide(f, Problem::Val, std::nullopt, eval_config(lim),
                       lim.decide);
    return report_val(v, opts.machine);
  }
  if (translate->parsed()) {
    Formula f = parse(formula_text(opts));
    std::cout << print(run_pass(pass, f)) << '\n';
    return 0;
  }
  if (reduce->parsed()) {
    QbfInstance q = parse_qbf(formula_text(opts));
    TqbfOptions topt;
    topt.split_matrix_or = split_or;
    topt.max_vars = lim.tqbf_vars;
    McInstance inst = tqbf_to_mc(q, topt);
    if (!team_out.empty()) {
      std::ofstream out(team_out);
      if (!out) throw std::runtime_error("cannot write '" + team_out + "'");
      write_team(out, inst.team);
    }
    if (!formula_out.empty()) {
      std::ofstream out(formula_out);
      if (!out) throw std::runtime_error("cannot write '" + formula_out + "'");
      out << print(inst.formula) << '\n';
    }
    if (opts.machine) {
      std::cout << "team=" << join_rows(inst.team)
                << " formula=" << print(inst.formula) << '\n';
    } else {
      std::cout << "formula: " << print(inst.formula) << '\n' << "team:\n";
      write_team(std::cout, inst.team);
    }
    return 0;
  }
  if (models->parsed()) {
    Formula f = parse(formula_text(opts));
    std::vector<Team> sats =
        satisfying_teams(f, eval_config(lim), lim.models_width);
    if (opts.machine) {
      std::cout << sats.size() << '\n';
    } else {
      std::cout << sats.size() << " satisfying team"
                << (sats.size() == 1 ? "" : "s") << '\n';
      for (const Team& t : sats) {
        std::cout << '\n';
        if (t.empty())
          std::cout << "(empty team)\n";
        else
          write_team(std::cout, t);
      }
    }
    return 0;
  }
  if (classify_cmd->parsed()) {
    Formula f = parse(formula_text(opts));
    std::cout << describe(classify(f)) << '\n';
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const teamlogic::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const teamlogic::LimitError& e) {
    std::cerr << "limit error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
