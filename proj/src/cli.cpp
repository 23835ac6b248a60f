#include "tau2/cli.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tau2/dioph.hpp"
#include "tau2/errors.hpp"

namespace tau2 {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

ordered_json vector_json(const IntVector& v) {
  ordered_json a = ordered_json::array();
  for (const Integer& x : v) a.push_back(integer_json(x));
  return a;
}

ordered_json bools_json(const std::vector<bool>& v) {
  ordered_json a = ordered_json::array();
  for (bool b : v) a.push_back(b);
  return a;
}

std::string fixed6(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

std::string s_field(const ModelSpec& model) {
  if (model.kind == ModelKind::Tau2) return "";
  std::string s;
  for (int i = 0; i < model.n; ++i) {
    if (i) s += ";";
    const auto& v = model.S.empty() ? std::optional<Integer>{} : model.S[static_cast<std::size_t>(i)];
    s += v ? v->get_str() : "inf";
  }
  return s;
}

}  // namespace

std::string analysis_json(const Tau2Presentation& p, const StructureReport& r) {
  ordered_json j;
  j["n"] = p.n();
  j["m"] = p.m();
  ordered_json d = ordered_json::array();
  for (const IntVector& v : r.center.d_basis.vectors()) d.push_back(vector_json(v));
  j["center"] = {{"rank", r.center.rank(p.m())}, {"d_basis", d}, {"equals_C", r.center.d_basis.empty()}};
  j["csmall"] = bools_json(r.csmall_flags);
  j["csmall_rank_criterion"] = bools_json(r.csmall_criterion_flags);
  j["all_commutators_nonzero"] = r.all_commutators_nonzero;
  j["derived"] = {{"rank", r.derived.derived_rank},
                  {"finite_index", r.derived.derived_finite_index},
                  {"commutators_form_basis", r.derived.commutators_form_basis}};
  j["regular"] = r.is_regular;
  j["scalar_ring_is_Z_certified"] = r.scalar_ring_is_Z_certified;
  const InvariantReport& inv = r.invariants;
  j["invariants"] = {{"rank_center", inv.rank_center},
                     {"rank_G_mod_center", inv.rank_G_mod_center},
                     {"rank_derived", inv.rank_derived},
                     {"rank_G_mod_C", inv.rank_G_mod_C},
                     {"span_identity_holds", inv.span_identity_holds},
                     {"sandwich_holds", inv.sandwich_holds}};
  return j.dump(2) + "\n";
}

std::string run_experiment(const ExperimentConfig& cfg, unsigned threads, std::uint64_t budget) {
  std::string csv = "model,n,m,S,ell,property,mode,successes,trials,fraction,estimate,ci_low,ci_high,seed\n";
  const std::string m = cfg.model.kind == ModelKind::Tau2 ? std::to_string(cfg.model.m) : "";
  for (int ell : cfg.ells) {
    bool exact = cfg.exact == ExactMode::On;
    if (cfg.exact == ExactMode::Auto && cfg.model.kind == ModelKind::Tau2)
      exact = sample_space_size({cfg.model.n, cfg.model.m, ell}) <= Integer(static_cast<unsigned long>(budget));
    const std::vector<EstimateResult> rows =
        exact ? exact_fractions(cfg.model, ell, cfg.properties, threads, budget)
              : montecarlo(cfg.model, ell, cfg.properties, cfg.trials, cfg.seed, threads);
    for (const EstimateResult& r : rows) {
      csv += std::string(to_string(cfg.model.kind)) + "," + std::to_string(cfg.model.n) + "," + m + "," +
             s_field(cfg.model) + "," + std::to_string(ell) + "," + r.property + "," +
             (r.exact ? "exact" : "montecarlo") + "," + std::to_string(r.successes) + "," +
             std::to_string(r.trials) + "," + r.fraction.get_str() + "," + fixed6(r.estimate) + "," +
             fixed6(r.ci_low) + "," + fixed6(r.ci_high) + "," +
             (r.exact ? std::string() : std::to_string(r.seed)) + "\n";
    }
  }
  return csv;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact arithmetic and random experiments for tau_2-presentations", "tau2"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string out_path;
  bool version_header = false;
  app.add_option("--seed", seed, "Override the experiment seed");
  app.add_option("--threads", threads, "Worker threads for experiments")->check(CLI::Range(1u, 1024u));
  app.add_option("--out", out_path, "Write the result to this file instead of stdout");
  app.add_flag("--version-header", version_header, "Prefix output with a format version comment");

  std::string pres_path, eqs_path, config_path, a_text, b_text;
  int box = -1, window = 0;

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Structure report of a presentation file (JSON)");
  analyze_cmd->add_option("presentation", pres_path)->required();

  CLI::App* experiment_cmd = app.add_subcommand("experiment", "Run a seeded experiment config, emit CSV");
  experiment_cmd->add_option("config", config_path)->required();

  CLI::App* encode_cmd = app.add_subcommand("encode", "Encode group equations as a Diophantine system");
  encode_cmd->add_option("presentation", pres_path)->required();
  encode_cmd->add_option("equations", eqs_path)->required();
  encode_cmd->add_option("--box", box, "Also list all solutions in [-B, B]^vars")->check(CLI::NonNegativeNumber);

  CLI::App* odot_cmd = app.add_subcommand("odot", "Check the ring construction on a window");
  odot_cmd->add_option("presentation", pres_path)->required();
  odot_cmd->add_option("a", a_text)->required();
  odot_cmd->add_option("b", b_text)->required();
  odot_cmd->add_option("--window", window, "Window radius T")->required()->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string result;
  int code = kExitOk;
  try {
    if (*analyze_cmd) {
      const Tau2Presentation p = parse_presentation(read_file(pres_path));
      result = analysis_json(p, analyze(p));
    } else if (*experiment_cmd) {
      ExperimentConfig cfg = parse_experiment_config(read_file(config_path));
      if (seed) cfg.seed = *seed;
      result = run_experiment(cfg, threads);
    } else if (*encode_cmd) {
      const Tau2Presentation p = parse_presentation(read_file(pres_path));
      const DiophantineSystem d = encode_system(parse_equations(p, read_file(eqs_path)));
      result = d.to_text();
      if (box >= 0) {
        const std::vector<IntVector> sols = box_solve(d, box);
        result += "solutions in box " + std::to_string(box) + ": " + std::to_string(sols.size()) + "\n";
        for (const IntVector& s : sols) {
          for (std::size_t k = 0; k < s.size(); ++k)
            result += (k ? " " : "") + d.variables()[k] + "=" + s[k].get_str();
          result += "\n";
        }
      }
    } else if (*odot_cmd) {
      const Tau2Presentation p = parse_presentation(read_file(pres_path));
      const MalcevElement a = parse_element(p, a_text), b = parse_element(p, b_text);
      const RingWindowReport rep = verify_ring_window_report(p, a, b, window);
      result = std::string("odot window ") + std::to_string(window) + ": " + (rep.ok ? "pass" : "FAIL") +
               " (" + std::to_string(rep.multiplication_checks) + " multiplication, " +
               std::to_string(rep.addition_checks) + " addition, " +
               std::to_string(rep.negation_checks) + " negation checks)\n";
      for (const std::string& f : rep.failures) result += "fail " + f + "\n";
      if (!rep.ok) code = kExitInvariant;
    }
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const PresentationMismatch& e) {
    err << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const BudgetExceeded& e) {
    err << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (version_header) result = "# tau2 format 1\n" + result;
  if (out_path.empty()) {
    out << result;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
    f << result;
  }
  return code;
}

}  // namespace tau2
