// Command-line front end: run scenarios, generate the built-in families,
// validate inputs, and evaluate the Kodaira-dimension table.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcd/families.hpp"
#include "mcd/model.hpp"
#include "mcd/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;
constexpr int kExitInternal = 3;

struct OutputOpts {
  std::string format = "text";
  bool trace = false;
  std::string out_path;
};

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
  cmd->add_option("--format", opts.format, "text | json | svg | ascii")
      ->check(CLI::IsMember({"text", "json", "svg", "ascii"}));
  cmd->add_flag("--trace", opts.trace, "include the per-stage trace in text output");
  cmd->add_option("--out", opts.out_path, "write output to a file instead of stdout");
}

mcd::RenderSpec make_spec(const OutputOpts& opts) {
  mcd::RenderSpec spec;
  if (opts.format == "json") spec.format = mcd::RenderFormat::Json;
  else if (opts.format == "svg") spec.format = mcd::RenderFormat::Svg;
  else if (opts.format == "ascii") spec.format = mcd::RenderFormat::Ascii;
  else spec.format = mcd::RenderFormat::Text;
  spec.include_trace = opts.trace;
  return spec;
}

void emit(const std::string& bytes, const OutputOpts& opts) {
  if (opts.out_path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw mcd::parse_error("cannot write output file: " + opts.out_path);
  out << bytes;
}

int run_report(const mcd::DecompositionReport& rep, const OutputOpts& opts) {
  emit(mcd::render(rep, make_spec(opts)), opts);
  return kExitOk;
}

int run_scenario(const mcd::Scenario& scenario, const OutputOpts& opts) {
  mcd::ValidationReport v = mcd::validate(scenario);
  if (!v.ok()) {
    std::cerr << "scenario rejected:\n";
    for (const auto& c : v.checks)
      if (!c.pass) std::cerr << "  [FAIL] " << c.name << ": " << c.detail << "\n";
    return kExitValidation;
  }
  return run_report(mcd::run_decomposition(scenario), opts);
}

int emit_or_run(const mcd::Scenario& scenario, bool emit_scenario, const OutputOpts& opts) {
  if (emit_scenario) {
    emit(mcd::scenario_to_json(scenario).dump(2) + "\n", opts);
    return kExitOk;
  }
  return run_scenario(scenario, opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mori chamber decomposition for rank-2 divisor class models"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "decompose a scenario file");
  std::string run_path;
  OutputOpts run_opts;
  run_cmd->add_option("scenario", run_path, "scenario JSON file")->required();
  add_output_opts(run_cmd, run_opts);

  // validate
  auto* val_cmd = app.add_subcommand("validate", "check a scenario file against the hypotheses");
  std::string val_path;
  val_cmd->add_option("scenario", val_path, "scenario JSON file")->required();

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate a built-in family scenario");
  gen_cmd->require_subcommand(1);

  struct GenCommon {
    bool emit_scenario = false;
    bool run = false;
    OutputOpts opts;
  };
  auto add_gen_mode = [](CLI::App* cmd, GenCommon& g) {
    auto* e = cmd->add_flag("--emit-scenario", g.emit_scenario, "print the scenario JSON");
    auto* r = cmd->add_flag("--run", g.run, "run the decomposition");
    e->excludes(r);
  };

  auto* p1pn_cmd = gen_cmd->add_subcommand("p1pn", "general (a,b)-hypersurface on P^1 x P^n");
  mcd::HypersurfaceParams hp;
  GenCommon p1pn_g;
  p1pn_cmd->add_option("--a", hp.a)->required();
  p1pn_cmd->add_option("--b", hp.b)->required();
  p1pn_cmd->add_option("--n", hp.n)->required();
  add_gen_mode(p1pn_cmd, p1pn_g);
  add_output_opts(p1pn_cmd, p1pn_g.opts);

  auto* blowup_cmd =
      gen_cmd->add_subcommand("blowup", "blowup of a Fano complete intersection at a point");
  mcd::BlowupFanoParams bp;
  GenCommon blowup_g;
  blowup_cmd->add_option("--N", bp.N, "ambient projective space dimension")->required();
  blowup_cmd->add_option("--degrees", bp.degrees, "hypersurface degrees d1,d2,...")
      ->required()
      ->delimiter(',');
  add_gen_mode(blowup_cmd, blowup_g);
  add_output_opts(blowup_cmd, blowup_g.opts);

  auto* pkpl_cmd = gen_cmd->add_subcommand("pkpl", "hypersurface on P^k x P^{n+1-k}, 2 <= k <= n-1");
  mcd::PkPlParams pp;
  GenCommon pkpl_g;
  pkpl_cmd->add_option("--k", pp.k)->required();
  pkpl_cmd->add_option("--a", pp.a)->required();
  pkpl_cmd->add_option("--b", pp.b)->required();
  pkpl_cmd->add_option("--n", pp.n)->required();
  add_gen_mode(pkpl_cmd, pkpl_g);
  add_output_opts(pkpl_cmd, pkpl_g.opts);

  // kappa
  auto* kappa_cmd = app.add_subcommand("kappa", "Kodaira dimension of an (a,b)-hypersurface");
  mcd::PkPlParams kp;
  kappa_cmd->add_option("--k", kp.k)->required();
  kappa_cmd->add_option("--a", kp.a)->required();
  kappa_cmd->add_option("--b", kp.b)->required();
  kappa_cmd->add_option("--n", kp.n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*run_cmd) return run_scenario(mcd::load_scenario(run_path), run_opts);

    if (*val_cmd) {
      mcd::ValidationReport v = mcd::validate(mcd::load_scenario(val_path));
      for (const auto& c : v.checks)
        std::cout << (c.pass ? "[ ok ] " : "[FAIL] ") << c.name
                  << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
      return v.ok() ? kExitOk : kExitValidation;
    }

    auto require_mode = [](const GenCommon& g, const char* name) {
      if (!g.emit_scenario && !g.run)
        throw mcd::parse_error(std::string("gen ") + name +
                               ": pass --emit-scenario or --run");
    };
    if (*p1pn_cmd) {
      require_mode(p1pn_g, "p1pn");
      return emit_or_run(mcd::gen_hypersurface_p1_pn(hp), p1pn_g.emit_scenario, p1pn_g.opts);
    }
    if (*blowup_cmd) {
      require_mode(blowup_g, "blowup");
      return emit_or_run(mcd::gen_blowup_fano_ci(bp), blowup_g.emit_scenario, blowup_g.opts);
    }
    if (*pkpl_cmd) {
      require_mode(pkpl_g, "pkpl");
      if (pkpl_g.emit_scenario)
        throw mcd::parse_error(
            "gen pkpl has no scenario form (its ruling pencils never meet the "
            "two-family hypotheses); use --run");
      return run_report(mcd::gen_pk_pl_trivial(pp), pkpl_g.opts);
    }
    if (*kappa_cmd) {
      std::cout << mcd::kodaira_dim_pk_pl(kp).str() << "\n";
      return kExitOk;
    }
  } catch (const mcd::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const mcd::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
