// optorouter: command-line front end.
//
//   optorouter steady     --config run.cfg --out out/
//   optorouter reproduce  --figure fig3 --out out/ --workers 8

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "optorouter/cli/config.hpp"
#include "optorouter/cli/run.hpp"
#include "optorouter/errors.hpp"

namespace oc = optorouter::cli;

int main(int argc, char** argv) {
  CLI::App app{"Single-photon router simulator for a modulated optomechanical cavity"};
  std::string subcommand;
  std::string config_path;
  std::string out_dir;
  std::optional<unsigned> workers;
  std::optional<std::string> figure;
  std::optional<int> case_number;

  app.add_option("subcommand", subcommand, "steady | stability | spectrum | route | reproduce | sweep")
      ->required()
      ->check(CLI::IsMember({"steady", "stability", "spectrum", "route", "reproduce", "sweep"}));
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--out", out_dir, "output directory (overrides out_dir)");
  app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--figure", figure, "figure to reproduce")
      ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
  app.add_option("--case", case_number, "1 (unmodulated) or 2 (modulated)")
      ->check(CLI::IsMember({1, 2}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error kind=UsageError message=" << e.what() << '\n';
    return oc::kExitValidation;
  }

  const oc::Subcommand sub = oc::subcommand_from_string(subcommand);
  oc::RunConfig cfg;
  try {
    if (!config_path.empty()) {
      cfg = oc::load_config(config_path);
    } else if (sub == oc::Subcommand::Reproduce) {
      cfg = oc::preset_config(optorouter::CaseTag::CaseI);
    } else {
      // No config: fall back to the built-in preset of the requested case.
      cfg = oc::preset_config(case_number == 1 ? optorouter::CaseTag::CaseI
                                               : optorouter::CaseTag::CaseII);
    }
    if (case_number) {
      cfg.case_tag = *case_number == 1 ? optorouter::CaseTag::CaseI : optorouter::CaseTag::CaseII;
      if (cfg.case_tag == optorouter::CaseTag::CaseI && cfg.drive.epsilon_d > 0) {
        throw optorouter::ValidationError("case 1 requires epsilon_d = 0");
      }
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (workers) cfg.workers = *workers;
    if (figure) cfg.figure = optorouter::figure_from_string(*figure);
  } catch (const optorouter::Error& e) {
    std::cerr << "error kind=" << e.kind() << " message=" << e.what() << '\n';
    return oc::kExitValidation;
  }

  return oc::run(cfg, sub, std::cerr);
}
