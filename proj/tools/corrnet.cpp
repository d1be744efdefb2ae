// corrnet: rolling correlation-network analysis of a daily return panel.
//
// Subcommands:
//   run       full pipeline (tables + SVG heatmaps + manifest)
//   synth     generate a synthetic factor-model panel from a JSON spec
//   validate  check a panel file and print a report
//
// Exit codes: 0 success; 2 validation/input failure; 3 numerical failure
// (reported with month and stage); 1 anything else.

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "corrnet/common.hpp"
#include "corrnet/panel.hpp"
#include "corrnet/pipeline.hpp"
#include "corrnet/synth.hpp"

namespace {

int cmd_run(const corrnet::PipelineConfig& cfg) {
  corrnet::PipelineResult res = corrnet::run_pipeline(cfg);
  corrnet::write_outputs(cfg, res);
  std::cout << "months: " << res.labels.size() << " (" << res.labels.front().str()
            << " .. " << res.labels.back().str() << ")\n"
            << "assets: " << res.assets.size() << "\n"
            << "communities (full period): " << res.full_partition.n_communities
            << ", codelength " << corrnet::fmt_double(res.full_partition.codelength)
            << " bits\n"
            << "input fnv1a64: " << res.data_hash << "\n"
            << "wrote " << cfg.output_dir << "\n";
  return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_path) {
  std::ifstream in(spec_path, std::ios::binary);
  if (!in) throw corrnet::InputError("cannot open spec file: " + spec_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  corrnet::FactorSpec spec = corrnet::parse_factor_spec(ss.str());
  corrnet::ReturnPanel panel = corrnet::factor_returns(spec);

  std::ostringstream csv;
  corrnet::write_panel_csv(panel, csv);
  corrnet::write_file(out_path, csv.str());
  std::cout << "wrote " << out_path << ": " << panel.n_days() << " days x "
            << panel.n_assets() << " assets (seed " << spec.seed << ")\n";
  return 0;
}

int cmd_validate(const std::string& input_path) {
  corrnet::ReturnPanel panel = corrnet::load_panel_file(input_path);
  if (panel.dates.empty()) throw corrnet::FormatError("panel has no rows");
  corrnet::ValidationReport report = corrnet::validate_panel(
      panel, panel.dates.front().ym(), panel.dates.back().ym());
  report.print(std::cout);
  return report.pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlation-network pipeline for daily return panels"};
  app.require_subcommand(1);

  corrnet::PipelineConfig cfg;
  std::string first_label = "1969-09", last_label = "2011-12", impute;

  auto* run = app.add_subcommand("run", "run the full monthly pipeline");
  run->add_option("--input", cfg.input_path, "input panel file")->required();
  run->add_option("--out", cfg.output_dir, "output directory")->required();
  run->add_option("--window-months", cfg.window_months, "rolling window length");
  run->add_option("--first", first_label, "first window label (YYYY-MM)");
  run->add_option("--last", last_label, "last window label (YYYY-MM)");
  run->add_option("--restarts", cfg.restarts, "community-detection restarts");
  run->add_option("--seed", cfg.seed, "random seed");
  run->add_flag("--weighted", cfg.weighted, "weighted map-equation flows");
  run->add_flag("--bits", cfg.bits, "report link MI in bits");
  run->add_option("--impute", impute, "missing-value policy (zero)");

  std::string spec_path, synth_out;
  auto* synth = app.add_subcommand("synth", "generate a synthetic panel");
  synth->add_option("--spec", spec_path, "factor-model JSON spec")->required();
  synth->add_option("--out", synth_out, "output CSV path")->required();

  std::string validate_input;
  auto* validate = app.add_subcommand("validate", "validate a panel file");
  validate->add_option("--input", validate_input, "input panel file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (!impute.empty()) {
        if (impute != "zero")
          throw corrnet::InputError("unsupported --impute policy: " + impute);
        cfg.impute_zero = true;
      }
      cfg.first_label = corrnet::parse_month(first_label);
      cfg.last_label = corrnet::parse_month(last_label);
      return cmd_run(cfg);
    }
    if (synth->parsed()) return cmd_synth(spec_path, synth_out);
    if (validate->parsed()) return cmd_validate(validate_input);
  } catch (const corrnet::EstimationError& e) {
    std::cerr << "numerical failure (stage " << e.stage << ", month " << e.month
              << "): " << e.what() << "\n";
    return 3;
  } catch (const corrnet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
