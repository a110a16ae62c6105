// riskq: assess a declarative cause-effect risk model.
//
// Subcommands: validate, assess, band, diagram, table, mc-check.
// Exit codes: 0 ok, 1 semantic error, 2 parse error, 3 check failure,
// 64 usage error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "riskq/cli.hpp"

namespace {

riskq::SecurityProperty to_property(const std::string& name) {
  return *riskq::parse_property(name);  // choices restricted by CLI11
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative cause-effect information-risk assessment"};
  app.require_subcommand(1);

  const std::vector<std::string> property_names = {"confidentiality", "integrity",
                                                   "availability"};

  std::string path;
  std::string property;
  std::string assess_format;
  std::string table_format;
  std::string output;
  std::string bands_path;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  double sigma = 4.0;

  CLI::App* validate = app.add_subcommand("validate", "Check a model file");
  validate->add_option("path", path, "model file (.riskq.json)")->required();

  CLI::App* assess = app.add_subcommand("assess", "Compute the risk report");
  assess->add_option("path", path, "model file (.riskq.json)")->required();
  assess->add_option("--format", assess_format, "output format")
      ->default_val("json")
      ->check(CLI::IsMember({"json", "markdown", "csv"}));
  assess->add_option("--property", property, "restrict to one security property")
      ->check(CLI::IsMember(property_names));

  CLI::App* band = app.add_subcommand("band", "Qualitative FAIR-style banding");
  band->add_option("path", path, "model file (.riskq.json)")->required();
  band->add_option("--bands", bands_path, "band scale configuration file");

  CLI::App* diagram = app.add_subcommand("diagram", "Ishikawa-style DOT digraph");
  diagram->add_option("path", path, "model file (.riskq.json)")->required();
  diagram->add_option("--property", property, "security property")
      ->required()
      ->check(CLI::IsMember(property_names));
  diagram->add_option("-o,--output", output, "write to file instead of stdout");

  CLI::App* table = app.add_subcommand("table", "Cause-effect table");
  table->add_option("path", path, "model file (.riskq.json)")->required();
  table->add_option("--property", property, "security property")
      ->required()
      ->check(CLI::IsMember(property_names));
  table->add_option("--format", table_format, "output format")
      ->default_val("markdown")
      ->check(CLI::IsMember({"markdown", "csv"}));
  table->add_option("-o,--output", output, "write to file instead of stdout");

  CLI::App* mc_check = app.add_subcommand("mc-check", "Simulation check of the engine");
  mc_check->add_option("path", path, "model file (.riskq.json)")->required();
  mc_check->add_option("--samples", samples, "number of replicates")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  mc_check->add_option("--seed", seed, "random stream seed");
  mc_check->add_option("--sigma", sigma, "acceptance threshold in standard errors")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cout, std::cerr);
    return riskq::cli::kExitUsage;
  }

  std::ostream& out = std::cout;
  std::ostream& err = std::cerr;

  if (validate->parsed()) {
    return riskq::cli::cmd_validate(path, out, err);
  }
  if (assess->parsed()) {
    std::optional<riskq::SecurityProperty> prop;
    if (!property.empty()) prop = to_property(property);
    return riskq::cli::cmd_assess(path, *riskq::cli::parse_report_format(assess_format),
                                  prop, out, err);
  }
  if (band->parsed()) {
    std::optional<std::string> bands;
    if (!bands_path.empty()) bands = bands_path;
    return riskq::cli::cmd_band(path, bands, out, err);
  }
  if (diagram->parsed()) {
    std::optional<std::string> out_path;
    if (!output.empty()) out_path = output;
    return riskq::cli::cmd_diagram(path, to_property(property), out_path, out, err);
  }
  if (table->parsed()) {
    std::optional<std::string> out_path;
    if (!output.empty()) out_path = output;
    auto fmt = table_format == "csv" ? riskq::diagram::TableFormat::Csv
                                     : riskq::diagram::TableFormat::Markdown;
    return riskq::cli::cmd_table(path, to_property(property), fmt, out_path, out, err);
  }
  if (mc_check->parsed()) {
    return riskq::cli::cmd_mc_check(path, samples, seed, sigma, out, err);
  }
  return riskq::cli::kExitUsage;
}
