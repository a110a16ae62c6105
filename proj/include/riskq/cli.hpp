#pragma once

// Command implementations behind the riskq command-line tool. Each cmd_*
// writes the requested artifact to `out`, diagnostics to `err`, and returns
// the process exit code:
//
//   0   success
//   1   semantic error (validation findings, missing property)
//   2   parse error (unreadable file, malformed document)
//   3   oracle check failure
//   64  usage error (handled by the argument parser in the tool itself)

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "riskq/banding.hpp"
#include "riskq/diagram.hpp"
#include "riskq/engine.hpp"
#include "riskq/mc_oracle.hpp"
#include "riskq/model_io.hpp"
#include "riskq/validate.hpp"

namespace riskq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSemantic = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitCheckFailed = 3;
inline constexpr int kExitUsage = 64;

enum class ReportFormat { Json, Markdown, Csv };

inline std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "markdown") return ReportFormat::Markdown;
  if (s == "csv") return ReportFormat::Csv;
  return std::nullopt;
}

// ---- report rendering -------------------------------------------------------

inline std::string render_report_json(const engine::RiskReport& report,
                                      const std::string& asset_id) {
  detail::CanonicalWriter w;
  w.open('{');
  w.key("asset");
  w.string(asset_id);
  w.key("currency");
  w.string(report.currency);
  w.key("combination_mode");
  w.string(to_string(report.combination_mode));
  w.key("properties");
  if (report.properties.empty()) {
    w.raw("[]");
  } else {
    w.open('[');
    for (const auto& pr : report.properties) {
      w.next();
      w.open('{');
      w.key("property");
      w.string(to_string(pr.property));
      w.key("event_probabilities");
      if (pr.event_probabilities.empty()) {
        w.raw("[]");
      } else {
        w.open('[');
        for (const auto& ep : pr.event_probabilities) {
          w.next();
          w.open('{');
          w.key("event");
          w.string(ep.event_id);
          w.key("probability");
          w.raw(format_probability(ep.probability));
          w.close('}');
        }
        w.close(']');
      }
      w.key("violation_probability");
      w.raw(format_probability(pr.violation_probability));
      w.key("expected_loss");
      w.string(format_money(pr.expected_loss));
      w.key("risk");
      w.string(format_money(pr.risk));
      w.close('}');
    }
    w.close(']');
  }
  w.key("total_risk");
  w.string(format_money(report.total_risk));
  w.close('}');
  std::string out = w.take();
  out += '\n';
  return out;
}

inline std::string render_report_markdown(const engine::RiskReport& report,
                                          const std::string& asset_name) {
  std::string out = "# Risk report: " + asset_name + "\n\n";
  out += "Combination mode: " + std::string(to_string(report.combination_mode)) +
         ". Currency: " + report.currency + ".\n";
  for (const auto& pr : report.properties) {
    std::string title(to_string(pr.property));
    title[0] = static_cast<char>(title[0] - 'a' + 'A');
    out += "\n## " + title + "\n\n";
    out += "| Event | Probability |\n| --- | --- |\n";
    for (const auto& ep : pr.event_probabilities) {
      out += "| " + ep.event_id + " | " + format_probability_sig(ep.probability, 6) +
             " |\n";
    }
    out += "\n";
    out += "- Violation probability: " +
           format_probability_sig(pr.violation_probability, 6) + "\n";
    out += "- Expected loss: " + format_money(pr.expected_loss) + " " +
           report.currency + "\n";
    out += "- Risk: " + format_money(pr.risk) + " " + report.currency + "\n";
  }
  out += "\nTotal risk: " + format_money(report.total_risk) + " " + report.currency +
         "\n";
  return out;
}

inline std::string render_report_csv(const engine::RiskReport& report) {
  std::string out = "property,violation_probability,expected_loss,risk\r\n";
  for (const auto& pr : report.properties) {
    out += std::string(to_string(pr.property)) + "," +
           format_probability(pr.violation_probability) + "," +
           format_money(pr.expected_loss) + "," + format_money(pr.risk) + "\r\n";
  }
  out += "total,,," + format_money(report.total_risk) + "\r\n";
  return out;
}

// ---- shared plumbing --------------------------------------------------------

namespace detail {

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

// 0 on success, else the exit code (diagnostics already written to err).
inline int load_model(const std::string& path, std::ostream& err, RiskModel& model) {
  auto text = read_file(path);
  if (!text) {
    err << "riskq: cannot read " << path << "\n";
    return kExitParse;
  }
  try {
    model = parse_model(*text);
  } catch (const ParseError& e) {
    err << path << ":" << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}

// Prints error findings to err; 0 when the model is usable.
inline int require_valid(const RiskModel& model, std::ostream& err) {
  ValidationReport report = validate_model(model);
  if (report.ok) return kExitOk;
  for (const auto& f : report.findings) {
    if (f.severity == Severity::Error) {
      err << "error: " << f.path << ": " << f.message << "\n";
    }
  }
  return kExitSemantic;
}

inline int write_artifact(const std::string& artifact,
                          const std::optional<std::string>& out_path, std::ostream& out,
                          std::ostream& err) {
  if (!out_path) {
    out << artifact;
    return kExitOk;
  }
  std::ofstream file(*out_path, std::ios::binary);
  file << artifact;
  file.flush();
  if (!file) {
    err << "riskq: cannot write " << *out_path << "\n";
    return kExitSemantic;
  }
  return kExitOk;
}

}  // namespace detail

// ---- commands ---------------------------------------------------------------

inline int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  RiskModel model;
  if (int rc = detail::load_model(path, err, model); rc != kExitOk) return rc;
  ValidationReport report = validate_model(model);
  out << to_string(report);
  err << (report.ok ? "ok" : "invalid") << " (" << report.findings.size()
      << " finding(s))\n";
  return report.ok ? kExitOk : kExitSemantic;
}

inline int cmd_assess(const std::string& path, ReportFormat format,
                      std::optional<SecurityProperty> property, std::ostream& out,
                      std::ostream& err) {
  RiskModel model;
  if (int rc = detail::load_model(path, err, model); rc != kExitOk) return rc;
  if (int rc = detail::require_valid(model, err); rc != kExitOk) return rc;

  engine::RiskReport report = engine::assess(model);
  if (property) {
    const engine::PropertyResult* pr = report.find(*property);
    if (pr == nullptr) {
      err << "error: model has no assessment for property \"" << to_string(*property)
          << "\"\n";
      return kExitSemantic;
    }
    engine::RiskReport filtered;
    filtered.combination_mode = report.combination_mode;
    filtered.currency = report.currency;
    filtered.properties.push_back(*pr);
    filtered.total_risk = pr->risk;
    report = std::move(filtered);
  }

  switch (format) {
    case ReportFormat::Json:
      out << render_report_json(report, model.asset.id);
      break;
    case ReportFormat::Markdown:
      out << render_report_markdown(
          report, model.asset.name.empty() ? model.asset.id : model.asset.name);
      break;
    case ReportFormat::Csv:
      out << render_report_csv(report);
      break;
  }
  return kExitOk;
}

inline int cmd_band(const std::string& path, std::optional<std::string> bands_path,
                    std::ostream& out, std::ostream& err) {
  RiskModel model;
  if (int rc = detail::load_model(path, err, model); rc != kExitOk) return rc;
  if (int rc = detail::require_valid(model, err); rc != kExitOk) return rc;

  banding::BandScale scale = banding::default_scale();
  if (bands_path) {
    auto text = detail::read_file(*bands_path);
    if (!text) {
      err << "riskq: cannot read " << *bands_path << "\n";
      return kExitParse;
    }
    try {
      scale = banding::parse_band_scale(*text);
    } catch (const ParseError& e) {
      err << *bands_path << ":" << e.what() << "\n";
      return kExitParse;
    }
  }

  engine::RiskReport report = engine::assess(model);
  for (const auto& pr : report.properties) {
    banding::FairComparison cmp = banding::compare(report, pr.property, scale);
    out << to_string(pr.property) << "\n";
    out << "  frequency:         " << cmp.frequency_band.name() << " (rank "
        << cmp.frequency_band.rank() << "), violation probability "
        << format_probability_sig(pr.violation_probability, 6) << "\n";
    out << "  magnitude:         " << cmp.magnitude_band.name() << " (rank "
        << cmp.magnitude_band.rank() << "), expected loss "
        << format_money(pr.expected_loss) << " " << report.currency << "\n";
    out << "  qualitative risk:  " << cmp.qualitative_risk.name() << " (rank "
        << cmp.qualitative_risk.rank() << ")\n";
    out << "  quantitative risk: " << format_money(cmp.quantitative_risk) << " "
        << report.currency << "\n";
    out << "  consistent:        " << (cmp.consistent ? "yes" : "no") << "\n";
  }
  out << "total risk: " << format_money(report.total_risk) << " " << report.currency
      << "\n";
  return kExitOk;
}

inline int cmd_diagram(const std::string& path, SecurityProperty property,
                       std::optional<std::string> out_path, std::ostream& out,
                       std::ostream& err) {
  RiskModel model;
  if (int rc = detail::load_model(path, err, model); rc != kExitOk) return rc;
  if (int rc = detail::require_valid(model, err); rc != kExitOk) return rc;
  try {
    std::string dot = diagram::ishikawa_dot(model, property);
    return detail::write_artifact(dot, out_path, out, err);
  } catch (const MissingPropertyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
}

inline int cmd_table(const std::string& path, SecurityProperty property,
                     diagram::TableFormat format, std::optional<std::string> out_path,
                     std::ostream& out, std::ostream& err) {
  RiskModel model;
  if (int rc = detail::load_model(path, err, model); rc != kExitOk) return rc;
  if (int rc = detail::require_valid(model, err); rc != kExitOk) return rc;
  try {
    std::string table = diagram::cause_effect_table(model, property, format);
    return detail::write_artifact(table, out_path, out, err);
  } catch (const MissingPropertyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
}

inline int cmd_mc_check(const std::string& path, uint64_t samples, uint64_t seed,
                        double sigma, std::ostream& out, std::ostream& err) {
  RiskModel model;
  if (int rc = detail::load_model(path, err, model); rc != kExitOk) return rc;
  if (int rc = detail::require_valid(model, err); rc != kExitOk) return rc;

  mc::CheckResult result = mc::check(model, samples, seed, sigma);
  for (const auto& pc : result.properties) {
    out << to_string(pc.property) << ": engine "
        << format_probability_sig(pc.engine_probability, 6) << ", estimate "
        << format_probability_sig(pc.estimate.violation_probability_hat, 6) << " (se "
        << format_probability_sig(pc.estimate.standard_error, 3) << "), deviation "
        << format_probability_sig(pc.deviation_sigmas, 3) << " sigma: "
        << (pc.pass ? "pass" : "FAIL") << "\n";
  }
  out << "mc-check: " << (result.pass ? "pass" : "FAIL") << " (samples " << samples
      << ", seed " << seed << ", sigma " << format_probability_sig(sigma, 3) << ")\n";
  return result.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace riskq::cli
