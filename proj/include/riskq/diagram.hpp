#pragma once

// Renders the cause-effect structure of one security property: an
// Ishikawa-style DOT digraph (hypotheses -> events -> violation) and the
// four-column cause-effect table behind it.
//
// The fishbone is approximated by a right-to-left layered digraph; DOT has
// no native slanted-spine layout, and the topology is what matters.

#include <string>
#include <vector>

#include "riskq/decimal.hpp"
#include "riskq/engine.hpp"
#include "riskq/errors.hpp"
#include "riskq/model.hpp"

namespace riskq::diagram {

enum class TableFormat { Markdown, Csv };

namespace detail {

inline const PropertyAssessment& require_assessment(const RiskModel& model,
                                                    SecurityProperty property) {
  const PropertyAssessment* pa = model.find(property);
  if (pa == nullptr) {
    throw MissingPropertyError(std::string("model has no assessment for property \"") +
                               to_string(property) + "\"");
  }
  return *pa;
}

inline std::string dot_identifier(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_';
    out += ok ? c : '_';
  }
  if (out.empty()) out = "_";
  return out;
}

inline std::string dot_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      default: out += c;
    }
  }
  return out;
}

inline std::string csv_cell(std::string_view s) {
  bool quote = false;
  for (char c : s) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      quote = true;
      break;
    }
  }
  if (!quote) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline std::string md_cell(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace detail

// Effect node, one branch node per event, one leaf per hypothesis; node
// ordering follows the model. Output is deterministic.
inline std::string ishikawa_dot(const RiskModel& model, SecurityProperty property) {
  const PropertyAssessment& pa = detail::require_assessment(model, property);

  const std::string asset_name =
      model.asset.name.empty() ? model.asset.id : model.asset.name;

  std::string out;
  out += "digraph " + detail::dot_identifier(model.asset.id + "_" + to_string(property)) +
         " {\n";
  out += "  rankdir=RL;\n";
  out += "  node [shape=box, fontsize=10];\n";
  out += "  \"effect\" [shape=ellipse, label=\"Violation of " +
         std::string(to_string(property)) + " of " + detail::dot_escape(asset_name) +
         "\"];\n";
  for (const CauseEvent& event : pa.events) {
    std::string label = event.id;
    if (!event.description.empty()) label += "\n" + event.description;
    out += "  \"event_" + detail::dot_escape(event.id) + "\" [label=\"" + detail::dot_escape(label) +
           "\"];\n";
  }
  for (const CauseEvent& event : pa.events) {
    for (const Hypothesis& h : event.hypotheses) {
      std::string label = h.id;
      if (!h.description.empty()) label += "\n" + h.description;
      if (!h.iso_control.empty()) label += "\n" + h.iso_control;
      out += "  \"hyp_" + detail::dot_escape(h.id) + "\" [label=\"" + detail::dot_escape(label) + "\"];\n";
    }
  }
  for (const CauseEvent& event : pa.events) {
    for (const Hypothesis& h : event.hypotheses) {
      out += "  \"hyp_" + detail::dot_escape(h.id) + "\" -> \"event_" + detail::dot_escape(event.id) + "\";\n";
    }
    out += "  \"event_" + detail::dot_escape(event.id) + "\" -> \"effect\";\n";
  }
  out += "}\n";
  return out;
}

// One row per hypothesis, four columns: event (with its computed
// probability), hypothesis (with its prior), cause with ISO control, and the
// conditional probability. In Markdown the event cell is filled on its first
// row only; CSV repeats it.
inline std::string cause_effect_table(const RiskModel& model, SecurityProperty property,
                                      TableFormat format) {
  const PropertyAssessment& pa = detail::require_assessment(model, property);

  struct Row {
    std::string event;
    std::string hypothesis;
    std::string cause;
    std::string conditional;
  };
  std::vector<Row> rows;
  for (const CauseEvent& event : pa.events) {
    double p = engine::event_probability(event, model.combination_mode);
    std::string event_cell = event.id;
    if (!event.description.empty()) event_cell += ": " + event.description;
    event_cell += " (probability " + format_probability_sig(p, 6) + ")";
    bool first = true;
    for (const Hypothesis& h : event.hypotheses) {
      Row row;
      row.event = (format == TableFormat::Csv || first) ? event_cell : "";
      std::string hyp = h.id;
      if (!h.description.empty()) hyp += ": " + h.description;
      hyp += " (prior " + format_probability_sig(h.prior, 6) + ")";
      row.hypothesis = hyp;
      row.cause = h.cause;
      if (!h.iso_control.empty()) {
        row.cause += row.cause.empty() ? "[" + h.iso_control + "]"
                                       : " [" + h.iso_control + "]";
      }
      row.conditional = format_probability_sig(h.conditional, 6);
      rows.push_back(std::move(row));
      first = false;
    }
  }

  std::string out;
  if (format == TableFormat::Csv) {
    out += "event,hypothesis,cause,conditional_probability\r\n";
    for (const Row& row : rows) {
      out += detail::csv_cell(row.event) + "," + detail::csv_cell(row.hypothesis) + "," +
             detail::csv_cell(row.cause) + "," + detail::csv_cell(row.conditional) +
             "\r\n";
    }
  } else {
    out += "| Event | Hypothesis | Cause (ISO 27001) | Conditional probability |\n";
    out += "| --- | --- | --- | --- |\n";
    for (const Row& row : rows) {
      out += "| " + detail::md_cell(row.event) + " | " + detail::md_cell(row.hypothesis) +
             " | " + detail::md_cell(row.cause) + " | " +
             detail::md_cell(row.conditional) + " |\n";
    }
  }
  return out;
}

}  // namespace riskq::diagram
