#pragma once

// Semantic validation for a structurally well-formed RiskModel. Findings are
// data, not failures: a report with no Error findings means every engine
// operation on the model will succeed.

#include <set>
#include <string>
#include <vector>

#include "riskq/decimal.hpp"
#include "riskq/model.hpp"

namespace riskq {

enum class Severity { Error, Warning };

struct Finding {
  Severity severity = Severity::Error;
  std::string path;
  std::string message;

  bool operator==(const Finding&) const = default;
};

struct ValidationReport {
  bool ok = true;  // true iff no finding has severity Error
  std::vector<Finding> findings;

  bool operator==(const ValidationReport&) const = default;
};

inline std::string to_string(const ValidationReport& report) {
  std::string out;
  for (const auto& f : report.findings) {
    out += (f.severity == Severity::Error) ? "error: " : "warning: ";
    if (!f.path.empty()) {
      out += f.path;
      out += ": ";
    }
    out += f.message;
    out += '\n';
  }
  return out;
}

namespace detail {

class FindingSink {
 public:
  void error(std::string path, std::string message) {
    report_.ok = false;
    report_.findings.push_back({Severity::Error, std::move(path), std::move(message)});
  }
  void warning(std::string path, std::string message) {
    report_.findings.push_back({Severity::Warning, std::move(path), std::move(message)});
  }
  ValidationReport take() { return std::move(report_); }

 private:
  ValidationReport report_;
};

// Splits "A.9.2, A.9.4" on commas; every token must be a control reference.
inline void check_iso_control(FindingSink& sink, const std::string& path,
                              const std::string& value) {
  if (value.empty()) {
    sink.warning(path, "no ISO 27001 control reference");
    return;
  }
  size_t refs = 0;
  size_t start = 0;
  while (start <= value.size()) {
    size_t comma = value.find(',', start);
    size_t end = (comma == std::string::npos) ? value.size() : comma;
    size_t a = start, b = end;
    while (a < b && value[a] == ' ') ++a;
    while (b > a && value[b - 1] == ' ') --b;
    std::string_view token(value.data() + a, b - a);
    if (!is_iso_control_ref(token)) {
      sink.error(path, "iso_control \"" + value +
                           "\" does not match A.<digits>(.<digits>)*");
      return;
    }
    ++refs;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (refs > 1) {
    sink.warning(path, "multiple ISO control references in one field");
  }
}

inline void check_probability(FindingSink& sink, const std::string& path,
                              const char* what, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    sink.error(path, std::string(what) + " " + format_probability_sig(value, 6) +
                         " outside [0,1]");
  }
}

}  // namespace detail

// Deterministic and side-effect free: the same model always produces a
// byte-identical report.
inline ValidationReport validate_model(const RiskModel& model) {
  detail::FindingSink sink;

  if (model.schema_version != "1.0") {
    sink.error("schema_version",
               "unsupported schema_version \"" + model.schema_version + "\" (expected \"1.0\")");
  }

  if (!is_identifier(model.asset.id)) {
    sink.error("asset.id", "asset id must be non-empty and match [A-Za-z0-9_-]+");
  }

  {
    bool ok = model.currency.size() == 3;
    for (char c : model.currency) {
      ok = ok && c >= 'A' && c <= 'Z';
    }
    if (!ok) {
      sink.error("currency",
                 "currency \"" + model.currency + "\" is not an ISO 4217 code");
    }
  }

  std::set<std::string> identifiers;
  identifiers.insert(model.asset.id);

  std::set<SecurityProperty> seen_properties;
  for (size_t pi = 0; pi < model.assessments.size(); ++pi) {
    const PropertyAssessment& pa = model.assessments[pi];
    const std::string ppath = "properties[" + std::to_string(pi) + "]";

    if (!seen_properties.insert(pa.property).second) {
      sink.error(ppath + ".property",
                 std::string("duplicate assessment for property \"") +
                     to_string(pa.property) + "\"");
    }

    if (pa.events.empty()) {
      sink.error(ppath + ".events", "events must not be empty");
    }

    for (size_t ei = 0; ei < pa.events.size(); ++ei) {
      const CauseEvent& event = pa.events[ei];
      const std::string epath = ppath + ".events[" + std::to_string(ei) + "]";

      if (!is_identifier(event.id)) {
        sink.error(epath + ".id", "event id must be non-empty and match [A-Za-z0-9_-]+");
      } else if (!identifiers.insert(event.id).second) {
        sink.error(epath + ".id", "duplicate identifier \"" + event.id + "\"");
      }

      if (event.hypotheses.empty()) {
        sink.error(epath + ".hypotheses", "hypotheses must not be empty");
      }

      double prior_sum = 0.0;
      double event_probability = 0.0;
      for (size_t hi = 0; hi < event.hypotheses.size(); ++hi) {
        const Hypothesis& h = event.hypotheses[hi];
        const std::string hpath = epath + ".hypotheses[" + std::to_string(hi) + "]";

        if (!is_identifier(h.id)) {
          sink.error(hpath + ".id",
                     "hypothesis id must be non-empty and match [A-Za-z0-9_-]+");
        } else if (!identifiers.insert(h.id).second) {
          sink.error(hpath + ".id", "duplicate identifier \"" + h.id + "\"");
        }

        detail::check_probability(sink, hpath + ".prior", "prior", h.prior);
        detail::check_probability(sink, hpath + ".conditional", "conditional",
                                  h.conditional);
        detail::check_iso_control(sink, hpath + ".iso_control", h.iso_control);

        prior_sum += h.prior;
        event_probability += h.prior * h.conditional;
      }

      if (model.combination_mode == CombinationMode::TotalProbability) {
        if (prior_sum > 1.0 + kProbabilitySlack) {
          sink.error(epath, "event \"" + event.id + "\": hypothesis priors sum " +
                                format_probability_sig(prior_sum, 6) + " > 1");
        }
        if (event_probability > 1.0 + kProbabilitySlack) {
          sink.error(epath, "event \"" + event.id +
                                "\": total probability " +
                                format_probability_sig(event_probability, 6) +
                                " > 1");
        }
      }
    }

    std::set<std::string> forms;
    for (size_t li = 0; li < pa.losses.size(); ++li) {
      const LossComponent& loss = pa.losses[li];
      const std::string lpath = ppath + ".losses[" + std::to_string(li) + "]";
      if (!std::isfinite(loss.amount) || !(loss.amount >= 0.0) ||
          loss.amount != round_money(loss.amount)) {
        sink.error(lpath + ".amount",
                   "amount must be non-negative with at most 2 fractional digits");
      }
      if (!forms.insert(loss.form).second) {
        sink.warning(lpath + ".form", "duplicate loss form \"" + loss.form + "\"");
      }
    }
  }

  return sink.take();
}

}  // namespace riskq
