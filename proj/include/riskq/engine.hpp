#pragma once

// The quantitative core: per-event probabilities, the per-property violation
// probability, expected losses, and the assembled risk report.
//
// Event probabilities combine per combination mode (see CombinationMode).
// A property is violated when at least one of its events occurs; the events
// are independent, so P = 1 - prod(1 - P(event)). Per-property risk is the
// violation probability times the expected loss, and the model's total risk
// is the sum over its properties.
//
// Sums and products accumulate over operands sorted by value, so reordering
// events or hypotheses cannot change any computed number, bit for bit.

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "riskq/decimal.hpp"
#include "riskq/errors.hpp"
#include "riskq/model.hpp"
#include "riskq/validate.hpp"

namespace riskq::engine {

namespace detail {

inline double ordered_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum;
}

inline double ordered_product(std::vector<double> factors) {
  std::sort(factors.begin(), factors.end());
  double product = 1.0;
  for (double f : factors) product *= f;
  return product;
}

inline void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw OutOfRangeError(std::string(what) + " " + format_probability_sig(p, 6) +
                          " outside [0,1]");
  }
}

}  // namespace detail

// P(event) under the given combination mode.
inline double event_probability(const CauseEvent& event, CombinationMode mode) {
  std::vector<double> contributions;
  contributions.reserve(event.hypotheses.size());
  for (const Hypothesis& h : event.hypotheses) {
    detail::require_probability(h.prior, "prior");
    detail::require_probability(h.conditional, "conditional");
    contributions.push_back(h.prior * h.conditional);
  }
  if (mode == CombinationMode::TotalProbability) {
    double p = detail::ordered_sum(std::move(contributions));
    if (p > 1.0 + kProbabilitySlack) {
      throw OutOfRangeError("event \"" + event.id + "\": total probability " +
                            format_probability_sig(p, 6) + " exceeds 1");
    }
    return std::min(p, 1.0);
  }
  for (double& c : contributions) c = 1.0 - c;
  return 1.0 - detail::ordered_product(std::move(contributions));
}

// P(at least one event occurs) = 1 - prod(1 - p_i).
inline double violation_probability(std::span<const double> event_probabilities) {
  std::vector<double> complements;
  complements.reserve(event_probabilities.size());
  for (double p : event_probabilities) {
    detail::require_probability(p, "event probability");
    complements.push_back(1.0 - p);
  }
  return 1.0 - detail::ordered_product(std::move(complements));
}

// Sum of the loss components, rounded to whole cents.
inline double expected_loss(const PropertyAssessment& assessment) {
  std::vector<double> amounts;
  amounts.reserve(assessment.losses.size());
  for (const LossComponent& loss : assessment.losses) amounts.push_back(loss.amount);
  return round_money(detail::ordered_sum(std::move(amounts)));
}

struct EventProbability {
  std::string event_id;
  double probability = 0.0;

  bool operator==(const EventProbability&) const = default;
};

struct PropertyResult {
  SecurityProperty property = SecurityProperty::Confidentiality;
  std::vector<EventProbability> event_probabilities;
  double violation_probability = 0.0;
  double expected_loss = 0.0;  // money
  double risk = 0.0;           // money: violation_probability * expected_loss

  bool operator==(const PropertyResult&) const = default;
};

struct RiskReport {
  std::vector<PropertyResult> properties;
  double total_risk = 0.0;  // money: sum of per-property risks
  CombinationMode combination_mode = CombinationMode::TotalProbability;
  std::string currency;

  const PropertyResult* find(SecurityProperty p) const {
    for (const auto& r : properties) {
      if (r.property == p) return &r;
    }
    return nullptr;
  }

  bool operator==(const RiskReport&) const = default;
};

// Full assessment of a validated model. Properties absent from the model
// simply contribute nothing to the total. Throws InvalidModelError when
// validation fails.
inline RiskReport assess(const RiskModel& model) {
  ValidationReport validation = validate_model(model);
  if (!validation.ok) {
    for (const Finding& f : validation.findings) {
      if (f.severity == Severity::Error) {
        throw InvalidModelError("invalid model: " + f.path + ": " + f.message);
      }
    }
  }

  RiskReport report;
  report.combination_mode = model.combination_mode;
  report.currency = model.currency;

  std::vector<double> risks;
  for (const PropertyAssessment& pa : model.assessments) {
    PropertyResult result;
    result.property = pa.property;

    std::vector<double> event_probs;
    event_probs.reserve(pa.events.size());
    for (const CauseEvent& event : pa.events) {
      double p = event_probability(event, model.combination_mode);
      result.event_probabilities.push_back({event.id, p});
      event_probs.push_back(p);
    }

    result.violation_probability = violation_probability(event_probs);
    result.expected_loss = expected_loss(pa);
    result.risk = round_money(result.violation_probability * result.expected_loss);
    risks.push_back(result.risk);
    report.properties.push_back(std::move(result));
  }

  report.total_risk = round_money(detail::ordered_sum(std::move(risks)));
  return report;
}

}  // namespace riskq::engine
