#pragma once

// Domain types for the declarative cause-effect risk model. A model names an
// asset, and for each security property lists the events that can violate it.
// Each event carries the hypotheses (causes) that can produce it, with a
// prior probability, a conditional probability of the event given the cause,
// and an ISO/IEC 27001 control reference.
//
// All types are immutable value types in spirit: nothing here mutates shared
// state, so models can be shared freely across threads.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace riskq {

enum class SecurityProperty { Confidentiality, Integrity, Availability };

// How the hypotheses of one event combine into the event probability.
//   TotalProbability: hypotheses are mutually exclusive alternatives with an
//     implicit "no cause" residual; requires the priors of an event to sum
//     to at most 1. P(event) = sum of prior * conditional.
//   NoisyOr: hypotheses are independent causal channels.
//     P(event) = 1 - product of (1 - prior * conditional).
enum class CombinationMode { TotalProbability, NoisyOr };

inline constexpr double kProbabilitySlack = 1e-12;  // absorbs decimal-to-binary error

inline const char* to_string(SecurityProperty p) {
  switch (p) {
    case SecurityProperty::Confidentiality: return "confidentiality";
    case SecurityProperty::Integrity: return "integrity";
    case SecurityProperty::Availability: return "availability";
  }
  return "?";
}

inline std::optional<SecurityProperty> parse_property(std::string_view s) {
  if (s == "confidentiality") return SecurityProperty::Confidentiality;
  if (s == "integrity") return SecurityProperty::Integrity;
  if (s == "availability") return SecurityProperty::Availability;
  return std::nullopt;
}

inline const char* to_string(CombinationMode m) {
  switch (m) {
    case CombinationMode::TotalProbability: return "total_probability";
    case CombinationMode::NoisyOr: return "noisy_or";
  }
  return "?";
}

inline std::optional<CombinationMode> parse_combination_mode(std::string_view s) {
  if (s == "total_probability") return CombinationMode::TotalProbability;
  if (s == "noisy_or") return CombinationMode::NoisyOr;
  return std::nullopt;
}

struct Asset {
  std::string id;
  std::string name;
  std::string description;

  bool operator==(const Asset&) const = default;
};

struct Hypothesis {
  std::string id;
  std::string description;
  std::string cause;        // the reason giving rise to the hypothesis
  std::string iso_control;  // e.g. "A.11.2.9"; may hold several, comma-separated
  double prior = 0.0;
  double conditional = 0.0;

  bool operator==(const Hypothesis&) const = default;
};

struct CauseEvent {
  std::string id;
  std::string description;
  std::vector<Hypothesis> hypotheses;

  bool operator==(const CauseEvent&) const = default;
};

struct LossComponent {
  std::string form;      // loss-form name, e.g. "productivity", "response"
  double amount = 0.0;   // non-negative, at most 2 fractional digits

  bool operator==(const LossComponent&) const = default;
};

struct PropertyAssessment {
  SecurityProperty property = SecurityProperty::Confidentiality;
  std::vector<CauseEvent> events;
  std::vector<LossComponent> losses;

  bool operator==(const PropertyAssessment&) const = default;
};

struct RiskModel {
  std::string schema_version;  // must be "1.0"
  Asset asset;
  std::string currency;        // ISO 4217 code
  CombinationMode combination_mode = CombinationMode::TotalProbability;
  std::vector<PropertyAssessment> assessments;  // at most one per property

  const PropertyAssessment* find(SecurityProperty p) const {
    for (const auto& a : assessments) {
      if (a.property == p) return &a;
    }
    return nullptr;
  }

  bool operator==(const RiskModel&) const = default;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

// One ISO 27001 clause reference: "A." followed by dot-separated numbers.
inline bool is_iso_control_ref(std::string_view s) {
  if (s.size() < 3 || s[0] != 'A' || s[1] != '.') return false;
  bool digit_seen = false;
  for (size_t i = 2; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digit_seen = true;
    } else if (c == '.') {
      if (!digit_seen) return false;
      digit_seen = false;
    } else {
      return false;
    }
  }
  return digit_seen;
}

}  // namespace riskq
