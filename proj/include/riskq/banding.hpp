#pragma once

// Qualitative banding: maps the quantitative outputs back onto five-level
// scales so results stay comparable with a standard FAIR-style assessment.
//
// Bands are lower-inclusive and upper-exclusive; the top band is unbounded.
// The built-in magnitude ladder is a decade ladder whose Medium band is
// [1000, 10000). The built-in frequency ladder has a single cut at 0.1:
// an annual probability below 0.1 is VeryLow, anything in [0.1, 1] is Low.
// (Medium and above correspond to event rates of 1 or more per year, which a
// probability cannot reach; custom scales may still define such cuts.)

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "riskq/decimal.hpp"
#include "riskq/engine.hpp"
#include "riskq/errors.hpp"
#include "riskq/json.hpp"
#include "riskq/model.hpp"

namespace riskq::banding {

enum class BandLabel { VeryLow, Low, Medium, High, VeryHigh };

inline const char* to_string(BandLabel label) {
  switch (label) {
    case BandLabel::VeryLow: return "VeryLow";
    case BandLabel::Low: return "Low";
    case BandLabel::Medium: return "Medium";
    case BandLabel::High: return "High";
    case BandLabel::VeryHigh: return "VeryHigh";
  }
  return "?";
}

// rank 1 = VeryLow ... rank 5 = VeryHigh.
struct Band {
  BandLabel label = BandLabel::VeryLow;

  int rank() const { return static_cast<int>(label) + 1; }
  const char* name() const { return to_string(label); }

  bool operator==(const Band&) const = default;
};

inline Band band_from_rank(int rank) {
  if (rank < 1 || rank > 5) {
    throw OutOfRangeError("band rank " + std::to_string(rank) + " outside 1..5");
  }
  return Band{static_cast<BandLabel>(rank - 1)};
}

// Ascending cut points; value v lands in band 1 + (number of cuts <= v).
struct BandScale {
  std::vector<double> frequency_cuts{0.1};
  std::vector<double> magnitude_cuts{100.0, 1000.0, 10000.0, 100000.0};
};

inline const BandScale& default_scale() {
  static const BandScale scale;
  return scale;
}

namespace detail {

inline Band lookup(double value, const std::vector<double>& cuts) {
  int rank = 1;
  for (double cut : cuts) {
    if (value >= cut) ++rank;
  }
  if (rank > 5) rank = 5;
  return band_from_rank(rank);
}

// Exclusive upper edge of the band holding `value`, +inf for the top band.
inline double upper_bound(double value, const std::vector<double>& cuts) {
  for (double cut : cuts) {
    if (value < cut) return cut;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace detail

// Bands an annual violation probability. Probabilities are treated as annual
// frequencies for banding purposes.
inline Band frequency_band(double annual_probability,
                           const BandScale& scale = default_scale()) {
  if (!(annual_probability >= 0.0 && annual_probability <= 1.0)) {
    throw OutOfRangeError("annual probability " +
                          format_probability_sig(annual_probability, 6) +
                          " outside [0,1]");
  }
  return detail::lookup(annual_probability, scale.frequency_cuts);
}

// Bands a monetary loss on the decade ladder.
inline Band magnitude_band(double loss, const BandScale& scale = default_scale()) {
  if (!(loss >= 0.0) || !std::isfinite(loss)) {
    throw OutOfRangeError("loss " + format_money(loss) + " must be non-negative");
  }
  return detail::lookup(loss, scale.magnitude_cuts);
}

// Overall qualitative risk: the rounded-up mean of the two ranks. Symmetric
// and monotone in each argument.
inline Band qualitative_risk(Band frequency, Band magnitude) {
  int sum = frequency.rank() + magnitude.rank();
  return band_from_rank((sum + 1) / 2);
}

struct FairComparison {
  Band frequency_band;
  Band magnitude_band;
  Band qualitative_risk;
  double quantitative_risk = 0.0;  // money
  // True when the quantitative risk falls inside the loss range implied by
  // the magnitude band.
  bool consistent = false;

  bool operator==(const FairComparison&) const = default;
};

// Bands one property of a computed report and checks the quantitative result
// against the qualitative reading.
inline FairComparison compare(const engine::RiskReport& report, SecurityProperty property,
                              const BandScale& scale = default_scale()) {
  const engine::PropertyResult* result = report.find(property);
  if (result == nullptr) {
    throw MissingPropertyError(std::string("report has no assessment for property \"") +
                               to_string(property) + "\"");
  }
  FairComparison cmp;
  cmp.frequency_band = frequency_band(result->violation_probability, scale);
  cmp.magnitude_band = magnitude_band(result->expected_loss, scale);
  cmp.qualitative_risk = qualitative_risk(cmp.frequency_band, cmp.magnitude_band);
  cmp.quantitative_risk = result->risk;
  double upper = detail::upper_bound(result->expected_loss, scale.magnitude_cuts);
  cmp.consistent = result->risk >= 0.0 && result->risk < upper;
  return cmp;
}

namespace detail {

inline std::vector<double> read_cuts(json::Reader& r) {
  std::vector<double> cuts;
  json::Pos arr = r.begin_array();
  for (size_t i = 0; r.next_element(); ++i) {
    r.push_index(i);
    json::NumberToken t = r.read_number();
    if (t.value <= 0.0) r.fail_at(t.pos, "cut points must be positive");
    if (!cuts.empty() && t.value <= cuts.back()) {
      r.fail_at(t.pos, "cut points must be strictly ascending");
    }
    cuts.push_back(t.value);
    r.pop_path();
  }
  if (cuts.empty() || cuts.size() > 4) {
    r.fail_at(arr, "expected 1 to 4 cut points");
  }
  return cuts;
}

}  // namespace detail

// Loads a band scale from its configuration document (same format family as
// the model file: strict JSON, closed schema). Both ladders are optional and
// default to the built-in scale. Throws ParseError.
inline BandScale parse_band_scale(std::string_view text) {
  json::Reader r(text);
  BandScale scale;
  json::Pos obj = r.begin_object();
  bool saw_version = false, saw_frequency = false, saw_magnitude = false;
  std::string key;
  while (r.next_member(key)) {
    json::Pos kp = r.key_pos();
    if (key == "schema_version") {
      if (saw_version) r.fail_at(kp, "duplicate key \"schema_version\"");
      saw_version = true;
      r.push_field(key);
      std::string v = r.read_string();
      if (v != "1.0") r.fail_at(r.last_scalar_pos(), "unsupported schema_version");
      r.pop_path();
    } else if (key == "frequency_cuts") {
      if (saw_frequency) r.fail_at(kp, "duplicate key \"frequency_cuts\"");
      saw_frequency = true;
      r.push_field(key);
      scale.frequency_cuts = detail::read_cuts(r);
      r.pop_path();
    } else if (key == "magnitude_cuts") {
      if (saw_magnitude) r.fail_at(kp, "duplicate key \"magnitude_cuts\"");
      saw_magnitude = true;
      r.push_field(key);
      scale.magnitude_cuts = detail::read_cuts(r);
      r.pop_path();
    } else {
      r.push_field(key);
      r.fail_at(kp, "unknown field \"" + key + "\"");
    }
  }
  r.end_document();
  if (!saw_version) r.fail_at(obj, "missing schema_version");
  return scale;
}

}  // namespace riskq::banding
