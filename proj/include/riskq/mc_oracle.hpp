#pragma once

// Independent verification of the engine.
//
// enumerate_* walks the full joint outcome space of the generative model and
// adds up leaf weights (compensated summation), never using the engine's
// closed forms. Under TotalProbability each event draws one hypothesis from
// {H_1..H_m, none} with weights {prior_j, 1 - sum of priors} and then fires
// with that hypothesis's conditional probability; under NoisyOr every
// hypothesis is an independent channel firing with prior * conditional and
// the event fires when any channel does. Events are independent of each
// other.
//
// simulate draws replicates of the same generative model with a counter-based
// SplitMix64 stream (Steele/Lea/Flood constants: increment 0x9E3779B97F4A7C15,
// mixers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB). Every sample owns a
// disjoint counter block derived from (seed, property index, sample index),
// so results are reproducible and independent of how samples are sharded
// across workers.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "riskq/decimal.hpp"
#include "riskq/engine.hpp"
#include "riskq/errors.hpp"
#include "riskq/model.hpp"
#include "riskq/validate.hpp"

namespace riskq::mc {

inline constexpr std::size_t kEnumerationBound = 24;

namespace detail {

// Neumaier-compensated accumulator; keeps enumeration error near one ulp
// even over millions of leaves.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// Counter-based uniform stream: value k of the stream is a pure function of
// (base, k), so any slice of samples can be computed independently.
struct CounterStream {
  uint64_t base;

  double uniform(uint64_t counter) const {
    return static_cast<double>(mix64(base + kGamma * (counter + 1)) >> 11) *
           0x1.0p-53;
  }
};

inline uint64_t stream_base(uint64_t seed, uint64_t property_index) {
  return mix64(seed + kGamma * (property_index + 1));
}

// DFS over fire/no-fire branches of one NoisyOr event.
inline void enumerate_noisy_or(const std::vector<Hypothesis>& hypotheses, size_t j,
                               double weight, bool fired, CompensatedSum& fired_mass) {
  if (j == hypotheses.size()) {
    if (fired) fired_mass.add(weight);
    return;
  }
  double q = hypotheses[j].prior * hypotheses[j].conditional;
  enumerate_noisy_or(hypotheses, j + 1, weight * q, true, fired_mass);
  enumerate_noisy_or(hypotheses, j + 1, weight * (1.0 - q), fired, fired_mass);
}

// DFS over the 2^n joint fire/no-fire outcomes of the events.
inline void enumerate_any_fired(std::span<const double> probs, size_t i, double weight,
                                bool fired, CompensatedSum& fired_mass) {
  if (i == probs.size()) {
    if (fired) fired_mass.add(weight);
    return;
  }
  enumerate_any_fired(probs, i + 1, weight * probs[i], true, fired_mass);
  enumerate_any_fired(probs, i + 1, weight * (1.0 - probs[i]), fired, fired_mass);
}

}  // namespace detail

// Exact P(event) by enumerating the event's own outcome space.
inline double enumerate_event_probability(const CauseEvent& event, CombinationMode mode) {
  if (event.hypotheses.size() > kEnumerationBound) {
    throw TooLargeError("event \"" + event.id + "\" has " +
                        std::to_string(event.hypotheses.size()) +
                        " hypotheses; enumeration bound is " +
                        std::to_string(kEnumerationBound));
  }
  detail::CompensatedSum fired;
  if (mode == CombinationMode::TotalProbability) {
    // leaves: (hypothesis j, fires) / (hypothesis j, not) / (no cause)
    for (const Hypothesis& h : event.hypotheses) {
      fired.add(h.prior * h.conditional);
    }
    return fired.value();
  }
  detail::enumerate_noisy_or(event.hypotheses, 0, 1.0, false, fired);
  return fired.value();
}

// Exact P(at least one event) by enumerating all fire/no-fire combinations.
inline double enumerate_violation_probability(std::span<const double> event_probabilities) {
  size_t n = event_probabilities.size();
  if (n > kEnumerationBound) {
    throw TooLargeError("enumeration bound is " + std::to_string(kEnumerationBound) +
                        " events");
  }
  detail::CompensatedSum violated;
  detail::enumerate_any_fired(event_probabilities, 0, 1.0, false, violated);
  return violated.value();
}

// Exact violation probability of one assessment under the generative model.
inline double enumerate_probability(const PropertyAssessment& assessment,
                                    CombinationMode mode) {
  size_t total = 0;
  for (const CauseEvent& e : assessment.events) total += e.hypotheses.size();
  if (total > kEnumerationBound) {
    throw TooLargeError("assessment has " + std::to_string(total) +
                        " hypotheses; enumeration bound is " +
                        std::to_string(kEnumerationBound));
  }
  std::vector<double> event_probs;
  event_probs.reserve(assessment.events.size());
  for (const CauseEvent& e : assessment.events) {
    event_probs.push_back(enumerate_event_probability(e, mode));
  }
  return enumerate_violation_probability(event_probs);
}

struct McEstimate {
  uint64_t samples = 0;
  double violation_probability_hat = 0.0;
  double expected_risk_hat = 0.0;  // money: p-hat * expected loss
  double standard_error = 0.0;     // sqrt(p(1-p)/n)
  uint64_t seed = 0;

  bool operator==(const McEstimate&) const = default;
};

struct PropertyEstimate {
  SecurityProperty property = SecurityProperty::Confidentiality;
  McEstimate estimate;
};

namespace detail {

// One replicate of one assessment; counters stay inside the sample's block.
inline bool sample_violation(const PropertyAssessment& pa, CombinationMode mode,
                             const CounterStream& stream, uint64_t counter) {
  bool violated = false;
  for (const CauseEvent& event : pa.events) {
    if (mode == CombinationMode::TotalProbability) {
      double u = stream.uniform(counter++);
      double v = stream.uniform(counter++);
      double cum = 0.0;
      for (const Hypothesis& h : event.hypotheses) {
        cum += h.prior;
        if (u < cum) {
          if (v < h.conditional) violated = true;
          break;
        }
      }
    } else {
      for (const Hypothesis& h : event.hypotheses) {
        double u = stream.uniform(counter++);
        if (u < h.prior * h.conditional) violated = true;
      }
    }
  }
  return violated;
}

inline uint64_t draws_per_sample(const PropertyAssessment& pa, CombinationMode mode) {
  uint64_t draws = 0;
  for (const CauseEvent& event : pa.events) {
    draws += (mode == CombinationMode::TotalProbability)
                 ? 2
                 : static_cast<uint64_t>(event.hypotheses.size());
  }
  return draws == 0 ? 1 : draws;
}

}  // namespace detail

// Deterministic given (model, samples, seed); the worker count only affects
// wall time. Throws InvalidModelError on a model that fails validation.
inline std::vector<PropertyEstimate> simulate(const RiskModel& model, uint64_t samples,
                                              uint64_t seed, unsigned workers = 0) {
  if (samples < 1) throw OutOfRangeError("samples must be at least 1");
  if (!validate_model(model).ok) {
    throw InvalidModelError("model failed validation");
  }
  if (workers == 0) {
    unsigned hw = std::thread::hardware_concurrency();
    workers = hw == 0 ? 1 : (hw > 8 ? 8 : hw);
  }
  if (samples < 16384) workers = 1;

  std::vector<PropertyEstimate> out;
  for (size_t pi = 0; pi < model.assessments.size(); ++pi) {
    const PropertyAssessment& pa = model.assessments[pi];
    const detail::CounterStream stream{detail::stream_base(seed, pi)};
    const uint64_t stride = detail::draws_per_sample(pa, model.combination_mode);

    auto count_range = [&](uint64_t begin, uint64_t end) {
      uint64_t violations = 0;
      for (uint64_t s = begin; s < end; ++s) {
        if (detail::sample_violation(pa, model.combination_mode, stream, s * stride)) {
          ++violations;
        }
      }
      return violations;
    };

    uint64_t violations = 0;
    if (workers <= 1) {
      violations = count_range(0, samples);
    } else {
      std::vector<uint64_t> counts(workers, 0);
      std::vector<std::thread> threads;
      threads.reserve(workers);
      uint64_t chunk = samples / workers;
      for (unsigned w = 0; w < workers; ++w) {
        uint64_t begin = w * chunk;
        uint64_t end = (w + 1 == workers) ? samples : begin + chunk;
        threads.emplace_back(
            [&, w, begin, end] { counts[w] = count_range(begin, end); });
      }
      for (auto& t : threads) t.join();
      for (uint64_t c : counts) violations += c;
    }

    McEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.violation_probability_hat =
        static_cast<double>(violations) / static_cast<double>(samples);
    est.standard_error = std::sqrt(est.violation_probability_hat *
                                   (1.0 - est.violation_probability_hat) /
                                   static_cast<double>(samples));
    est.expected_risk_hat =
        round_money(est.violation_probability_hat * engine::expected_loss(pa));
    out.push_back({pa.property, est});
  }
  return out;
}

struct PropertyCheck {
  SecurityProperty property = SecurityProperty::Confidentiality;
  double engine_probability = 0.0;
  McEstimate estimate;
  double deviation_sigmas = 0.0;  // |p-hat - p| / SE
  bool pass = false;
};

struct CheckResult {
  bool pass = true;
  std::vector<PropertyCheck> properties;
};

// Statistical agreement between the engine and the simulation: pass iff
// |p-hat - p| <= sigma * SE for every property.
inline CheckResult check(const RiskModel& model, uint64_t samples, uint64_t seed,
                         double sigma = 4.0) {
  engine::RiskReport report = engine::assess(model);
  std::vector<PropertyEstimate> estimates = simulate(model, samples, seed);

  CheckResult result;
  for (const PropertyEstimate& pe : estimates) {
    const engine::PropertyResult* engine_result = report.find(pe.property);
    PropertyCheck pc;
    pc.property = pe.property;
    pc.engine_probability = engine_result->violation_probability;
    pc.estimate = pe.estimate;
    double deviation = std::abs(pe.estimate.violation_probability_hat -
                                pc.engine_probability);
    if (pe.estimate.standard_error > 0.0) {
      pc.deviation_sigmas = deviation / pe.estimate.standard_error;
      pc.pass = deviation <= sigma * pe.estimate.standard_error;
    } else {
      pc.deviation_sigmas = deviation == 0.0 ? 0.0
                                             : std::numeric_limits<double>::infinity();
      pc.pass = deviation == 0.0;
    }
    result.pass = result.pass && pc.pass;
    result.properties.push_back(pc);
  }
  return result;
}

}  // namespace riskq::mc
