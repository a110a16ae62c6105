#pragma once

// Shared test helpers: fixture loading and a generator of random valid
// models. Generated probabilities are multiples of 1e-6 so every value is a
// plain decimal literal; under TotalProbability the priors of an event are
// scaled to sum strictly below 1.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "riskq/riskq.hpp"

namespace testutil {

inline std::string fixture_path() {
  return std::string(RISKQ_MODELS_DIR) + "/confidential-file.riskq.json";
}

inline std::string testdata_path(const std::string& name) {
  return std::string(RISKQ_TESTDATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline riskq::RiskModel load_fixture() {
  return riskq::parse_model(read_file(fixture_path()));
}

struct GenOptions {
  riskq::CombinationMode mode = riskq::CombinationMode::TotalProbability;
  int max_properties = 3;
  int max_events = 4;
  int max_hypotheses = 4;
  int max_hypotheses_per_property = 0;  // 0 = no cap
  bool tricky_text = true;
};

// probability with at most 6 fractional digits
inline double prob6(std::mt19937_64& rng) {
  return static_cast<double>(std::uniform_int_distribution<int>(0, 1000000)(rng)) / 1e6;
}

inline double floor6(double x) { return std::floor(x * 1e6) / 1e6; }

inline std::string pick_text(std::mt19937_64& rng, bool tricky) {
  static const std::vector<std::string> plain = {
      "",
      "plain text",
      "short",
      "an ordinary description of a cause",
  };
  static const std::vector<std::string> tricky_pool = {
      "",
      "comma, separated, text",
      "pipe | character",
      "quote \" and backslash \\",
      "line\nbreak and tab\tchar",
      "unicode \xC3\xA9\xE2\x9C\x93 text",
      "trailing space ",
  };
  const auto& pool = tricky ? tricky_pool : plain;
  return pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
}

inline std::string pick_iso(std::mt19937_64& rng) {
  static const std::vector<std::string> pool = {
      "", "A.9.2", "A.11.2.9", "A.9.2, A.9.4", "A.7", "A.12.4.1",
  };
  return pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
}

inline riskq::RiskModel random_model(std::mt19937_64& rng, GenOptions opt = {}) {
  riskq::RiskModel model;
  model.schema_version = "1.0";
  model.asset.id = "asset-" + std::to_string(std::uniform_int_distribution<int>(0, 99999)(rng));
  model.asset.name = pick_text(rng, opt.tricky_text);
  model.asset.description = pick_text(rng, opt.tricky_text);
  model.currency = (rng() % 2 == 0) ? "USD" : "EUR";
  model.combination_mode = opt.mode;

  int id_counter = 0;
  std::vector<riskq::SecurityProperty> properties = {
      riskq::SecurityProperty::Confidentiality, riskq::SecurityProperty::Integrity,
      riskq::SecurityProperty::Availability};
  std::shuffle(properties.begin(), properties.end(), rng);
  int property_count = std::uniform_int_distribution<int>(1, opt.max_properties)(rng);

  for (int pi = 0; pi < property_count; ++pi) {
    riskq::PropertyAssessment pa;
    pa.property = properties[static_cast<size_t>(pi)];
    int event_count = std::uniform_int_distribution<int>(1, opt.max_events)(rng);
    int hypotheses_budget = opt.max_hypotheses_per_property;
    for (int ei = 0; ei < event_count; ++ei) {
      riskq::CauseEvent event;
      event.id = "e" + std::to_string(id_counter++);
      event.description = pick_text(rng, opt.tricky_text);
      int hyp_count = std::uniform_int_distribution<int>(1, opt.max_hypotheses)(rng);
      if (opt.max_hypotheses_per_property > 0) {
        int remaining_events = event_count - ei - 1;
        int max_here = hypotheses_budget - remaining_events;  // leave 1 per event
        if (max_here < 1) max_here = 1;
        if (hyp_count > max_here) hyp_count = max_here;
        hypotheses_budget -= hyp_count;
      }

      std::vector<double> priors;
      for (int hi = 0; hi < hyp_count; ++hi) priors.push_back(prob6(rng));
      if (opt.mode == riskq::CombinationMode::TotalProbability) {
        double sum = 0.0;
        for (double p : priors) sum += p;
        double target = std::uniform_real_distribution<double>(0.2, 0.95)(rng);
        if (sum > target && sum > 0.0) {
          for (double& p : priors) p = floor6(p * target / sum);
        }
      }

      for (int hi = 0; hi < hyp_count; ++hi) {
        riskq::Hypothesis h;
        h.id = "h" + std::to_string(id_counter++);
        h.description = pick_text(rng, opt.tricky_text);
        h.cause = pick_text(rng, opt.tricky_text);
        h.iso_control = pick_iso(rng);
        h.prior = priors[static_cast<size_t>(hi)];
        h.conditional = prob6(rng);
        event.hypotheses.push_back(std::move(h));
      }
      pa.events.push_back(std::move(event));
    }

    static const std::vector<std::string> forms = {
        "productivity", "response", "replacement", "fines", "reputation"};
    int loss_count = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int li = 0; li < loss_count; ++li) {
      riskq::LossComponent loss;
      loss.form = forms[std::uniform_int_distribution<size_t>(0, forms.size() - 1)(rng)];
      loss.amount =
          static_cast<double>(std::uniform_int_distribution<long>(0, 10000000)(rng)) / 100.0;
      pa.losses.push_back(std::move(loss));
    }
    model.assessments.push_back(std::move(pa));
  }
  return model;
}

}  // namespace testutil
