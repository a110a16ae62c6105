#pragma once

// Reading and writing of .riskq.json model documents.
//
// The schema is closed: unknown fields are rejected with their document path,
// as a silent typo in a probability field name would corrupt risk numbers.
// Money travels as decimal strings to keep cents exact; probabilities are
// plain decimal number literals in [0,1].
//
// serialize_model emits the canonical form: keys in schema order, 2-space
// indentation, probabilities with minimal round-trip digits, money with
// exactly 2 fractional digits. parse(serialize(m)) == m, and serialize is
// idempotent on its own output.

#include <string>
#include <string_view>

#include "riskq/decimal.hpp"
#include "riskq/errors.hpp"
#include "riskq/json.hpp"
#include "riskq/model.hpp"

namespace riskq {

namespace detail {

// Marks a member as seen (rejecting duplicates) and scopes the path.
class MemberScope {
 public:
  MemberScope(json::Reader& r, std::string_view name, bool& seen, json::Pos key_pos)
      : reader_(r) {
    if (seen) {
      r.push_field(name);
      r.fail_at(key_pos, "duplicate key \"" + std::string(name) + "\"");
    }
    seen = true;
    r.push_field(name);
  }
  ~MemberScope() { reader_.pop_path(); }
  MemberScope(const MemberScope&) = delete;
  MemberScope& operator=(const MemberScope&) = delete;

 private:
  json::Reader& reader_;
};

[[noreturn]] inline void unknown_field(json::Reader& r, const std::string& key,
                                       json::Pos key_pos) {
  r.push_field(key);
  r.fail_at(key_pos, "unknown field \"" + key + "\"");
}

inline double read_probability(json::Reader& r) {
  json::NumberToken t = r.read_number();
  if (!is_plain_decimal(t.raw)) {
    r.fail_at(t.pos, "probability must be a plain decimal literal");
  }
  if (t.value < 0.0 || t.value > 1.0) {
    r.fail_at(t.pos, "probability " + t.raw + " outside [0,1]");
  }
  return t.value;
}

inline double read_money(json::Reader& r) {
  std::string s = r.read_string();
  auto value = parse_money(s);
  if (!value) {
    r.fail_at(r.last_scalar_pos(),
              "money must be a non-negative decimal string with at most 2 "
              "fractional digits");
  }
  return *value;
}

inline Asset read_asset(json::Reader& r) {
  Asset asset;
  json::Pos obj = r.begin_object();
  bool saw_id = false, saw_name = false, saw_description = false;
  std::string key;
  while (r.next_member(key)) {
    json::Pos kp = r.key_pos();
    if (key == "id") {
      MemberScope s(r, key, saw_id, kp);
      asset.id = r.read_string();
    } else if (key == "name") {
      MemberScope s(r, key, saw_name, kp);
      asset.name = r.read_string();
    } else if (key == "description") {
      MemberScope s(r, key, saw_description, kp);
      asset.description = r.read_string();
    } else {
      unknown_field(r, key, kp);
    }
  }
  if (!saw_id) r.fail_at(obj, "missing id");
  return asset;
}

inline Hypothesis read_hypothesis(json::Reader& r) {
  Hypothesis h;
  json::Pos obj = r.begin_object();
  bool saw_id = false, saw_description = false, saw_cause = false;
  bool saw_iso = false, saw_prior = false, saw_conditional = false;
  std::string key;
  while (r.next_member(key)) {
    json::Pos kp = r.key_pos();
    if (key == "id") {
      MemberScope s(r, key, saw_id, kp);
      h.id = r.read_string();
    } else if (key == "description") {
      MemberScope s(r, key, saw_description, kp);
      h.description = r.read_string();
    } else if (key == "cause") {
      MemberScope s(r, key, saw_cause, kp);
      h.cause = r.read_string();
    } else if (key == "iso_control") {
      MemberScope s(r, key, saw_iso, kp);
      h.iso_control = r.read_string();
    } else if (key == "prior") {
      MemberScope s(r, key, saw_prior, kp);
      h.prior = read_probability(r);
    } else if (key == "conditional") {
      MemberScope s(r, key, saw_conditional, kp);
      h.conditional = read_probability(r);
    } else {
      unknown_field(r, key, kp);
    }
  }
  if (!saw_id) r.fail_at(obj, "missing id");
  if (!saw_prior) r.fail_at(obj, "missing prior");
  if (!saw_conditional) r.fail_at(obj, "missing conditional");
  return h;
}

inline CauseEvent read_event(json::Reader& r) {
  CauseEvent e;
  json::Pos obj = r.begin_object();
  bool saw_id = false, saw_description = false, saw_hypotheses = false;
  std::string key;
  while (r.next_member(key)) {
    json::Pos kp = r.key_pos();
    if (key == "id") {
      MemberScope s(r, key, saw_id, kp);
      e.id = r.read_string();
    } else if (key == "description") {
      MemberScope s(r, key, saw_description, kp);
      e.description = r.read_string();
    } else if (key == "hypotheses") {
      MemberScope s(r, key, saw_hypotheses, kp);
      r.begin_array();
      for (size_t i = 0; r.next_element(); ++i) {
        r.push_index(i);
        e.hypotheses.push_back(read_hypothesis(r));
        r.pop_path();
      }
    } else {
      unknown_field(r, key, kp);
    }
  }
  if (!saw_id) r.fail_at(obj, "missing id");
  if (!saw_hypotheses) r.fail_at(obj, "missing hypotheses");
  return e;
}

inline LossComponent read_loss(json::Reader& r) {
  LossComponent loss;
  json::Pos obj = r.begin_object();
  bool saw_form = false, saw_amount = false;
  std::string key;
  while (r.next_member(key)) {
    json::Pos kp = r.key_pos();
    if (key == "form") {
      MemberScope s(r, key, saw_form, kp);
      loss.form = r.read_string();
    } else if (key == "amount") {
      MemberScope s(r, key, saw_amount, kp);
      loss.amount = read_money(r);
    } else {
      unknown_field(r, key, kp);
    }
  }
  if (!saw_form) r.fail_at(obj, "missing form");
  if (!saw_amount) r.fail_at(obj, "missing amount");
  return loss;
}

inline PropertyAssessment read_assessment(json::Reader& r) {
  PropertyAssessment pa;
  json::Pos obj = r.begin_object();
  bool saw_property = false, saw_events = false, saw_losses = false;
  std::string key;
  while (r.next_member(key)) {
    json::Pos kp = r.key_pos();
    if (key == "property") {
      MemberScope s(r, key, saw_property, kp);
      std::string v = r.read_string();
      auto p = parse_property(v);
      if (!p) {
        r.fail_at(r.last_scalar_pos(),
                  "property must be one of \"confidentiality\", \"integrity\", "
                  "\"availability\"");
      }
      pa.property = *p;
    } else if (key == "events") {
      MemberScope s(r, key, saw_events, kp);
      r.begin_array();
      for (size_t i = 0; r.next_element(); ++i) {
        r.push_index(i);
        pa.events.push_back(read_event(r));
        r.pop_path();
      }
    } else if (key == "losses") {
      MemberScope s(r, key, saw_losses, kp);
      r.begin_array();
      for (size_t i = 0; r.next_element(); ++i) {
        r.push_index(i);
        pa.losses.push_back(read_loss(r));
        r.pop_path();
      }
    } else {
      unknown_field(r, key, kp);
    }
  }
  if (!saw_property) r.fail_at(obj, "missing property");
  if (!saw_events) r.fail_at(obj, "missing events");
  return pa;
}

}  // namespace detail

// Parses a .riskq.json document into a structurally well-formed RiskModel.
// Semantic validation (identifier uniqueness, prior sums, ...) is separate;
// see validate_model. Throws ParseError.
inline RiskModel parse_model(std::string_view text) {
  {
    bool blank = true;
    for (char c : text) {
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
        blank = false;
        break;
      }
    }
    if (blank) throw ParseError(1, 1, "", "missing schema_version");
  }

  json::Reader r(text);
  RiskModel model;
  json::Pos obj = r.begin_object();
  bool saw_version = false, saw_asset = false, saw_currency = false;
  bool saw_mode = false, saw_properties = false;
  std::string key;
  while (r.next_member(key)) {
    json::Pos kp = r.key_pos();
    if (key == "schema_version") {
      detail::MemberScope s(r, key, saw_version, kp);
      model.schema_version = r.read_string();
    } else if (key == "asset") {
      detail::MemberScope s(r, key, saw_asset, kp);
      model.asset = detail::read_asset(r);
    } else if (key == "currency") {
      detail::MemberScope s(r, key, saw_currency, kp);
      model.currency = r.read_string();
    } else if (key == "combination_mode") {
      detail::MemberScope s(r, key, saw_mode, kp);
      std::string v = r.read_string();
      auto mode = parse_combination_mode(v);
      if (!mode) {
        r.fail_at(r.last_scalar_pos(),
                  "combination_mode must be \"total_probability\" or \"noisy_or\"");
      }
      model.combination_mode = *mode;
    } else if (key == "properties") {
      detail::MemberScope s(r, key, saw_properties, kp);
      r.begin_array();
      for (size_t i = 0; r.next_element(); ++i) {
        r.push_index(i);
        model.assessments.push_back(detail::read_assessment(r));
        r.pop_path();
      }
    } else {
      detail::unknown_field(r, key, kp);
    }
  }
  r.end_document();
  if (!saw_version) r.fail_at(obj, "missing schema_version");
  if (!saw_asset) r.fail_at(obj, "missing asset");
  if (!saw_currency) r.fail_at(obj, "missing currency");
  if (!saw_properties) r.fail_at(obj, "missing properties");
  return model;
}

namespace detail {

class CanonicalWriter {
 public:
  std::string take() { return std::move(out_); }

  void open(char c) {
    out_ += c;
    ++depth_;
    pending_first_ = true;
  }

  void close(char c) {
    --depth_;
    out_ += '\n';
    indent();
    out_ += c;
    pending_first_ = false;
  }

  void next() {
    if (!pending_first_) out_ += ',';
    out_ += '\n';
    indent();
    pending_first_ = false;
  }

  void key(std::string_view name) {
    next();
    out_ += '"';
    out_ += json::escape(name);
    out_ += "\": ";
  }

  void string(std::string_view value) {
    out_ += '"';
    out_ += json::escape(value);
    out_ += '"';
  }

  void raw(std::string_view text) { out_ += text; }

 private:
  void indent() { out_.append(static_cast<size_t>(depth_) * 2, ' '); }

  std::string out_;
  int depth_ = 0;
  bool pending_first_ = true;
};

inline void write_hypothesis(CanonicalWriter& w, const Hypothesis& h) {
  w.open('{');
  w.key("id");
  w.string(h.id);
  w.key("description");
  w.string(h.description);
  w.key("cause");
  w.string(h.cause);
  w.key("iso_control");
  w.string(h.iso_control);
  w.key("prior");
  w.raw(format_probability(h.prior));
  w.key("conditional");
  w.raw(format_probability(h.conditional));
  w.close('}');
}

inline void write_event(CanonicalWriter& w, const CauseEvent& e) {
  w.open('{');
  w.key("id");
  w.string(e.id);
  w.key("description");
  w.string(e.description);
  w.key("hypotheses");
  if (e.hypotheses.empty()) {
    w.raw("[]");
  } else {
    w.open('[');
    for (const auto& h : e.hypotheses) {
      w.next();
      write_hypothesis(w, h);
    }
    w.close(']');
  }
  w.close('}');
}

inline void write_assessment(CanonicalWriter& w, const PropertyAssessment& pa) {
  w.open('{');
  w.key("property");
  w.string(to_string(pa.property));
  w.key("events");
  if (pa.events.empty()) {
    w.raw("[]");
  } else {
    w.open('[');
    for (const auto& e : pa.events) {
      w.next();
      write_event(w, e);
    }
    w.close(']');
  }
  w.key("losses");
  if (pa.losses.empty()) {
    w.raw("[]");
  } else {
    w.open('[');
    for (const auto& loss : pa.losses) {
      w.next();
      w.open('{');
      w.key("form");
      w.string(loss.form);
      w.key("amount");
      w.string(format_money(loss.amount));
      w.close('}');
    }
    w.close(']');
  }
  w.close('}');
}

}  // namespace detail

// Canonical serialization; the interchange form of the model file.
inline std::string serialize_model(const RiskModel& model) {
  detail::CanonicalWriter w;
  w.open('{');
  w.key("schema_version");
  w.string(model.schema_version);
  w.key("asset");
  w.open('{');
  w.key("id");
  w.string(model.asset.id);
  w.key("name");
  w.string(model.asset.name);
  w.key("description");
  w.string(model.asset.description);
  w.close('}');
  w.key("currency");
  w.string(model.currency);
  w.key("combination_mode");
  w.string(to_string(model.combination_mode));
  w.key("properties");
  if (model.assessments.empty()) {
    w.raw("[]");
  } else {
    w.open('[');
    for (const auto& pa : model.assessments) {
      w.next();
      detail::write_assessment(w, pa);
    }
    w.close(']');
  }
  w.close('}');
  std::string out = w.take();
  out += '\n';
  return out;
}

}  // namespace riskq
