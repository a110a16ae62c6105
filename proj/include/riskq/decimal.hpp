#pragma once

// Decimal text handling for the two numeric kinds the file format carries:
// money (decimal strings, at most 2 fractional digits) and probabilities
// (plain decimal literals, rendered with the fewest digits that round-trip).

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace riskq {

// Rounds to whole cents, ties to even (relies on the default FE_TONEAREST
// rounding mode).
inline double round_money(double value) {
  return std::nearbyint(value * 100.0) / 100.0;
}

// "1234.50" — exactly two fractional digits, no sign on negative zero.
inline std::string format_money(double value) {
  if (value == 0.0) value = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

inline bool is_all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// Accepts unsigned decimal with an optional 1- or 2-digit fraction.
inline std::optional<double> parse_money(std::string_view s) {
  std::string_view integral = s;
  std::string_view fraction;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    integral = s.substr(0, dot);
    fraction = s.substr(dot + 1);
    if (fraction.size() < 1 || fraction.size() > 2) return std::nullopt;
    if (!is_all_digits(fraction)) return std::nullopt;
  }
  if (!is_all_digits(integral)) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

// Plain decimal literal: digits, optionally '.' digits. No sign, no exponent.
inline bool is_plain_decimal(std::string_view s) {
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    return is_all_digits(s.substr(0, dot)) && is_all_digits(s.substr(dot + 1));
  }
  return is_all_digits(s);
}

namespace detail {

// Rewrites "d.ddde±k" scientific output into plain positional decimal.
inline std::string expand_scientific(std::string_view text) {
  auto e = text.find_first_of("eE");
  if (e == std::string_view::npos) return std::string(text);

  std::string_view mantissa = text.substr(0, e);
  int exponent = 0;
  std::from_chars(text.data() + e + 1, text.data() + text.size(), exponent);

  bool negative = !mantissa.empty() && mantissa.front() == '-';
  if (negative) mantissa.remove_prefix(1);

  std::string digits;
  int point = static_cast<int>(mantissa.size());
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    point = static_cast<int>(dot);
    digits.append(mantissa.substr(0, dot));
    digits.append(mantissa.substr(dot + 1));
  } else {
    digits.append(mantissa);
  }
  point += exponent;

  std::string out;
  if (negative) out += '-';
  if (point <= 0) {
    out += "0.";
    out.append(static_cast<size_t>(-point), '0');
    out += digits;
  } else if (point >= static_cast<int>(digits.size())) {
    out += digits;
    out.append(static_cast<size_t>(point) - digits.size(), '0');
  } else {
    out.append(digits, 0, static_cast<size_t>(point));
    out += '.';
    out.append(digits, static_cast<size_t>(point), std::string::npos);
  }
  return out;
}

}  // namespace detail

// Shortest round-trip representation, written positionally (no exponent),
// so the result is always a valid plain decimal literal for values >= 0.
inline std::string format_probability(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return detail::expand_scientific(std::string_view(buf, ptr - buf));
}

// Up to `significant` digits; used for human-facing tables and messages.
inline std::string format_probability_sig(double value, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, value);
  return detail::expand_scientific(buf);
}

}  // namespace riskq
