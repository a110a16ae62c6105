#pragma once

// Strict, schema-directed JSON reading. The reader is a pull parser: the
// caller drives it through the exact document shape it expects, so there is
// no generic value tree, no recursion on untrusted input, and every error
// carries the 1-based line/column of the offending byte plus the document
// path the caller has pushed (e.g. "properties[0].events[1].prior").
//
// Strictness: UTF-8 only (validated), no byte order mark, no comments, no
// trailing commas, JSON number grammar, control characters must be escaped,
// surrogate pairs must be well formed.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "riskq/errors.hpp"

namespace riskq::json {

struct Pos {
  int line = 1;
  int column = 1;
};

struct NumberToken {
  std::string raw;     // the literal exactly as written
  double value = 0.0;
  Pos pos;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {
    if (text_.size() >= 3 && static_cast<unsigned char>(text_[0]) == 0xEF &&
        static_cast<unsigned char>(text_[1]) == 0xBB &&
        static_cast<unsigned char>(text_[2]) == 0xBF) {
      fail_at({1, 1}, "byte order mark is not allowed");
    }
  }

  // ---- structure ----------------------------------------------------------

  Pos begin_object() {
    Pos p = value_pos();
    if (!eat('{')) fail_at(p, "expected object");
    frames_.push_back({'{', true});
    return p;
  }

  // Consumes the next "key": of the current object, or the closing '}'.
  bool next_member(std::string& key) {
    Frame& f = frames_.back();
    Pos p = value_pos();
    if (eat('}')) {
      frames_.pop_back();
      return false;
    }
    if (!f.first) {
      if (!eat(',')) fail_at(p, "expected ',' or '}'");
      p = value_pos();
      if (!at_end() && text_[i_] == '}') fail_at(p, "trailing comma");
    }
    f.first = false;
    if (at_end() || text_[i_] != '"') fail_at(p, "expected object key");
    key_pos_ = p;
    key = scan_string();
    Pos colon = value_pos();
    if (!eat(':')) fail_at(colon, "expected ':'");
    return true;
  }

  Pos key_pos() const { return key_pos_; }

  Pos begin_array() {
    Pos p = value_pos();
    if (!eat('[')) fail_at(p, "expected array");
    frames_.push_back({'[', true});
    return p;
  }

  // True when another element follows; consumes separators and ']'.
  bool next_element() {
    Frame& f = frames_.back();
    Pos p = value_pos();
    if (eat(']')) {
      frames_.pop_back();
      return false;
    }
    if (!f.first) {
      if (!eat(',')) fail_at(p, "expected ',' or ']'");
      Pos q = value_pos();
      if (!at_end() && text_[i_] == ']') fail_at(q, "trailing comma");
    }
    f.first = false;
    return true;
  }

  // ---- scalars ------------------------------------------------------------

  std::string read_string() {
    Pos p = value_pos();
    if (at_end() || text_[i_] != '"') fail_at(p, "expected string");
    last_scalar_pos_ = p;
    return scan_string();
  }

  NumberToken read_number() {
    Pos p = value_pos();
    if (at_end() || !(text_[i_] == '-' || (text_[i_] >= '0' && text_[i_] <= '9'))) {
      fail_at(p, "expected number");
    }
    last_scalar_pos_ = p;
    size_t start = i_;
    if (text_[i_] == '-') bump();
    if (!at_end() && text_[i_] == '0') {
      bump();  // no leading zeros in JSON
    } else if (!at_end() && text_[i_] >= '1' && text_[i_] <= '9') {
      while (!at_end() && text_[i_] >= '0' && text_[i_] <= '9') bump();
    } else {
      fail_at(value_pos_raw(), "invalid number");
    }
    if (!at_end() && text_[i_] == '.') {
      bump();
      if (at_end() || text_[i_] < '0' || text_[i_] > '9') {
        fail_at(value_pos_raw(), "invalid number");
      }
      while (!at_end() && text_[i_] >= '0' && text_[i_] <= '9') bump();
    }
    if (!at_end() && (text_[i_] == 'e' || text_[i_] == 'E')) {
      bump();
      if (!at_end() && (text_[i_] == '+' || text_[i_] == '-')) bump();
      if (at_end() || text_[i_] < '0' || text_[i_] > '9') {
        fail_at(value_pos_raw(), "invalid number");
      }
      while (!at_end() && text_[i_] >= '0' && text_[i_] <= '9') bump();
    }
    if (!at_end()) {
      char c = text_[i_];
      bool boundary = c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' ||
                      c == '}' || c == ']';
      if (!boundary) fail_at(p, "invalid number");
    }
    NumberToken tok;
    tok.raw.assign(text_.substr(start, i_ - start));
    tok.pos = p;
    auto [ptr, ec] =
        std::from_chars(tok.raw.data(), tok.raw.data() + tok.raw.size(), tok.value);
    if (ec == std::errc::result_out_of_range) fail_at(p, "number out of range");
    if (ec != std::errc{} || ptr != tok.raw.data() + tok.raw.size()) {
      fail_at(p, "invalid number");
    }
    return tok;
  }

  // Position of the last string/number token that was read.
  Pos last_scalar_pos() const { return last_scalar_pos_; }

  void end_document() {
    skip_ws();
    if (!at_end()) fail_at(value_pos_raw(), "unexpected trailing content");
  }

  // Position at which the next value would start.
  Pos value_pos() {
    skip_ws();
    return value_pos_raw();
  }

  // ---- document paths -----------------------------------------------------

  void push_field(std::string_view name) { path_.push_back({false, std::string(name)}); }
  void push_index(std::size_t index) {
    path_.push_back({true, "[" + std::to_string(index) + "]"});
  }
  void pop_path() { path_.pop_back(); }

  std::string path() const {
    std::string out;
    for (const auto& c : path_) {
      if (!c.is_index && !out.empty()) out += '.';
      out += c.text;
    }
    return out;
  }

  [[noreturn]] void fail(std::string message) { fail_at(value_pos(), std::move(message)); }

  [[noreturn]] void fail_at(Pos pos, std::string message) const {
    throw ParseError(pos.line, pos.column, path(), std::move(message));
  }

 private:
  struct Frame {
    char kind;
    bool first;
  };
  struct PathComponent {
    bool is_index;
    std::string text;
  };

  bool at_end() const { return i_ >= text_.size(); }

  Pos value_pos_raw() const { return {line_, col_}; }

  void bump() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_ws() {
    while (!at_end()) {
      char c = text_[i_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        bump();
      } else {
        break;
      }
    }
  }

  bool eat(char c) {
    skip_ws();
    if (!at_end() && text_[i_] == c) {
      bump();
      return true;
    }
    return false;
  }

  static void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  uint32_t scan_hex4() {
    uint32_t v = 0;
    for (int k = 0; k < 4; ++k) {
      if (at_end()) fail_at(value_pos_raw(), "truncated \\u escape");
      char c = text_[i_];
      uint32_t d;
      if (c >= '0' && c <= '9') {
        d = static_cast<uint32_t>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        d = static_cast<uint32_t>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        d = static_cast<uint32_t>(c - 'A' + 10);
      } else {
        fail_at(value_pos_raw(), "invalid \\u escape");
      }
      v = (v << 4) | d;
      bump();
    }
    return v;
  }

  // Called with i_ on the opening quote.
  std::string scan_string() {
    bump();  // '"'
    std::string out;
    while (true) {
      if (at_end()) fail_at(value_pos_raw(), "unterminated string");
      unsigned char c = static_cast<unsigned char>(text_[i_]);
      if (c == '"') {
        bump();
        return out;
      }
      if (c == '\\') {
        Pos esc = value_pos_raw();
        bump();
        if (at_end()) fail_at(esc, "truncated escape");
        char e = text_[i_];
        bump();
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case '/': out += '/'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 't': out += '\t'; break;
          case 'u': {
            uint32_t cp = scan_hex4();
            if (cp >= 0xDC00 && cp <= 0xDFFF) fail_at(esc, "lone low surrogate");
            if (cp >= 0xD800 && cp <= 0xDBFF) {
              Pos lo = value_pos_raw();
              if (at_end() || text_[i_] != '\\') fail_at(lo, "unpaired high surrogate");
              bump();
              if (at_end() || text_[i_] != 'u') fail_at(lo, "unpaired high surrogate");
              bump();
              uint32_t low = scan_hex4();
              if (low < 0xDC00 || low > 0xDFFF) fail_at(lo, "unpaired high surrogate");
              cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
            }
            append_utf8(out, cp);
            break;
          }
          default:
            fail_at(esc, "invalid escape");
        }
        continue;
      }
      if (c < 0x20) fail_at(value_pos_raw(), "unescaped control character in string");
      if (c < 0x80) {
        out += static_cast<char>(c);
        bump();
        continue;
      }
      // multi-byte UTF-8 sequence
      Pos sp = value_pos_raw();
      int len;
      unsigned char lo = 0x80, hi = 0xBF;
      if (c >= 0xC2 && c <= 0xDF) {
        len = 2;
      } else if (c == 0xE0) {
        len = 3;
        lo = 0xA0;
      } else if (c >= 0xE1 && c <= 0xEC) {
        len = 3;
      } else if (c == 0xED) {
        len = 3;
        hi = 0x9F;
      } else if (c >= 0xEE && c <= 0xEF) {
        len = 3;
      } else if (c == 0xF0) {
        len = 4;
        lo = 0x90;
      } else if (c >= 0xF1 && c <= 0xF3) {
        len = 4;
      } else if (c == 0xF4) {
        len = 4;
        hi = 0x8F;
      } else {
        fail_at(sp, "invalid UTF-8 byte");
      }
      out += static_cast<char>(c);
      bump();
      for (int k = 1; k < len; ++k) {
        if (at_end()) fail_at(sp, "truncated UTF-8 sequence");
        unsigned char cc = static_cast<unsigned char>(text_[i_]);
        unsigned char want_lo = (k == 1) ? lo : 0x80;
        unsigned char want_hi = (k == 1) ? hi : 0xBF;
        if (cc < want_lo || cc > want_hi) fail_at(sp, "invalid UTF-8 sequence");
        out += static_cast<char>(cc);
        bump();
      }
    }
  }

  std::string_view text_;
  size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<Frame> frames_;
  std::vector<PathComponent> path_;
  Pos key_pos_;
  Pos last_scalar_pos_;
};

// Escapes a string for embedding in JSON output. UTF-8 passes through.
inline std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

}  // namespace riskq::json
