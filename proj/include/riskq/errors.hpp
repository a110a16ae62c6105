#pragma once

#include <stdexcept>
#include <string>

namespace riskq {

// Raised by the model-file and band-config readers. line/column are 1-based
// byte positions in the input text; path addresses the offending node in
// document notation, e.g. "properties[0].events[1].hypotheses[2].prior".
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string path, std::string message)
      : std::runtime_error(format(line, column, path, message)),
        line_(line),
        column_(column),
        path_(std::move(path)),
        message_(std::move(message)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  static std::string format(int line, int column, const std::string& path,
                            const std::string& message) {
    std::string s = std::to_string(line) + ":" + std::to_string(column) + ": ";
    if (!path.empty()) {
      s += path;
      s += ": ";
    }
    s += message;
    return s;
  }

  int line_;
  int column_;
  std::string path_;
  std::string message_;
};

class OutOfRangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingPropertyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TooLargeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace riskq
