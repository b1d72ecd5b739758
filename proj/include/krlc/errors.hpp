#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace krlc {

/// All library failures are reported as exceptions carrying a stable
/// machine-readable code (e.g. "UnknownVariable") next to the human message.
class error : public std::runtime_error {
public:
  error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
  throw error(code, message);
}

class syntax_error : public error {
public:
  syntax_error(const std::string& message, std::size_t position)
      : error("SyntaxError", message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

}  // namespace krlc
