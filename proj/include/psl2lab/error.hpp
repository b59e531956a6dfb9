#pragma once

#include <stdexcept>
#include <string>

namespace psl2lab {

// Raised when an argument violates an operation's documented precondition.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when external input (CSV, cache files) cannot be parsed.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace psl2lab
