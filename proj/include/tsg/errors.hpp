#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsg {

/// Malformed text input; position is a 0-based character offset.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A subtree substitution was requested at a node that does not root the
/// p-caret-over-q-carets pattern.
class PatternMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A map or word that does not describe an element of the group.
class DomainRejection : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace tsg
