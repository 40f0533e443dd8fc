#include "bindweaver/error.hpp"

#include <utility>

namespace bindweaver {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error(line == 0 ? what : what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

ResolutionError::ResolutionError(const std::string& what, std::string name) : Error(what), name_(std::move(name)) {}

}  // namespace bindweaver
