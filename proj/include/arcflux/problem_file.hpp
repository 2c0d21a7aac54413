#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "arcflux/problems.hpp"

namespace arcflux::io {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line, int column = 0)
      : std::runtime_error("line " + std::to_string(line) +
                           (column > 0 ? ", column " + std::to_string(column)
                                       : "") +
                           ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Flat "key = value" problem description; values are numbers, booleans,
/// bare words, or bracketed number arrays. '#' starts a comment.
problems::ProblemSpec parse_problem(std::istream& is);
problems::ProblemSpec load_problem(const std::string& path);

}  // namespace arcflux::io
