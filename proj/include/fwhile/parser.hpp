#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fwhile/syntax.hpp"

namespace fwhile {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceSpan span)
      : std::runtime_error(std::move(message)), span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

// Parses FWHILE source text into a program with fresh preorder node ids.
// Grammar:
//   program  ::= seq
//   seq      ::= stmt (';' stmt)* ';'?
//   stmt     ::= ident ':=' aexpr
//              | 'skip'
//              | 'if' bexpr 'then' block 'else' block
//              | 'while' bexpr 'do' block
//              | 'fork' '{' (block ';'?)+ '}'
//   block    ::= '{' seq '}'
//   aexpr    ::= literal (('+' | '-' | '*') literal)?
//   bexpr    ::= literal ('=' | '<=' | '<') literal
//   literal  ::= ident | int
// Comments run from '//' to end of line. Throws ParseError on any
// violation; no partial results.
Program parse(std::string_view source);

// 1-based line/column of a byte offset, for diagnostics.
std::pair<std::size_t, std::size_t> lineColOf(std::string_view source,
                                              std::size_t offset);

}  // namespace fwhile
