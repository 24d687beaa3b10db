#pragma once

#include <string>

#include "fwhile/syntax.hpp"

namespace fwhile {

std::string literalText(const Literal& l);

// Spaced form used in program text: "a + b".
std::string exprText(const AExpr& a);
std::string exprText(const BExpr& b);

// Compact form used as a map key in JSON output: "a+b".
std::string exprKey(const ExprId& e);

// One-line summary of a statement, with nested bodies elided.
std::string stmtHead(const Stmt& s);

// Canonical program text: one statement per line, two-space indentation,
// `;` separating statements within a block. parse(prettyPrint(p)) is
// structurally equal to p.
std::string prettyPrint(const Program& p);
std::string prettyPrint(const Stmt& s);

}  // namespace fwhile
