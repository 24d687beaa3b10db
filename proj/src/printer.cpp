#include "fwhile/printer.hpp"

#include <sstream>

namespace fwhile {

std::string literalText(const Literal& l) {
  return l.isVar() ? l.name : std::to_string(l.value);
}

std::string exprText(const AExpr& a) {
  if (a.trivial()) return literalText(a.first);
  return literalText(a.first) + " " + opSymbol(*a.op) + " " +
         literalText(a.second);
}

std::string exprText(const BExpr& b) {
  return literalText(b.lhs) + " " + opSymbol(b.op) + " " + literalText(b.rhs);
}

std::string exprKey(const ExprId& e) {
  return literalText(e.lhs) + opSymbol(e.op) + literalText(e.rhs);
}

std::string stmtHead(const Stmt& s) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) {
          return n.var + " := " + exprText(n.rhs);
        } else if constexpr (std::is_same_v<T, Skip>) {
          return "skip";
        } else if constexpr (std::is_same_v<T, Seq>) {
          return "...; ...";
        } else if constexpr (std::is_same_v<T, If>) {
          return "if " + exprText(n.cond) + " then { ... } else { ... }";
        } else if constexpr (std::is_same_v<T, While>) {
          return "while " + exprText(n.cond) + " do { ... }";
        } else {
          return "fork { " + std::to_string(n.threads.size()) + " threads }";
        }
      },
      s.node);
}

namespace {

void indentTo(std::ostringstream& out, int depth) {
  for (int i = 0; i < depth; ++i) out << "  ";
}

// Prints s at the given depth. `last` is false when another statement
// follows in the enclosing sequence, in which case a `;` trails the
// statement's final line.
void printStmt(const Stmt& s, std::ostringstream& out, int depth, bool last) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) {
          indentTo(out, depth);
          out << n.var << " := " << exprText(n.rhs);
          if (!last) out << ";";
          out << "\n";
        } else if constexpr (std::is_same_v<T, Skip>) {
          indentTo(out, depth);
          out << "skip";
          if (!last) out << ";";
          out << "\n";
        } else if constexpr (std::is_same_v<T, Seq>) {
          printStmt(*n.first, out, depth, false);
          printStmt(*n.second, out, depth, last);
        } else if constexpr (std::is_same_v<T, If>) {
          indentTo(out, depth);
          out << "if " << exprText(n.cond) << " then {\n";
          printStmt(*n.thenBranch, out, depth + 1, true);
          indentTo(out, depth);
          out << "} else {\n";
          printStmt(*n.elseBranch, out, depth + 1, true);
          indentTo(out, depth);
          out << "}";
          if (!last) out << ";";
          out << "\n";
        } else if constexpr (std::is_same_v<T, While>) {
          indentTo(out, depth);
          out << "while " << exprText(n.cond) << " do {\n";
          printStmt(*n.body, out, depth + 1, true);
          indentTo(out, depth);
          out << "}";
          if (!last) out << ";";
          out << "\n";
        } else {
          indentTo(out, depth);
          out << "fork {\n";
          for (const auto& t : n.threads) {
            indentTo(out, depth + 1);
            out << "{\n";
            printStmt(*t, out, depth + 2, true);
            indentTo(out, depth + 1);
            out << "}\n";
          }
          indentTo(out, depth);
          out << "}";
          if (!last) out << ";";
          out << "\n";
        }
      },
      s.node);
}

}  // namespace

std::string prettyPrint(const Stmt& s) {
  std::ostringstream out;
  printStmt(s, out, 0, true);
  std::string text = out.str();
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

std::string prettyPrint(const Program& p) {
  if (!p.root) return "";
  return prettyPrint(*p.root);
}

}  // namespace fwhile
