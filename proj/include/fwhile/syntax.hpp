#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

// Abstract syntax for FWHILE: a three-address while language with a
// fork statement. Arithmetic is deliberately flat (operands are literals),
// so the set of nontrivial expressions in a program is finite and small.

namespace fwhile {

using NodeId = std::uint32_t;

enum class AOp : std::uint8_t { Add, Sub, Mul };
enum class BOp : std::uint8_t { Eq, Le, Lt };

const char* opSymbol(AOp op);
const char* opSymbol(BOp op);

// A literal is a variable name or an integer constant.
struct Literal {
  enum class Kind : std::uint8_t { Var, Num };
  Kind kind{Kind::Num};
  std::string name;        // valid when kind == Var
  std::int64_t value{0};   // valid when kind == Num

  static Literal var(std::string n) { return {Kind::Var, std::move(n), 0}; }
  static Literal num(std::int64_t v) { return {Kind::Num, {}, v}; }
  bool isVar() const { return kind == Kind::Var; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Arithmetic expression: a literal, or literal <op> literal. Nesting is
// impossible by construction.
struct AExpr {
  Literal first;
  std::optional<AOp> op;  // nullopt: trivial expression
  Literal second;         // valid when op is set

  bool trivial() const { return !op.has_value(); }

  static AExpr lit(Literal l) { return {std::move(l), std::nullopt, {}}; }
  static AExpr bin(AOp op, Literal l, Literal r) {
    return {std::move(l), op, std::move(r)};
  }

  friend bool operator==(const AExpr&, const AExpr&) = default;
};

// Boolean expression: literal <cmp> literal. Guards never contain
// nontrivial arithmetic.
struct BExpr {
  BOp op{BOp::Eq};
  Literal lhs;
  Literal rhs;

  friend bool operator==(const BExpr&, const BExpr&) = default;
};

// Canonical identity of a nontrivial arithmetic expression. Two binary
// AExpr nodes share an ExprId iff they are syntactically identical;
// there is no commutative canonicalization.
struct ExprId {
  AOp op{AOp::Add};
  Literal lhs;
  Literal rhs;

  friend bool operator==(const ExprId&, const ExprId&) = default;
  friend auto operator<=>(const ExprId&, const ExprId&) = default;
};

// ExprId of a binary expression, nullopt for a literal.
std::optional<ExprId> exprIdOf(const AExpr& a);
// The AExpr a given ExprId identifies.
AExpr toAExpr(const ExprId& e);

struct SourceSpan {
  std::size_t begin{0};
  std::size_t end{0};
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Assign {
  std::string var;
  AExpr rhs;
};
struct Skip {};
struct Seq {
  StmtPtr first;
  StmtPtr second;
};
struct If {
  BExpr cond;
  StmtPtr thenBranch;
  StmtPtr elseBranch;
};
struct While {
  BExpr cond;
  StmtPtr body;
};
struct Fork {
  std::vector<StmtPtr> threads;  // nonempty
};

struct Stmt {
  NodeId id{0};
  SourceSpan span{};
  std::variant<Assign, Skip, Seq, If, While, Fork> node;
};

struct Program {
  StmtPtr root;

  Program() = default;
  explicit Program(StmtPtr r) : root(std::move(r)) {}
  Program(Program&&) = default;
  Program& operator=(Program&&) = default;
};

StmtPtr makeStmt(std::variant<Assign, Skip, Seq, If, While, Fork> node,
                 SourceSpan span = {});

// Deep copy; node ids and spans are preserved.
StmtPtr cloneStmt(const Stmt& s);
Program cloneProgram(const Program& p);

// Assigns preorder ids 0..n-1 and returns the node count.
std::size_t renumber(Program& p);
std::size_t nodeCount(const Program& p);
bool hasUniqueIds(const Program& p);

// Structural equality, ignoring node ids and source spans.
bool structurallyEqual(const Stmt& a, const Stmt& b);
bool structurallyEqual(const Program& a, const Program& b);

// Calls fn on every statement node in preorder.
void forEachNode(const Stmt& s, const std::function<void(const Stmt&)>& fn);
void forEachNode(const Program& p, const std::function<void(const Stmt&)>& fn);

std::set<std::string> freeVars(const AExpr& a);
std::set<std::string> freeVars(const BExpr& b);
std::set<std::string> freeVars(const ExprId& e);

// {a} for a nontrivial expression, {} for a literal.
std::set<ExprId> evalSet(const AExpr& a);

// All left-hand sides of assignments anywhere inside s.
std::set<std::string> assignedVars(const Stmt& s);

// Every variable occurring in the program, read or written.
std::set<std::string> allVars(const Program& p);

// The finite universe of nontrivial expressions of a program, indexed in
// first-occurrence order. Analyses represent expression sets as bitmasks
// over this universe, which caps it at 64 distinct expressions.
struct ExprUniverse {
  using Mask = std::uint64_t;
  static constexpr std::size_t kMaxExprs = 64;

  std::vector<ExprId> exprs;          // first-occurrence order
  std::map<ExprId, std::size_t> index;

  std::size_t size() const { return exprs.size(); }
  bool contains(const ExprId& e) const { return index.count(e) != 0; }
  Mask bit(const ExprId& e) const;
  Mask all() const;
  std::set<ExprId> toSet(Mask m) const;
  std::vector<std::string> toKeys(Mask m) const;  // compact text, universe order
};

// Collects the universe; throws std::length_error past kMaxExprs.
ExprUniverse nontrivialExprs(const Program& p);

// {e in universe | x occurs in e}.
ExprUniverse::Mask modMask(const std::string& var, const ExprUniverse& u);
std::set<ExprId> modSet(const std::string& var, const std::set<ExprId>& universe);

}  // namespace fwhile
