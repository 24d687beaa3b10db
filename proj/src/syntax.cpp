#include "fwhile/syntax.hpp"

#include <stdexcept>

namespace fwhile {

const char* opSymbol(AOp op) {
  switch (op) {
    case AOp::Add: return "+";
    case AOp::Sub: return "-";
    case AOp::Mul: return "*";
  }
  return "?";
}

const char* opSymbol(BOp op) {
  switch (op) {
    case BOp::Eq: return "=";
    case BOp::Le: return "<=";
    case BOp::Lt: return "<";
  }
  return "?";
}

std::optional<ExprId> exprIdOf(const AExpr& a) {
  if (a.trivial()) return std::nullopt;
  return ExprId{*a.op, a.first, a.second};
}

AExpr toAExpr(const ExprId& e) { return AExpr::bin(e.op, e.lhs, e.rhs); }

StmtPtr makeStmt(std::variant<Assign, Skip, Seq, If, While, Fork> node,
                 SourceSpan span) {
  auto s = std::make_unique<Stmt>();
  s->span = span;
  s->node = std::move(node);
  return s;
}

StmtPtr cloneStmt(const Stmt& s) {
  auto copy = std::make_unique<Stmt>();
  copy->id = s.id;
  copy->span = s.span;
  copy->node = std::visit(
      [](const auto& n) -> std::variant<Assign, Skip, Seq, If, While, Fork> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) {
          return Assign{n.var, n.rhs};
        } else if constexpr (std::is_same_v<T, Skip>) {
          return Skip{};
        } else if constexpr (std::is_same_v<T, Seq>) {
          return Seq{cloneStmt(*n.first), cloneStmt(*n.second)};
        } else if constexpr (std::is_same_v<T, If>) {
          return If{n.cond, cloneStmt(*n.thenBranch), cloneStmt(*n.elseBranch)};
        } else if constexpr (std::is_same_v<T, While>) {
          return While{n.cond, cloneStmt(*n.body)};
        } else {
          Fork f;
          for (const auto& t : n.threads) f.threads.push_back(cloneStmt(*t));
          return f;
        }
      },
      s.node);
  return copy;
}

Program cloneProgram(const Program& p) {
  Program q;
  if (p.root) q.root = cloneStmt(*p.root);
  return q;
}

namespace {

void renumberRec(Stmt& s, NodeId& next) {
  s.id = next++;
  std::visit(
      [&](auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Seq>) {
          renumberRec(*n.first, next);
          renumberRec(*n.second, next);
        } else if constexpr (std::is_same_v<T, If>) {
          renumberRec(*n.thenBranch, next);
          renumberRec(*n.elseBranch, next);
        } else if constexpr (std::is_same_v<T, While>) {
          renumberRec(*n.body, next);
        } else if constexpr (std::is_same_v<T, Fork>) {
          for (auto& t : n.threads) renumberRec(*t, next);
        }
      },
      s.node);
}

}  // namespace

std::size_t renumber(Program& p) {
  NodeId next = 0;
  if (p.root) renumberRec(*p.root, next);
  return next;
}

void forEachNode(const Stmt& s, const std::function<void(const Stmt&)>& fn) {
  fn(s);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Seq>) {
          forEachNode(*n.first, fn);
          forEachNode(*n.second, fn);
        } else if constexpr (std::is_same_v<T, If>) {
          forEachNode(*n.thenBranch, fn);
          forEachNode(*n.elseBranch, fn);
        } else if constexpr (std::is_same_v<T, While>) {
          forEachNode(*n.body, fn);
        } else if constexpr (std::is_same_v<T, Fork>) {
          for (const auto& t : n.threads) forEachNode(*t, fn);
        }
      },
      s.node);
}

void forEachNode(const Program& p, const std::function<void(const Stmt&)>& fn) {
  if (p.root) forEachNode(*p.root, fn);
}

std::size_t nodeCount(const Program& p) {
  std::size_t n = 0;
  forEachNode(p, [&](const Stmt&) { ++n; });
  return n;
}

bool hasUniqueIds(const Program& p) {
  std::set<NodeId> seen;
  bool ok = true;
  forEachNode(p, [&](const Stmt& s) {
    if (!seen.insert(s.id).second) ok = false;
  });
  return ok;
}

bool structurallyEqual(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto& nb = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Assign>) {
          return na.var == nb.var && na.rhs == nb.rhs;
        } else if constexpr (std::is_same_v<T, Skip>) {
          return true;
        } else if constexpr (std::is_same_v<T, Seq>) {
          return structurallyEqual(*na.first, *nb.first) &&
                 structurallyEqual(*na.second, *nb.second);
        } else if constexpr (std::is_same_v<T, If>) {
          return na.cond == nb.cond &&
                 structurallyEqual(*na.thenBranch, *nb.thenBranch) &&
                 structurallyEqual(*na.elseBranch, *nb.elseBranch);
        } else if constexpr (std::is_same_v<T, While>) {
          return na.cond == nb.cond && structurallyEqual(*na.body, *nb.body);
        } else {
          if (na.threads.size() != nb.threads.size()) return false;
          for (std::size_t i = 0; i < na.threads.size(); ++i) {
            if (!structurallyEqual(*na.threads[i], *nb.threads[i])) return false;
          }
          return true;
        }
      },
      a.node);
}

bool structurallyEqual(const Program& a, const Program& b) {
  if (!a.root || !b.root) return !a.root && !b.root;
  return structurallyEqual(*a.root, *b.root);
}

std::set<std::string> freeVars(const AExpr& a) {
  std::set<std::string> out;
  if (a.first.isVar()) out.insert(a.first.name);
  if (!a.trivial() && a.second.isVar()) out.insert(a.second.name);
  return out;
}

std::set<std::string> freeVars(const BExpr& b) {
  std::set<std::string> out;
  if (b.lhs.isVar()) out.insert(b.lhs.name);
  if (b.rhs.isVar()) out.insert(b.rhs.name);
  return out;
}

std::set<std::string> freeVars(const ExprId& e) {
  return freeVars(toAExpr(e));
}

std::set<ExprId> evalSet(const AExpr& a) {
  std::set<ExprId> out;
  if (auto e = exprIdOf(a)) out.insert(*e);
  return out;
}

std::set<std::string> assignedVars(const Stmt& s) {
  std::set<std::string> out;
  forEachNode(s, [&](const Stmt& n) {
    if (const auto* a = std::get_if<Assign>(&n.node)) out.insert(a->var);
  });
  return out;
}

std::set<std::string> allVars(const Program& p) {
  std::set<std::string> out;
  forEachNode(p, [&](const Stmt& s) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Assign>) {
            out.insert(n.var);
            auto fv = freeVars(n.rhs);
            out.insert(fv.begin(), fv.end());
          } else if constexpr (std::is_same_v<T, If> || std::is_same_v<T, While>) {
            auto fv = freeVars(n.cond);
            out.insert(fv.begin(), fv.end());
          }
        },
        s.node);
  });
  return out;
}

ExprUniverse::Mask ExprUniverse::bit(const ExprId& e) const {
  auto it = index.find(e);
  if (it == index.end()) return 0;
  return Mask{1} << it->second;
}

ExprUniverse::Mask ExprUniverse::all() const {
  if (exprs.empty()) return 0;
  if (exprs.size() == kMaxExprs) return ~Mask{0};
  return (Mask{1} << exprs.size()) - 1;
}

std::set<ExprId> ExprUniverse::toSet(Mask m) const {
  std::set<ExprId> out;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    if (m & (Mask{1} << i)) out.insert(exprs[i]);
  }
  return out;
}

std::vector<std::string> ExprUniverse::toKeys(Mask m) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    if (m & (Mask{1} << i)) {
      const ExprId& e = exprs[i];
      auto litText = [](const Literal& l) {
        return l.isVar() ? l.name : std::to_string(l.value);
      };
      out.push_back(litText(e.lhs) + opSymbol(e.op) + litText(e.rhs));
    }
  }
  return out;
}

ExprUniverse nontrivialExprs(const Program& p) {
  ExprUniverse u;
  forEachNode(p, [&](const Stmt& s) {
    const auto* a = std::get_if<Assign>(&s.node);
    if (!a) return;
    auto e = exprIdOf(a->rhs);
    if (!e || u.index.count(*e)) return;
    if (u.exprs.size() >= ExprUniverse::kMaxExprs) {
      throw std::length_error(
          "program has more than 64 distinct nontrivial expressions");
    }
    u.index.emplace(*e, u.exprs.size());
    u.exprs.push_back(*e);
  });
  return u;
}

ExprUniverse::Mask modMask(const std::string& var, const ExprUniverse& u) {
  ExprUniverse::Mask m = 0;
  for (std::size_t i = 0; i < u.exprs.size(); ++i) {
    if (freeVars(u.exprs[i]).count(var)) m |= ExprUniverse::Mask{1} << i;
  }
  return m;
}

std::set<ExprId> modSet(const std::string& var, const std::set<ExprId>& universe) {
  std::set<ExprId> out;
  for (const auto& e : universe) {
    if (freeVars(e).count(var)) out.insert(e);
  }
  return out;
}

}  // namespace fwhile
