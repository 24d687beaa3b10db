#include "fwhile/transform.hpp"

#include <algorithm>
#include <cctype>

namespace fwhile {

bool TempTable::isTempName(const std::string& name) const {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix))
    return false;
  for (std::size_t i = prefix.size(); i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  }
  return name[prefix.size()] != '0';
}

const char* rewriteKindName(RewriteKind k) {
  switch (k) {
    case RewriteKind::Replace: return "replace";
    case RewriteKind::Split: return "split";
    case RewriteKind::BranchInsert: return "branch-insert";
    case RewriteKind::PreheaderInsert: return "preheader-insert";
  }
  return "?";
}

namespace {

struct Rewriter {
  const Analysis& a;
  const Mask live;  // expressions with at least one redundant evaluation
  const bool unsafeReplace;
  TempTable temps;
  std::vector<Rewrite> rewrites;

  const std::string& tempFor(const ExprId& e) {
    auto it = temps.names.find(e);
    if (it == temps.names.end()) {
      temps.order.push_back(e);
      it = temps.names
               .emplace(e, temps.prefix + std::to_string(temps.order.size()))
               .first;
    }
    return it->second;
  }

  // Emits `t_e := a_e` statements for each expression in `mask`, new temps
  // introduced in universe (first-occurrence) order, the batch emitted in
  // temp introduction order.
  std::vector<StmtPtr> insertionsFor(Mask mask, NodeId at, RewriteKind kind) {
    std::vector<ExprId> batch;
    for (std::size_t i = 0; i < a.universe.size(); ++i) {
      if (mask & (Mask{1} << i)) batch.push_back(a.universe.exprs[i]);
    }
    for (const auto& e : batch) tempFor(e);
    std::sort(batch.begin(), batch.end(), [&](const auto& x, const auto& y) {
      auto pos = [&](const ExprId& e) {
        return std::find(temps.order.begin(), temps.order.end(), e) -
               temps.order.begin();
      };
      return pos(x) < pos(y);
    });
    std::vector<StmtPtr> out;
    for (const auto& e : batch) {
      out.push_back(makeStmt(Assign{tempFor(e), toAExpr(e)}));
      rewrites.push_back({at, kind, e});
    }
    return out;
  }

  static StmtPtr chain(std::vector<StmtPtr> stmts, StmtPtr tail) {
    StmtPtr result = std::move(tail);
    for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) {
      result = makeStmt(Seq{std::move(*it), std::move(result)});
    }
    return result;
  }

  // Appends stmts after s (availability balancing at a branch end).
  static StmtPtr append(StmtPtr s, std::vector<StmtPtr> stmts) {
    StmtPtr result = std::move(s);
    for (auto& extra : stmts) {
      auto tail = std::move(extra);
      result = makeStmt(Seq{std::move(result), std::move(tail)});
    }
    return result;
  }

  StmtPtr rewrite(const Stmt& s) {
    return std::visit(
        [&](const auto& n) -> StmtPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Assign>) {
            auto e = exprIdOf(n.rhs);
            if (!e || !(a.universe.bit(*e) & live)) {
              return makeStmt(Assign{n.var, n.rhs});
            }
            Mask bit = a.universe.bit(*e);
            // The fixture drops the availability guard and replaces on
            // anticipation alone, which is exactly the bug the verifier
            // is meant to catch.
            bool available = unsafeReplace ? (a.pre.antPre[s.id] & bit) != 0
                                           : (a.pre.cpavPre[s.id] & bit) != 0;
            if (available) {
              rewrites.push_back({s.id, RewriteKind::Replace, *e});
              return makeStmt(
                  Assign{n.var, AExpr::lit(Literal::var(tempFor(*e)))});
            }
            if (a.pre.cpavPost[s.id] & bit) {
              const std::string& t = tempFor(*e);
              rewrites.push_back({s.id, RewriteKind::Split, *e});
              return makeStmt(
                  Seq{makeStmt(Assign{t, n.rhs}),
                      makeStmt(Assign{n.var, AExpr::lit(Literal::var(t))})});
            }
            return makeStmt(Assign{n.var, n.rhs});
          } else if constexpr (std::is_same_v<T, Skip>) {
            return makeStmt(Skip{});
          } else if constexpr (std::is_same_v<T, Seq>) {
            auto first = rewrite(*n.first);
            auto second = rewrite(*n.second);
            return makeStmt(Seq{std::move(first), std::move(second)});
          } else if constexpr (std::is_same_v<T, If>) {
            auto thenBranch = rewrite(*n.thenBranch);
            auto elseBranch = rewrite(*n.elseBranch);
            Mask joined = a.pre.cpavPost[s.id] & live;
            Mask thenMissing = joined & ~a.pre.cpavPost[n.thenBranch->id];
            Mask elseMissing = joined & ~a.pre.cpavPost[n.elseBranch->id];
            thenBranch =
                append(std::move(thenBranch),
                       insertionsFor(thenMissing, s.id,
                                     RewriteKind::BranchInsert));
            elseBranch =
                append(std::move(elseBranch),
                       insertionsFor(elseMissing, s.id,
                                     RewriteKind::BranchInsert));
            return makeStmt(
                If{n.cond, std::move(thenBranch), std::move(elseBranch)});
          } else if constexpr (std::is_same_v<T, While>) {
            auto body = rewrite(*n.body);
            Mask hoisted =
                a.pre.loopHeadCpav[s.id] & live & ~a.pre.cpavPre[s.id];
            auto inserts =
                insertionsFor(hoisted, s.id, RewriteKind::PreheaderInsert);
            auto loop = makeStmt(While{n.cond, std::move(body)});
            return chain(std::move(inserts), std::move(loop));
          } else {
            Fork fork;
            for (const auto& t : n.threads) fork.threads.push_back(rewrite(*t));
            return makeStmt(std::move(fork));
          }
        },
        s.node);
  }
};

std::string choosePrefix(const Program& p, std::string prefix) {
  const auto vars = allVars(p);
  auto clashes = [&](const std::string& pre) {
    for (const auto& v : vars) {
      if (v.size() <= pre.size() || v.compare(0, pre.size(), pre)) continue;
      bool digits = v[pre.size()] != '0';
      for (std::size_t i = pre.size(); i < v.size() && digits; ++i) {
        digits = std::isdigit(static_cast<unsigned char>(v[i]));
      }
      if (digits) return true;
    }
    return false;
  };
  while (clashes(prefix)) prefix += prefix.back();
  return prefix;
}

}  // namespace

OptimizedProgram optimize(const Program& p, const TransformOptions& opts) {
  Analysis a = analyze(p);

  // An expression is worth a temp only if some evaluation of it is
  // actually redundant (available on entry to an assignment that
  // evaluates it). Splits and insertions exist to feed those reads.
  Mask live = 0;
  forEachNode(p, [&](const Stmt& s) {
    const auto* asg = std::get_if<Assign>(&s.node);
    if (!asg) return;
    if (auto e = exprIdOf(asg->rhs)) {
      Mask bit = a.universe.bit(*e);
      if (opts.unsafeReplaceWithoutGuard) {
        // Fixture: treat everything anticipated anywhere as live.
        if (a.pre.antPre[s.id] & bit) live |= bit;
      } else if (a.pre.cpavPre[s.id] & bit) {
        live |= bit;
      }
    }
  });

  Rewriter rw{a, live, opts.unsafeReplaceWithoutGuard, {}, {}};
  rw.temps.prefix = choosePrefix(p, opts.tempPrefix);

  OptimizedProgram out;
  if (p.root) out.program.root = rw.rewrite(*p.root);
  renumber(out.program);
  out.temps = std::move(rw.temps);
  out.rewrites = std::move(rw.rewrites);
  return out;
}

State stripTemps(const State& s, const TempTable& temps) {
  std::set<std::string> tempNames;
  for (const auto& [e, name] : temps.names) tempNames.insert(name);
  State out;
  for (const auto& [var, value] : s) {
    if (!tempNames.count(var)) out.emplace(var, value);
  }
  return out;
}

bool similarity(const State& sigma, const State& sigmaStar,
                const std::set<ExprId>& cpav, const TempTable& temps) {
  if (stripTemps(sigma, temps) != stripTemps(sigmaStar, temps)) return false;
  for (const auto& e : cpav) {
    auto it = temps.names.find(e);
    if (it == temps.names.end()) continue;
    auto bound = sigmaStar.find(it->second);
    if (bound == sigmaStar.end()) continue;
    auto value = evalA(toAExpr(e), sigma);
    if (!std::holds_alternative<std::int64_t>(value)) return false;
    if (std::get<std::int64_t>(value) != bound->second) return false;
  }
  return true;
}

}  // namespace fwhile
