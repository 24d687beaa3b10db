#include "fwhile/pre_analysis.hpp"

namespace fwhile {

namespace {

struct AntCtx {
  const MceTable& mce;
  const ExprUniverse& u;
  PreAnnotation& out;
};

Mask evalMask(const AExpr& a, const ExprUniverse& u) {
  auto e = exprIdOf(a);
  return e ? u.bit(*e) : 0;
}

// Analyzes s against the demand `post`; records and returns the pre set.
Mask antRec(const Stmt& s, Mask post, AntCtx& ctx) {
  const Mask clean = ~ctx.mce.at(s.id);
  post &= clean;
  ctx.out.antPost[s.id] = post;
  Mask pre = std::visit(
      [&](const auto& n) -> Mask {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) {
          Mask killed = post & ~modMask(n.var, ctx.u);
          return (killed | evalMask(n.rhs, ctx.u)) & clean;
        } else if constexpr (std::is_same_v<T, Skip>) {
          return post;
        } else if constexpr (std::is_same_v<T, Seq>) {
          Mask mid = antRec(*n.second, post, ctx);
          return antRec(*n.first, mid, ctx);
        } else if constexpr (std::is_same_v<T, If>) {
          Mask thenPre = antRec(*n.thenBranch, post, ctx);
          Mask elsePre = antRec(*n.elseBranch, post, ctx);
          return thenPre & elsePre & clean;
        } else if constexpr (std::is_same_v<T, While>) {
          // Must hold on the exit path and around the loop; iterate down
          // from the full universe.
          Mask head = ctx.u.all() & clean;
          for (;;) {
            Mask next = antRec(*n.body, head, ctx) & post;
            if (next == head) break;
            head = next;
          }
          return head;
        } else {
          Mask pre = 0;
          for (const auto& t : n.threads) pre |= antRec(*t, post, ctx);
          return pre & clean;
        }
      },
      s.node);
  ctx.out.antPre[s.id] = pre;
  return pre;
}

struct CpavCtx {
  const MceTable& mce;
  const ExprUniverse& u;
  PreAnnotation& out;
};

// Analyzes s from the availability `in`; records and returns the post set.
Mask cpavRec(const Stmt& s, Mask in, CpavCtx& ctx) {
  const Mask clean = ~ctx.mce.at(s.id);
  in &= ctx.out.antPre[s.id] & clean;
  ctx.out.cpavPre[s.id] = in;
  Mask post = std::visit(
      [&](const auto& n) -> Mask {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) {
          return ((in | evalMask(n.rhs, ctx.u)) & ~modMask(n.var, ctx.u)) &
                 ctx.out.antPost[s.id] & clean;
        } else if constexpr (std::is_same_v<T, Skip>) {
          return in;
        } else if constexpr (std::is_same_v<T, Seq>) {
          Mask mid = cpavRec(*n.first, in, ctx);
          return cpavRec(*n.second, mid, ctx);
        } else if constexpr (std::is_same_v<T, If>) {
          Mask thenPost = cpavRec(*n.thenBranch, in, ctx);
          Mask elsePost = cpavRec(*n.elseBranch, in, ctx);
          return (thenPost | elsePost) & ctx.out.antPost[s.id] & clean;
        } else if constexpr (std::is_same_v<T, While>) {
          // The head set must survive the body (the back edge merges into
          // the head), so only expressions the body preserves or
          // re-evaluates stay. Greatest fixpoint below the head's ant set;
          // entry availability beyond it is restored by preheader
          // insertions, not assumed here.
          Mask head = ctx.out.antPre[s.id];
          for (;;) {
            Mask next = cpavRec(*n.body, head, ctx) & ctx.out.antPre[s.id];
            if (next == head) break;
            head = next;
          }
          ctx.out.loopHeadCpav[s.id] = head;
          return head & ctx.out.antPost[s.id] & clean;
        } else {
          Mask post = 0;
          for (const auto& t : n.threads) post |= cpavRec(*t, in, ctx);
          return post & ctx.out.antPost[s.id] & clean;
        }
      },
      s.node);
  ctx.out.cpavPost[s.id] = post;
  return post;
}

}  // namespace

void anticipability(const Program& p, const MceTable& mce,
                    const ExprUniverse& u, Mask antExit, PreAnnotation& out) {
  if (!p.root) return;
  AntCtx ctx{mce, u, out};
  antRec(*p.root, antExit, ctx);
}

void condPartialAvailability(const Program& p, const MceTable& mce,
                             const ExprUniverse& u, Mask cpavEntry,
                             PreAnnotation& out) {
  if (!p.root) return;
  CpavCtx ctx{mce, u, out};
  cpavRec(*p.root, cpavEntry, ctx);
}

Analysis analyze(const Program& p) {
  Analysis a;
  a.universe = nontrivialExprs(p);
  a.modified = modifiedAnalysis(p);
  a.concurrent = concurrentModified(p, a.modified);
  a.mce = mceTable(p, a.concurrent, a.universe);
  a.pre.resize(nodeCount(p));
  anticipability(p, a.mce, a.universe, 0, a.pre);
  condPartialAvailability(p, a.mce, a.universe, 0, a.pre);
  return a;
}

}  // namespace fwhile
