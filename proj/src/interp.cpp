#include "fwhile/interp.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fwhile {

std::vector<int> Schedule::orderFor(NodeId fork, std::size_t threads) const {
  auto it = perms.find(fork);
  if (it != perms.end()) return it->second;
  std::vector<int> identity(threads);
  std::iota(identity.begin(), identity.end(), 0);
  return identity;
}

std::string Schedule::text() const {
  if (perms.empty()) return "identity";
  std::ostringstream out;
  bool firstEntry = true;
  for (const auto& [node, perm] : perms) {
    if (!firstEntry) out << ";";
    firstEntry = false;
    out << node << ":";
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (i) out << ",";
      out << perm[i] + 1;
    }
  }
  return out.str();
}

std::uint64_t RunResult::totalEvals() const {
  std::uint64_t total = 0;
  for (const auto& [e, n] : evalCount) total += n;
  return total;
}

const char* RunError::kindName() const {
  switch (kind) {
    case Kind::UnboundVariable: return "UnboundVariable";
    case Kind::FuelExhausted: return "FuelExhausted";
    case Kind::ArithmeticOverflow: return "ArithmeticOverflow";
  }
  return "?";
}

namespace {

struct RunErrorEx {
  RunError error;
};

std::int64_t lookup(const Literal& l, const State& s) {
  if (!l.isVar()) return l.value;
  auto it = s.find(l.name);
  if (it == s.end()) {
    throw RunErrorEx{{RunError::Kind::UnboundVariable, l.name, 0}};
  }
  return it->second;
}

std::int64_t applyOp(AOp op, std::int64_t a, std::int64_t b) {
  std::int64_t result = 0;
  bool overflow = false;
  switch (op) {
    case AOp::Add: overflow = __builtin_add_overflow(a, b, &result); break;
    case AOp::Sub: overflow = __builtin_sub_overflow(a, b, &result); break;
    case AOp::Mul: overflow = __builtin_mul_overflow(a, b, &result); break;
  }
  if (overflow) {
    throw RunErrorEx{{RunError::Kind::ArithmeticOverflow, "", 0}};
  }
  return result;
}

std::int64_t evalAOrThrow(const AExpr& a, const State& s) {
  std::int64_t first = lookup(a.first, s);
  if (a.trivial()) return first;
  return applyOp(*a.op, first, lookup(a.second, s));
}

bool evalBOrThrow(const BExpr& b, const State& s) {
  std::int64_t lhs = lookup(b.lhs, s);
  std::int64_t rhs = lookup(b.rhs, s);
  switch (b.op) {
    case BOp::Eq: return lhs == rhs;
    case BOp::Le: return lhs <= rhs;
    case BOp::Lt: return lhs < rhs;
  }
  return false;
}

struct ExecCtx {
  State state;
  std::map<ExprId, std::uint64_t> evals;
  std::uint64_t steps{0};
  std::uint64_t fuel{0};
  const Schedule* sched{nullptr};
  const RunHooks* hooks{nullptr};
};

void charge(ExecCtx& ctx, NodeId at) {
  if (ctx.fuel == 0) {
    throw RunErrorEx{{RunError::Kind::FuelExhausted, "", at}};
  }
  --ctx.fuel;
  ++ctx.steps;
}

void exec(const Stmt& s, ExecCtx& ctx) {
  if (ctx.hooks && ctx.hooks->onEnter) ctx.hooks->onEnter(s.id, ctx.state);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) {
          charge(ctx, s.id);
          std::int64_t value;
          try {
            value = evalAOrThrow(n.rhs, ctx.state);
          } catch (RunErrorEx& ex) {
            if (ex.error.kind == RunError::Kind::ArithmeticOverflow) {
              ex.error.node = s.id;
            }
            throw;
          }
          if (auto e = exprIdOf(n.rhs)) ++ctx.evals[*e];
          ctx.state[n.var] = value;
        } else if constexpr (std::is_same_v<T, Skip>) {
          // skip_ns: no effect, no cost.
        } else if constexpr (std::is_same_v<T, Seq>) {
          exec(*n.first, ctx);
          exec(*n.second, ctx);
        } else if constexpr (std::is_same_v<T, If>) {
          charge(ctx, s.id);
          if (evalBOrThrow(n.cond, ctx.state)) {
            exec(*n.thenBranch, ctx);
          } else {
            exec(*n.elseBranch, ctx);
          }
        } else if constexpr (std::is_same_v<T, While>) {
          for (;;) {
            charge(ctx, s.id);
            if (!evalBOrThrow(n.cond, ctx.state)) break;
            exec(*n.body, ctx);
          }
        } else {
          charge(ctx, s.id);
          std::vector<int> order = ctx.sched->orderFor(s.id, n.threads.size());
          for (int idx : order) {
            exec(*n.threads[static_cast<std::size_t>(idx)], ctx);
          }
        }
      },
      s.node);
  if (ctx.hooks && ctx.hooks->onExit) ctx.hooks->onExit(s.id, ctx.state);
}

}  // namespace

std::variant<std::int64_t, RunError> evalA(const AExpr& a, const State& s) {
  try {
    return evalAOrThrow(a, s);
  } catch (const RunErrorEx& ex) {
    return ex.error;
  }
}

std::variant<bool, RunError> evalB(const BExpr& b, const State& s) {
  try {
    return evalBOrThrow(b, s);
  } catch (const RunErrorEx& ex) {
    return ex.error;
  }
}

RunOutcome run(const Program& p, State initial, const Schedule& sched,
               std::uint64_t fuel, const RunHooks* hooks) {
  ExecCtx ctx;
  ctx.state = std::move(initial);
  ctx.fuel = fuel;
  ctx.sched = &sched;
  ctx.hooks = hooks;
  try {
    if (p.root) exec(*p.root, ctx);
  } catch (const RunErrorEx& ex) {
    return ex.error;
  }
  return RunResult{std::move(ctx.state), std::move(ctx.evals), ctx.steps};
}

std::vector<std::pair<NodeId, std::size_t>> forkNodes(const Program& p) {
  std::vector<std::pair<NodeId, std::size_t>> out;
  forEachNode(p, [&](const Stmt& s) {
    if (const auto* f = std::get_if<Fork>(&s.node)) {
      out.emplace_back(s.id, f->threads.size());
    }
  });
  return out;
}

std::vector<Schedule> allSchedules(const Program& p,
                                   const ScheduleBounds& bounds) {
  auto forks = forkNodes(p);
  if (forks.size() > bounds.maxForks) {
    throw ScheduleBoundError(
        "program has " + std::to_string(forks.size()) +
            " fork statements; at most " + std::to_string(bounds.maxForks) +
            " are supported for schedule enumeration",
        forks[bounds.maxForks].first);
  }
  for (const auto& [node, threads] : forks) {
    if (threads > bounds.maxThreads) {
      throw ScheduleBoundError(
          "fork node " + std::to_string(node) + " has " +
              std::to_string(threads) + " threads; at most " +
              std::to_string(bounds.maxThreads) +
              " are supported for schedule enumeration",
          node);
    }
  }

  std::vector<Schedule> out;
  out.emplace_back();
  for (const auto& [node, threads] : forks) {
    std::vector<int> perm(threads);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<Schedule> next;
    next.reserve(out.size() * perms.size());
    for (const auto& base : out) {
      for (const auto& q : perms) {
        Schedule s = base;
        s.perms[node] = q;
        next.push_back(std::move(s));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace fwhile
