#include "fwhile/json_io.hpp"

#include "fwhile/printer.hpp"

namespace fwhile {

State stateFromJson(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("initial state must be a JSON object");
  }
  State s;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number_integer()) {
      throw std::invalid_argument("state value for '" + key +
                                  "' must be an integer");
    }
    s[key] = value.get<std::int64_t>();
  }
  return s;
}

json stateToJson(const State& s) {
  json out = json::object();
  for (const auto& [var, value] : s) out[var] = value;
  return out;
}

json runResultToJson(const RunResult& r) {
  json evals = json::object();
  for (const auto& [e, n] : r.evalCount) {
    if (n) evals[exprKey(e)] = n;
  }
  return json{{"state", stateToJson(r.state)},
              {"evalCount", evals},
              {"stepCount", r.stepCount}};
}

json runErrorToJson(const RunError& e) {
  json err{{"kind", e.kindName()}};
  if (e.kind == RunError::Kind::UnboundVariable) {
    err["variable"] = e.variable;
  } else {
    err["node"] = e.node;
  }
  return json{{"error", err}};
}

namespace {

const char* kindName(const Stmt& s) {
  return std::visit(
      [](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) return "assign";
        else if constexpr (std::is_same_v<T, Skip>) return "skip";
        else if constexpr (std::is_same_v<T, Seq>) return "seq";
        else if constexpr (std::is_same_v<T, If>) return "if";
        else if constexpr (std::is_same_v<T, While>) return "while";
        else return "fork";
      },
      s.node);
}

json varsToJson(const VarSet& vars) {
  json out = json::array();
  for (const auto& v : vars) out.push_back(v);
  return out;
}

}  // namespace

json analysisToJson(const Program& p, const Analysis& a) {
  json nodes = json::array();
  forEachNode(p, [&](const Stmt& s) {
    json entry{
        {"id", s.id},
        {"kind", kindName(s)},
        {"text", stmtHead(s)},
        {"mPre", varsToJson(a.modified.at(s.id).pre)},
        {"mPost", varsToJson(a.modified.at(s.id).post)},
        {"C", varsToJson(a.concurrent.at(s.id))},
        {"mce", a.universe.toKeys(a.mce.at(s.id))},
        {"antPre", a.universe.toKeys(a.pre.antPre[s.id])},
        {"antPost", a.universe.toKeys(a.pre.antPost[s.id])},
        {"cpavPre", a.universe.toKeys(a.pre.cpavPre[s.id])},
        {"cpavPost", a.universe.toKeys(a.pre.cpavPost[s.id])},
    };
    nodes.push_back(std::move(entry));
  });
  json universe = json::array();
  for (const auto& e : a.universe.exprs) universe.push_back(exprKey(e));
  return json{{"universe", universe}, {"nodes", nodes}};
}

json astToJson(const Stmt& s) {
  auto litJson = [](const Literal& l) -> json {
    if (l.isVar()) return json{{"var", l.name}};
    return json{{"num", l.value}};
  };
  auto aexprJson = [&](const AExpr& a) -> json {
    if (a.trivial()) return litJson(a.first);
    return json{{"op", opSymbol(*a.op)},
                {"lhs", litJson(a.first)},
                {"rhs", litJson(a.second)}};
  };
  auto bexprJson = [&](const BExpr& b) -> json {
    return json{{"op", opSymbol(b.op)},
                {"lhs", litJson(b.lhs)},
                {"rhs", litJson(b.rhs)}};
  };

  json out{{"id", s.id}, {"kind", kindName(s)}};
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) {
          out["var"] = n.var;
          out["rhs"] = aexprJson(n.rhs);
        } else if constexpr (std::is_same_v<T, Seq>) {
          out["first"] = astToJson(*n.first);
          out["second"] = astToJson(*n.second);
        } else if constexpr (std::is_same_v<T, If>) {
          out["cond"] = bexprJson(n.cond);
          out["then"] = astToJson(*n.thenBranch);
          out["else"] = astToJson(*n.elseBranch);
        } else if constexpr (std::is_same_v<T, While>) {
          out["cond"] = bexprJson(n.cond);
          out["body"] = astToJson(*n.body);
        } else if constexpr (std::is_same_v<T, Fork>) {
          json threads = json::array();
          for (const auto& t : n.threads) threads.push_back(astToJson(*t));
          out["threads"] = std::move(threads);
        }
      },
      s.node);
  return out;
}

json astToJson(const Program& p) {
  if (!p.root) return nullptr;
  return astToJson(*p.root);
}

json rewritesToJson(const OptimizedProgram& opt) {
  json temps = json::object();
  for (const auto& e : opt.temps.order) {
    temps[exprKey(e)] = opt.temps.names.at(e);
  }
  json rewrites = json::array();
  for (const auto& r : opt.rewrites) {
    rewrites.push_back(json{{"node", r.node},
                            {"kind", rewriteKindName(r.kind)},
                            {"expr", exprKey(r.expr)}});
  }
  return json{{"temps", temps}, {"rewrites", rewrites}};
}

}  // namespace fwhile
