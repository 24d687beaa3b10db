#include "fwhile/oracle.hpp"

#include <algorithm>
#include <map>

namespace fwhile::oracle {

namespace {

using Mask = ExprUniverse::Mask;

struct Builder {
  const ExprUniverse& u;
  const ScheduleBounds& bounds;
  std::size_t maxPaths;

  std::map<std::string, std::uint32_t> varIds;
  Paths out;
  std::size_t forksSeen{0};

  // Context chains: one entry per (fork node, thread index) nesting level.
  using Context = std::vector<std::pair<NodeId, int>>;
  std::vector<Context> contexts{Context{}};

  std::uint32_t internVar(const std::string& name) {
    auto it = varIds.find(name);
    if (it != varIds.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(out.varNames.size());
    varIds.emplace(name, id);
    out.varNames.push_back(name);
    out.varKillMask.push_back(modMask(name, u));
    return id;
  }

  std::uint16_t contextId(const Context& c) {
    for (std::size_t i = 0; i < contexts.size(); ++i) {
      if (contexts[i] == c) return static_cast<std::uint16_t>(i);
    }
    contexts.push_back(c);
    return static_cast<std::uint16_t>(contexts.size() - 1);
  }

  void assignContexts(const Stmt& s, const Context& c) {
    if (s.id >= out.contextOf.size()) out.contextOf.resize(s.id + 1, 0);
    out.contextOf[s.id] = contextId(c);
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Seq>) {
            assignContexts(*n.first, c);
            assignContexts(*n.second, c);
          } else if constexpr (std::is_same_v<T, If>) {
            assignContexts(*n.thenBranch, c);
            assignContexts(*n.elseBranch, c);
          } else if constexpr (std::is_same_v<T, While>) {
            assignContexts(*n.body, c);
          } else if constexpr (std::is_same_v<T, Fork>) {
            for (std::size_t i = 0; i < n.threads.size(); ++i) {
              Context inner = c;
              inner.emplace_back(s.id, static_cast<int>(i));
              assignContexts(*n.threads[i], inner);
            }
          }
        },
        s.node);
  }

  void checkPathCount(std::size_t n) {
    if (n > maxPaths) {
      throw PathBoundError("path enumeration exceeds " +
                           std::to_string(maxPaths) + " paths");
    }
  }

  // Extends every partial path with the event streams of s.
  void build(const Stmt& s, std::vector<std::vector<Event>>& partials) {
    for (auto& p : partials) {
      p.push_back({Event::Kind::VisitPre, s.id, 0});
    }
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Assign>) {
            auto e = exprIdOf(n.rhs);
            std::uint32_t var = internVar(n.var);
            for (auto& p : partials) {
              if (e) {
                p.push_back({Event::Kind::Eval, s.id,
                             static_cast<std::uint32_t>(u.index.at(*e))});
              }
              p.push_back({Event::Kind::Kill, s.id, var});
            }
          } else if constexpr (std::is_same_v<T, Skip>) {
            // no events
          } else if constexpr (std::is_same_v<T, Seq>) {
            build(*n.first, partials);
            build(*n.second, partials);
          } else if constexpr (std::is_same_v<T, If>) {
            auto thenSide = partials;
            auto elseSide = std::move(partials);
            build(*n.thenBranch, thenSide);
            build(*n.elseBranch, elseSide);
            partials = std::move(thenSide);
            partials.insert(partials.end(),
                            std::make_move_iterator(elseSide.begin()),
                            std::make_move_iterator(elseSide.end()));
            checkPathCount(partials.size());
          } else if constexpr (std::is_same_v<T, While>) {
            throw PathBoundError(
                "path enumeration requires a loop-free program");
          } else {
            if (n.threads.size() > bounds.maxThreads) {
              throw PathBoundError("fork node " + std::to_string(s.id) +
                                   " exceeds the thread bound");
            }
            if (++forksSeen > bounds.maxForks) {
              throw PathBoundError("program exceeds the fork bound");
            }
            std::vector<int> perm(n.threads.size());
            for (std::size_t i = 0; i < perm.size(); ++i) {
              perm[i] = static_cast<int>(i);
            }
            std::vector<std::vector<Event>> merged;
            do {
              auto branch = partials;
              for (int idx : perm) {
                build(*n.threads[static_cast<std::size_t>(idx)], branch);
              }
              merged.insert(merged.end(),
                            std::make_move_iterator(branch.begin()),
                            std::make_move_iterator(branch.end()));
              checkPathCount(merged.size());
            } while (std::next_permutation(perm.begin(), perm.end()));
            partials = std::move(merged);
          }
        },
        s.node);
    for (auto& p : partials) {
      p.push_back({Event::Kind::VisitPost, s.id, 0});
    }
  }
};

}  // namespace

Paths enumeratePaths(const Program& p, const ExprUniverse& u,
                     const ScheduleBounds& bounds, std::size_t maxPaths) {
  Builder b{u, bounds, maxPaths, {}, {}, 0, {Builder::Context{}}};
  b.out.nodes = nodeCount(p);
  b.out.contextOf.assign(b.out.nodes, 0);
  if (p.root) {
    b.assignContexts(*p.root, {});
    std::vector<std::vector<Event>> partials(1);
    b.build(*p.root, partials);
    b.out.paths = std::move(partials);
  }
  // Sibling table: two contexts are siblings when they diverge at the
  // same fork into different threads.
  std::size_t nc = b.contexts.size();
  b.out.siblings.assign(nc, std::vector<bool>(nc, false));
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      const auto& a = b.contexts[i];
      const auto& c = b.contexts[j];
      std::size_t k = 0;
      while (k < a.size() && k < c.size() && a[k] == c[k]) ++k;
      b.out.siblings[i][j] = k < a.size() && k < c.size() &&
                             a[k].first == c[k].first &&
                             a[k].second != c[k].second;
    }
  }
  return b.out;
}

namespace {

struct PointIndex {
  // Position of VisitPre / VisitPost per node in one path, -1 if absent.
  std::vector<int> pre, post;

  explicit PointIndex(std::size_t nodes, const std::vector<Event>& path)
      : pre(nodes, -1), post(nodes, -1) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      const Event& ev = path[i];
      if (ev.kind == Event::Kind::VisitPre) pre[ev.node] = static_cast<int>(i);
      if (ev.kind == Event::Kind::VisitPost)
        post[ev.node] = static_cast<int>(i);
    }
  }
};

}  // namespace

PointTables compute(const Paths& paths, const MceTable& mce,
                    const ExprUniverse& u) {
  const std::size_t nodes = paths.nodes;
  PointTables out;
  out.antPre.assign(nodes, 0);
  out.antPost.assign(nodes, 0);
  out.cpavPre.assign(nodes, 0);
  out.cpavPost.assign(nodes, 0);

  std::vector<PointIndex> indexes;
  indexes.reserve(paths.count());
  for (const auto& path : paths.paths) {
    indexes.emplace_back(nodes, path);
  }

  auto sibling = [&](NodeId a, NodeId b) {
    return paths.siblings[paths.contextOf[a]][paths.contextOf[b]];
  };

  // Anticipated at a position: on this path, from here, some evaluation
  // of e at a non-sibling node d with e not blacklisted at d happens
  // before any kill of an operand at a node compatible with both ends.
  auto antAt = [&](const std::vector<Event>& path, std::size_t from,
                   NodeId q) -> Mask {
    Mask found = 0;
    Mask want = u.all() & ~mce.at(q);
    for (std::size_t i = from; i < path.size() && (want & ~found); ++i) {
      const Event& ev = path[i];
      if (ev.kind != Event::Kind::Eval) continue;
      NodeId d = ev.node;
      if (sibling(d, q)) continue;
      Mask bit = Mask{1} << ev.data;
      if (!(want & ~found & bit)) continue;
      if (mce.at(d) & bit) continue;
      bool killed = false;
      for (std::size_t k = from; k < i && !killed; ++k) {
        const Event& kv = path[k];
        if (kv.kind != Event::Kind::Kill) continue;
        if (!(paths.varKillMask[kv.data] & bit)) continue;
        if (sibling(kv.node, q) || sibling(kv.node, d)) continue;
        killed = true;
      }
      if (!killed) found |= bit;
    }
    return found & want;
  };

  // Must over paths.
  for (std::size_t n = 0; n < nodes; ++n) {
    Mask pre = u.all() & ~mce.at(n);
    Mask post = pre;
    bool seen = false;
    for (std::size_t pi = 0; pi < paths.count(); ++pi) {
      int atPre = indexes[pi].pre[n];
      int atPost = indexes[pi].post[n];
      if (atPre < 0) continue;
      seen = true;
      pre &= antAt(paths.paths[pi], static_cast<std::size_t>(atPre),
                   static_cast<NodeId>(n));
      post &= antAt(paths.paths[pi], static_cast<std::size_t>(atPost),
                    static_cast<NodeId>(n));
    }
    out.antPre[n] = seen ? pre : 0;
    out.antPost[n] = seen ? post : 0;
  }

  // Available at a position: some earlier evaluation of e at a
  // non-sibling, non-blacklisted node g with e anticipated just after it,
  // no operand killed since, and e anticipated and not blacklisted at
  // every visited point on the route between.
  auto antAtPoint = [&](const Event& ev) -> Mask {
    return ev.kind == Event::Kind::VisitPre ? out.antPre[ev.node]
                                            : out.antPost[ev.node];
  };

  auto cpavAt = [&](const std::vector<Event>& path, std::size_t upto,
                    NodeId q) -> Mask {
    Mask found = 0;
    Mask want = u.all() & ~mce.at(q);
    for (std::size_t j = upto; j-- > 0 && (want & ~found);) {
      const Event& ev = path[j];
      if (ev.kind != Event::Kind::Eval) continue;
      NodeId g = ev.node;
      if (sibling(g, q)) continue;
      Mask bit = Mask{1} << ev.data;
      if (!(want & ~found & bit)) continue;
      if (mce.at(g) & bit) continue;
      if (!(out.antPost[g] & bit)) continue;
      bool blocked = false;
      for (std::size_t k = j + 1; k < upto && !blocked; ++k) {
        const Event& rv = path[k];
        if (sibling(rv.node, q) || sibling(rv.node, g)) continue;
        if (rv.kind == Event::Kind::Kill) {
          blocked = (paths.varKillMask[rv.data] & bit) != 0;
        } else if (rv.kind == Event::Kind::VisitPre ||
                   rv.kind == Event::Kind::VisitPost) {
          blocked = !(antAtPoint(rv) & bit) || (mce.at(rv.node) & bit) != 0;
        }
      }
      if (!blocked) found |= bit;
    }
    return found & want;
  };

  // May over paths, gated by anticipability at the point itself.
  for (std::size_t n = 0; n < nodes; ++n) {
    Mask pre = 0;
    Mask post = 0;
    for (std::size_t pi = 0; pi < paths.count(); ++pi) {
      int atPre = indexes[pi].pre[n];
      int atPost = indexes[pi].post[n];
      if (atPre < 0) continue;
      pre |= cpavAt(paths.paths[pi], static_cast<std::size_t>(atPre),
                    static_cast<NodeId>(n));
      post |= cpavAt(paths.paths[pi], static_cast<std::size_t>(atPost),
                     static_cast<NodeId>(n));
    }
    out.cpavPre[n] = pre & out.antPre[n];
    out.cpavPost[n] = post & out.antPost[n];
  }

  return out;
}

}  // namespace fwhile::oracle
