#include "fwhile/modified.hpp"

#include <algorithm>

namespace fwhile {

namespace {

VarSet setUnion(const VarSet& a, const VarSet& b) {
  VarSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

// Annotates s from the incoming set and returns the post set.
VarSet modRec(const Stmt& s, VarSet pre, ModAnnotation& ann) {
  auto& entry = ann.byNode[s.id];
  entry.pre = pre;
  VarSet post = std::visit(
      [&](const auto& n) -> VarSet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Assign>) {
          VarSet out = pre;
          out.insert(n.var);
          return out;
        } else if constexpr (std::is_same_v<T, Skip>) {
          return pre;
        } else if constexpr (std::is_same_v<T, Seq>) {
          VarSet mid = modRec(*n.first, pre, ann);
          return modRec(*n.second, std::move(mid), ann);
        } else if constexpr (std::is_same_v<T, If>) {
          VarSet thenPost = modRec(*n.thenBranch, pre, ann);
          VarSet elsePost = modRec(*n.elseBranch, pre, ann);
          return setUnion(thenPost, elsePost);
        } else if constexpr (std::is_same_v<T, While>) {
          // Fixpoint of post = pre + post(body under post); closed form is
          // pre + assignedVars(body).
          VarSet fix = setUnion(pre, assignedVars(*n.body));
          modRec(*n.body, fix, ann);
          return fix;
        } else {
          VarSet out = pre;
          for (const auto& t : n.threads) {
            VarSet threadPost = modRec(*t, pre, ann);
            out.insert(threadPost.begin(), threadPost.end());
          }
          return out;
        }
      },
      s.node);
  entry.post = post;
  return post;
}

}  // namespace

ModAnnotation modifiedAnalysis(const Program& p, VarSet m0) {
  ModAnnotation ann;
  ann.byNode.resize(nodeCount(p));
  if (p.root) modRec(*p.root, std::move(m0), ann);
  return ann;
}

std::set<NodeId> subStatements(const Stmt& s) {
  std::set<NodeId> out;
  forEachNode(s, [&](const Stmt& n) { out.insert(n.id); });
  return out;
}

namespace {

void concRec(const Stmt& s, const VarSet& inherited, const ModAnnotation& ann,
             ConcMap& cmap) {
  cmap.byNode[s.id] = inherited;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Seq>) {
          concRec(*n.first, inherited, ann, cmap);
          concRec(*n.second, inherited, ann, cmap);
        } else if constexpr (std::is_same_v<T, If>) {
          concRec(*n.thenBranch, inherited, ann, cmap);
          concRec(*n.elseBranch, inherited, ann, cmap);
        } else if constexpr (std::is_same_v<T, While>) {
          concRec(*n.body, inherited, ann, cmap);
        } else if constexpr (std::is_same_v<T, Fork>) {
          const VarSet& forkPre = ann.at(s.id).pre;
          for (std::size_t i = 0; i < n.threads.size(); ++i) {
            VarSet base = inherited;
            for (std::size_t j = 0; j < n.threads.size(); ++j) {
              if (j == i) continue;
              // Sibling's newly modified variables: m_j minus the fork's
              // pre set.
              const VarSet& post = ann.at(n.threads[j]->id).post;
              for (const auto& v : post) {
                if (!forkPre.count(v)) base.insert(v);
              }
            }
            concRec(*n.threads[i], base, ann, cmap);
          }
        }
      },
      s.node);
}

}  // namespace

ConcMap concurrentModified(const Program& p, const ModAnnotation& ann) {
  ConcMap cmap;
  cmap.byNode.resize(nodeCount(p));
  if (p.root) concRec(*p.root, {}, ann, cmap);
  return cmap;
}

MceTable mceTable(const Program& p, const ConcMap& cmap,
                  const ExprUniverse& u) {
  MceTable table;
  table.byNode.resize(nodeCount(p), 0);
  for (std::size_t n = 0; n < table.byNode.size(); ++n) {
    ExprUniverse::Mask m = 0;
    for (const auto& v : cmap.byNode[n]) m |= modMask(v, u);
    table.byNode[n] = m;
  }
  return table;
}

std::set<ExprId> mce(NodeId node, const ConcMap& cmap,
                     const std::set<ExprId>& universe) {
  std::set<ExprId> out;
  for (const auto& v : cmap.at(node)) {
    auto hit = modSet(v, universe);
    out.insert(hit.begin(), hit.end());
  }
  return out;
}

}  // namespace fwhile
