#include "lamgraph/fischer.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lamgraph {
namespace {

// pred[a][v] = the unique source of the a-labeled edge into v, or -1.
// Uniqueness is exactly left-resolving, so callers check that first.
std::vector<std::vector<int>> predecessor_table(const LabeledGraph& g) {
  std::vector<std::vector<int>> pred(g.alphabet.size(),
                                     std::vector<int>(g.vertex_count(), -1));
  for (const auto& e : g.edges) pred[e.label][e.dst] = e.src;
  return pred;
}

// One round of partition refinement on the reversed graph: vertices stay
// together when their current classes agree and, per symbol, predecessor
// existence and predecessor classes agree.  New ids follow first
// appearance, so class order is by least member.  Returns the class count.
int refine_once(const std::vector<std::vector<int>>& pred,
                std::vector<int>& cls) {
  const int n = static_cast<int>(cls.size());
  std::map<std::vector<int>, int> ids;
  std::vector<int> next(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> sig;
    sig.reserve(pred.size() + 1);
    sig.push_back(cls[v]);
    for (const auto& row : pred) sig.push_back(row[v] < 0 ? -1 : cls[row[v]]);
    auto [it, fresh] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
    (void)fresh;
    next[v] = it->second;
  }
  cls = std::move(next);
  return static_cast<int>(ids.size());
}

// Vertex classes collapse to one vertex each; names join with '+', edges
// dedup through normalize().
LabeledGraph quotient_graph(const LabeledGraph& g, const std::vector<int>& cls,
                            int count) {
  LabeledGraph q;
  q.alphabet = g.alphabet;
  q.vertex_names.assign(count, "");
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::string& name = q.vertex_names[cls[v]];
    if (!name.empty()) name += '+';
    name += g.vertex_names[v];
  }
  q.edges.reserve(g.edges.size());
  for (const auto& e : g.edges) q.edges.push_back({cls[e.src], cls[e.dst], e.label});
  q.normalize();
  return q;
}

// Runs refinement to its fixpoint and returns the stable class vector.
std::vector<int> stable_partition(const std::vector<std::vector<int>>& pred,
                                  int n, int* count_out) {
  std::vector<int> cls(n, 0);
  int count = n > 0 ? 1 : 0;
  while (n > 0) {
    std::vector<int> next = cls;
    int c = refine_once(pred, next);
    if (c == count) break;  // refinement only splits, so equal count = fixpoint
    cls = std::move(next);
    count = c;
  }
  if (count_out) *count_out = count;
  return cls;
}

// Factor-language equality of two left-resolving graphs, decided on the
// deterministic automaton of predecessor subsets (a word is admissible iff
// its reverse is readable into some vertex).  Exact; budget-charged.
bool same_language(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.alphabet != b.alphabet) return false;
  if (a.vertex_count() > 63 || b.vertex_count() > 63)
    throw ResourceLimit("language comparison supports at most 63 vertices");
  auto pa = predecessor_table(a), pb = predecessor_table(b);
  auto step = [](const std::vector<std::vector<int>>& pred, std::uint64_t s,
                 Symbol sym) {
    std::uint64_t out = 0;
    for (std::uint64_t m = s; m;) {
      int v = __builtin_ctzll(m);
      m &= m - 1;
      if (pred[sym][v] >= 0) out |= std::uint64_t{1} << pred[sym][v];
    }
    return out;
  };
  const std::uint64_t sa = (std::uint64_t{1} << a.vertex_count()) - 1;
  const std::uint64_t sb = (std::uint64_t{1} << b.vertex_count()) - 1;
  CellBudget budget;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::deque<std::pair<std::uint64_t, std::uint64_t>> queue;
  seen.insert({sa, sb});
  queue.push_back({sa, sb});
  while (!queue.empty()) {
    auto [s, t] = queue.front();
    queue.pop_front();
    for (Symbol sym = 0; sym < a.alphabet.size(); ++sym) {
      std::uint64_t s2 = step(pa, s, sym), t2 = step(pb, t, sym);
      if ((s2 == 0) != (t2 == 0)) return false;
      if (s2 == 0) continue;  // dead in both
      budget.charge(1);
      if (seen.insert({s2, t2}).second) queue.push_back({s2, t2});
    }
  }
  return true;
}

}  // namespace

std::string CKMatrix::index_name(int r) const {
  const auto& [a, v] = index.at(r);
  return "(" + alphabet.name(a) + "," + vertex_names.at(v) + ")";
}

LabeledGraph predecessor_separate(const LabeledGraph& g) {
  std::string why;
  if (!g.left_resolving(&why)) throw NotLeftResolving("predecessor_separate: " + why);
  LabeledGraph ess = g.essential();
  if (ess.vertex_count() == 0) return ess;
  auto pred = predecessor_table(ess);
  int count = 0;
  auto cls = stable_partition(pred, ess.vertex_count(), &count);
  return quotient_graph(ess, cls, count);
}

LabeledGraph fischer_cover(const SubshiftSpec& spec) {
  const LabeledGraph* gp = spec.graph();
  if (!gp)
    throw NotSofic("fischer_cover: backend '" + spec.backend_name() +
                   "' is not graph-presented");
  LabeledGraph merged = predecessor_separate(*gp);
  if (merged.vertex_count() == 0)
    throw NotIrreducible("fischer_cover: the presented language is empty");
  if (merged.strongly_connected()) return merged;

  // Reducible quotient: the language is irreducible exactly when one
  // strongly connected component still presents all of it.
  auto ids = merged.scc_ids();
  int nc = 1 + *std::max_element(ids.begin(), ids.end());
  for (int c = 0; c < nc; ++c) {
    std::vector<int> to_sub(merged.vertex_count(), -1);
    LabeledGraph sub;
    sub.alphabet = merged.alphabet;
    for (int v = 0; v < merged.vertex_count(); ++v) {
      if (ids[v] != c) continue;
      to_sub[v] = static_cast<int>(sub.vertex_names.size());
      sub.vertex_names.push_back(merged.vertex_names[v]);
    }
    for (const auto& e : merged.edges)
      if (to_sub[e.src] >= 0 && to_sub[e.dst] >= 0)
        sub.edges.push_back({to_sub[e.src], to_sub[e.dst], e.label});
    sub.normalize();
    if (sub.edges.empty()) continue;  // lone vertex without a loop
    if (same_language(sub, merged)) return predecessor_separate(sub);
  }
  throw NotIrreducible(
      "fischer_cover: no strongly connected component presents the full "
      "language; the subshift is not irreducible");
}

LambdaGraphTruncation min_lgs_from_fischer(const LabeledGraph& g, int depth,
                                           int* stabilization_level) {
  if (depth < 1) throw SchemaError("min_lgs_from_fischer: depth must be >= 1");
  std::string why;
  if (!g.left_resolving(&why)) throw NotLeftResolving("min_lgs_from_fischer: " + why);
  if (g.vertex_count() == 0 || !g.is_essential())
    throw SchemaError(
        "min_lgs_from_fischer: graph must be essential (every vertex on a "
        "bi-infinite path)");

  const int n = g.vertex_count();
  auto pred = predecessor_table(g);

  // parts[l] identifies vertices with equal length-l predecessor word sets;
  // counts[l] is the number of classes.  The sequence freezes at K.
  std::vector<std::vector<int>> parts{std::vector<int>(n, 0)};
  std::vector<int> counts{1};
  int stable_at = -1;
  while (stable_at < 0 || static_cast<int>(parts.size()) <= depth) {
    std::vector<int> next = parts.back();
    int c = refine_once(pred, next);
    if (stable_at < 0 && c == counts.back())
      stable_at = static_cast<int>(parts.size()) - 1;
    parts.push_back(std::move(next));
    counts.push_back(c);
  }
  if (stabilization_level) *stabilization_level = stable_at;

  // Lexicographically least length-l reading word per vertex; class members
  // share predecessor sets, hence the value.
  std::vector<Word> lex(n);

  LambdaGraphTruncation out;
  out.alphabet = g.alphabet;
  out.vertex_names.resize(depth + 1);
  out.representatives.resize(depth + 1);
  out.edges.resize(depth);
  out.iota.resize(depth);
  for (int l = 0; l <= depth; ++l) {
    const auto& cls = parts[l];
    out.vertex_names[l].assign(counts[l], "");
    out.representatives[l].resize(counts[l]);
    std::vector<int> first(counts[l], -1);
    for (int v = 0; v < n; ++v) {
      std::string& name = out.vertex_names[l][cls[v]];
      if (!name.empty()) name += '+';
      name += g.vertex_names[v];
      if (first[cls[v]] < 0) first[cls[v]] = v;
    }
    for (int i = 0; i < counts[l]; ++i) out.representatives[l][i] = lex[first[i]];
    if (l == depth) break;

    const auto& fine = parts[l + 1];
    std::vector<int> firstfine(counts[l + 1], -1);
    for (int v = 0; v < n; ++v)
      if (firstfine[fine[v]] < 0) firstfine[fine[v]] = v;
    out.iota[l].resize(counts[l + 1]);
    for (int j = 0; j < counts[l + 1]; ++j) {
      int w = firstfine[j];
      out.iota[l][j] = cls[w];
      for (Symbol a = 0; a < g.alphabet.size(); ++a)
        if (pred[a][w] >= 0)
          out.edges[l].push_back({cls[pred[a][w]], j, a});
    }
    std::sort(out.edges[l].begin(), out.edges[l].end());

    // advance the reading words one level
    std::vector<Word> nextlex(n);
    for (int v = 0; v < n; ++v) {
      bool any = false;
      for (Symbol a = 0; a < g.alphabet.size(); ++a) {
        if (pred[a][v] < 0) continue;
        Word cand = lex[pred[a][v]];
        cand.push_back(a);
        if (!any || cand < nextlex[v]) nextlex[v] = std::move(cand);
        any = true;
      }
    }
    lex = std::move(nextlex);
  }
  out.check_well_formed();
  return out;
}

CKMatrix ck_matrix(const LabeledGraph& g) {
  std::string why;
  if (!g.left_resolving(&why)) throw NotLeftResolving("ck_matrix: " + why);
  if (!g.is_essential() || !g.strongly_connected())
    throw NotIrreducible("ck_matrix: graph must be essential and strongly connected");

  CKMatrix m;
  m.alphabet = g.alphabet;
  m.vertex_names = g.vertex_names;
  auto pred = predecessor_table(g);
  for (Symbol a = 0; a < g.alphabet.size(); ++a)
    for (int v = 0; v < g.vertex_count(); ++v)
      if (pred[a][v] >= 0) m.index.push_back({a, v});

  std::set<std::tuple<int, Symbol, int>> arcs;
  for (const auto& e : g.edges) arcs.insert({e.src, e.label, e.dst});
  m.entries.assign(m.size(), std::vector<int>(m.size(), 0));
  for (int r = 0; r < m.size(); ++r)
    for (int c = 0; c < m.size(); ++c) {
      const auto& [b, j] = m.index[c];
      m.entries[r][c] = arcs.count({m.index[r].second, b, j}) ? 1 : 0;
    }
  return m;
}

}  // namespace lamgraph
