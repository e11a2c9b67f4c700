#include "lamgraph/lgs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace lamgraph {

namespace {

// Out-edges of one level block grouped by source vertex.
std::vector<std::vector<LabeledEdge>> by_source(
    const std::vector<LabeledEdge>& block, int m) {
  std::vector<std::vector<LabeledEdge>> out(m);
  for (const auto& e : block) out[e.src].push_back(e);
  return out;
}

std::vector<std::vector<LabeledEdge>> by_target(
    const std::vector<LabeledEdge>& block, int m) {
  std::vector<std::vector<LabeledEdge>> in(m);
  for (const auto& e : block) in[e.dst].push_back(e);
  return in;
}

// proj[k][w] = iota^k applied to vertex w of V_{base+k}, i.e. the ancestor of
// w in V_base.  proj[0] is the identity on V_base.
std::vector<std::vector<int>> ancestor_table(const LambdaGraphTruncation& lgs,
                                             int base) {
  std::vector<std::vector<int>> proj;
  proj.emplace_back(lgs.level_size(base));
  for (int i = 0; i < lgs.level_size(base); ++i) proj[0][i] = i;
  for (int lv = base + 1; lv <= lgs.depth(); ++lv) {
    std::vector<int> row(lgs.level_size(lv));
    for (int w = 0; w < lgs.level_size(lv); ++w) {
      row[w] = proj.back()[lgs.iota[lv - 1][w]];
    }
    proj.push_back(std::move(row));
  }
  return proj;
}

// Predecessor word sets for every vertex of every level, by downward DP.
std::vector<std::vector<std::set<Word>>> predecessor_sets(
    const LambdaGraphTruncation& lgs, CellBudget& budget) {
  std::vector<std::vector<std::set<Word>>> words(lgs.depth() + 1);
  words[0].assign(1, {Word{}});
  for (int l = 0; l < lgs.depth(); ++l) {
    words[l + 1].assign(lgs.level_size(l + 1), {});
    for (const auto& e : lgs.edges[l]) {
      for (const Word& w : words[l][e.src]) {
        Word nw = w;
        nw.push_back(e.label);
        budget.charge(nw.size() + 1);
        words[l + 1][e.dst].insert(std::move(nw));
      }
    }
  }
  return words;
}

std::string vref(const LambdaGraphTruncation& lgs, int l, int i) {
  return lgs.vertex_names[l][i];
}

}  // namespace

void LambdaGraphTruncation::check_well_formed() const {
  if (alphabet.size() == 0) throw SchemaError("truncation: empty alphabet");
  if (vertex_names.empty()) throw SchemaError("truncation: no levels");
  const int L = depth();
  if (static_cast<int>(vertex_names.size()) != L + 1) {
    throw SchemaError("truncation: need one vertex level more than edge blocks");
  }
  if (static_cast<int>(iota.size()) != L) {
    throw SchemaError("truncation: need one iota map per edge block");
  }
  if (vertex_names[0].size() != 1) {
    throw SchemaError("truncation: top level must be a single vertex");
  }
  for (int l = 0; l <= L; ++l) {
    if (vertex_names[l].empty()) {
      throw SchemaError("truncation: empty level " + std::to_string(l));
    }
  }
  for (int l = 0; l < L; ++l) {
    for (const auto& e : edges[l]) {
      if (e.src < 0 || e.src >= level_size(l) || e.dst < 0 ||
          e.dst >= level_size(l + 1) || e.label >= alphabet.size()) {
        throw SchemaError("truncation: edge out of range in block " +
                          std::to_string(l));
      }
    }
    if (static_cast<int>(iota[l].size()) != level_size(l + 1)) {
      throw SchemaError("truncation: iota size mismatch at level " +
                        std::to_string(l + 1));
    }
    std::vector<char> hit(level_size(l), 0);
    for (int j = 0; j < level_size(l + 1); ++j) {
      if (iota[l][j] < 0 || iota[l][j] >= level_size(l)) {
        throw SchemaError("truncation: iota out of range at level " +
                          std::to_string(l + 1));
      }
      hit[iota[l][j]] = 1;
    }
    for (int i = 0; i < level_size(l); ++i) {
      if (!hit[i]) {
        throw SchemaError("truncation: iota not surjective onto " + vref(*this, l, i));
      }
    }
  }
  if (!representatives.empty() &&
      static_cast<int>(representatives.size()) != L + 1) {
    throw SchemaError("truncation: representative annotation level mismatch");
  }
  for (int l = 0; l < static_cast<int>(representatives.size()); ++l) {
    if (static_cast<int>(representatives[l].size()) != level_size(l)) {
      throw SchemaError("truncation: representative annotation size mismatch");
    }
  }
}

std::vector<int> LambdaGraphTruncation::iota_orbit_prefix(int l, int i) const {
  if (l < 0 || l > depth() || i < 0 || i >= level_size(l)) {
    throw SchemaError("iota_orbit_prefix: vertex out of range");
  }
  std::vector<int> chain(l + 1);
  chain[l] = i;
  for (int k = l; k > 0; --k) chain[k - 1] = iota[k - 1][chain[k]];
  return chain;
}

ValidationReport validate(const LambdaGraphTruncation& lgs) {
  lgs.check_well_formed();
  const int L = lgs.depth();
  ValidationReport rep;
  rep.left_resolving = rep.predecessor_separated = rep.local_property =
      rep.essential = true;

  // Left-resolving: within a block, (target, label) determines the edge.
  for (int l = 0; l < L; ++l) {
    std::set<std::pair<int, Symbol>> seen;
    for (const auto& e : lgs.edges[l]) {
      if (!seen.insert({e.dst, e.label}).second) {
        rep.left_resolving = false;
        rep.failures.push_back("two edges labeled " + lgs.alphabet.name(e.label) +
                               " enter " + vref(lgs, l + 1, e.dst));
      }
    }
  }

  // Essential: out-edges above the bottom level, in-edges below the top.
  for (int l = 0; l < L; ++l) {
    std::vector<char> has_out(lgs.level_size(l), 0);
    std::vector<char> has_in(lgs.level_size(l + 1), 0);
    for (const auto& e : lgs.edges[l]) {
      has_out[e.src] = 1;
      has_in[e.dst] = 1;
    }
    for (int i = 0; i < lgs.level_size(l); ++i) {
      if (!has_out[i]) {
        rep.essential = false;
        rep.failures.push_back("no out-edge at " + vref(lgs, l, i));
      }
    }
    for (int j = 0; j < lgs.level_size(l + 1); ++j) {
      if (!has_in[j]) {
        rep.essential = false;
        rep.failures.push_back("no in-edge at " + vref(lgs, l + 1, j));
      }
    }
  }

  // Predecessor separation: distinct vertices of a level have distinct
  // predecessor word sets.
  CellBudget budget;
  auto words = predecessor_sets(lgs, budget);
  for (int l = 1; l <= L; ++l) {
    std::map<std::vector<Word>, int> index;
    for (int i = 0; i < lgs.level_size(l); ++i) {
      std::vector<Word> key(words[l][i].begin(), words[l][i].end());
      auto [it, fresh] = index.insert({std::move(key), i});
      if (!fresh) {
        rep.predecessor_separated = false;
        rep.failures.push_back("equal predecessor sets at " +
                               vref(lgs, l, it->second) + " and " +
                               vref(lgs, l, i));
      }
    }
  }

  // Local property: for u in V_{l-1}, v in V_{l+1}, symbol a, the number of
  // a-edges from the fiber over u into v equals the number of a-edges from u
  // into the ancestor of v.
  for (int l = 1; l < L; ++l) {
    const int mu = lgs.level_size(l - 1);
    const int mv = lgs.level_size(l + 1);
    const int S = static_cast<int>(lgs.alphabet.size());
    budget.charge(static_cast<std::size_t>(mu) * mv * S);
    std::vector<int> lhs(static_cast<std::size_t>(mu) * mv * S, 0);
    std::vector<int> rhs(lhs.size(), 0);
    for (const auto& e : lgs.edges[l]) {
      int u = lgs.iota[l - 1][e.src];
      lhs[(static_cast<std::size_t>(u) * mv + e.dst) * S + e.label]++;
    }
    for (const auto& e : lgs.edges[l - 1]) {
      for (int v = 0; v < mv; ++v) {
        if (lgs.iota[l][v] == e.dst) {
          rhs[(static_cast<std::size_t>(e.src) * mv + v) * S + e.label]++;
        }
      }
    }
    for (int u = 0; u < mu && rep.local_property; ++u) {
      for (int v = 0; v < mv && rep.local_property; ++v) {
        for (int a = 0; a < S; ++a) {
          std::size_t k = (static_cast<std::size_t>(u) * mv + v) * S + a;
          if (lhs[k] != rhs[k]) {
            rep.local_property = false;
            rep.failures.push_back(
                "edge counts differ around (" + vref(lgs, l - 1, u) + ", " +
                vref(lgs, l + 1, v) + ", " + lgs.alphabet.name(a) + "): " +
                std::to_string(lhs[k]) + " below vs " + std::to_string(rhs[k]) +
                " above");
            break;
          }
        }
      }
    }
  }
  return rep;
}

TransitionMatrixSystem transition_matrices(const LambdaGraphTruncation& lgs) {
  lgs.check_well_formed();
  const int L = lgs.depth();
  const int S = static_cast<int>(lgs.alphabet.size());
  TransitionMatrixSystem sys;
  for (int l = 0; l <= L; ++l) sys.level_sizes.push_back(lgs.level_size(l));
  sys.A.resize(L);
  sys.I.resize(L);
  CellBudget budget;
  for (int l = 0; l < L; ++l) {
    const int m0 = lgs.level_size(l);
    const int m1 = lgs.level_size(l + 1);
    budget.charge(static_cast<std::size_t>(m0) * m1 * (S + 1));
    sys.A[l].assign(m0, std::vector<std::vector<int>>(
                            S, std::vector<int>(m1, 0)));
    sys.I[l].assign(m0, std::vector<int>(m1, 0));
    for (const auto& e : lgs.edges[l]) sys.A[l][e.src][e.label][e.dst] = 1;
    for (int j = 0; j < m1; ++j) sys.I[l][lgs.iota[l][j]][j] = 1;
  }
  return sys;
}

std::vector<std::vector<int>> TransitionMatrixSystem::symbol_matrix(
    int l, Symbol a) const {
  if (l < 0 || l >= depth()) throw DepthExceeded("symbol_matrix: no such level");
  std::vector<std::vector<int>> m(level_sizes[l],
                                  std::vector<int>(level_sizes[l + 1], 0));
  for (int i = 0; i < level_sizes[l]; ++i) {
    if (a >= A[l][i].size()) throw SchemaError("symbol_matrix: bad symbol");
    for (int j = 0; j < level_sizes[l + 1]; ++j) m[i][j] = A[l][i][a][j];
  }
  return m;
}

namespace {

std::vector<std::vector<int>> bool_product(
    const std::vector<std::vector<int>>& x,
    const std::vector<std::vector<int>>& y) {
  std::size_t n = x.size(), mid = y.size(), m = mid ? y[0].size() : 0;
  std::vector<std::vector<int>> r(n, std::vector<int>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < mid; ++k) {
      if (!x[i][k]) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (y[k][j]) r[i][j] = 1;
      }
    }
  }
  return r;
}

std::vector<std::vector<int>> identity_matrix(int n) {
  std::vector<std::vector<int>> r(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

}  // namespace

std::vector<std::vector<int>> TransitionMatrixSystem::composite_I(
    int l, int n) const {
  if (l < 0 || n < 0 || l + n > depth()) {
    throw DepthExceeded("composite_I: window outside truncation");
  }
  auto r = identity_matrix(level_sizes[l]);
  for (int t = 0; t < n; ++t) r = bool_product(r, I[l + t]);
  return r;
}

std::vector<std::vector<int>> TransitionMatrixSystem::composite_A(
    int l, const Word& nu) const {
  if (l < 0 || l + static_cast<int>(nu.size()) > depth()) {
    throw DepthExceeded("composite_A: window outside truncation");
  }
  auto r = identity_matrix(level_sizes[l]);
  for (std::size_t t = 0; t < nu.size(); ++t) {
    r = bool_product(r, symbol_matrix(l + static_cast<int>(t), nu[t]));
  }
  return r;
}

std::vector<Word> vertex_predecessors(const LambdaGraphTruncation& lgs, int l,
                                      int i) {
  lgs.check_well_formed();
  if (l < 0 || l > lgs.depth() || i < 0 || i >= lgs.level_size(l)) {
    throw SchemaError("vertex_predecessors: vertex out of range");
  }
  // Backward DP from (l, i): suffixes[u] = words read from u down to v_i^l.
  CellBudget budget;
  std::map<int, std::set<Word>> suffixes{{i, {Word{}}}};
  for (int k = l; k > 0; --k) {
    auto in = by_target(lgs.edges[k - 1], lgs.level_size(k));
    std::map<int, std::set<Word>> up;
    for (const auto& [u, set] : suffixes) {
      for (const auto& e : in[u]) {
        for (const Word& w : set) {
          Word nw;
          nw.reserve(w.size() + 1);
          nw.push_back(e.label);
          nw.insert(nw.end(), w.begin(), w.end());
          budget.charge(nw.size() + 1);
          up[e.src].insert(std::move(nw));
        }
      }
    }
    suffixes = std::move(up);
  }
  auto it = suffixes.find(0);
  if (it == suffixes.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::vector<Word> presented_words(const LambdaGraphTruncation& lgs, int len,
                                  int margin) {
  lgs.check_well_formed();
  if (len < 0 || margin < 0) throw SchemaError("presented_words: bad arguments");
  if (len + margin > lgs.depth()) {
    throw DepthExceeded("presented_words: window of length " +
                        std::to_string(len) + " plus margin " +
                        std::to_string(margin) + " exceeds depth " +
                        std::to_string(lgs.depth()));
  }
  if (len == 0) return {Word{}};
  const int base = lgs.depth() - len;
  CellBudget budget;
  // frontier: distinct (word, end vertex) pairs while scanning the window.
  std::set<std::pair<Word, int>> frontier;
  for (int i = 0; i < lgs.level_size(base); ++i) frontier.insert({Word{}, i});
  for (int t = 0; t < len; ++t) {
    auto out = by_source(lgs.edges[base + t], lgs.level_size(base + t));
    std::set<std::pair<Word, int>> next;
    for (const auto& [w, v] : frontier) {
      for (const auto& e : out[v]) {
        Word nw = w;
        nw.push_back(e.label);
        budget.charge(nw.size() + 1);
        next.insert({std::move(nw), e.dst});
      }
    }
    frontier = std::move(next);
  }
  std::set<Word> words;
  for (const auto& [w, v] : frontier) words.insert(w);
  return {words.begin(), words.end()};
}

Report check_iota_irreducible(const LambdaGraphTruncation& lgs, int level,
                              int bound) {
  lgs.check_well_formed();
  const int L = lgs.depth();
  if (level < 0 || bound < 1) throw SchemaError("check_iota_irreducible: bad arguments");
  if (level + 2 * bound > L) {
    throw DepthExceeded("check_iota_irreducible: needs depth " +
                        std::to_string(level + 2 * bound));
  }
  CellBudget budget;
  const int m = lgs.level_size(level);
  auto proj = ancestor_table(lgs, level);  // proj[k][w]: V_{level+k} -> V_level
  std::vector<std::vector<std::vector<LabeledEdge>>> outs(L);
  for (int lv = level; lv < L; ++lv) {
    outs[lv] = by_source(lgs.edges[lv], lgs.level_size(lv));
  }

  // reach[n] = label-blind n-step forward reach per start vertex of V_level.
  std::vector<std::vector<std::set<int>>> reach(L - level + 1);
  reach[0].resize(m);
  for (int v = 0; v < m; ++v) reach[0][v] = {v};
  for (int n = 0; n < L - level; ++n) {
    reach[n + 1].resize(m);
    for (int v = 0; v < m; ++v) {
      for (int x : reach[n][v]) {
        for (const auto& e : outs[level + n][x]) {
          budget.charge();
          reach[n + 1][v].insert(e.dst);
        }
      }
    }
  }

  for (int u = 0; u < m; ++u) {
    for (int v = 0; v < m; ++v) {
      // W[n]: endpoints of length-n paths from v that project onto u.
      std::vector<std::set<int>> W(bound + 1);
      bool any_bounded = false, any_at_all = false;
      for (int n = 1; n <= L - level; ++n) {
        std::set<int> fiber_hits;
        for (int w : reach[n][v]) {
          if (proj[n][w] == u) fiber_hits.insert(w);
        }
        if (!fiber_hits.empty()) {
          any_at_all = true;
          if (n <= bound) {
            W[n] = std::move(fiber_hits);
            any_bounded = true;
          }
        }
      }
      if (!any_at_all) {
        return Report::no(
            bound,
            "no path from " + vref(lgs, level, v) + " ends in the fiber over " +
                vref(lgs, level, u) + " anywhere in the truncation",
            {vref(lgs, level, u), vref(lgs, level, v)});
      }
      if (!any_bounded) {
        return Report::unknown(bound, "fiber over " + vref(lgs, level, u) +
                                          " unreached from " +
                                          vref(lgs, level, v) +
                                          " within the bound");
      }

      // DFS over label words from u; T = endpoints of paths from u reading
      // the word, R[n] = endpoints of equally labeled paths leaving W[n].
      struct Node {
        Word w;
        std::set<int> T;
        std::vector<std::set<int>> R;
      };
      std::vector<Node> stack;
      {
        Node root;
        root.T = {u};
        root.R.resize(bound + 1);
        for (int n = 1; n <= bound; ++n) root.R[n] = W[n];
        stack.push_back(std::move(root));
      }
      while (!stack.empty()) {
        Node cur = std::move(stack.back());
        stack.pop_back();
        if (static_cast<int>(cur.w.size()) >= bound) continue;
        const int k = static_cast<int>(cur.w.size());
        // proj^n from V_{level+k+1+n} down to V_{level+k+1}.
        auto down = ancestor_table(lgs, level + k + 1);
        for (Symbol a = 0; a < lgs.alphabet.size(); ++a) {
          Node nxt;
          nxt.w = cur.w;
          nxt.w.push_back(a);
          for (int x : cur.T) {
            for (const auto& e : outs[level + k][x]) {
              if (e.label == a) nxt.T.insert(e.dst);
            }
          }
          if (nxt.T.empty()) continue;
          budget.charge(nxt.T.size() + 1);
          nxt.R.resize(bound + 1);
          std::set<int> projected;  // union over n of proj^n applied to R[n]
          for (int n = 1; n <= bound; ++n) {
            if (cur.R[n].empty()) continue;
            for (int y : cur.R[n]) {
              for (const auto& e : outs[level + n + k][y]) {
                if (e.label == a) nxt.R[n].insert(e.dst);
              }
            }
            budget.charge(nxt.R[n].size() + 1);
            for (int y : nxt.R[n]) projected.insert(down[n][y]);
          }
          for (int t : nxt.T) {
            if (!projected.count(t)) {
              return Report::unknown(
                  bound, "path " + lgs.alphabet.word_str(nxt.w) + " from " +
                             vref(lgs, level, u) +
                             " has no projected copy launched from " +
                             vref(lgs, level, v) + " within the bound");
            }
          }
          stack.push_back(std::move(nxt));
        }
      }
    }
  }
  return Report::yes(bound, "all vertex pairs at level " +
                                std::to_string(level) + " verified");
}

Report check_lambda_irreducible(const LambdaGraphTruncation& lgs, int level,
                                int bound) {
  lgs.check_well_formed();
  const int L = lgs.depth();
  if (level < 0 || bound < 1) {
    throw SchemaError("check_lambda_irreducible: bad arguments");
  }
  if (level + bound > L) {
    throw DepthExceeded("check_lambda_irreducible: needs depth " +
                        std::to_string(level + bound));
  }
  CellBudget budget;
  const int m = lgs.level_size(level);
  auto proj = ancestor_table(lgs, level);

  // reach[n][v]: label-blind n-step forward reach.
  std::vector<std::vector<std::set<int>>> reach(bound + 1);
  reach[0].resize(m);
  for (int v = 0; v < m; ++v) reach[0][v] = {v};
  for (int n = 0; n < bound; ++n) {
    auto out = by_source(lgs.edges[level + n], lgs.level_size(level + n));
    reach[n + 1].resize(m);
    for (int v = 0; v < m; ++v) {
      for (int x : reach[n][v]) {
        for (const auto& e : out[x]) {
          budget.charge();
          reach[n + 1][v].insert(e.dst);
        }
      }
    }
  }

  for (int u = 0; u < m; ++u) {
    // fiber[n] = vertices of V_{level+n} projecting onto u.
    for (int v = 0; v < m; ++v) {
      bool ok = false;
      for (int n = 1; n <= bound && !ok; ++n) {
        bool covers = true;
        for (int w = 0; w < lgs.level_size(level + n); ++w) {
          if (proj[n][w] == u && !reach[n][v].count(w)) {
            covers = false;
            break;
          }
        }
        ok = covers;
      }
      if (!ok) {
        return Report::unknown(
            bound, "within the bound some fiber vertex over " +
                       vref(lgs, level, u) + " stays unreached from " +
                       vref(lgs, level, v) +
                       "; deeper levels may still connect them");
      }
    }
  }
  return Report::yes(bound, "every fiber is fully reached at some depth <= " +
                                std::to_string(bound));
}

namespace {

// True when every vertex reachable from (l, i) above the bottom level has
// exactly one out-edge: the emitted label ray is forced all the way to the
// truncation boundary.
bool branch_free_cone(const LambdaGraphTruncation& lgs, int l, int i) {
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> todo{{l, i}};
  while (!todo.empty()) {
    auto [lv, v] = todo.back();
    todo.pop_back();
    if (lv >= lgs.depth() || !seen.insert({lv, v}).second) continue;
    int degree = 0;
    for (const auto& e : lgs.edges[lv]) {
      if (e.src == v) {
        ++degree;
        todo.push_back({lv + 1, e.dst});
      }
    }
    if (degree != 1) return false;
  }
  return true;
}

// Number of distinct label words of length d emitted from (l, i), capped at 2.
int distinct_words_from(const LambdaGraphTruncation& lgs, int l, int i, int d,
                        CellBudget& budget) {
  std::set<std::pair<Word, int>> frontier{{Word{}, i}};
  for (int t = 0; t < d; ++t) {
    auto out = by_source(lgs.edges[l + t], lgs.level_size(l + t));
    std::set<std::pair<Word, int>> next;
    for (const auto& [w, v] : frontier) {
      for (const auto& e : out[v]) {
        Word nw = w;
        nw.push_back(e.label);
        budget.charge(nw.size() + 1);
        next.insert({std::move(nw), e.dst});
      }
    }
    frontier = std::move(next);
  }
  std::set<Word> words;
  for (const auto& [w, v] : frontier) {
    words.insert(w);
    if (words.size() >= 2) return 2;
  }
  return static_cast<int>(words.size());
}

}  // namespace

Report check_condition_I(const LambdaGraphTruncation& lgs, int d) {
  lgs.check_well_formed();
  if (d < 1) throw SchemaError("check_condition_I: depth must be positive");
  if (d > lgs.depth()) {
    throw DepthExceeded("check_condition_I: depth " + std::to_string(d) +
                        " exceeds truncation depth " +
                        std::to_string(lgs.depth()));
  }
  CellBudget budget;
  for (int l = 0; l + d <= lgs.depth(); ++l) {
    for (int i = 0; i < lgs.level_size(l); ++i) {
      int n = distinct_words_from(lgs, l, i, d, budget);
      if (n >= 2) continue;
      if (branch_free_cone(lgs, l, i)) {
        return Report::no(d,
                          "out-edges from " + vref(lgs, l, i) +
                              " are unique all the way to the boundary, so its "
                              "label ray is unique",
                          {vref(lgs, l, i)});
      }
      return Report::unknown(d, "only one label word of length " +
                                    std::to_string(d) + " leaves " +
                                    vref(lgs, l, i) +
                                    "; deeper branching undecided");
    }
  }
  return Report::yes(d, "every vertex emits two distinct label words of length " +
                            std::to_string(d));
}

Report check_lambda_condition_I(const LambdaGraphTruncation& lgs) {
  lgs.check_well_formed();
  const int L = lgs.depth();
  if (L < 1) {
    return Report::unknown(0, "truncation has no room for a labeled path");
  }
  CellBudget budget;
  // witness_depth[l][i]: least path length at which two distinctly labeled
  // paths from (l,i) rejoin, or 0 when none rejoin within the truncation.
  std::vector<std::vector<int>> witness_depth(L);
  int scale = 0;  // largest witness depth any vertex needs
  for (int l = 0; l < L; ++l) {
    witness_depth[l].assign(lgs.level_size(l), 0);
    for (int i = 0; i < lgs.level_size(l); ++i) {
      // words_to[j] = distinct label words of paths (l,i) -> (depth t, j),
      // capped at two; a vertex collecting two distinct words witnesses.
      std::map<int, std::set<Word>> words_to{{i, {Word{}}}};
      for (int t = l; t < L && !witness_depth[l][i]; ++t) {
        auto out = by_source(lgs.edges[t], lgs.level_size(t));
        std::map<int, std::set<Word>> next;
        for (const auto& [v, set] : words_to) {
          for (const auto& e : out[v]) {
            for (const Word& w : set) {
              auto& bucket = next[e.dst];
              if (bucket.size() >= 2) continue;
              Word nw = w;
              nw.push_back(e.label);
              budget.charge(nw.size() + 1);
              bucket.insert(std::move(nw));
            }
          }
        }
        for (const auto& [v, set] : next) {
          if (set.size() >= 2) {
            witness_depth[l][i] = t - l + 1;
            break;
          }
        }
        words_to = std::move(next);
      }
      scale = std::max(scale, witness_depth[l][i]);
    }
  }
  // Vertices with less room than the rejoin scale of the system are not
  // evidence either way (depth-1 rejoins need the special feature of parallel
  // distinct-labeled in-edges, so the generic minimum is 2); everything with
  // room must have witnessed.
  const int needed = std::max(2, scale);
  for (int l = 0; l < L; ++l) {
    for (int i = 0; i < lgs.level_size(l); ++i) {
      if (witness_depth[l][i] > 0) continue;
      if (branch_free_cone(lgs, l, i)) {
        return Report::no(L,
                          "out-edges from " + vref(lgs, l, i) +
                              " are unique all the way to the boundary; no "
                              "pair of distinctly labeled paths can rejoin",
                          {vref(lgs, l, i)});
      }
      if (L - l >= needed) {
        return Report::unknown(
            L, "no two distinctly labeled paths from " + vref(lgs, l, i) +
                   " rejoin within the truncation");
      }
    }
  }
  if (scale == 0) {
    return Report::unknown(L, "truncation shows no rejoining paths at all");
  }
  return Report::yes(L - needed,
                     "every vertex down to level " + std::to_string(L - needed) +
                         " has two distinctly labeled paths of length <= " +
                         std::to_string(needed) + " to a common vertex");
}

RelationsDocument export_relations(const LambdaGraphTruncation& lgs) {
  lgs.check_well_formed();
  const int L = lgs.depth();
  RelationsDocument doc;
  doc.alphabet = lgs.alphabet;
  auto sys = transition_matrices(lgs);
  doc.level_sizes = sys.level_sizes;
  for (int l = 0; l < L; ++l) {
    const int m0 = lgs.level_size(l);
    const int m1 = lgs.level_size(l + 1);
    for (int i = 0; i < m0; ++i) {
      RelationsDocument::IotaRelation ir{l, i, {}};
      for (int j = 0; j < m1; ++j) {
        if (sys.I[l][i][j]) ir.terms.push_back(j);
      }
      doc.iota_relations.push_back(std::move(ir));
      for (Symbol a = 0; a < lgs.alphabet.size(); ++a) {
        RelationsDocument::TransitionRelation tr{l, i, a, {}};
        for (int j = 0; j < m1; ++j) {
          if (sys.A[l][i][a][j]) tr.terms.push_back(j);
        }
        doc.transition_relations.push_back(std::move(tr));
      }
    }
  }
  CellBudget budget;
  auto words = predecessor_sets(lgs, budget);
  for (int l = 0; l <= L; ++l) {
    std::set<Word> level_words;
    for (const auto& set : words[l]) level_words.insert(set.begin(), set.end());
    for (int i = 0; i < lgs.level_size(l); ++i) {
      RelationsDocument::ProjectionFormula pf;
      pf.level = l;
      pf.i = i;
      pf.predecessors.assign(words[l][i].begin(), words[l][i].end());
      for (const Word& w : level_words) {
        if (!words[l][i].count(w)) pf.non_predecessors.push_back(w);
      }
      doc.projection_formulas.push_back(std::move(pf));
    }
  }
  return doc;
}

std::string RelationsDocument::text() const {
  std::ostringstream os;
  os << "generators: S_a for a in {";
  for (std::size_t a = 0; a < alphabet.size(); ++a) {
    os << (a ? ", " : "") << alphabet.name(static_cast<Symbol>(a));
  }
  os << "}; projections E(l,i), 0 <= i < m(l)\n";
  os << "m:";
  for (int s : level_sizes) os << " " << s;
  os << "\n";
  os << "[sums] sum_a S_a S_a* = 1; for each level l: sum_i E(l,i) = 1\n";
  os << "[commutation] S_a S_a* E(l,i) = E(l,i) S_a S_a* for all a, l, i\n";
  for (const auto& r : iota_relations) {
    os << "[iota] E(" << r.level << "," << r.i << ") =";
    if (r.terms.empty()) os << " 0";
    for (std::size_t k = 0; k < r.terms.size(); ++k) {
      os << (k ? " + " : " ") << "E(" << r.level + 1 << "," << r.terms[k] << ")";
    }
    os << "\n";
  }
  for (const auto& r : transition_relations) {
    os << "[transition] S_" << alphabet.name(r.a) << "* E(" << r.level << ","
       << r.i << ") S_" << alphabet.name(r.a) << " =";
    if (r.terms.empty()) os << " 0";
    for (std::size_t k = 0; k < r.terms.size(); ++k) {
      os << (k ? " + " : " ") << "E(" << r.level + 1 << "," << r.terms[k] << ")";
    }
    os << "\n";
  }
  for (const auto& f : projection_formulas) {
    os << "[projection] E(" << f.level << "," << f.i << ") =";
    if (f.predecessors.empty()) {
      os << " 0";
    } else {
      for (const Word& w : f.predecessors) {
        if (w.empty()) {
          os << " 1";  // S_eps is the unit
        } else {
          os << " S_" << alphabet.word_str(w) << "* S_" << alphabet.word_str(w);
        }
      }
      for (const Word& w : f.non_predecessors) {
        os << " (1 - S_" << alphabet.word_str(w) << "* S_"
           << alphabet.word_str(w) << ")";
      }
    }
    os << "\n";
  }
  return os.str();
}

bool labeled_level_isomorphic(const LambdaGraphTruncation& a,
                              const LambdaGraphTruncation& b,
                              std::vector<std::vector<int>>* map_out) {
  a.check_well_formed();
  b.check_well_formed();
  if (a.alphabet != b.alphabet || a.depth() != b.depth()) return false;
  const int depth = a.depth();
  for (int l = 0; l <= depth; ++l)
    if (a.level_size(l) != b.level_size(l)) return false;

  // In-edge data of a level-(l+1) vertex: its iota image plus the sorted
  // (source, label) pairs; for predecessor-separated systems this pins the
  // vertex down uniquely once level l is matched.
  using Key = std::pair<int, std::vector<std::pair<int, Symbol>>>;
  auto keys_of = [](const LambdaGraphTruncation& t, int l,
                    const std::vector<int>& relabel) {
    std::vector<Key> keys(t.level_size(l + 1));
    for (int j = 0; j < t.level_size(l + 1); ++j)
      keys[j].first = relabel[t.iota[l][j]];
    for (const auto& e : t.edges[l])
      keys[e.dst].second.push_back({relabel[e.src], e.label});
    for (auto& k : keys) std::sort(k.second.begin(), k.second.end());
    return keys;
  };

  std::vector<std::vector<int>> pi(depth + 1);
  pi[0] = {0};
  std::vector<int> identity;
  for (int l = 0; l < depth; ++l) {
    identity.resize(b.level_size(l + 1));
    for (int j = 0; j < b.level_size(l + 1); ++j) identity[j] = j;
    auto ka = keys_of(a, l, pi[l]);
    auto kb = keys_of(b, l, identity);
    std::map<Key, int> lookup;
    for (int j = 0; j < b.level_size(l + 1); ++j)
      if (!lookup.emplace(kb[j], j).second) return false;  // ambiguous
    pi[l + 1].assign(a.level_size(l + 1), -1);
    std::vector<char> hit(b.level_size(l + 1), 0);
    for (int i = 0; i < a.level_size(l + 1); ++i) {
      auto it = lookup.find(ka[i]);
      if (it == lookup.end() || hit[it->second]) return false;
      hit[it->second] = 1;
      pi[l + 1][i] = it->second;
    }
  }
  if (map_out) *map_out = std::move(pi);
  return true;
}

}  // namespace lamgraph
