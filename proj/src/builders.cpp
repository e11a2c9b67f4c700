#include "lamgraph/builders.hpp"

#include <algorithm>
#include <map>

#include "lamgraph/beta.hpp"
#include "lamgraph/monoid.hpp"

namespace lamgraph {

namespace {

// Admissible opener words of length len: runs i1..ilen with A(i_t, i_{t+1})=1.
std::vector<Word> opener_words(const BinMatrix& a, int len, CellBudget& budget) {
  const int n = static_cast<int>(a.size());
  std::vector<Word> words{{}};
  for (int t = 0; t < len; ++t) {
    std::vector<Word> next;
    for (const Word& w : words) {
      for (int j = 0; j < n; ++j) {
        if (!w.empty() && !a[w.back()][j]) continue;
        budget.charge(static_cast<std::size_t>(t) + 1);
        Word nw = w;
        nw.push_back(static_cast<Symbol>(j));
        next.push_back(std::move(nw));
      }
    }
    words = std::move(next);
  }
  std::sort(words.begin(), words.end());
  return words;
}

std::string opener_word_name(const Word& w) {
  std::string s;
  for (Symbol x : w) s += "b" + std::to_string(x + 1);
  return s.empty() ? "e" : s;
}

// Core of the bracket-family builders: levels of opener words over A, the
// a/b edge rules, and optionally a unit label gluing each word to its
// one-symbol extensions.
LambdaGraphTruncation bracket_lgs(const BinMatrix& a, int depth, bool with_unit) {
  const int n = static_cast<int>(a.size());
  LambdaGraphTruncation lgs;
  lgs.alphabet = BracketMonoid(a, with_unit).alphabet();
  CellBudget budget;

  std::vector<std::vector<Word>> levels;
  for (int l = 0; l <= depth; ++l) levels.push_back(opener_words(a, l, budget));

  lgs.vertex_names.resize(depth + 1);
  for (int l = 0; l <= depth; ++l) {
    for (const Word& w : levels[l]) {
      lgs.vertex_names[l].push_back(opener_word_name(w));
    }
  }

  const Symbol unit = static_cast<Symbol>(2 * n);
  lgs.edges.resize(depth);
  lgs.iota.resize(depth);
  for (int l = 0; l < depth; ++l) {
    std::map<Word, int> index;
    for (int j = 0; j < static_cast<int>(levels[l + 1].size()); ++j) {
      index[levels[l + 1][j]] = j;
    }
    for (int i = 0; i < static_cast<int>(levels[l].size()); ++i) {
      const Word& w = levels[l][i];
      // a_j: prepend j when the result stays admissible.
      for (int j = 0; j < n; ++j) {
        Word t;
        t.reserve(w.size() + 1);
        t.push_back(static_cast<Symbol>(j));
        t.insert(t.end(), w.begin(), w.end());
        auto it = index.find(t);
        if (it != index.end()) {
          budget.charge();
          lgs.edges[l].push_back({i, it->second, static_cast<Symbol>(j)});
        }
      }
      // b_j: strip the leading j (vacuous at the top level) and append two
      // free symbols; enumerate matching targets by their shared stem.
      for (int j = 0; j < n; ++j) {
        if (!w.empty() && w.front() != static_cast<Symbol>(j)) continue;
        Word stem(w.empty() ? Word{} : Word(w.begin() + 1, w.end()));
        for (int k = 0; k < static_cast<int>(levels[l + 1].size()); ++k) {
          if (!is_prefix(stem, levels[l + 1][k])) continue;
          budget.charge();
          lgs.edges[l].push_back({i, k, static_cast<Symbol>(n + j)});
        }
      }
      // unit: keep the word and append one free symbol.
      if (with_unit) {
        for (int k = 0; k < static_cast<int>(levels[l + 1].size()); ++k) {
          if (!is_prefix(w, levels[l + 1][k])) continue;
          budget.charge();
          lgs.edges[l].push_back({i, k, unit});
        }
      }
    }
    lgs.iota[l].resize(levels[l + 1].size());
    for (int j = 0; j < static_cast<int>(levels[l + 1].size()); ++j) {
      Word parent(levels[l + 1][j].begin(), levels[l + 1][j].end() - 1);
      auto it = std::lower_bound(levels[l].begin(), levels[l].end(), parent);
      lgs.iota[l][j] = static_cast<int>(it - levels[l].begin());
    }
    std::sort(lgs.edges[l].begin(), lgs.edges[l].end());
  }
  return lgs;
}

}  // namespace

LambdaGraphTruncation dyck_lgs(int n, int depth) {
  if (n < 2) throw BadMatrix("dyck_lgs: need at least two bracket pairs");
  if (depth < 1) throw SchemaError("dyck_lgs: depth must be positive");
  return bracket_lgs(ones_matrix(n), depth, false);
}

LambdaGraphTruncation markov_dyck_lgs(const BinMatrix& a, int depth) {
  check_binary_square(a, "markov_dyck_lgs");
  if (depth < 1) throw SchemaError("markov_dyck_lgs: depth must be positive");
  if (!matrix_irreducible(a)) {
    throw BadMatrix("markov_dyck_lgs: matrix must be irreducible");
  }
  if (matrix_is_permutation(a)) {
    throw BadMatrix("markov_dyck_lgs: permutation matrices present a single orbit");
  }
  return bracket_lgs(a, depth, false);
}

LambdaGraphTruncation motzkin_lgs(int n, int depth) {
  if (n < 2) throw BadMatrix("motzkin_lgs: need at least two bracket pairs");
  if (depth < 1) throw SchemaError("motzkin_lgs: depth must be positive");
  return bracket_lgs(ones_matrix(n), depth, true);
}

namespace {

struct BetaCell {
  ExactReal lo, hi;  // the cell (lo, hi]
  int upper_prefix;  // least k with b_k = hi (0 means hi = 1)
};

std::vector<BetaCell> beta_cells(const std::vector<ExactReal>& b, int l) {
  // Boundaries: 0, the distinct b_1..b_l inside (0,1), then 1.
  std::vector<ExactReal> bounds{ExactReal(0)};
  for (int k = 1; k <= l; ++k) {
    if (b[k].cmp(ExactReal(1)) >= 0) continue;
    bool known = false;
    for (std::size_t t = 1; t < bounds.size() && !known; ++t) {
      known = bounds[t].cmp(b[k]) == 0;
    }
    if (!known) bounds.push_back(b[k]);
  }
  bounds.push_back(ExactReal(1));
  std::sort(bounds.begin() + 1, bounds.end() - 1,
            [](const ExactReal& x, const ExactReal& y) { return x.cmp(y) < 0; });
  std::vector<BetaCell> cells;
  for (std::size_t t = 0; t + 1 < bounds.size(); ++t) {
    BetaCell c{bounds[t], bounds[t + 1], 0};
    while (b[c.upper_prefix].cmp(c.hi) != 0) ++c.upper_prefix;
    cells.push_back(std::move(c));
  }
  return cells;
}

}  // namespace

LambdaGraphTruncation beta_lgs(const BetaNumber& beta, int depth) {
  if (depth < 1) throw SchemaError("beta_lgs: depth must be positive");
  Digits zeta = zeta_beta(beta, depth + 1);
  std::vector<ExactReal> b{ExactReal(1)};
  for (ExactReal& v : b_values(beta, depth)) b.push_back(std::move(v));

  BetaMembership membership(beta);
  const int nsym = static_cast<int>(membership.alphabet_size());
  std::vector<std::string> names;
  for (int d = 0; d < nsym; ++d) names.push_back(std::to_string(d));

  LambdaGraphTruncation lgs;
  lgs.alphabet = Alphabet(names);
  lgs.vertex_names.resize(depth + 1);
  lgs.edges.resize(depth);
  lgs.iota.resize(depth);

  std::vector<std::vector<BetaCell>> levels;
  for (int l = 0; l <= depth; ++l) {
    levels.push_back(beta_cells(b, l));
    for (const auto& c : levels[l]) {
      std::string lo = c.lo.cmp(ExactReal(0)) == 0 ? "0" : c.lo.str();
      lgs.vertex_names[l].push_back("(" + lo + "," + c.hi.str() + "]");
    }
  }

  const ExactReal& bv = beta.value;
  for (int l = 0; l < depth; ++l) {
    const auto& cur = levels[l];
    const auto& nxt = levels[l + 1];
    for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
      const long next_digit = zeta[cur[i].upper_prefix];
      // Continue the quasi-greedy word: digit xi_{p+1} maps the cell onto
      // (beta*lo - xi, beta*hi - xi].
      ExactReal ilo = bv * cur[i].lo - ExactReal(next_digit);
      ExactReal ihi = bv * cur[i].hi - ExactReal(next_digit);
      for (int j = 0; j < static_cast<int>(nxt.size()); ++j) {
        if (ilo.cmp(nxt[j].lo) <= 0 && nxt[j].hi.cmp(ihi) <= 0) {
          lgs.edges[l].push_back({i, j, static_cast<Symbol>(next_digit)});
        }
      }
      // Any smaller digit resets the tail: targets fill (beta*lo - d, 1].
      for (long d = 0; d < next_digit; ++d) {
        ExactReal dlo = bv * cur[i].lo - ExactReal(d);
        for (int j = 0; j < static_cast<int>(nxt.size()); ++j) {
          if (dlo.cmp(nxt[j].lo) <= 0) {
            lgs.edges[l].push_back({i, j, static_cast<Symbol>(d)});
          }
        }
      }
    }
    lgs.iota[l].resize(nxt.size());
    for (int j = 0; j < static_cast<int>(nxt.size()); ++j) {
      int parent = -1;
      for (int i = 0; i < static_cast<int>(cur.size()) && parent < 0; ++i) {
        if (cur[i].lo.cmp(nxt[j].lo) <= 0 && nxt[j].hi.cmp(cur[i].hi) <= 0) {
          parent = i;
        }
      }
      if (parent < 0) throw SchemaError("beta_lgs: cell fails to nest");
      lgs.iota[l][j] = parent;
    }
    std::sort(lgs.edges[l].begin(), lgs.edges[l].end());
  }
  return lgs;
}

}  // namespace lamgraph
