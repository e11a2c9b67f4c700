#include "lamgraph/synchronization.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace lamgraph {

namespace {

using State = SubshiftSpec::State;

// Joint-state memo keys; state_key strings never contain control characters.
constexpr char kFieldSep = '\x1f';

// ---------------------------------------------------------------------------
// Exact decision on a graph presentation.  The state of a word mu is its
// transition relation R(mu) = { (u, v) : some path u -> v spells mu }, stored
// as one target bitmask per source vertex.  Then
//
//   Gamma_l^-(mu) = union of endable_l(u) over u in dom R(mu),
//
// and mu is l-synchronizing iff every nonempty R(mu) . R(omega) produces the
// same Gamma.  Word relations form a finite monoid, so closing the symbol
// compositions decides the quantifier over all omega at once.
struct RelationTables {
  std::size_t nv = 0;
  std::vector<std::vector<std::uint64_t>> sym;   // [a][u] -> target mask
  std::vector<std::vector<std::uint64_t>> rels;  // closure, identity first
  std::vector<std::vector<int>> succ;            // [r][a] -> index, -1 empty
  std::vector<int> gamma_id;                     // [r] -> signature id
  std::vector<char> stable;                      // [r] -> sync verdict
  std::set<int> class_ids;                       // gamma ids of stable relations
};

constexpr std::size_t kRelationCap = 4096;

bool relation_empty(const std::vector<std::uint64_t>& r) {
  for (std::uint64_t row : r)
    if (row) return false;
  return true;
}

}  // namespace

namespace {

// Shared per-level machinery: B_l, interned signatures, and either the
// relation tables (exact) or incremental per-predecessor states (bounded).
class SyncEngine {
 public:
  SyncEngine(const SubshiftSpec& spec, int l, int extension_bound)
      : spec_(&spec), l_(l), ext_(extension_bound) {
    bl_ = spec.admissible_words(l);
    if (!build_exact()) {
      mergeable_ = spec.states_mergeable();
      bl_states_.reserve(bl_.size());
      for (const Word& nu : bl_) {
        State s = spec.start();
        for (Symbol a : nu) {
          auto t = spec.extend(s, a);
          if (!t) throw SchemaError("synchronization: predecessor word escaped the language");
          s = std::move(*t);
        }
        bl_states_.push_back(std::move(s));
      }
    }
  }

  bool exact() const { return exact_; }
  int level() const { return l_; }
  const std::vector<std::vector<Word>>& signatures() const { return sigs_; }

  // Sync verdict for one word; nullopt when the word is inadmissible.
  std::optional<bool> check_word(const Word& w) {
    if (exact_) {
      int r = rel_of(w);
      if (r < 0) return std::nullopt;
      return static_cast<bool>(tab_.stable[r]);
    }
    State main = spec_->start();
    for (Symbol a : w) {
      auto t = spec_->extend(main, a);
      if (!t) return std::nullopt;
      main = std::move(*t);
    }
    std::vector<State> nus;
    for (std::size_t i = 0; i < bl_.size(); ++i) {
      State s = bl_states_[i];
      bool dead = false;
      for (Symbol a : w) {
        auto t = spec_->extend(s, a);
        if (!t) {
          dead = true;
          break;
        }
        s = std::move(*t);
      }
      if (!dead) nus.push_back(std::move(s));
    }
    return walk(main, nus, ext_depth(static_cast<int>(w.size())));
  }

  // All sync words with |mu| <= bound, paired with interned signature ids.
  // With saturate set, word lengths stop growing once at least one class is
  // known, the finished increment added no new signature, and the length has
  // reached the level.  complete reports (exact engines only) whether every
  // class of S_l was witnessed.
  struct ScanOut {
    std::vector<std::pair<Word, int>> found;
    bool complete = true;
  };

  ScanOut scan(int bound, bool saturate) {
    ScanOut out;
    std::set<int> seen_ids;
    if (exact_) {
      std::vector<std::pair<Word, int>> layer{{Word{}, 0}};  // identity first
      for (int len = 0; len <= bound; ++len) {
        std::size_t before = seen_ids.size();
        for (const auto& [w, r] : layer)
          if (tab_.stable[r]) {
            out.found.emplace_back(w, tab_.gamma_id[r]);
            seen_ids.insert(tab_.gamma_id[r]);
          }
        bool saturated = !seen_ids.empty() && seen_ids.size() == before &&
                         len >= l_ && len > 0;
        bool complete = std::includes(seen_ids.begin(), seen_ids.end(),
                                      tab_.class_ids.begin(), tab_.class_ids.end());
        if (len == bound || (saturate && saturated && complete)) break;
        std::vector<std::pair<Word, int>> next;
        for (const auto& [w, r] : layer)
          for (Symbol a = 0; a < spec_->alphabet().size(); ++a)
            if (tab_.succ[r][a] >= 0) {
              Word e = w;
              e.push_back(a);
              next.emplace_back(std::move(e), tab_.succ[r][a]);
            }
        budget_.charge(next.size());
        layer = std::move(next);
      }
      out.complete = std::includes(seen_ids.begin(), seen_ids.end(),
                                   tab_.class_ids.begin(), tab_.class_ids.end());
      return out;
    }

    struct Cand {
      Word w;
      State st;
      std::vector<int> alive;  // indices into bl_
      std::vector<State> nus;  // states of nu . w for alive nu
    };
    Cand root;
    root.st = spec_->start();
    root.nus = bl_states_;
    root.alive.resize(bl_.size());
    for (std::size_t i = 0; i < bl_.size(); ++i) root.alive[i] = static_cast<int>(i);
    std::vector<Cand> layer{std::move(root)};
    for (int len = 0; len <= bound; ++len) {
      std::size_t before = seen_ids.size();
      for (Cand& c : layer) {
        std::vector<Word> sig;
        sig.reserve(c.alive.size());
        for (int i : c.alive) sig.push_back(bl_[i]);
        if (walk(c.st, c.nus, ext_depth(len))) {
          int id = intern(sig);
          out.found.emplace_back(c.w, id);
          seen_ids.insert(id);
        }
      }
      bool saturated = !seen_ids.empty() && seen_ids.size() == before &&
                       len >= l_ && len > 0;
      if (len == bound || (saturate && saturated)) break;
      std::vector<Cand> next;
      for (const Cand& c : layer)
        for (Symbol a = 0; a < spec_->alphabet().size(); ++a) {
          auto st = spec_->extend(c.st, a);
          if (!st) continue;
          Cand child;
          child.w = c.w;
          child.w.push_back(a);
          child.st = std::move(*st);
          for (std::size_t k = 0; k < c.alive.size(); ++k)
            if (auto t = spec_->extend(c.nus[k], a)) {
              child.alive.push_back(c.alive[k]);
              child.nus.push_back(std::move(*t));
            }
          next.push_back(std::move(child));
        }
      budget_.charge(next.size());
      layer = std::move(next);
    }
    return out;
  }

 private:
  int ext_depth(int word_len) const { return ext_ > 0 ? ext_ : word_len + l_ + 1; }

  int intern(const std::vector<Word>& sig) {
    auto it = sig_ids_.find(sig);
    if (it != sig_ids_.end()) return it->second;
    int id = static_cast<int>(sigs_.size());
    sig_ids_.emplace(sig, id);
    sigs_.push_back(sig);
    return id;
  }

  // ---- exact path ----

  bool build_exact() {
    const LabeledGraph* g = spec_->graph();
    if (!g) return false;
    const std::size_t nv = g->vertex_names.size();
    if (nv == 0 || nv > 64) return false;
    tab_.nv = nv;
    tab_.sym.assign(spec_->alphabet().size(), std::vector<std::uint64_t>(nv, 0));
    for (const LabeledEdge& e : g->edges)
      tab_.sym[e.label][e.src] |= std::uint64_t{1} << e.dst;

    // endable_l(v): label words of length l of paths ending at v.
    std::vector<std::set<Word>> endable(nv);
    for (std::size_t v = 0; v < nv; ++v) endable[v].insert(Word{});
    for (int step = 0; step < l_; ++step) {
      std::vector<std::set<Word>> next(nv);
      std::size_t cells = 0;
      for (const LabeledEdge& e : g->edges)
        for (const Word& w : endable[e.src]) {
          Word ext = w;
          ext.push_back(e.label);
          next[e.dst].insert(std::move(ext));
          ++cells;
        }
      budget_.charge(cells);
      endable = std::move(next);
    }

    // Closure of the identity relation under symbol composition.
    std::vector<std::uint64_t> id(nv);
    for (std::size_t v = 0; v < nv; ++v) id[v] = std::uint64_t{1} << v;
    std::map<std::vector<std::uint64_t>, int> index;
    tab_.rels.push_back(id);
    index.emplace(std::move(id), 0);
    for (std::size_t head = 0; head < tab_.rels.size(); ++head) {
      tab_.succ.emplace_back(spec_->alphabet().size(), -1);
      for (Symbol a = 0; a < spec_->alphabet().size(); ++a) {
        std::vector<std::uint64_t> out(nv, 0);
        for (std::size_t u = 0; u < nv; ++u) {
          std::uint64_t row = tab_.rels[head][u];
          while (row) {
            const int v = __builtin_ctzll(row);
            row &= row - 1;
            out[u] |= tab_.sym[a][v];
          }
        }
        if (relation_empty(out)) continue;
        auto it = index.find(out);
        if (it == index.end()) {
          if (tab_.rels.size() >= kRelationCap) return false;  // fall back to bounded
          it = index.emplace(out, static_cast<int>(tab_.rels.size())).first;
          tab_.rels.push_back(std::move(out));
        }
        tab_.succ[head][a] = it->second;
      }
    }

    // Gamma of each relation, via its domain.
    std::map<std::uint64_t, int> dom_gamma;
    tab_.gamma_id.reserve(tab_.rels.size());
    for (const auto& rel : tab_.rels) {
      std::uint64_t dom = 0;
      for (std::size_t u = 0; u < nv; ++u)
        if (rel[u]) dom |= std::uint64_t{1} << u;
      auto it = dom_gamma.find(dom);
      if (it == dom_gamma.end()) {
        std::set<Word> gamma;
        std::uint64_t d = dom;
        while (d) {
          const int u = __builtin_ctzll(d);
          d &= d - 1;
          gamma.insert(endable[u].begin(), endable[u].end());
        }
        it = dom_gamma.emplace(dom, intern({gamma.begin(), gamma.end()})).first;
      }
      tab_.gamma_id.push_back(it->second);
    }

    // A relation is stable when its whole composition cone shares one Gamma.
    std::vector<std::set<int>> cone(tab_.rels.size());
    for (std::size_t r = 0; r < tab_.rels.size(); ++r) cone[r].insert(tab_.gamma_id[r]);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t r = 0; r < tab_.rels.size(); ++r)
        for (Symbol a = 0; a < spec_->alphabet().size(); ++a) {
          const int s = tab_.succ[r][a];
          if (s < 0) continue;
          const std::size_t before = cone[r].size();
          cone[r].insert(cone[s].begin(), cone[s].end());
          if (cone[r].size() != before) changed = true;
        }
    }
    tab_.stable.reserve(tab_.rels.size());
    for (std::size_t r = 0; r < tab_.rels.size(); ++r) {
      tab_.stable.push_back(cone[r].size() == 1 ? 1 : 0);
      if (tab_.stable.back()) tab_.class_ids.insert(tab_.gamma_id[r]);
    }
    exact_ = true;
    return true;
  }

  int rel_of(const Word& w) const {
    int r = 0;
    for (Symbol a : w) {
      if (a >= spec_->alphabet().size()) throw SchemaError("synchronization: symbol out of range");
      r = tab_.succ[r][a];
      if (r < 0) return -1;
    }
    return r;
  }

  // ---- bounded path ----

  // True when no tracked predecessor state can die within depth r while the
  // main word stays admissible.  Joint states repeat heavily, so verified-safe
  // depths are memoized whenever equal state keys certify equal behaviour.
  bool walk(const State& main, const std::vector<State>& nus, int r) {
    if (r <= 0) return true;
    std::string key;
    if (mergeable_) {
      std::vector<std::string> parts;
      parts.reserve(nus.size());
      for (const State& s : nus) parts.push_back(spec_->state_key(s));
      std::sort(parts.begin(), parts.end());
      parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
      key = spec_->state_key(main);
      for (const std::string& p : parts) {
        key += kFieldSep;
        key += p;
      }
      auto it = safe_.find(key);
      if (it != safe_.end() && it->second >= r) return true;
    }
    for (Symbol a = 0; a < spec_->alphabet().size(); ++a) {
      auto m2 = spec_->extend(main, a);
      if (!m2) continue;
      budget_.charge();
      std::vector<State> n2;
      n2.reserve(nus.size());
      for (const State& s : nus) {
        auto t = spec_->extend(s, a);
        if (!t) return false;  // a predecessor just dropped out: Gamma shrank
        n2.push_back(std::move(*t));
      }
      if (!walk(*m2, n2, r - 1)) return false;
    }
    if (mergeable_) {
      int& d = safe_[key];
      if (d < r) d = r;
    }
    return true;
  }

  const SubshiftSpec* spec_;
  int l_;
  int ext_;
  bool exact_ = false;
  bool mergeable_ = false;
  std::vector<Word> bl_;
  std::vector<std::vector<Word>> sigs_;
  std::map<std::vector<Word>, int> sig_ids_;
  RelationTables tab_;
  std::vector<State> bl_states_;
  std::map<std::string, int> safe_;
  CellBudget budget_;
};

int effective_word_bound(int requested, int fallback, int level, const char* op) {
  const int bound = requested > 0 ? requested : fallback;
  if (bound < level)
    throw SchemaError(std::string(op) + ": word bound " + std::to_string(bound) +
                      " below level " + std::to_string(level));
  return bound;
}

}  // namespace

SyncWords synchronizing_words(const SubshiftSpec& spec, int l, SyncSearchParams params) {
  if (l < 0) throw SchemaError("synchronizing_words: negative level");
  const int bound = effective_word_bound(params.word_length_bound, l + 3, l,
                                         "synchronizing_words");
  SyncEngine engine(spec, l, params.extension_bound);
  auto scan = engine.scan(bound, false);
  SyncWords out;
  out.exact = engine.exact();
  out.words.reserve(scan.found.size());
  for (auto& [w, id] : scan.found) out.words.push_back(std::move(w));
  std::sort(out.words.begin(), out.words.end());
  return out;
}

std::vector<PastClass> past_classes(const SubshiftSpec& spec, int l, SyncSearchParams params) {
  if (l < 0) throw SchemaError("past_classes: negative level");
  const int bound = effective_word_bound(params.word_length_bound, l + 3, l,
                                         "past_classes");
  SyncEngine engine(spec, l, params.extension_bound);
  auto scan = engine.scan(bound, true);
  if (engine.exact() && !scan.complete)
    throw DepthExceeded("past_classes: a synchronizing class of level " + std::to_string(l) +
                        " has no member of length <= " + std::to_string(bound) +
                        "; raise the word bound");
  std::map<int, std::vector<Word>> groups;
  for (auto& [w, id] : scan.found) groups[id].push_back(std::move(w));
  std::vector<PastClass> out;
  out.reserve(groups.size());
  for (auto& [id, members] : groups) {
    std::sort(members.begin(), members.end());
    PastClass c;
    c.level = l;
    c.representative = members.front();
    c.members = std::move(members);
    c.signature = engine.signatures()[id];
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const PastClass& a, const PastClass& b) { return a.representative < b.representative; });
  return out;
}

namespace {

std::vector<Word> drop_first(const std::vector<Word>& sig) {
  std::set<Word> out;
  for (const Word& w : sig) out.insert(Word(w.begin() + 1, w.end()));
  return {out.begin(), out.end()};
}

std::vector<Word> drop_last_matching(const std::vector<Word>& sig, Symbol a) {
  std::set<Word> out;
  for (const Word& w : sig)
    if (!w.empty() && w.back() == a) out.insert(Word(w.begin(), w.end() - 1));
  return {out.begin(), out.end()};
}

}  // namespace

LambdaGraphTruncation build_min_lgs(const SubshiftSpec& spec, int depth, SyncSearchParams params) {
  if (depth < 1) throw SchemaError("build_min_lgs: depth must be >= 1");
  const int bound = effective_word_bound(params.word_length_bound, depth + 2, depth,
                                         "build_min_lgs");
  SyncSearchParams level_params{bound, params.extension_bound};
  std::vector<std::vector<PastClass>> classes(depth + 1);
  for (int l = 0; l <= depth; ++l) classes[l] = past_classes(spec, l, level_params);

  LambdaGraphTruncation lgs;
  lgs.alphabet = spec.alphabet();
  lgs.vertex_names.resize(depth + 1);
  lgs.representatives.resize(depth + 1);
  std::vector<std::map<std::vector<Word>, int>> sig_index(depth + 1);
  for (int l = 0; l <= depth; ++l) {
    for (std::size_t i = 0; i < classes[l].size(); ++i) {
      lgs.vertex_names[l].push_back(std::to_string(l) + ":" + std::to_string(i));
      // The lex-least predecessor word: reading it from V_0 ends here.
      lgs.representatives[l].push_back(classes[l][i].signature.front());
      sig_index[l].emplace(classes[l][i].signature, static_cast<int>(i));
    }
  }

  lgs.edges.resize(depth);
  lgs.iota.resize(depth);
  for (int l = 0; l < depth; ++l) {
    for (std::size_t j = 0; j < classes[l + 1].size(); ++j) {
      const auto& sig = classes[l + 1][j].signature;
      auto parent = sig_index[l].find(drop_first(sig));
      if (parent == sig_index[l].end())
        throw DepthExceeded("build_min_lgs: class " +
                            spec.alphabet().word_str(classes[l + 1][j].representative) +
                            " has no parent class within word bound " + std::to_string(bound));
      lgs.iota[l].push_back(parent->second);
      for (Symbol a = 0; a < spec.alphabet().size(); ++a) {
        auto src_sig = drop_last_matching(sig, a);
        if (src_sig.empty()) continue;
        auto src = sig_index[l].find(src_sig);
        if (src == sig_index[l].end())
          throw DepthExceeded("build_min_lgs: no class matches the predecessors of " +
                              spec.alphabet().name(a) + "-extensions of class " +
                              spec.alphabet().word_str(classes[l + 1][j].representative) +
                              " within word bound " + std::to_string(bound));
        lgs.edges[l].push_back({src->second, static_cast<int>(j), a});
      }
    }
    std::sort(lgs.edges[l].begin(), lgs.edges[l].end());
  }

  // A class with no continuation or no deeper class above it is evidence the
  // subshift fails lambda-synchronization (or the bounds are too tight).
  for (int l = 0; l < depth; ++l) {
    std::vector<char> has_out(classes[l].size(), 0), covered(classes[l].size(), 0);
    for (const LabeledEdge& e : lgs.edges[l]) has_out[e.src] = 1;
    for (int parent : lgs.iota[l]) covered[parent] = 1;
    for (std::size_t i = 0; i < classes[l].size(); ++i) {
      if (!has_out[i])
        throw NotSynchronizing("class " + spec.alphabet().word_str(classes[l][i].representative) +
                               " at level " + std::to_string(l) +
                               " admits no synchronizing continuation within word bound " +
                               std::to_string(bound));
      if (!covered[i])
        throw NotSynchronizing("no level-" + std::to_string(l + 1) + " class projects onto " +
                               spec.alphabet().word_str(classes[l][i].representative) +
                               " within word bound " + std::to_string(bound));
    }
  }

  lgs.check_well_formed();
  return lgs;
}

Report is_lambda_synchronizing(const SubshiftSpec& spec, int l, int k, SyncSearchParams params) {
  if (l < 0) throw SchemaError("is_lambda_synchronizing: negative level");
  if (k <= l) throw SchemaError("is_lambda_synchronizing: k must exceed l");
  const int bound = effective_word_bound(params.word_length_bound, k + 3, k,
                                         "is_lambda_synchronizing");
  SyncSearchParams level_params{bound, params.extension_bound};
  SyncWords sync_k = synchronizing_words(spec, k, level_params);
  SyncEngine product_engine(spec, k - l, params.extension_bound);
  bool exact = sync_k.exact && product_engine.exact();
  for (const Word& eta : spec.admissible_words(l)) {
    bool witnessed = false;
    for (const Word& nu : sync_k.words) {
      auto verdict = product_engine.check_word(concat(eta, nu));
      if (verdict && *verdict) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed)
      return Report::unknown(bound, "no " + std::to_string(k) + "-synchronizing extension of " +
                                        spec.alphabet().word_str(eta) + " with " +
                                        std::to_string(k - l) +
                                        "-synchronizing product found within word bound " +
                                        std::to_string(bound));
  }
  return Report::yes(bound,
                     "every word of length " + std::to_string(l) + " extends by a " +
                         std::to_string(k) + "-synchronizing word to a " + std::to_string(k - l) +
                         "-synchronizing product",
                     exact);
}

std::optional<Word> launches(const LambdaGraphTruncation& lgs, int level, int vertex, int bound) {
  if (level < 0 || level > lgs.depth()) throw SchemaError("launches: level out of range");
  if (vertex < 0 || vertex >= lgs.level_size(level)) throw SchemaError("launches: vertex out of range");
  const int reach = std::min(bound, lgs.depth() - level);
  // Emitting sets per candidate word: which V_level vertices can read it, and
  // where their reading paths currently stand.
  struct Front {
    Word w;
    std::map<int, std::vector<int>> ends;  // emitter -> current endpoints
  };
  Front root;
  root.w = {};
  for (int u = 0; u < lgs.level_size(level); ++u) root.ends.emplace(u, std::vector<int>{u});
  std::vector<Front> layer{std::move(root)};
  CellBudget budget;
  for (int len = 1; len <= reach; ++len) {
    std::vector<std::vector<std::vector<int>>> step(lgs.level_size(level + len - 1),
                                                    std::vector<std::vector<int>>(lgs.alphabet.size()));
    for (const LabeledEdge& e : lgs.edges[level + len - 1]) step[e.src][e.label].push_back(e.dst);
    std::vector<Front> next;
    for (const Front& f : layer)
      for (Symbol a = 0; a < lgs.alphabet.size(); ++a) {
        Front child;
        child.w = f.w;
        child.w.push_back(a);
        for (const auto& [u, ends] : f.ends) {
          std::set<int> hit;
          for (int v : ends) hit.insert(step[v][a].begin(), step[v][a].end());
          if (!hit.empty()) child.ends.emplace(u, std::vector<int>(hit.begin(), hit.end()));
        }
        if (!child.ends.count(vertex)) continue;  // not even emitted by the vertex
        if (child.ends.size() == 1) return child.w;
        next.push_back(std::move(child));
      }
    budget.charge(next.size());
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace lamgraph
