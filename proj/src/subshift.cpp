#include "lamgraph/subshift.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace lamgraph {

namespace {

std::vector<std::string> numeric_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

}  // namespace

SubshiftSpec::SubshiftSpec(Alphabet a, Backend b)
    : alphabet_(std::move(a)), backend_(std::make_shared<const Backend>(std::move(b))) {}

SubshiftSpec::SoficBackend SubshiftSpec::make_sofic_backend(LabeledGraph g) {
  g.normalize();
  g = g.essential();
  if (g.vertex_names.empty())
    throw SchemaError("sofic graph presents the empty subshift (no bi-infinite path)");
  SoficBackend be{std::move(g), {}, {}, false};
  const std::size_t nv = be.g.vertex_names.size();
  const std::size_t na = be.g.alphabet.size();
  be.step.assign(nv, std::vector<std::vector<Symbol>>(na));
  for (const auto& e : be.g.edges) be.step[e.src][e.label].push_back(e.dst);
  return be;
}

SubshiftSpec SubshiftSpec::sofic_graph(LabeledGraph g) {
  SoficBackend be = make_sofic_backend(std::move(g));
  Alphabet a = be.g.alphabet;
  return SubshiftSpec(std::move(a), Backend(std::move(be)));
}

SubshiftSpec SubshiftSpec::forbidden_words(Alphabet alphabet, std::vector<Word> forbidden) {
  std::size_t maxlen = 1;
  for (const auto& f : forbidden) {
    if (f.empty()) throw SchemaError("forbidden word list contains the empty word");
    for (Symbol s : f)
      if (s >= alphabet.size()) throw SchemaError("forbidden word uses a symbol outside the alphabet");
    maxlen = std::max(maxlen, f.size());
  }
  // Higher-block presentation: vertices are clean windows of length maxlen-1,
  // edges append one symbol; trimming removes words with no two-sided future.
  const std::size_t k = maxlen - 1;
  auto clean = [&](const Word& w) {
    for (const auto& f : forbidden) {
      if (f.size() > w.size()) continue;
      for (std::size_t i = 0; i + f.size() <= w.size(); ++i)
        if (std::equal(f.begin(), f.end(), w.begin() + static_cast<long>(i))) return false;
    }
    return true;
  };
  CellBudget budget{max_cells()};
  std::vector<Word> windows{Word{}};
  for (std::size_t l = 0; l < k; ++l) {
    std::vector<Word> next;
    for (const auto& w : windows)
      for (Symbol s = 0; s < alphabet.size(); ++s) {
        Word e = w;
        e.push_back(s);
        if (clean(e)) next.push_back(std::move(e));
      }
    budget.charge(next.size());
    windows = std::move(next);
  }
  LabeledGraph g;
  g.alphabet = alphabet;
  std::map<Word, int> index;
  for (const auto& w : windows) {
    index.emplace(w, g.vertex_count());
    g.vertex_names.push_back(alphabet.word_str(w).empty() ? "." : alphabet.word_str(w));
  }
  for (const auto& w : windows)
    for (Symbol s = 0; s < alphabet.size(); ++s) {
      Word e = w;
      e.push_back(s);
      if (!clean(e)) continue;
      const Word suff(e.end() - static_cast<long>(k), e.end());
      auto it = index.find(suff);
      if (it != index.end()) g.edges.push_back({index.at(w), it->second, s});
    }
  SoficBackend be = make_sofic_backend(std::move(g));
  be.forbidden_origin = std::move(forbidden);  // kept for serialization
  be.from_forbidden = true;
  return SubshiftSpec(std::move(alphabet), Backend(std::move(be)));
}

SubshiftSpec SubshiftSpec::full_shift(std::size_t n) {
  if (n < 1) throw SchemaError("full shift needs at least one symbol");
  LabeledGraph g;
  g.alphabet = Alphabet(numeric_names(n));
  g.vertex_names = {"v"};
  for (Symbol s = 0; s < n; ++s) g.edges.push_back({0, 0, s});
  return sofic_graph(std::move(g));
}

SubshiftSpec SubshiftSpec::dyck_full(std::size_t n) {
  BracketMonoid m = BracketMonoid::full(n);
  Alphabet a = m.alphabet();
  return SubshiftSpec(std::move(a), Backend(BracketBackend{std::move(m)}));
}

SubshiftSpec SubshiftSpec::markov_dyck(BinMatrix a) {
  BracketMonoid m{std::move(a)};
  Alphabet al = m.alphabet();
  return SubshiftSpec(std::move(al), Backend(BracketBackend{std::move(m)}));
}

SubshiftSpec SubshiftSpec::motzkin(std::size_t n) {
  BracketMonoid m = BracketMonoid::full(n, /*with_unit=*/true);
  Alphabet a = m.alphabet();
  return SubshiftSpec(std::move(a), Backend(BracketBackend{std::move(m)}));
}

SubshiftSpec SubshiftSpec::beta_shift(BetaNumber beta) {
  auto membership = std::make_shared<BetaMembership>(beta);
  Alphabet a{numeric_names(membership->alphabet_size())};
  return SubshiftSpec(std::move(a), Backend(BetaBackend{std::move(beta), std::move(membership)}));
}

SubshiftSpec SubshiftSpec::oracle(Alphabet alphabet, std::function<bool(const Word&)> member,
                                  int certified_depth, std::string name) {
  if (!member) throw SchemaError("oracle backend needs a membership predicate");
  if (certified_depth < 1) throw SchemaError("oracle certified depth must be >= 1");
  if (!member(Word{})) throw SchemaError("oracle rejects the empty word; language must be factorial");
  return SubshiftSpec(std::move(alphabet),
                      Backend(OracleBackend{std::move(member), certified_depth, std::move(name)}));
}

std::string SubshiftSpec::backend_name() const {
  struct V {
    std::string operator()(const SoficBackend& b) const { return b.from_forbidden ? "forbidden" : "sofic"; }
    std::string operator()(const BracketBackend& b) const {
      if (b.m.with_unit()) return "motzkin";
      bool full = true;
      for (const auto& row : b.m.matrix())
        for (int v : row) full = full && v == 1;
      return full ? "dyck" : "markov_dyck";
    }
    std::string operator()(const BetaBackend&) const { return "beta"; }
    std::string operator()(const OracleBackend& b) const { return b.name; }
    std::string operator()(const BlockBackend&) const { return "higher_block"; }
  };
  return std::visit(V{}, *backend_);
}

int SubshiftSpec::certified_depth() const {
  if (const auto* o = std::get_if<OracleBackend>(backend_.get())) return o->depth;
  if (const auto* b = std::get_if<BlockBackend>(backend_.get())) {
    const int inner = b->inner->certified_depth();
    return inner == INT_MAX ? INT_MAX : inner - b->n + 1;
  }
  return INT_MAX;
}

const LabeledGraph* SubshiftSpec::graph() const {
  const auto* s = std::get_if<SoficBackend>(backend_.get());
  return s ? &s->g : nullptr;
}

const BracketMonoid* SubshiftSpec::bracket_monoid() const {
  const auto* b = std::get_if<BracketBackend>(backend_.get());
  return b ? &b->m : nullptr;
}

const BetaNumber* SubshiftSpec::beta() const {
  const auto* b = std::get_if<BetaBackend>(backend_.get());
  return b ? &b->number : nullptr;
}

const SubshiftSpec* SubshiftSpec::block_inner() const {
  const auto* b = std::get_if<BlockBackend>(backend_.get());
  return b ? b->inner.get() : nullptr;
}

int SubshiftSpec::block_length() const {
  const auto* b = std::get_if<BlockBackend>(backend_.get());
  return b ? b->n : 1;
}

const std::vector<Word>* SubshiftSpec::forbidden_origin() const {
  const auto* s = std::get_if<SoficBackend>(backend_.get());
  return s && s->from_forbidden ? &s->forbidden_origin : nullptr;
}

bool SubshiftSpec::states_mergeable() const {
  if (std::holds_alternative<OracleBackend>(*backend_)) return false;
  if (const auto* b = std::get_if<BlockBackend>(backend_.get())) return b->inner->states_mergeable();
  return true;
}

SubshiftSpec::State SubshiftSpec::start() const {
  struct V {
    const SubshiftSpec* self;
    State operator()(const SoficBackend& b) const {
      State s;
      for (Symbol v = 0; v < b.g.vertex_names.size(); ++v) s.vertices.push_back(v);
      return s;
    }
    State operator()(const BracketBackend& b) const {
      State s;
      s.elem = b.m.one();
      return s;
    }
    State operator()(const BetaBackend&) const { return State{}; }
    State operator()(const OracleBackend&) const { return State{}; }
    State operator()(const BlockBackend& b) const {
      State s;
      s.inner = std::make_shared<State>(b.inner->start());
      return s;
    }
  };
  return std::visit(V{this}, *backend_);
}

std::optional<SubshiftSpec::State> SubshiftSpec::extend(const State& s, Symbol a) const {
  if (a >= alphabet_.size()) throw SchemaError("extend: symbol out of range");
  struct V {
    const SubshiftSpec* self;
    const State& s;
    Symbol a;
    std::optional<State> operator()(const SoficBackend& b) const {
      State t;
      for (Symbol v : s.vertices)
        for (Symbol w : b.step[v][a]) t.vertices.push_back(w);
      std::sort(t.vertices.begin(), t.vertices.end());
      t.vertices.erase(std::unique(t.vertices.begin(), t.vertices.end()), t.vertices.end());
      if (t.vertices.empty()) return std::nullopt;
      return t;
    }
    std::optional<State> operator()(const BracketBackend& b) const {
      State t;
      t.elem = b.m.mul(s.elem, a);
      if (t.elem.zero) return std::nullopt;
      return t;
    }
    std::optional<State> operator()(const BetaBackend& b) const {
      const int next = b.membership->step(s.kmp, static_cast<long>(a));
      if (next == BetaMembership::kReject) return std::nullopt;
      State t;
      t.kmp = next;
      return t;
    }
    std::optional<State> operator()(const OracleBackend& b) const {
      State t;
      t.word = s.word;
      t.word.push_back(a);
      if (static_cast<int>(t.word.size()) > b.depth)
        throw DepthExceeded("oracle query of length " + std::to_string(t.word.size()) +
                            " exceeds certified depth " + std::to_string(b.depth));
      if (!b.member(t.word)) return std::nullopt;
      return t;
    }
    std::optional<State> operator()(const BlockBackend& b) const {
      const Word& blk = b.blocks[a];
      State t;
      if (s.prev) {
        const Word& p = b.blocks[*s.prev];
        if (!std::equal(p.begin() + 1, p.end(), blk.begin())) return std::nullopt;
        auto next = b.inner->extend(*s.inner, blk.back());
        if (!next) return std::nullopt;
        t.inner = std::make_shared<State>(std::move(*next));
      } else {
        State cur = *s.inner;
        for (Symbol x : blk) {
          auto next = b.inner->extend(cur, x);
          if (!next) return std::nullopt;
          cur = std::move(*next);
        }
        t.inner = std::make_shared<State>(std::move(cur));
      }
      t.prev = a;
      return t;
    }
  };
  return std::visit(V{this, s, a}, *backend_);
}

std::string SubshiftSpec::state_key(const State& s) const {
  struct V {
    const SubshiftSpec* self;
    const State& s;
    std::string operator()(const SoficBackend&) const {
      std::string k;
      for (Symbol v : s.vertices) k += std::to_string(v) + ",";
      return k;
    }
    std::string operator()(const BracketBackend&) const {
      // Follower behaviour ignores the pushed-up word entirely.
      std::string k;
      for (char m : s.elem.mask) k += m ? '1' : '0';
      k += "|";
      for (Symbol x : s.elem.down) k += std::to_string(x) + ".";
      return k;
    }
    std::string operator()(const BetaBackend&) const { return std::to_string(s.kmp); }
    std::string operator()(const OracleBackend&) const {
      std::string k;
      for (Symbol x : s.word) k += std::to_string(x) + ",";
      return k;
    }
    std::string operator()(const BlockBackend& b) const {
      std::string k = b.inner->state_key(*s.inner);
      k += "#";
      k += s.prev ? std::to_string(*s.prev) : "-";
      return k;
    }
  };
  return std::visit(V{this, s}, *backend_);
}

bool SubshiftSpec::contains(const Word& w) const {
  if (const auto* o = std::get_if<OracleBackend>(backend_.get())) {
    if (static_cast<int>(w.size()) > o->depth)
      throw DepthExceeded("oracle query of length " + std::to_string(w.size()) +
                          " exceeds certified depth " + std::to_string(o->depth));
    for (Symbol s : w)
      if (s >= alphabet_.size()) throw SchemaError("contains: symbol out of range");
    return o->member(w);
  }
  State s = start();
  for (Symbol a : w) {
    auto next = extend(s, a);
    if (!next) return false;
    s = std::move(*next);
  }
  return true;
}

std::vector<Word> SubshiftSpec::admissible_words(int l) const {
  if (l < 0) throw SchemaError("admissible_words: negative length");
  CellBudget budget{max_cells()};
  std::vector<std::pair<Word, State>> layer{{Word{}, start()}};
  for (int step = 0; step < l; ++step) {
    std::vector<std::pair<Word, State>> next;
    for (const auto& [w, s] : layer)
      for (Symbol a = 0; a < alphabet_.size(); ++a)
        if (auto t = extend(s, a)) {
          Word e = w;
          e.push_back(a);
          next.emplace_back(std::move(e), std::move(*t));
        }
    budget.charge(next.size());
    layer = std::move(next);
  }
  std::vector<Word> out;
  out.reserve(layer.size());
  for (auto& [w, s] : layer) out.push_back(std::move(w));
  return out;  // lexicographic by construction
}

std::vector<Word> SubshiftSpec::predecessor_set(const Word& mu, int l) const {
  if (l < 0) throw SchemaError("predecessor_set: negative length");
  if (!contains(mu)) throw InadmissibleWord("predecessor_set: word not in the language");
  std::vector<Word> out;
  for (const auto& nu : admissible_words(l))
    if (contains(concat(nu, mu))) out.push_back(nu);
  return out;
}

std::vector<Word> SubshiftSpec::follower_set(const Word& mu, int l) const {
  if (l < 0) throw SchemaError("follower_set: negative length");
  State s = start();
  for (Symbol a : mu) {
    auto next = extend(s, a);
    if (!next) throw InadmissibleWord("follower_set: word not in the language");
    s = std::move(*next);
  }
  CellBudget budget{max_cells()};
  std::vector<std::pair<Word, State>> layer{{Word{}, std::move(s)}};
  for (int step = 0; step < l; ++step) {
    std::vector<std::pair<Word, State>> next;
    for (const auto& [w, st] : layer)
      for (Symbol a = 0; a < alphabet_.size(); ++a)
        if (auto t = extend(st, a)) {
          Word e = w;
          e.push_back(a);
          next.emplace_back(std::move(e), std::move(*t));
        }
    budget.charge(next.size());
    layer = std::move(next);
  }
  std::vector<Word> out;
  out.reserve(layer.size());
  for (auto& [w, st] : layer) out.push_back(std::move(w));
  return out;
}

Report SubshiftSpec::is_irreducible(int depth) const {
  if (depth < 1) throw SchemaError("is_irreducible: depth must be >= 1");
  if (const auto* so = std::get_if<SoficBackend>(backend_.get())) {
    const bool sc = so->g.strongly_connected();
    if (sc) return Report::yes(depth, "essential presentation is strongly connected", true);
    return Report::no(depth, "essential presentation is not strongly connected", {}, true);
  }

  try {
    CellBudget budget{max_cells()};
    std::vector<State> states;
    std::unordered_map<std::string, int> id_of;
    std::vector<std::vector<int>> trans;  // id x symbol -> id or -1
    const std::size_t na = alphabet_.size();
    auto intern = [&](const State& s) {
      const std::string k = state_key(s);
      auto it = id_of.find(k);
      if (it != id_of.end()) return it->second;
      const int id = static_cast<int>(states.size());
      id_of.emplace(k, id);
      states.push_back(s);
      trans.emplace_back(na, -2);  // -2 = unexplored, -1 = dead
      budget.charge(1);
      return id;
    };
    auto step = [&](int id, Symbol a) {
      int& slot = trans[static_cast<std::size_t>(id)][a];
      if (slot == -2) {
        auto t = extend(states[static_cast<std::size_t>(id)], a);
        slot = t ? intern(*t) : -1;
      }
      return slot;
    };

    const int start_id = intern(start());
    // Forward closure to 2*depth; remember distances and reverse edges.
    std::vector<int> dist{0};
    std::vector<std::vector<int>> rev{{}};
    std::vector<int> frontier{start_id};
    std::vector<Word> witness{{}};
    for (int d = 1; d <= 2 * depth && !frontier.empty(); ++d) {
      std::vector<int> next;
      for (int id : frontier)
        for (Symbol a = 0; a < na; ++a) {
          const int t = step(id, a);
          if (t < 0) continue;
          while (static_cast<int>(dist.size()) <= t) {
            dist.push_back(-1);
            rev.emplace_back();
            witness.emplace_back();
          }
          rev[static_cast<std::size_t>(t)].push_back(id);
          if (dist[static_cast<std::size_t>(t)] < 0) {
            dist[static_cast<std::size_t>(t)] = d;
            Word w = witness[static_cast<std::size_t>(id)];
            w.push_back(a);
            witness[static_cast<std::size_t>(t)] = std::move(w);
            next.push_back(t);
          }
        }
      frontier = std::move(next);
    }
    const int n_states = static_cast<int>(states.size());

    // Fast path: every state seen within `depth` steps can return to a state
    // behaving like the initial one within `depth` further steps.
    std::vector<int> back(static_cast<std::size_t>(n_states), -1);
    back[static_cast<std::size_t>(start_id)] = 0;
    std::vector<int> bf{start_id};
    for (int d = 1; d <= depth && !bf.empty(); ++d) {
      std::vector<int> nxt;
      for (int id : bf)
        for (int p : rev[static_cast<std::size_t>(id)])
          if (back[static_cast<std::size_t>(p)] < 0) {
            back[static_cast<std::size_t>(p)] = d;
            nxt.push_back(p);
          }
      bf = std::move(nxt);
    }
    bool fast = true;
    for (int id = 0; id < n_states && fast; ++id)
      if (dist[static_cast<std::size_t>(id)] >= 0 && dist[static_cast<std::size_t>(id)] <= depth)
        fast = fast && back[static_cast<std::size_t>(id)] >= 0;
    if (fast)
      return Report::yes(depth, "every word of length <= depth extends back to the full language");

    // Slow path: for every reachable state collect which admissible words of
    // length <= depth can be read after some bridge of length <= depth.
    std::vector<Word> all_words;
    {
      std::vector<Word> layer{{}};
      for (int l = 0; l < depth; ++l) {
        std::vector<Word> nxt;
        for (const auto& w : layer)
          for (Symbol a = 0; a < na; ++a) {
            Word e = w;
            e.push_back(a);
            if (contains(e)) nxt.push_back(std::move(e));
          }
        budget.charge(nxt.size());
        for (const auto& w : nxt) all_words.push_back(w);
        layer = std::move(nxt);
      }
    }

    for (int id = 0; id < n_states; ++id) {
      if (dist[static_cast<std::size_t>(id)] < 0 || dist[static_cast<std::size_t>(id)] > depth) continue;
      // U = states within `depth` forward steps of id.
      std::vector<int> u{id};
      std::unordered_set<int> seen{id};
      std::vector<int> fr{id};
      for (int d = 1; d <= depth && !fr.empty(); ++d) {
        std::vector<int> nxt;
        for (int x : fr)
          for (Symbol a = 0; a < na; ++a) {
            const int t = step(x, a);
            if (t >= 0 && seen.insert(t).second) {
              nxt.push_back(t);
              u.push_back(t);
            }
          }
        budget.charge(nxt.size());
        fr = std::move(nxt);
      }
      // Seeded joint enumeration: which words are readable from some u?
      std::set<Word> readable;
      std::vector<std::pair<Word, std::vector<int>>> layer;
      std::sort(u.begin(), u.end());
      layer.emplace_back(Word{}, std::move(u));
      for (int l = 0; l < depth && !layer.empty(); ++l) {
        std::vector<std::pair<Word, std::vector<int>>> nxt;
        for (const auto& [w, set] : layer)
          for (Symbol a = 0; a < na; ++a) {
            std::vector<int> img;
            for (int x : set) {
              const int t = step(x, a);
              if (t >= 0) img.push_back(t);
            }
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (img.empty()) continue;
            Word e = w;
            e.push_back(a);
            readable.insert(e);
            nxt.emplace_back(std::move(e), std::move(img));
          }
        budget.charge(nxt.size());
        layer = std::move(nxt);
      }
      for (const auto& nu : all_words)
        if (!readable.count(nu)) {
          const std::string mu_s = alphabet_.word_str(witness[static_cast<std::size_t>(id)]);
          const std::string nu_s = alphabet_.word_str(nu);
          return Report::unknown(depth, "no bridge of length <= " + std::to_string(depth) +
                                            " from '" + mu_s + "' to '" + nu_s + "'");
        }
    }
    return Report::yes(depth, "all word pairs of length <= depth admit a bridge");
  } catch (const DepthExceeded& e) {
    return Report::unknown(depth, std::string("certified depth too small: ") + e.what());
  }
}

SubshiftSpec SubshiftSpec::higher_block(int n) const {
  if (n < 1) throw SchemaError("higher_block: block length must be >= 1");
  BlockBackend be;
  be.inner = std::make_shared<const SubshiftSpec>(*this);
  be.n = n;
  be.blocks = admissible_words(n);
  if (be.blocks.empty()) throw SchemaError("higher_block: no admissible blocks");
  std::vector<std::string> names;
  names.reserve(be.blocks.size());
  for (const auto& b : be.blocks) names.push_back(alphabet_.word_str(b));
  Alphabet a{std::move(names)};
  return SubshiftSpec(std::move(a), Backend(std::move(be)));
}

}  // namespace lamgraph
