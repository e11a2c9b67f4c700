#include "lamgraph/conjugacy.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace lamgraph {

namespace {

std::string render(const Alphabet& a, const Word& w) { return a.word_str(w); }

Word drop_front(const Word& w, int n) {
  if (n >= (int)w.size()) return {};
  return Word(w.begin() + n, w.end());
}

}  // namespace

BlockMap block_map_from(const SubshiftSpec& src, int window,
                        const std::function<Symbol(const Word&)>& f) {
  if (window < 1) throw SchemaError("block_map_from: window must be positive");
  BlockMap m;
  m.window = window;
  for (const Word& w : src.admissible_words(window)) m.table[w] = f(w);
  return m;
}

HeadMap head_map_from(const SubshiftSpec& src, int window, int target_len,
                      const std::function<Word(const Word&)>& f) {
  if (window < 1) throw SchemaError("head_map_from: window must be positive");
  if (target_len < 0) throw SchemaError("head_map_from: negative target length");
  HeadMap m;
  m.window = window;
  m.target_len = target_len;
  for (const Word& w : src.admissible_words(window)) {
    Word img = f(w);
    if ((int)img.size() != target_len) {
      throw SchemaError("head_map_from: image of " + src.alphabet().word_str(w) +
                        " has length " + std::to_string(img.size()) +
                        ", expected " + std::to_string(target_len));
    }
    m.table[w] = std::move(img);
  }
  return m;
}

Word apply_sliding_code(const BlockMap& code, const Word& x) {
  if (code.window < 1) throw SchemaError("apply_sliding_code: window must be positive");
  if ((int)x.size() < code.window) {
    throw SchemaError("apply_sliding_code: input of length " + std::to_string(x.size()) +
                      " is shorter than the window " + std::to_string(code.window));
  }
  Word out;
  out.reserve(x.size() - code.window + 1);
  for (std::size_t i = 0; i + code.window <= x.size(); ++i) {
    auto it = code.table.find(subword(x, i, code.window));
    if (it == code.table.end()) {
      throw InadmissibleWindow("apply_sliding_code: no table entry for the window at position " +
                               std::to_string(i + 1));
    }
    out.push_back(it->second);
  }
  return out;
}

Report check_one_sided_conjugacy(const SubshiftSpec& s1, const SubshiftSpec& s2,
                                 const BlockMap& fwd, const BlockMap& bwd, int depth) {
  if (fwd.window < 1 || bwd.window < 1) {
    throw SchemaError("check_one_sided_conjugacy: windows must be positive");
  }
  if (depth < std::max(fwd.window, bwd.window)) {
    throw SchemaError("check_one_sided_conjugacy: depth must cover both windows");
  }

  // one direction: slide `f` over every depth-word of A, land admissibly in B,
  // slide back with `g` and recover the source prefix
  auto run = [&](const SubshiftSpec& A, const SubshiftSpec& B, const BlockMap& f,
                 const BlockMap& g, const std::string& side) -> std::optional<Report> {
    for (const Word& x : A.admissible_words(depth)) {
      Word y;
      try {
        y = apply_sliding_code(f, x);
      } catch (const InadmissibleWindow& e) {
        return Report::no(depth, side + " code is not total on admissible windows: " + e.what(),
                          {render(A.alphabet(), x)});
      }
      if (!B.contains(y)) {
        return Report::no(depth, side + " image is not admissible in the target",
                          {render(A.alphabet(), x), render(B.alphabet(), y)});
      }
      // sliding property: f(sigma x) = sigma(f(x))
      Word xs = drop_front(x, 1);
      if ((int)xs.size() >= f.window) {
        Word ys = apply_sliding_code(f, xs);
        if (!std::equal(ys.begin(), ys.end(), y.begin() + 1)) {
          return Report::no(depth, side + " code does not commute with the shift",
                            {render(A.alphabet(), x)});
        }
      }
      if ((int)y.size() >= g.window) {
        Word z;
        try {
          z = apply_sliding_code(g, y);
        } catch (const InadmissibleWindow& e) {
          return Report::no(depth,
                            side + " inverse is not total on an image window: " + std::string(e.what()),
                            {render(B.alphabet(), y)});
        }
        if (!std::equal(z.begin(), z.end(), x.begin())) {
          return Report::no(depth, side + " round trip does not recover the source word",
                            {render(A.alphabet(), x), render(A.alphabet(), z)});
        }
      }
    }
    return std::nullopt;
  };

  if (auto r = run(s1, s2, fwd, bwd, "forward")) return *r;
  if (auto r = run(s2, s1, bwd, fwd, "backward")) return *r;
  return Report::yes(depth, "codes are mutually inverse on all cylinders");
}

void EventualConjugacyData::check_shape() const {
  if (lag < 0) throw SchemaError("eventual conjugacy: negative lag");
  if (head_fwd.window != head_bwd.window) {
    throw SchemaError("eventual conjugacy: head maps must share one window M");
  }
  if (head_fwd.window < std::max(1, lag)) {
    throw SchemaError("eventual conjugacy: head window M must be >= max(1, K)");
  }
  if (head_fwd.target_len != lag || head_bwd.target_len != lag) {
    throw SchemaError("eventual conjugacy: head maps must emit exactly K letters");
  }
  if (tail_fwd.window < lag + 1 || tail_bwd.window < lag + 1) {
    throw SchemaError("eventual conjugacy: tail windows must read at least K+1 letters");
  }
}

Report check_eventual_conjugacy(const SubshiftSpec& s1, const SubshiftSpec& s2,
                                const EventualConjugacyData& data, int depth) {
  data.check_shape();
  const int K = data.lag;
  const int M = data.head_window();
  const int need = M + std::max(data.tail_fwd.window, data.tail_bwd.window) - 1 + K;
  if (depth < need + 1) {
    throw SchemaError("check_eventual_conjugacy: depth must exceed M + N + K = " +
                      std::to_string(need));
  }

  // one direction: h = headF(x[1..M]) . (tailF slid along x), mirrored by
  // (headB, tailB)
  auto run = [&](const SubshiftSpec& A, const SubshiftSpec& B, const HeadMap& headF,
                 const HeadMap& headB, const BlockMap& tailF, const BlockMap& tailB,
                 const std::string& side) -> std::optional<Report> {
    for (const Word& x : A.admissible_words(depth)) {
      auto it = headF.table.find(subword(x, 0, M));
      if (it == headF.table.end()) {
        return Report::no(depth, side + " head map is not total",
                          {render(A.alphabet(), subword(x, 0, M))});
      }
      const Word& head = it->second;
      Word tail;
      try {
        tail = apply_sliding_code(tailF, x);
      } catch (const InadmissibleWindow& e) {
        return Report::no(depth, side + " tail code is not total: " + std::string(e.what()),
                          {render(A.alphabet(), x)});
      }
      Word image = concat(head, tail);
      if (!B.contains(image)) {
        return Report::no(depth, side + " image is not admissible in the target",
                          {render(A.alphabet(), x), render(B.alphabet(), image)});
      }

      // lag-K intertwining: sigma^K h(sigma x) = sigma^{K+1} h(x)
      Word xs = drop_front(x, 1);
      auto it2 = headF.table.find(subword(xs, 0, M));
      if (it2 == headF.table.end()) {
        return Report::no(depth, side + " head map is not total",
                          {render(A.alphabet(), subword(xs, 0, M))});
      }
      Word image_s = concat(it2->second, apply_sliding_code(tailF, xs));
      if (!std::equal(image_s.begin() + K, image_s.end(), image.begin() + K + 1, image.end())) {
        return Report::no(depth, side + " lag-" + std::to_string(K) +
                              " shift intertwining fails",
                          {render(A.alphabet(), x)});
      }

      // head reconstruction: x[1..K] = headB(head . tail[1..M-K])
      Word arg = concat(head, subword(tail, 0, M - K));
      auto itb = headB.table.find(arg);
      if (itb == headB.table.end()) {
        return Report::no(depth, side + " mirror head map is not total on an image window",
                          {render(B.alphabet(), arg)});
      }
      if (itb->second != subword(x, 0, K)) {
        return Report::no(depth, side + " head reconstruction fails",
                          {render(A.alphabet(), x), render(A.alphabet(), itb->second)});
      }

      // tail reconstruction: x[K+1..] = tailB slid along the image
      Word rec;
      try {
        rec = apply_sliding_code(tailB, image);
      } catch (const InadmissibleWindow& e) {
        return Report::no(depth, side + " mirror tail code is not total: " + std::string(e.what()),
                          {render(B.alphabet(), image)});
      }
      std::size_t m = std::min(rec.size(), x.size() - K);
      if (!std::equal(rec.begin(), rec.begin() + m, x.begin() + K)) {
        return Report::no(depth, side + " tail reconstruction fails",
                          {render(A.alphabet(), x), render(A.alphabet(), rec)});
      }

      // double tail: x[2K+1..] = tailB(tailF(x))
      if ((int)tail.size() >= tailB.window && (int)x.size() > 2 * K) {
        Word rec2 = apply_sliding_code(tailB, tail);
        std::size_t m2 = std::min(rec2.size(), x.size() - 2 * K);
        if (!std::equal(rec2.begin(), rec2.begin() + m2, x.begin() + 2 * K)) {
          return Report::no(depth, side + " double-tail reconstruction fails",
                            {render(A.alphabet(), x), render(A.alphabet(), rec2)});
        }
      }
    }
    return std::nullopt;
  };

  if (auto r = run(s1, s2, data.head_fwd, data.head_bwd, data.tail_fwd, data.tail_bwd,
                   "forward")) {
    return *r;
  }
  if (auto r = run(s2, s1, data.head_bwd, data.head_fwd, data.tail_bwd, data.tail_fwd,
                   "backward")) {
    return *r;
  }
  return Report::yes(depth, "eventual-conjugacy identities hold on all cylinders");
}

Word tau_phi1(const Word& xi, const Word& y_window, const EventualConjugacyData& data) {
  data.check_shape();
  const int K = data.lag;
  const int M = data.head_window();
  const int L = data.yblock_len();
  if ((int)xi.size() != K) {
    throw WindowMismatch("tau_phi1: head word has length " + std::to_string(xi.size()) +
                         ", lag is " + std::to_string(K));
  }
  if ((int)y_window.size() != L) {
    throw WindowMismatch("tau_phi1: y window has length " + std::to_string(y_window.size()) +
                         ", expected L = " + std::to_string(L));
  }
  if (K == 0) return {};

  auto it = data.head_bwd.table.find(concat(xi, subword(y_window, 0, M - K)));
  if (it == data.head_bwd.table.end()) {
    throw InadmissibleWindow("tau_phi1: mirror head map undefined on the window");
  }
  Word b = apply_sliding_code(data.tail_bwd, concat(xi, y_window));  // M-K+1 letters
  Word arg = subword(it->second, 1, K - 1);
  arg.insert(arg.end(), b.begin(), b.end());  // M letters
  auto it2 = data.head_fwd.table.find(arg);
  if (it2 == data.head_fwd.table.end()) {
    throw InadmissibleWindow("tau_phi1: head map undefined on the recursed window");
  }
  return it2->second;
}

SubshiftSpec build_lambda2_prime(const SubshiftSpec& s1, const SubshiftSpec& s2,
                                 const EventualConjugacyData& data, int depth) {
  data.check_shape();
  if (depth < 1) throw SchemaError("build_lambda2_prime: depth must be positive");
  const int K = data.lag;
  const int M = data.head_window();
  const int W1 = data.tail_fwd.window;
  const int L = data.yblock_len();
  const int need2 = K + L + depth - 1;
  if (s2.certified_depth() < need2) {
    throw DepthExceeded("build_lambda2_prime: target spec certifies words only to length " +
                        std::to_string(s2.certified_depth()) + ", need " +
                        std::to_string(need2));
  }

  // pair alphabet Sigma' = { (xi, w) : w in B_L, xi in Gamma_K^-(w) }
  std::vector<std::pair<Word, Word>> letters;
  for (const Word& w : s2.admissible_words(L)) {
    for (const Word& xi : s2.predecessor_set(w, K)) letters.emplace_back(xi, w);
  }
  std::sort(letters.begin(), letters.end());
  std::vector<std::string> names;
  names.reserve(letters.size());
  for (const auto& [xi, w] : letters) {
    names.push_back(s2.alphabet().word_str(xi) + "|" + s2.alphabet().word_str(w));
  }
  Alphabet alph(names);  // rejects duplicates

  const SubshiftSpec target = s2;  // captured by the oracle
  const EventualConjugacyData d = data;
  const auto lets = letters;
  auto member = [target, d, lets, K, L](const Word& u) -> bool {
    if (u.empty()) return true;
    // consecutive y blocks must overlap in L-1 letters
    for (std::size_t n = 0; n + 1 < u.size(); ++n) {
      const Word& a = lets[u[n]].second;
      const Word& b = lets[u[n + 1]].second;
      if (!std::equal(a.begin() + 1, a.end(), b.begin())) return false;
    }
    // reconstruct y and test xi_1 y
    Word y = lets[u[0]].second;
    for (std::size_t n = 1; n < u.size(); ++n) y.push_back(lets[u[n]].second.back());
    if (!target.contains(concat(lets[u[0]].first, y))) return false;
    // head recursion
    for (std::size_t n = 0; n + 1 < u.size(); ++n) {
      if (tau_phi1(lets[u[n]].first, lets[u[n]].second, d) != lets[u[n + 1]].first) return false;
    }
    return true;
  };
  SubshiftSpec out = SubshiftSpec::oracle(alph, member, depth, "lambda2_prime");

  // cross-check: the image of every long-enough source word is admissible here
  const int base = std::max(M, L + W1 - 1);
  const int n1 = base + depth - 1;
  std::map<std::pair<Word, Word>, Symbol> index;
  for (std::size_t i = 0; i < letters.size(); ++i) index[letters[i]] = (Symbol)i;
  for (const Word& x : s1.admissible_words(n1)) {
    Word tail = apply_sliding_code(data.tail_fwd, x);
    Word u;
    for (int i = 0; i < depth; ++i) {
      auto it = data.head_fwd.table.find(subword(x, i, M));
      if (it == data.head_fwd.table.end()) {
        throw SchemaError("build_lambda2_prime: head map is not total on " +
                          s1.alphabet().word_str(subword(x, i, M)));
      }
      auto pos = index.find({it->second, subword(tail, i, L)});
      if (pos == index.end()) {
        throw SchemaError("build_lambda2_prime: image letter of " + s1.alphabet().word_str(x) +
                          " lies outside the pair alphabet");
      }
      u.push_back(pos->second);
    }
    if (!member(u)) {
      throw SchemaError("build_lambda2_prime: image of " + s1.alphabet().word_str(x) +
                        " violates the head recursion");
    }
  }
  return out;
}

Report check_substitution_morphism(const SubshiftSpec& s1, const SubshiftSpec& s2,
                                   const std::vector<Word>& sub, int depth) {
  if (sub.size() != s1.alphabet().size()) {
    throw SchemaError("substitution table must cover the source alphabet");
  }
  for (const Word& w : sub) {
    if (w.empty()) throw SchemaError("substitution images must be nonempty");
    for (Symbol a : w) {
      if (a >= s2.alphabet().size()) throw SchemaError("substitution image uses a foreign symbol");
    }
  }
  if (depth < 1) throw SchemaError("check_substitution_morphism: depth must be positive");

  auto subst = [&](const Word& w) {
    Word r;
    for (Symbol a : w) r.insert(r.end(), sub[a].begin(), sub[a].end());
    return r;
  };

  std::vector<Word> words, images;
  for (int l = 1; l <= depth; ++l) {
    for (Word& w : s1.admissible_words(l)) words.push_back(std::move(w));
  }
  CellBudget budget;
  images.reserve(words.size());
  for (const Word& w : words) {
    Word img = subst(w);
    budget.charge(img.size());
    if (!s2.contains(img)) {
      return Report::no(depth, "substitution image is not admissible",
                        {render(s1.alphabet(), w), render(s2.alphabet(), img)});
    }
    images.push_back(std::move(img));
  }
  // disjoint cylinders must stay disjoint: images of prefix-incomparable
  // words must be prefix-incomparable (this also gives injectivity)
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      budget.charge();
      if (is_prefix(words[i], words[j]) || is_prefix(words[j], words[i])) continue;
      if (is_prefix(images[i], images[j]) || is_prefix(images[j], images[i])) {
        return Report::no(depth, "images of disjoint cylinders are nested",
                          {render(s1.alphabet(), words[i]), render(s1.alphabet(), words[j]),
                           render(s2.alphabet(), images[i]), render(s2.alphabet(), images[j])});
      }
    }
  }
  return Report::yes(depth, "substitution is admissibility-preserving and cylinder-disjoint");
}

long CocycleMap::value_on(const Word& labels) const {
  if ((int)labels.size() < window) {
    throw InadmissibleWindow("cocycle window exceeds the available labels");
  }
  auto it = table.find(subword(labels, 0, window));
  if (it == table.end()) throw InadmissibleWindow("cocycle undefined on an admissible window");
  return it->second;
}

namespace {

// descending path ending at level end_level of a truncation:
// vertices[k] lives at level end_level - labels.size() + k
struct AnchoredPath {
  Word labels;
  std::vector<int> vertices;
  int end_level = 0;
};

std::vector<AnchoredPath> enumerate_anchored_paths(const LambdaGraphTruncation& g, int len,
                                                   CellBudget& budget) {
  const int top = g.depth();
  // in-edges per level keyed by destination
  std::vector<std::vector<std::vector<LabeledEdge>>> in(top);
  for (int l = 0; l < top; ++l) {
    in[l].resize(g.level_size(l + 1));
    for (const LabeledEdge& e : g.edges[l]) in[l][e.dst].push_back(e);
  }
  std::vector<AnchoredPath> out;
  Word labels(len);
  std::vector<int> verts(len + 1);
  // walk upward from (top, v), filling positions len-1 .. 0
  std::function<void(int, int)> up = [&](int pos, int v) {
    budget.charge();
    verts[pos + 1] = v;
    const int lvl = top - len + pos;  // edge E_{lvl, lvl+1} into v
    for (const LabeledEdge& e : in[lvl][v]) {
      labels[pos] = e.label;
      if (pos == 0) {
        verts[0] = e.src;
        out.push_back({labels, verts, top});
        budget.charge();
      } else {
        up(pos - 1, e.src);
      }
    }
  };
  for (int v = 0; v < g.level_size(top); ++v) up(len - 1, v);
  return out;
}

// unique backward walk reading `labels` and ending at (end_level, end);
// nullopt when some step has no edge (left-resolving makes steps unique)
std::optional<AnchoredPath> backward_walk(const LambdaGraphTruncation& g, const Word& labels,
                                          int end, int end_level) {
  const int n = (int)labels.size();
  if (n > end_level || end_level > g.depth()) return std::nullopt;
  std::vector<int> verts(n + 1);
  verts[n] = end;
  int v = end;
  for (int pos = n - 1; pos >= 0; --pos) {
    const int lvl = end_level - n + pos;
    int src = -1;
    for (const LabeledEdge& e : g.edges[lvl]) {
      if (e.dst == v && e.label == labels[pos]) {
        src = e.src;
        break;
      }
    }
    if (src < 0) return std::nullopt;
    verts[pos] = src;
    v = src;
  }
  return AnchoredPath{labels, std::move(verts), end_level};
}

int project_vertex(const LambdaGraphTruncation& g, int level, int v, int target_level) {
  while (level > target_level) {
    v = g.iota[level - 1][v];
    --level;
  }
  return v;
}

// compare sigma^dropA(A) with sigma^dropB(B) on the overlap of their known
// prefixes, vertices through iota down to the common level
bool shifted_paths_agree(const LambdaGraphTruncation& g, const AnchoredPath& A, int dropA,
                         const AnchoredPath& B, int dropB, std::string* why) {
  const int nA = (int)A.labels.size() - dropA;
  const int nB = (int)B.labels.size() - dropB;
  const int m = std::min(nA, nB);
  for (int i = 1; i <= m; ++i) {
    if (A.labels[dropA + i - 1] != B.labels[dropB + i - 1]) {
      if (why) *why = "labels differ at shifted position " + std::to_string(i);
      return false;
    }
    const int la = A.end_level - (int)A.labels.size() + dropA + i;
    const int lb = B.end_level - (int)B.labels.size() + dropB + i;
    const int common = std::min(la, lb);
    if (project_vertex(g, la, A.vertices[dropA + i], common) !=
        project_vertex(g, lb, B.vertices[dropB + i], common)) {
      if (why) *why = "vertices differ at shifted position " + std::to_string(i);
      return false;
    }
  }
  return true;
}

}  // namespace

Report check_coe(const COEData& data, const SubshiftSpec& s1, const SubshiftSpec& s2,
                 int depth) {
  data.lgs1.check_well_formed();
  data.lgs2.check_well_formed();
  {
    ValidationReport r1 = validate(data.lgs1);
    ValidationReport r2 = validate(data.lgs2);
    if (!r1.left_resolving || !r2.left_resolving) {
      throw NotLeftResolving("check_coe: both truncations must be left-resolving");
    }
  }
  if (data.lgs1.alphabet != s1.alphabet() || data.lgs2.alphabet != s2.alphabet()) {
    throw SchemaError("check_coe: truncation alphabets must match the subshifts");
  }
  if (data.code.size() != s1.alphabet().size()) {
    throw SchemaError("check_coe: codebook must cover the source alphabet");
  }
  std::size_t maxcode = 0;
  for (std::size_t a = 0; a < data.code.size(); ++a) {
    if (data.code[a].empty()) throw SchemaError("check_coe: codebook images must be nonempty");
    for (Symbol s : data.code[a]) {
      if (s >= s2.alphabet().size()) throw SchemaError("check_coe: codebook uses a foreign symbol");
    }
    maxcode = std::max(maxcode, data.code[a].size());
    for (std::size_t b = a + 1; b < data.code.size(); ++b) {
      if (is_prefix(data.code[a], data.code[b]) || is_prefix(data.code[b], data.code[a])) {
        throw SchemaError("check_coe: codebook is not prefix-free");
      }
    }
  }
  for (const CocycleMap* c : {&data.k1, &data.l1, &data.k2, &data.l2}) {
    if (c->window < 0) throw SchemaError("check_coe: negative cocycle window");
    for (const auto& [w, v] : c->table) {
      if (v < 0) throw SchemaError("check_coe: cocycles must take nonnegative values");
    }
  }
  const int top1 = data.lgs1.depth();
  const int top2 = data.lgs2.depth();
  if ((int)data.fwd_end_vertex.size() != data.lgs1.level_size(top1)) {
    throw SchemaError("check_coe: forward end-vertex map must cover the deepest level");
  }
  for (int v : data.fwd_end_vertex) {
    if (v < 0 || v >= data.lgs2.level_size(top2)) {
      throw SchemaError("check_coe: forward end-vertex map out of range");
    }
  }
  if (data.bwd_end_vertex.size() != maxcode) {
    throw SchemaError("check_coe: need one backward end-vertex map per decode shortfall, " +
                      std::to_string(maxcode) + " in total");
  }
  for (std::size_t j = 0; j < maxcode; ++j) {
    if ((int)j >= top2 || (int)j >= top1) {
      throw DepthExceeded("check_coe: truncations too shallow for the codeword lengths");
    }
    if ((int)data.bwd_end_vertex[j].size() != data.lgs2.level_size(top2 - (int)j)) {
      throw SchemaError("check_coe: backward end-vertex map " + std::to_string(j) +
                        " must cover level " + std::to_string(top2 - (int)j));
    }
    for (int v : data.bwd_end_vertex[j]) {
      if (v < 0 || v >= data.lgs1.level_size(top1 - (int)j)) {
        throw SchemaError("check_coe: backward end-vertex map out of range");
      }
    }
  }
  if (depth < 1 || depth > top1 || depth > top2) {
    throw DepthExceeded("check_coe: depth exceeds a truncation");
  }
  if (std::max({data.k1.window, data.l1.window, data.k2.window, data.l2.window}) > depth) {
    throw DepthExceeded("check_coe: a cocycle window exceeds the depth");
  }
  if ((int)(depth * maxcode) > data.lgs2.depth()) {
    throw DepthExceeded("check_coe: image paths would exceed the target truncation");
  }

  auto encode = [&](const Word& w) {
    Word r;
    for (Symbol a : w) r.insert(r.end(), data.code[a].begin(), data.code[a].end());
    return r;
  };
  // greedy prefix-free parse into complete codewords; .second is the number
  // of letters consumed (a trailing partial codeword is left unconsumed);
  // nullopt when stuck mid-sequence
  auto decode = [&](const Word& w) -> std::optional<std::pair<Word, int>> {
    Word r;
    std::size_t p = 0;
    while (p < w.size()) {
      int hit = -1;
      bool partial = false;
      for (std::size_t a = 0; a < data.code.size(); ++a) {
        const Word& c = data.code[a];
        if (c.size() <= w.size() - p) {
          if (std::equal(c.begin(), c.end(), w.begin() + p)) {
            hit = (int)a;
            break;
          }
        } else if (std::equal(w.begin() + p, w.end(), c.begin())) {
          partial = true;
        }
      }
      if (hit >= 0) {
        r.push_back((Symbol)hit);
        p += data.code[hit].size();
      } else {
        if (!partial) return std::nullopt;
        break;
      }
    }
    return std::make_pair(std::move(r), (int)p);
  };

  CellBudget budget;
  std::string why;

  // direction 1: sigma2^{k1} h(sigma1 x) = sigma2^{l1} h(x)
  for (const AnchoredPath& x : enumerate_anchored_paths(data.lgs1, depth, budget)) {
    long c, d;
    try {
      c = data.k1.value_on(x.labels);
      d = data.l1.value_on(x.labels);
    } catch (const InadmissibleWindow& e) {
      return Report::no(depth, std::string("cocycle not total: ") + e.what(),
                        {render(s1.alphabet(), x.labels)});
    }
    Word img = encode(x.labels);
    if (!s2.contains(img)) {
      return Report::no(depth, "image labels are not admissible in the target subshift",
                        {render(s1.alphabet(), x.labels), render(s2.alphabet(), img)});
    }
    int vtop = data.fwd_end_vertex[x.vertices.back()];
    auto walk = backward_walk(data.lgs2, img, vtop, top2);
    if (!walk) {
      return Report::no(depth, "image labels have no path to the mapped end vertex",
                        {render(s1.alphabet(), x.labels), render(s2.alphabet(), img)});
    }
    const AnchoredPath& y = *walk;
    const int e = (int)data.code[x.labels.front()].size();
    // h(sigma1 x) is the image path minus its first codeword
    if (!shifted_paths_agree(data.lgs2, y, e + (int)c, y, (int)d, &why)) {
      return Report::no(depth, "first orbit display fails: " + why,
                        {render(s1.alphabet(), x.labels)});
    }
  }

  // direction 2: sigma1^{k2} h^{-1}(sigma2 y) = sigma1^{l2} h^{-1}(y)
  for (const AnchoredPath& y : enumerate_anchored_paths(data.lgs2, depth, budget)) {
    long c, d;
    try {
      c = data.k2.value_on(y.labels);
      d = data.l2.value_on(y.labels);
    } catch (const InadmissibleWindow& e) {
      return Report::no(depth, std::string("cocycle not total: ") + e.what(),
                        {render(s2.alphabet(), y.labels)});
    }
    auto decY = decode(y.labels);
    auto decS = decode(drop_front(y.labels, 1));
    if (!decY || !decS) {
      return Report::no(depth, "target labels do not decode through the codebook",
                        {render(s2.alphabet(), y.labels)});
    }
    if (!s1.contains(decY->first) || !s1.contains(decS->first)) {
      return Report::no(depth, "decoded labels are not admissible in the source subshift",
                        {render(s2.alphabet(), y.labels)});
    }
    // the decoded window pairs with the target vertex at the consumed
    // position, a shortfall of j levels above the anchor
    const int jY = depth - decY->second;
    const int jS = (depth - 1) - decS->second;
    const int uY = data.bwd_end_vertex[jY][y.vertices[decY->second]];
    const int uS = data.bwd_end_vertex[jS][y.vertices[1 + decS->second]];
    auto wY = backward_walk(data.lgs1, decY->first, uY, top1 - jY);
    auto wS = backward_walk(data.lgs1, decS->first, uS, top1 - jS);
    if (!wY || !wS) {
      return Report::no(depth, "decoded labels have no path to the mapped end vertex",
                        {render(s2.alphabet(), y.labels)});
    }
    if (!shifted_paths_agree(data.lgs1, *wS, (int)c, *wY, (int)d, &why)) {
      return Report::no(depth, "second orbit display fails: " + why,
                        {render(s2.alphabet(), y.labels)});
    }
  }

  return Report::yes(depth, "orbit displays and factor compatibility hold on all length-" +
                                std::to_string(depth) + " path prefixes");
}

}  // namespace lamgraph
