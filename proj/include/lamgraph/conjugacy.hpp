#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "lamgraph/base.hpp"
#include "lamgraph/lgs.hpp"
#include "lamgraph/subshift.hpp"

namespace lamgraph {

// Deterministic window-to-symbol rule; a one-sided sliding block code reads
// x[i..i+window-1] and emits one target symbol per position.  The table must
// be total on the admissible windows of its source subshift.
struct BlockMap {
  int window = 1;
  std::unordered_map<Word, Symbol, WordHash> table;
};

// Window-to-word rule: the K-letter head of an eventually conjugate pair is
// a single application (not slid), reading `window` letters and emitting
// `target_len` letters.
struct HeadMap {
  int window = 1;
  int target_len = 0;
  std::unordered_map<Word, Word, WordHash> table;
};

// Builds a total table by enumerating the admissible windows of `src`.
BlockMap block_map_from(const SubshiftSpec& src, int window,
                        const std::function<Symbol(const Word&)>& f);
HeadMap head_map_from(const SubshiftSpec& src, int window, int target_len,
                      const std::function<Word(const Word&)>& f);

// Slides `code` along x.  Output length |x| - window + 1.  Throws
// InadmissibleWindow when a window has no table entry, SchemaError when
// |x| < window.
Word apply_sliding_code(const BlockMap& code, const Word& x);

// Cylinder-exhaustive verification that (fwd, bwd) is a mutually inverse pair
// of sliding block codes between the two languages: on every admissible word
// of length `depth` it checks totality, admissibility of images, the sliding
// property, and bwd(fwd(x)) = x / fwd(bwd(y)) = y on the determined prefixes.
// No carries the first failing word as witness; Yes certifies up to `depth`.
Report check_one_sided_conjugacy(const SubshiftSpec& s1, const SubshiftSpec& s2,
                                 const BlockMap& fwd, const BlockMap& bwd,
                                 int depth);

// Block presentation of an eventual conjugacy h with lag K:
//   h(x)    = head_fwd(x[1..M]) . tail_fwd slid along x,
//   h^-1(y) = head_bwd(y[1..M]) . tail_bwd slid along y.
// Both heads read M letters and emit K letters; windows count letters read,
// so the classical anticipation-N convention has N = window - 1 and the
// y-block length of the induced tau recursion is L = M - 2K + 1 + N2
// = M - 2K + tail_bwd.window.
struct EventualConjugacyData {
  int lag = 0;  // K
  HeadMap head_fwd;   // B_M(s1) -> B_K(s2)
  HeadMap head_bwd;   // B_M(s2) -> B_K(s1)
  BlockMap tail_fwd;  // h_1: s1 -> s2
  BlockMap tail_bwd;  // h_2: s2 -> s1

  int head_window() const { return head_fwd.window; }                     // M
  int yblock_len() const { return head_fwd.window - 2 * lag + tail_bwd.window; }  // L

  // Shape constraints: K >= 0, equal head windows M >= K, head target
  // lengths K, tail windows >= K + 1.  Throws SchemaError.
  void check_shape() const;
};

// Verifies, on every admissible word of length `depth` on both sides, the
// lag-K intertwining sigma^K h sigma = sigma^{K+1} h together with the head
// reconstruction identities
//   x[1..K]    = head_bwd(head_fwd(x[1..M]) . tail_fwd(x)[1..M-K])
//   x[K+1..]   = tail_bwd slid along head_fwd(x[1..M]) . tail_fwd(x)
//   x[2K+1..]  = tail_bwd(tail_fwd(x))
// and their mirror images.  Requires depth >= M + tail windows + K
// (SchemaError otherwise).  With lag 0 this degenerates to
// check_one_sided_conjugacy on the tails.
Report check_eventual_conjugacy(const SubshiftSpec& s1, const SubshiftSpec& s2,
                                const EventualConjugacyData& data, int depth);

// One step of the head recursion: the next K-letter head determined by the
// current head xi and the next L target letters,
//   tau(xi, y[1..L]) = head_fwd( head_bwd(xi . y[1..M-K])[2..K]
//                                . tail_bwd slid along xi . y[1..L] ).
// Throws WindowMismatch unless |xi| = K and |y_window| = L; lag 0 returns
// the empty word.  Table misses raise InadmissibleWindow.
Word tau_phi1(const Word& xi, const Word& y_window,
              const EventualConjugacyData& data);

// The recoded target subshift over the pair alphabet
//   Sigma' = { (xi, w) : w in B_L(s2), xi in Gamma_K^-(w) }:
// a word (xi_n, w_n)_{n=1..l} is admissible when the w_n overlap in an
// admissible y in B_{L+l-1}(s2) with xi_1 y admissible and
// xi_{n+1} = tau(xi_n, w_n).  The returned spec uses an oracle backend
// certified to `depth`; construction cross-checks, for every admissible
// s1-word long enough to determine l >= 1 output letters (l capped by
// `depth`), that its image under the head/tail pair is admissible here, and
// that the letter count |Sigma'| matches the sum of predecessor-set sizes.
// Throws DepthExceeded when s2 cannot certify the needed lengths and
// SchemaError when the cross-check refutes the supplied data.
SubshiftSpec build_lambda2_prime(const SubshiftSpec& s1, const SubshiftSpec& s2,
                                 const EventualConjugacyData& data, int depth);

// Verifies to `depth` that the per-symbol substitution mu -> mu~ maps the
// source language into the target language injectively and sends disjoint
// cylinders to disjoint cylinders (images of prefix-incomparable words stay
// prefix-incomparable).  `sub[a]` is the nonempty image word of symbol a.
Report check_substitution_morphism(const SubshiftSpec& s1, const SubshiftSpec& s2,
                                   const std::vector<Word>& sub, int depth);

// Integer-valued rule reading the first `window` labels of a path (window 0
// is a constant).  Values must be nonnegative.
struct CocycleMap {
  int window = 0;
  std::unordered_map<Word, long, WordHash> table;

  long value_on(const Word& labels) const;  // InadmissibleWindow on a miss
};

// Data for a continuous-orbit-equivalence check between the path spaces of
// two left-resolving lambda-graph truncations.  The candidate map acts on
// labels by the per-symbol codebook (inverse = prefix-free decoding) and on
// finite paths by re-anchoring: a source path prefix ending at deepest-level
// vertex v maps to the unique backward path of the (always codeword-complete)
// image labels ending at fwd_end_vertex[v].  Decoding a target window may
// leave a partial trailing codeword of j < max codeword length letters, so
// the decoded walk pairs with the target vertex j levels above the deepest
// one; bwd_end_vertex[j] carries the correspondence
// V_{top2-j}(lgs2) -> V_{top1-j}(lgs1) for each shortfall j.
struct COEData {
  LambdaGraphTruncation lgs1, lgs2;
  std::vector<Word> code;  // symbol of lgs1's alphabet -> word over lgs2's
  CocycleMap k1, l1, k2, l2;
  std::vector<int> fwd_end_vertex;                // V_top(lgs1) -> V_top(lgs2)
  std::vector<std::vector<int>> bwd_end_vertex;   // [j]: V_{top2-j} -> V_{top1-j}
};

// Verifies on every length-`depth` path prefix of each truncation the two
// orbit-equivalence displays
//   sigma2^{k1(x)} h(sigma1 x) = sigma2^{l1(x)} h(x)
//   sigma1^{k2(y)} h^{-1}(sigma2 y) = sigma1^{l2(y)} h^{-1}(y)
// comparing shifted path prefixes on their overlap, with vertices compared
// through iota down to the common level, plus label-level compatibility:
// image labels are the codebook image / decoding and admissible in the
// other subshift.  Throws DepthExceeded when the truncations are too
// shallow for `depth` and the image lengths it forces.
Report check_coe(const COEData& data, const SubshiftSpec& s1,
                 const SubshiftSpec& s2, int depth);

}  // namespace lamgraph
