#pragma once

#include <optional>
#include <vector>

#include "lamgraph/base.hpp"
#include "lamgraph/lgs.hpp"
#include "lamgraph/subshift.hpp"

namespace lamgraph {

// Search bounds for synchronizing-word queries.  word_length_bound caps the
// length of candidate words mu (0 picks a per-operation default).  A word mu
// is l-synchronizing when Gamma_l^-(mu omega) = Gamma_l^-(mu) for every
// admissible right extension omega; for graph-backed subshifts that
// quantifier is decided exactly on transition relations, otherwise omega is
// searched up to extension_bound (0 means |mu| + l + 1, enough to drain a
// bracket stack and expose one more closer).
struct SyncSearchParams {
  int word_length_bound = 0;
  int extension_bound = 0;
};

struct SyncWords {
  std::vector<Word> words;  // lexicographic; a prefix precedes its extensions
  bool exact = false;       // true: words is exactly S_l cut at the bound
};

// One l-past equivalence class of l-synchronizing words: all members share
// the predecessor set Gamma_l^-, recorded as the signature.
struct PastClass {
  int level = 0;
  Word representative;          // lexicographically minimal known member
  std::vector<Word> members;    // sorted members found within the bounds
  std::vector<Word> signature;  // the common Gamma_l^-, sorted
};

// S_l of the subshift restricted to |mu| <= word_length_bound.  Exact for
// graph-backed specs; otherwise each verdict is certified only up to the
// extension bound.  The empty word is a candidate like any other.
SyncWords synchronizing_words(const SubshiftSpec& spec, int l,
                              SyncSearchParams params = {});

// The found S_l partitioned by signature, ordered by representative.  Word
// lengths grow until a full increment adds no new class (so member lists
// cover only the explored lengths); graph-backed specs additionally verify
// the class list is complete and throw DepthExceeded when some class has no
// member within the bound.
std::vector<PastClass> past_classes(const SubshiftSpec& spec, int l,
                                    SyncSearchParams params = {});

// Truncated minimal presentation of the subshift: V_l = past classes of S_l,
// an edge [alpha nu]_l -> [nu]_{l+1} labeled alpha for each class of
// nu in S_{l+1} and each symbol alpha in Gamma_1^-(nu), and iota by
// inclusion S_{l+1} subset S_l.  Vertices are named "l:rep" and carry their
// representatives.  Throws NotSynchronizing when some class admits no
// continuation within the bounds (evidence against lambda-synchronization)
// and DepthExceeded when the word bound leaves a class unmatched.
LambdaGraphTruncation build_min_lgs(const SubshiftSpec& spec, int depth,
                                    SyncSearchParams params = {});

// Tri-state check of the lambda-synchronization condition at (l, k), k > l:
// every eta in B_l must admit nu in S_k with eta nu in S_{k-l}.  Yes when a
// witness is found for every eta (exact only if the sync verdicts were);
// Unknown when some eta has no witness within the bounds — absence beyond
// them is never certified, so No is not produced.
Report is_lambda_synchronizing(const SubshiftSpec& spec, int l, int k,
                               SyncSearchParams params = {});

// A word mu (|mu| <= bound, clamped to the remaining depth) labeling a path
// from vertex i of V_level and from no other V_level vertex; nullopt when no
// such word exists within the bound.  Shortest, then lexicographically
// smallest, witness is returned.
std::optional<Word> launches(const LambdaGraphTruncation& lgs, int level,
                             int vertex, int bound);

}  // namespace lamgraph
