#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lamgraph/base.hpp"
#include "lamgraph/beta.hpp"
#include "lamgraph/graph.hpp"
#include "lamgraph/monoid.hpp"

namespace lamgraph {

// A subshift language over a finite alphabet: factorial, extendable, and
// queryable word by word.  The backend fixes how membership is decided:
//
//   sofic      label sequences of paths in an essential labeled graph
//   forbidden  shift defined by finitely many forbidden factors, realized as
//              the trimmed higher-block graph so dead ends are excluded
//   bracket    nonzero words of a bracket-matching inverse monoid (optionally
//              with a neutral letter)
//   beta       Parry's lexicographic criterion against the quasi-greedy
//              expansion of 1
//   oracle     external membership predicate certified up to a fixed depth
//   block      higher-block recoding of another subshift
//
// All queries are pure; enumeration charges a CellBudget so runaway requests
// fail with ResourceLimit instead of exhausting memory.
class SubshiftSpec {
 public:
  static SubshiftSpec sofic_graph(LabeledGraph g);
  static SubshiftSpec forbidden_words(Alphabet alphabet, std::vector<Word> forbidden);
  static SubshiftSpec full_shift(std::size_t n);  // alphabet "0".."n-1"
  static SubshiftSpec dyck_full(std::size_t n);
  static SubshiftSpec markov_dyck(BinMatrix a);
  static SubshiftSpec motzkin(std::size_t n);
  static SubshiftSpec beta_shift(BetaNumber beta);
  static SubshiftSpec oracle(Alphabet alphabet, std::function<bool(const Word&)> member,
                             int certified_depth, std::string name = "oracle");

  const Alphabet& alphabet() const { return alphabet_; }
  std::string backend_name() const;
  // Largest word length every query answers exactly; INT_MAX when unbounded.
  int certified_depth() const;

  // ---- word-level queries ----
  bool contains(const Word& w) const;
  std::vector<Word> admissible_words(int l) const;
  // Gamma_l^-(mu) = { nu in B_l : nu mu admissible }; throws InadmissibleWord.
  std::vector<Word> predecessor_set(const Word& mu, int l) const;
  // Gamma_l^+(mu) = { nu in B_l : mu nu admissible }.
  std::vector<Word> follower_set(const Word& mu, int l) const;
  // Yes when every pair of words of length <= depth admits a connecting
  // bridge of length <= depth; exact Yes/No for graph-backed subshifts via
  // strong connectivity of the essential presentation.
  Report is_irreducible(int depth) const;
  SubshiftSpec higher_block(int n) const;

  // ---- incremental right-extension interface ----
  // A State summarizes a word w just enough to answer which symbols extend
  // it; equal keys mean equal extension behaviour (for graph, bracket and
  // beta backends; oracle states are the words themselves).
  struct State;
  State start() const;
  std::optional<State> extend(const State& s, Symbol a) const;
  std::string state_key(const State& s) const;
  // True when equal keys certify equal extension behaviour (false for
  // oracle-backed specs, whose state space never collapses).
  bool states_mergeable() const;

  // Backend access for modules with specialized fast paths.
  const LabeledGraph* graph() const;              // nullptr unless graph-backed
  const BracketMonoid* bracket_monoid() const;    // nullptr unless bracket-backed
  const BetaNumber* beta() const;                 // nullptr unless beta-backed
  // For block backends: the underlying spec and block length.
  const SubshiftSpec* block_inner() const;
  int block_length() const;
  // For subshifts built from a forbidden-word list: that list (else nullptr).
  const std::vector<Word>* forbidden_origin() const;

 private:
  struct SoficBackend {
    LabeledGraph g;
    std::vector<std::vector<std::vector<Symbol>>> step;  // [vertex][label] -> targets
    std::vector<Word> forbidden_origin;  // kept when built from a forbidden list
    bool from_forbidden = false;
  };
  struct BracketBackend {
    BracketMonoid m;
  };
  struct BetaBackend {
    BetaNumber number;
    std::shared_ptr<BetaMembership> membership;  // extended on demand
  };
  struct OracleBackend {
    std::function<bool(const Word&)> member;
    int depth;
    std::string name;
  };
  struct BlockBackend {
    std::shared_ptr<const SubshiftSpec> inner;
    int n = 1;
    std::vector<Word> blocks;  // alphabet index -> inner block word
  };
  using Backend = std::variant<SoficBackend, BracketBackend, BetaBackend, OracleBackend, BlockBackend>;

  static SoficBackend make_sofic_backend(LabeledGraph g);
  SubshiftSpec(Alphabet a, Backend b);

  Alphabet alphabet_;
  std::shared_ptr<const Backend> backend_;
};

struct SubshiftSpec::State {
  // Exactly one member is meaningful, matching the owning backend.
  std::vector<Symbol> vertices;          // sofic: sorted endpoint set
  BracketMonoid::Element elem;           // bracket
  int kmp = 0;                           // beta
  Word word;                             // oracle
  std::shared_ptr<const State> inner;    // block: state of the inner spec
  std::optional<Symbol> prev;            // block: previous block symbol
};

}  // namespace lamgraph
