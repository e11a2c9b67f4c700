#pragma once

#include <string>
#include <vector>

#include "lamgraph/base.hpp"
#include "lamgraph/graph.hpp"

namespace lamgraph {

// A depth-L truncation of a leveled labeled graph with vertex projections:
// levels V_0..V_L (V_0 a singleton), edge blocks edges[l] = E_{l,l+1} running
// downward from V_l to V_{l+1}, and projections iota[l] : V_{l+1} -> V_l.
// Edge src indexes V_l, dst indexes V_{l+1}.
struct LambdaGraphTruncation {
  Alphabet alphabet;
  std::vector<std::vector<std::string>> vertex_names;  // size L+1
  std::vector<std::vector<LabeledEdge>> edges;         // size L
  std::vector<std::vector<int>> iota;                  // size L; iota[l][j] in V_l
  // Optional annotation: representatives[l][i] is a length-l word whose
  // reading path ends at vertex i (builders that classify words fill this in).
  std::vector<std::vector<Word>> representatives;

  int depth() const { return static_cast<int>(edges.size()); }
  int level_size(int l) const { return static_cast<int>(vertex_names[l].size()); }

  // Shape checks: container sizes, index ranges, singleton V_0, iota
  // surjectivity.  Throws SchemaError on violation.
  void check_well_formed() const;

  // iota-compatible vertex chain above v_i^l: result[k] = iota^{l-k}(v_i^l)
  // for k = 0..l (so result[l] = i).
  std::vector<int> iota_orbit_prefix(int l, int i) const;
};

struct ValidationReport {
  bool left_resolving = false;
  bool predecessor_separated = false;
  bool local_property = false;
  bool essential = false;
  std::vector<std::string> failures;

  bool ok() const {
    return left_resolving && predecessor_separated && local_property &&
           essential && failures.empty();
  }
};

// Checks the four structural axioms level by level.  Shape violations throw
// SchemaError; axiom violations are recorded in the report.
ValidationReport validate(const LambdaGraphTruncation& lgs);

// Symbolic transition data: A[l][i][a][j] = 1 when an a-labeled edge runs
// v_i^l -> v_j^{l+1}, I[l][i][j] = 1 when iota(v_j^{l+1}) = v_i^l.
struct TransitionMatrixSystem {
  std::vector<int> level_sizes;                                  // m(0)..m(L)
  std::vector<std::vector<std::vector<std::vector<int>>>> A;     // [l][i][a][j]
  std::vector<std::vector<std::vector<int>>> I;                  // [l][i][j]

  int depth() const { return static_cast<int>(A.size()); }

  // Symbol slice A^a_{l,l+1} as an m(l) x m(l+1) 0/1 matrix.
  std::vector<std::vector<int>> symbol_matrix(int l, Symbol a) const;
  // Boolean products I_{l,l+n} and A_{l,l+|nu|}(i, nu, k); n = 0 and nu = ε
  // give identity matrices.  Throws DepthExceeded past the truncation.
  std::vector<std::vector<int>> composite_I(int l, int n) const;
  std::vector<std::vector<int>> composite_A(int l, const Word& nu) const;
};

TransitionMatrixSystem transition_matrices(const LambdaGraphTruncation& lgs);

// Label words of the paths V_0 -> v_i^l, sorted lexicographically.
std::vector<Word> vertex_predecessors(const LambdaGraphTruncation& lgs, int l,
                                      int i);

// Length-len label words read in the deepest available window, i.e. along
// paths V_{L-len} -> V_L; a later window never adds words, so this is the
// best truncation-level approximation of the presented language.  `margin`
// insists on that many spare levels above the window.
std::vector<Word> presented_words(const LambdaGraphTruncation& lgs, int len,
                                  int margin = 0);

// Bounded quantifier checks.  All return tri-state reports; No answers carry
// witnesses and are certified only by evidence that survives deepening (a
// class of inputs documented per check), otherwise Unknown is returned.

// For every u,v in V_l: each labeled path from u (length <= bound) must have
// a parallel copy from the end of some path from v that projects onto u.
Report check_iota_irreducible(const LambdaGraphTruncation& lgs, int level,
                              int bound);

// For every ordered pair u,v in V_l: some n <= bound must make every vertex
// of V_{l+n} projecting onto u reachable from v.
Report check_lambda_irreducible(const LambdaGraphTruncation& lgs, int level,
                                int bound);

// Every vertex must emit at least two distinct label words of length d.
Report check_condition_I(const LambdaGraphTruncation& lgs, int d);

// Every vertex must reach some single deeper vertex along two paths with
// different label words.
Report check_lambda_condition_I(const LambdaGraphTruncation& lgs);

// Generator/relation listing for the truncation: partial isometries S_a per
// symbol and projections E_i^l per vertex, with the index data of the four
// relation families and the predecessor-word expansion of each projection.
struct RelationsDocument {
  struct IotaRelation {        // E_i^l = sum_j I(i,j) E_j^{l+1}
    int level = 0;
    int i = 0;
    std::vector<int> terms;    // j with I(i,j) = 1
  };
  struct TransitionRelation {  // S_a^* E_i^l S_a = sum_j A(i,a,j) E_j^{l+1}
    int level = 0;
    int i = 0;
    Symbol a = 0;
    std::vector<int> terms;    // j with A(i,a,j) = 1
  };
  struct ProjectionFormula {   // E_i^l = prod S_mu^* S_mu * prod (1 - S_nu^* S_nu)
    int level = 0;
    int i = 0;
    std::vector<Word> predecessors;      // mu over the predecessor words of v_i^l
    std::vector<Word> non_predecessors;  // nu over the other level-l path words
  };

  Alphabet alphabet;
  std::vector<int> level_sizes;  // family 1: sum_b S_b S_b^* = sum_i E_i^l = 1
  // Family 2 (S_a S_a^* commutes with every E_i^l) has no index data.
  std::vector<IotaRelation> iota_relations;              // family 3
  std::vector<TransitionRelation> transition_relations;  // family 4
  std::vector<ProjectionFormula> projection_formulas;

  std::string text() const;  // human-readable rendering
};

RelationsDocument export_relations(const LambdaGraphTruncation& lgs);

// Level-respecting isomorphism test: true when per-level bijections (the
// identity on V_0) carry edges, labels and projections of a onto b.  For
// predecessor-separated systems the bijection is forced level by level from
// the labeled in-edge data, so the search is linear; systems where two
// vertices share all in-edge data are conservatively reported non-isomorphic.
// On success *map_out (when non-null) receives the per-level vertex maps.
bool labeled_level_isomorphic(const LambdaGraphTruncation& a,
                              const LambdaGraphTruncation& b,
                              std::vector<std::vector<int>>* map_out = nullptr);

}  // namespace lamgraph
