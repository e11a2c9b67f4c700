#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lamgraph/graph.hpp"
#include "lamgraph/lgs.hpp"
#include "lamgraph/subshift.hpp"

namespace lamgraph {

// Transition matrix of a left-resolving graph written over the index set
// of (symbol, vertex) pairs that actually receive an edge: the row of
// (a, i) records, for each column (b, j), whether an edge i --b--> j
// exists.  Rows with the same vertex coincide; left-resolving makes every
// entry 0 or 1.
struct CKMatrix {
  Alphabet alphabet;
  std::vector<std::string> vertex_names;
  std::vector<std::pair<Symbol, int>> index;  // symbol-major, then vertex
  std::vector<std::vector<int>> entries;      // entries[r][c] in {0, 1}

  int size() const { return static_cast<int>(index.size()); }
  std::string index_name(int r) const;  // "(a,v)" display form

  friend bool operator==(const CKMatrix&, const CKMatrix&) = default;
};

// Merges vertices whose predecessor label languages agree at every length
// (partition refinement on the reversed graph, which is deterministic for
// left-resolving input, run to its fixpoint).  Vertices lying on no
// bi-infinite path present no language and are dropped first.  The quotient
// is left-resolving, predecessor-separated, and presents the same subshift.
// Merged vertices keep their names joined with '+'.  Throws
// NotLeftResolving on input that is not left-resolving.
LabeledGraph predecessor_separate(const LabeledGraph& g);

// Minimal left-resolving presentation of an irreducible sofic shift: the
// essential part of the spec's graph is merged by predecessor language and,
// if the quotient is disconnected, restricted to the unique strongly
// connected component presenting the full language (re-separated).  The
// result is essential, left-resolving, predecessor-separated and strongly
// connected, and the construction is idempotent.  Throws NotSofic when the
// spec has no graph backend, NotIrreducible when no single component
// carries the language, NotLeftResolving on unsuitable input graphs.
LabeledGraph fischer_cover(const SubshiftSpec& spec);

// Leveled system over a Fischer cover g: V_l = vertices of g identified
// when their length-l predecessor word sets agree, edges and projections
// induced by the edges of g.  The level partitions refine downward and
// freeze at some level K <= |V|-1 (reported through stabilization_level
// when non-null); from there on each level is a copy of g.  Vertex
// names join the merged g-vertex names; representatives[l][i] is the
// lexicographically least length-l word reading into the class.  Requires
// left-resolving g (throws NotLeftResolving); depth >= 1 (SchemaError).
LambdaGraphTruncation min_lgs_from_fischer(const LabeledGraph& g, int depth,
                                           int* stabilization_level = nullptr);

// The (symbol, vertex)-indexed transition matrix of g.  Pair (a, i) enters
// the index when some edge labeled a ends at vertex i; entry
// ((a,i),(b,j)) = 1 exactly when an edge i --b--> j exists.  Essential
// strongly connected input guarantees no zero row or column.  Throws
// NotLeftResolving, or NotIrreducible when g is not essential and strongly
// connected.
CKMatrix ck_matrix(const LabeledGraph& g);

}  // namespace lamgraph
