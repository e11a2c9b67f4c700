#pragma once

#include <string>
#include <vector>

#include "lamgraph/base.hpp"

namespace lamgraph {

struct LabeledEdge {
  int src = 0;
  int dst = 0;
  Symbol label = 0;
  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
  friend auto operator<=>(const LabeledEdge&, const LabeledEdge&) = default;
};

// A finite labeled directed graph presenting a sofic shift: the language is
// the set of label words of finite paths.  Parallel edges with distinct
// labels are allowed; normalize() dedups identical triples.
struct LabeledGraph {
  Alphabet alphabet;
  std::vector<std::string> vertex_names;
  std::vector<LabeledEdge> edges;

  int vertex_count() const { return static_cast<int>(vertex_names.size()); }
  void normalize();  // validate indices, sort and dedup edges

  // Iteratively removes vertices with no incoming or no outgoing edge.  The
  // result presents the same subshift language and every path in it extends
  // bi-infinitely.
  LabeledGraph essential() const;
  bool is_essential() const;

  // No two distinct edges share (dst, label).
  bool left_resolving(std::string* why = nullptr) const;
  bool strongly_connected() const;
  std::vector<int> scc_ids() const;  // component id per vertex

  std::vector<std::vector<LabeledEdge>> out_edges() const;  // indexed by src
  std::vector<std::vector<LabeledEdge>> in_edges() const;   // indexed by dst

  // Entry (u,v) counts edges u -> v regardless of label.
  std::vector<std::vector<long>> adjacency_counts() const;
};

}  // namespace lamgraph
