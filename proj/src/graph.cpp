#include "lamgraph/graph.hpp"

#include <algorithm>
#include <functional>

namespace lamgraph {

void LabeledGraph::normalize() {
  for (const auto& e : edges) {
    if (e.src < 0 || e.src >= vertex_count() || e.dst < 0 || e.dst >= vertex_count()) {
      throw SchemaError("edge endpoint out of range");
    }
    if (e.label >= alphabet.size()) throw SchemaError("edge label out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

LabeledGraph LabeledGraph::essential() const {
  int n = vertex_count();
  std::vector<char> alive(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> indeg(n, 0), outdeg(n, 0);
    for (const auto& e : edges) {
      if (alive[e.src] && alive[e.dst]) {
        ++outdeg[e.src];
        ++indeg[e.dst];
      }
    }
    for (int v = 0; v < n; ++v) {
      if (alive[v] && (indeg[v] == 0 || outdeg[v] == 0)) {
        alive[v] = 0;
        changed = true;
      }
    }
  }
  LabeledGraph g;
  g.alphabet = alphabet;
  std::vector<int> remap(n, -1);
  for (int v = 0; v < n; ++v) {
    if (alive[v]) {
      remap[v] = static_cast<int>(g.vertex_names.size());
      g.vertex_names.push_back(vertex_names[v]);
    }
  }
  for (const auto& e : edges) {
    if (alive[e.src] && alive[e.dst]) {
      g.edges.push_back({remap[e.src], remap[e.dst], e.label});
    }
  }
  g.normalize();
  return g;
}

bool LabeledGraph::is_essential() const {
  int n = vertex_count();
  std::vector<int> indeg(n, 0), outdeg(n, 0);
  for (const auto& e : edges) {
    ++outdeg[e.src];
    ++indeg[e.dst];
  }
  for (int v = 0; v < n; ++v) {
    if (indeg[v] == 0 || outdeg[v] == 0) return false;
  }
  return true;
}

bool LabeledGraph::left_resolving(std::string* why) const {
  std::vector<std::pair<int, Symbol>> seen;
  seen.reserve(edges.size());
  for (const auto& e : edges) seen.emplace_back(e.dst, e.label);
  std::sort(seen.begin(), seen.end());
  auto dup = std::adjacent_find(seen.begin(), seen.end());
  if (dup == seen.end()) return true;
  if (why != nullptr) {
    *why = "two edges labeled '" + alphabet.name(dup->second) + "' enter vertex '" +
           vertex_names[dup->first] + "'";
  }
  return false;
}

std::vector<int> LabeledGraph::scc_ids() const {
  // Tarjan, iterative.
  int n = vertex_count();
  auto out = out_edges();
  std::vector<int> ids(n, -1), low(n, 0), num(n, -1), stack;
  std::vector<char> onstack(n, 0);
  int counter = 0, comp = 0;
  for (int root = 0; root < n; ++root) {
    if (num[root] != -1) continue;
    // frame: (vertex, next edge index)
    std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
    while (!frames.empty()) {
      auto& [v, i] = frames.back();
      if (i == 0) {
        num[v] = low[v] = counter++;
        stack.push_back(v);
        onstack[v] = 1;
      }
      if (i < out[v].size()) {
        int w = out[v][i++].dst;
        if (num[w] == -1) {
          frames.emplace_back(w, 0);
        } else if (onstack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        if (low[v] == num[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            onstack[w] = 0;
            ids[w] = comp;
            if (w == v) break;
          }
          ++comp;
        }
        int finished = v;
        frames.pop_back();
        if (!frames.empty()) {
          int parent = frames.back().first;
          low[parent] = std::min(low[parent], low[finished]);
        }
      }
    }
  }
  return ids;
}

bool LabeledGraph::strongly_connected() const {
  if (vertex_count() == 0) return false;
  auto ids = scc_ids();
  return std::all_of(ids.begin(), ids.end(), [&](int c) { return c == ids[0]; });
}

std::vector<std::vector<LabeledEdge>> LabeledGraph::out_edges() const {
  std::vector<std::vector<LabeledEdge>> out(vertex_count());
  for (const auto& e : edges) out[e.src].push_back(e);
  return out;
}

std::vector<std::vector<LabeledEdge>> LabeledGraph::in_edges() const {
  std::vector<std::vector<LabeledEdge>> in(vertex_count());
  for (const auto& e : edges) in[e.dst].push_back(e);
  return in;
}

std::vector<std::vector<long>> LabeledGraph::adjacency_counts() const {
  std::vector<std::vector<long>> m(vertex_count(), std::vector<long>(vertex_count(), 0));
  for (const auto& e : edges) ++m[e.src][e.dst];
  return m;
}

}  // namespace lamgraph
