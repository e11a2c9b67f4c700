#include "lamgraph/base.hpp"

#include <cstdlib>

namespace lamgraph {

std::size_t max_cells() {
  static const std::size_t value = [] {
    const char* env = std::getenv("LAMGRAPH_MAX_CELLS");
    if (env != nullptr) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(10'000'000);
  }();
  return value;
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw SchemaError("empty symbol name");
    auto [it, fresh] = index_.emplace(names_[i], static_cast<Symbol>(i));
    if (!fresh) throw SchemaError("duplicate symbol name '" + names_[i] + "'");
  }
}

const std::string& Alphabet::name(Symbol s) const {
  if (s >= names_.size()) throw SchemaError("symbol index out of range");
  return names_[s];
}

std::optional<Symbol> Alphabet::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(const std::string& name) const {
  auto s = find(name);
  if (!s) throw SchemaError("unknown symbol '" + name + "'");
  return *s;
}

std::string Alphabet::word_str(const Word& w) const {
  bool compact = true;
  for (const auto& n : names_) compact = compact && n.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += '.';
    out += name(w[i]);
  }
  return out;
}

Word Alphabet::parse_word(const std::vector<std::string>& symbols) const {
  Word w;
  w.reserve(symbols.size());
  for (const auto& s : symbols) w.push_back(at(s));
  return w;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}

void check_binary_square(const BinMatrix& a, const std::string& what) {
  if (a.empty()) throw BadMatrix(what + ": empty matrix");
  for (const auto& row : a) {
    if (row.size() != a.size()) throw BadMatrix(what + ": not square");
    for (int v : row)
      if (v != 0 && v != 1) throw BadMatrix(what + ": entries must be 0 or 1");
  }
}

BinMatrix ones_matrix(std::size_t n) {
  return BinMatrix(n, std::vector<int>(n, 1));
}

bool matrix_irreducible(const BinMatrix& a) {
  const std::size_t n = a.size();
  // Reachability from vertex 0 in both orientations suffices.
  auto reaches_all = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j)
        if (!seen[j] && (forward ? a[i][j] : a[j][i])) {
          seen[j] = 1;
          stack.push_back(j);
        }
    }
    for (char s : seen)
      if (!s) return false;
    return true;
  };
  return reaches_all(true) && reaches_all(false);
}

bool matrix_is_permutation(const BinMatrix& a) {
  const std::size_t n = a.size();
  std::vector<int> col_sum(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int row_sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row_sum += a[i][j];
      col_sum[j] += a[i][j];
    }
    if (row_sum != 1) return false;
  }
  for (int c : col_sum)
    if (c != 1) return false;
  return true;
}

}  // namespace lamgraph
