#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lamgraph {

// A symbol is an index into an Alphabet; a word is a finite symbol sequence.
// std::vector's operator< gives the lexicographic order we use everywhere.
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Symbol s : w) {
      h ^= s + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline Word subword(const Word& w, std::size_t pos, std::size_t len) {
  return Word(w.begin() + pos, w.begin() + pos + len);
}

inline bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

// Error taxonomy shared across the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
#define LAMGRAPH_ERROR(NAME)                 \
  struct NAME : Error {                      \
    using Error::Error;                      \
  };
LAMGRAPH_ERROR(SchemaError)        // malformed input data / JSON
LAMGRAPH_ERROR(DepthExceeded)      // query beyond a certified or available depth
LAMGRAPH_ERROR(ResourceLimit)      // enumeration exceeded LAMGRAPH_MAX_CELLS
LAMGRAPH_ERROR(PrecisionExhausted) // decimal beta arithmetic cannot decide a floor
LAMGRAPH_ERROR(NotSofic)           // operation requires a graph-presented subshift
LAMGRAPH_ERROR(NotIrreducible)     // operation requires an irreducible presentation
LAMGRAPH_ERROR(NotLeftResolving)   // operation requires a left-resolving graph
LAMGRAPH_ERROR(NotSynchronizing)   // no synchronizing word found within bounds
LAMGRAPH_ERROR(BadMatrix)          // matrix fails the preconditions of a builder
LAMGRAPH_ERROR(WindowMismatch)     // block-map window disagrees with supplied data
LAMGRAPH_ERROR(InadmissibleWindow) // block map queried on a window it does not define
LAMGRAPH_ERROR(InadmissibleWord)   // word-level query on a word outside the language
LAMGRAPH_ERROR(Unclassified)       // beta classification ran out of certificates
#undef LAMGRAPH_ERROR

// Global enumeration budget.  Enumerations charge one unit per stored/visited
// cell and throw ResourceLimit once the budget from LAMGRAPH_MAX_CELLS
// (default 10^7) is spent.
std::size_t max_cells();

struct CellBudget {
  std::size_t limit = max_cells();
  std::size_t used = 0;
  void charge(std::size_t n = 1) {
    used += n;
    if (used > limit) {
      throw ResourceLimit("enumeration exceeded LAMGRAPH_MAX_CELLS (" +
                          std::to_string(limit) + " cells)");
    }
  }
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Symbol s) const;
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Symbol> find(const std::string& name) const;
  Symbol at(const std::string& name) const;  // throws SchemaError
  bool operator==(const Alphabet& o) const { return names_ == o.names_; }
  bool operator!=(const Alphabet& o) const { return !(*this == o); }

  // Human-readable rendering; single-character alphabets concatenate,
  // everything else joins with '.'.
  std::string word_str(const Word& w) const;
  Word parse_word(const std::vector<std::string>& symbols) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, Symbol> index_;
};

// Square 0/1 matrix, row-major: A[i][j] = 1 when j may follow i.
using BinMatrix = std::vector<std::vector<int>>;

void check_binary_square(const BinMatrix& a, const std::string& what);  // throws BadMatrix
BinMatrix ones_matrix(std::size_t n);
bool matrix_irreducible(const BinMatrix& a);  // strongly connected as a digraph
bool matrix_is_permutation(const BinMatrix& a);

enum class Verdict { Yes, No, Unknown };

std::string to_string(Verdict v);

// Outcome of a bounded dynamical check.  `exact` marks answers that hold
// unconditionally (e.g. decided on a finite automaton) rather than only up to
// `certified_depth`.
struct Report {
  Verdict verdict = Verdict::Unknown;
  bool exact = false;
  int certified_depth = 0;
  std::string detail;                 // reason / failure description
  std::vector<std::string> witness;   // rendered witness payload, if any

  static Report yes(int depth, std::string detail = "", bool exact = false) {
    return Report{Verdict::Yes, exact, depth, std::move(detail), {}};
  }
  static Report no(int depth, std::string detail, std::vector<std::string> wit = {},
                   bool exact = false) {
    return Report{Verdict::No, exact, depth, std::move(detail), std::move(wit)};
  }
  static Report unknown(int depth, std::string detail) {
    return Report{Verdict::Unknown, false, depth, std::move(detail), {}};
  }
};

}  // namespace lamgraph
