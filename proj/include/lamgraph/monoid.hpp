#pragma once

#include <string>
#include <vector>

#include "lamgraph/base.hpp"

namespace lamgraph {

// Bracket-matching inverse monoid with zero attached to a 0/1 matrix A.
//
// Generators are partial maps on one-sided infinite A-admissible stacks:
// the letter b_i pushes i (defined when A(i, top) = 1) and a_i pops i
// (defined when the stack starts with i).  With the all-ones matrix these
// satisfy a_i b_j = delta_ij * 1, the plain bracket cancellation; a general
// A turns a_i b_i into the projection onto stacks whose top j has A(i,j)=1.
// A word over {a_i, b_i} is admissible for the associated shift exactly when
// its product is nonzero.  The optional neutral letter "1" (unit) acts as
// the identity and enlarges the alphabet only.
class BracketMonoid {
 public:
  explicit BracketMonoid(BinMatrix a, bool with_unit = false);
  static BracketMonoid full(std::size_t n, bool with_unit = false);

  std::size_t rank() const { return n_; }
  bool with_unit() const { return unit_; }
  const BinMatrix& matrix() const { return a_; }
  const Alphabet& alphabet() const { return alpha_; }

  bool is_pop(Symbol s) const { return s < n_; }         // a_i
  bool is_push(Symbol s) const { return n_ <= s && s < 2 * n_; }
  bool is_unit(Symbol s) const { return unit_ && s == 2 * n_; }

  // Normal form s_mu * P * s_nu^{-1}: strip the prefix `down` from the stack,
  // require the next stack symbol to lie in `mask`, then push `up`.
  // Zero is flagged; nonzero elements always have a nonempty mask.
  struct Element {
    bool zero = false;
    Word up, down;
    std::vector<char> mask;  // size = rank, effective residual constraint

    bool operator==(const Element& o) const;
    std::string key() const;  // canonical; equal keys <=> equal elements
  };

  Element one() const;
  Element zero_element() const { return Element{true, {}, {}, {}}; }
  Element generator(Symbol s) const;
  Element mul(Element x, Symbol s) const;  // x * generator(s)
  Element mul(const Element& x, const Element& y) const;

  // Product of the generators named by `w`, evaluated left to right.
  Element reduce(const Word& w) const;
  bool admissible(const Word& w) const { return !reduce(w).zero; }

  // Generator symbols g with mul(x, g) nonzero (right extensions).
  std::vector<Symbol> extensions(const Element& x) const;

  std::string element_str(const Element& e) const;

 private:
  Element make(Word up, Word down, std::vector<char> mask) const;

  BinMatrix a_;
  std::size_t n_;
  bool unit_;
  Alphabet alpha_;
  std::vector<char> live_;  // symbols that start an infinite admissible stack
};

}  // namespace lamgraph
