#pragma once

#include "lamgraph/base.hpp"
#include "lamgraph/exact.hpp"
#include "lamgraph/lgs.hpp"

namespace lamgraph {

// Closed-form leveled presentations of the bracket and beta shift families.
// Alphabets match the corresponding subshift backends: a1..aN (closers),
// b1..bN (openers), plus "1" for the unit-extended system; the beta builder
// uses digit symbols "0".."N-1".

// Vertices at level l are the length-l opener words; a_j prepends j, b_j
// strips a leading j and appends two free symbols, iota drops the rightmost
// symbol.  Levels truncate at L.
LambdaGraphTruncation dyck_lgs(int n, int depth);

// Same construction with opener words constrained to the admissible words of
// the Markov shift of A; requires A irreducible and not a permutation.
LambdaGraphTruncation markov_dyck_lgs(const BinMatrix& a, int depth);

// dyck_lgs plus, for every vertex and every one-symbol extension of it, an
// edge labeled "1".
LambdaGraphTruncation motzkin_lgs(int n, int depth);

// Vertices at level l are the cells of (0,1] cut at the orbit values b_1..b_l
// in increasing order; edges follow the two interval rules (continue with the
// next quasi-greedy digit, or restart with any smaller digit), iota is cell
// inclusion.
LambdaGraphTruncation beta_lgs(const BetaNumber& beta, int depth);

}  // namespace lamgraph
