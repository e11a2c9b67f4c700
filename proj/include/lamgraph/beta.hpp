#pragma once

#include <string>
#include <vector>

#include "lamgraph/base.hpp"
#include "lamgraph/exact.hpp"

namespace lamgraph {

using Digits = std::vector<long>;

// Digits d_i = floor(beta * f^{i-1}(x)) of the beta-expansion of x in [0,1].
Digits beta_expansion(const BetaNumber& beta, ExactReal x, int depth);

// Expansion of 1 with exact termination detection within `depth` steps.
struct ExpansionOfOne {
  Digits digits;        // d(1, beta) truncated to depth
  bool terminates;      // orbit of 1 hit 0 exactly at position m
  int m = 0;            // valid when terminates
};
ExpansionOfOne expansion_of_one(const BetaNumber& beta, int depth);

// Quasi-greedy expansion: equals d(1,beta) when infinite; when d(1,beta) =
// eta_1..eta_m 0^inf it is the periodic word (eta_1..eta_{m-1}(eta_m - 1))^inf.
Digits zeta_beta(const BetaNumber& beta, int depth);

// b_j = beta^j - xi_1 beta^{j-1} - ... - xi_j for xi = zeta digits, j = 1..k.
std::vector<ExactReal> b_values(const BetaNumber& beta, int k);

enum class BetaClass { FullShift, SFT, StrictlySofic, NonSoficUpTo, NonSoficProven };
std::string to_string(BetaClass c);

struct BetaClassification {
  BetaClass cls;
  int depth;        // how many b-values were inspected
  int witness_k = 0;  // SFT: least k with b_k = 1; sofic: repeat index m
  int witness_l = 0;  // sofic: repeat index l < m
  std::string detail;
};

// Classification by the b-value criteria: full shift iff b_1 = 1, shift of
// finite type iff some b_k = 1, sofic iff two b-values coincide.  A rational
// non-integer beta = p/q is provably non-sofic: the reduced denominator of
// b_j is exactly q^j, so no two values ever agree.
BetaClassification classify_beta(const BetaNumber& beta, int depth);

// Incremental membership automaton for the beta-shift language: a word is
// admissible iff every suffix is lexicographically <= zeta_beta.  The state
// is the length of the longest suffix that matches a prefix of zeta; zeta is
// extended on demand and the check runs in KMP fashion.
class BetaMembership {
 public:
  explicit BetaMembership(BetaNumber beta);

  std::size_t alphabet_size() const { return alphabet_size_; }
  bool beta_is_integer() const { return integer_; }

  static constexpr int kReject = -1;
  int initial_state() const { return 0; }
  int step(int state, long digit);
  bool admissible(const Digits& w);

  long zeta_digit(std::size_t i);  // 0-indexed

 private:
  void ensure(std::size_t len);

  BetaNumber beta_;
  bool integer_ = false;
  std::size_t alphabet_size_ = 0;
  Digits zeta_;
  std::vector<int> fail_;   // KMP failure function of the zeta prefix
  Digits period_;           // nonempty once d(1,beta) proved finite
  ExactReal orbit_;         // current f-orbit value while expanding d(1,beta)
  bool orbit_live_ = true;
};

}  // namespace lamgraph
