#pragma once

#include <string>
#include <vector>

#include "lamgraph/beta.hpp"
#include "lamgraph/exact.hpp"
#include "lamgraph/fischer.hpp"
#include "lamgraph/subshift.hpp"

namespace lamgraph {

using ZMat = std::vector<std::vector<mpz_class>>;

ZMat z_identity(int n);
ZMat z_mul(const ZMat& a, const ZMat& b);
mpz_class z_det(const ZMat& a);  // fraction-free Gaussian elimination

// U * M * V = D with D diagonal, each diagonal entry nonnegative and
// dividing the next, U and V unimodular.  The factorization is re-multiplied
// and the determinants checked before returning.
struct SmithForm {
  ZMat u, d, v;
};
SmithForm smith_normal_form(const ZMat& m);

// Finitely generated abelian group data: Z^free + sum of Z/dZ with the d's
// in a divisibility chain, every d >= 2.
struct KGroupResult {
  int k0_free_rank = 0;
  std::vector<mpz_class> k0_torsion;
  int k1_free_rank = 0;

  friend bool operator==(const KGroupResult&, const KGroupResult&) = default;
  std::string k0_str() const;  // "Z/3Z", "Z^2 + Z/2Z", "0", ...
  std::string k1_str() const;
};

// K0 = cokernel and K1 = kernel of id - M^T acting on Z^n, read off the
// Smith form.  The matrix must be square 0/1 (BadMatrix otherwise).
KGroupResult kgroups_of_matrix(const BinMatrix& m);
KGroupResult ck_kgroups(const CKMatrix& m);

// K-groups of the beta-shift algebra, decided from d(1,beta):
//   finite d(1,beta) = eta_1..eta_m 0^inf    -> Z/(eta_1+..+eta_m-1)Z
//   eventually periodic with period xi_1..xi_k -> Z/(xi_1+..+xi_k)Z
//   aperiodic (proven)                        -> Z
// K1 is 0 in every case.  Aperiodicity is certified for rational
// non-integer beta (b-value denominators grow strictly) and for quadratic
// surds that are not Pisot numbers (eventual periodicity would force Pisot
// or Salem, and quadratic Salem numbers do not exist).  When no branch is
// certifiable within `depth` orbit steps, throws Unclassified.
struct BetaKGroupsResult {
  KGroupResult groups;
  std::string branch;  // "finite" | "eventually periodic" | "aperiodic"
  Digits digits;       // eta-word (finite) or one period (eventually periodic)
  int preperiod = 0;   // eventually periodic case
  mpz_class modulus;   // |K0| when finite, 0 when K0 = Z
};
BetaKGroupsResult beta_kgroups(const BetaNumber& beta, int depth = 64);

// Topological entropy: log of the Perron root of the Fischer cover's
// adjacency matrix (sofic backends; power iteration with exact rational
// Collatz-Wielandt brackets), or log(beta) for beta-shift backends.  The
// reported error bound is at most 1e-9.  Other backends throw NotSofic;
// non-convergence within the iteration cap throws PrecisionExhausted.
struct EntropyResult {
  double value = 0;
  double error = 0;
  std::string method;  // "perron" | "beta"
};
EntropyResult entropy(const SubshiftSpec& spec);

}  // namespace lamgraph
