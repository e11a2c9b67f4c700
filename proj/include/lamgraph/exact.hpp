#pragma once

#include <gmpxx.h>

#include <string>
#include <variant>

#include "lamgraph/base.hpp"

namespace lamgraph {

// Element a + b*sqrt(d) of a real quadratic field, a,b rational, d > 1
// squarefree.  Enough arithmetic for beta-expansions of quadratic Parry
// numbers (golden mean etc.); comparisons are exact sign computations.
struct QuadSurd {
  mpq_class a, b;
  long d = 0;

  QuadSurd() = default;
  QuadSurd(mpq_class a_, mpq_class b_, long d_);

  bool is_rational() const { return b == 0; }
  int sign() const;
  QuadSurd operator+(const QuadSurd& o) const;
  QuadSurd operator-(const QuadSurd& o) const;
  QuadSurd operator*(const QuadSurd& o) const;
  bool operator==(const QuadSurd& o) const;
  bool operator<(const QuadSurd& o) const;
  double to_double() const;
  std::string str() const;  // "(a)+(b)*sqrt(d)" with exact rationals
};

// Closed rational interval [lo, hi]; the honest container for decimal input.
// A point interval (lo == hi) is exact.  Operations that would need to split
// an ambiguous interval throw PrecisionExhausted.
struct RatInterval {
  mpq_class lo, hi;

  RatInterval() = default;
  RatInterval(mpq_class v) : lo(v), hi(std::move(v)) {}
  RatInterval(mpq_class lo_, mpq_class hi_);

  bool is_point() const { return lo == hi; }
  RatInterval operator+(const RatInterval& o) const;
  RatInterval operator-(const RatInterval& o) const;
  RatInterval operator*(const RatInterval& o) const;
  double to_double() const;
};

// Exact (or honestly-bounded) real number used by the beta machinery.
class ExactReal {
 public:
  ExactReal() : v_(mpq_class(0)) {}
  ExactReal(long n) : v_(mpq_class(n)) {}
  ExactReal(mpq_class q) : v_(std::move(q)) {}
  ExactReal(QuadSurd s) : v_(std::move(s)) {}
  ExactReal(RatInterval i) : v_(std::move(i)) {}

  bool is_interval() const { return std::holds_alternative<RatInterval>(v_); }

  ExactReal operator+(const ExactReal& o) const;
  ExactReal operator-(const ExactReal& o) const;
  ExactReal operator*(const ExactReal& o) const;

  // Trichotomy vs another value; throws PrecisionExhausted when an interval
  // straddles the other operand.
  int cmp(const ExactReal& o) const;
  bool operator==(const ExactReal& o) const { return cmp(o) == 0; }
  bool operator<(const ExactReal& o) const { return cmp(o) < 0; }
  bool operator<=(const ExactReal& o) const { return cmp(o) <= 0; }

  // Largest integer <= value; throws PrecisionExhausted when ambiguous.
  long floor() const;

  double to_double() const;
  std::string str() const;

  // Canonical textual key for exact dedup/grouping; throws PrecisionExhausted
  // on non-point intervals (they have no canonical value).
  std::string key() const;

  // Representation peek; null when the value is held in another form.
  const mpq_class* as_rational() const { return std::get_if<mpq_class>(&v_); }
  const QuadSurd* as_surd() const { return std::get_if<QuadSurd>(&v_); }

 private:
  std::variant<mpq_class, QuadSurd, RatInterval> v_;
};

// How a beta value was given.  value() > 1 is validated by the parser.
struct BetaNumber {
  ExactReal value;
  std::string display;  // canonical printable form, e.g. "3/2", "(1+1*sqrt(5))/2"
  enum class Kind { Integer, Rational, QuadraticSurd, DecimalApprox } kind;
  // For Kind::Rational: reduced p/q with q > 1 (drives the non-sofic proof).
  mpz_class p, q;
};

// Accepts "2", "3/2", "(1+1*sqrt(5))/2", "(a+b*sqrt(d))/c" with integer
// a,b,c,d, the canonical surd rendering "(1/2)+(1/2)*sqrt(5)" with rational
// coefficients, or "~1.8393+-1e-6" for decimal approximations.  "golden" is
// a shorthand for (1+sqrt(5))/2; parse_beta(display) always reproduces the
// number.
BetaNumber parse_beta(const std::string& text);

mpq_class parse_rational(const std::string& text);  // "p/q" or integer

}  // namespace lamgraph
