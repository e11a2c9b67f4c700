#include "lamgraph/exact.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <utility>

namespace lamgraph {

namespace {

bool squarefree(long d) {
  if (d < 2) return false;
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

mpq_class floor_q(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return mpq_class(f);
}

}  // namespace

QuadSurd::QuadSurd(mpq_class a_, mpq_class b_, long d_)
    : a(std::move(a_)), b(std::move(b_)), d(d_) {
  if (!squarefree(d)) throw SchemaError("sqrt(" + std::to_string(d) + "): d must be squarefree and > 1");
}

int QuadSurd::sign() const {
  const int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| vs |b|*sqrt(d) decided by squares.
  const mpq_class diff = a * a - b * b * d;
  return sa > 0 ? sgn(diff) : -sgn(diff);
}

QuadSurd QuadSurd::operator+(const QuadSurd& o) const {
  if (d != o.d) throw SchemaError("mixed quadratic fields sqrt(" + std::to_string(d) + "), sqrt(" + std::to_string(o.d) + ")");
  return {a + o.a, b + o.b, d};
}

QuadSurd QuadSurd::operator-(const QuadSurd& o) const {
  if (d != o.d) throw SchemaError("mixed quadratic fields");
  return {a - o.a, b - o.b, d};
}

QuadSurd QuadSurd::operator*(const QuadSurd& o) const {
  if (d != o.d) throw SchemaError("mixed quadratic fields");
  return {a * o.a + b * o.b * d, a * o.b + b * o.a, d};
}

bool QuadSurd::operator==(const QuadSurd& o) const { return (*this - o).sign() == 0; }
bool QuadSurd::operator<(const QuadSurd& o) const { return (*this - o).sign() < 0; }

double QuadSurd::to_double() const {
  return a.get_d() + b.get_d() * std::sqrt(static_cast<double>(d));
}

std::string QuadSurd::str() const {
  return "(" + a.get_str() + ")+(" + b.get_str() + ")*sqrt(" + std::to_string(d) + ")";
}

RatInterval::RatInterval(mpq_class lo_, mpq_class hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo > hi) throw SchemaError("interval bounds out of order");
}

RatInterval RatInterval::operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
RatInterval RatInterval::operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }

RatInterval RatInterval::operator*(const RatInterval& o) const {
  const mpq_class p1 = lo * o.lo, p2 = lo * o.hi, p3 = hi * o.lo, p4 = hi * o.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)), std::max(std::max(p1, p2), std::max(p3, p4))};
}

double RatInterval::to_double() const { return (lo.get_d() + hi.get_d()) / 2; }

namespace {

// Promotion table for the variant: rational absorbs into either of the
// richer representations; surd and interval never mix.
template <class Op>
ExactReal combine(const ExactReal& x, const ExactReal& y, Op op);

using V = std::variant<mpq_class, QuadSurd, RatInterval>;

}  // namespace

#define LAMGRAPH_EXACT_BINOP(OP)                                                            \
  ExactReal ExactReal::operator OP(const ExactReal& o) const {                              \
    return std::visit(                                                                      \
        [](const auto& x, const auto& y) -> ExactReal {                                     \
          using X = std::decay_t<decltype(x)>;                                              \
          using Y = std::decay_t<decltype(y)>;                                              \
          if constexpr (std::is_same_v<X, Y>) {                                             \
            return ExactReal(x OP y);                                                       \
          } else if constexpr (std::is_same_v<X, mpq_class> && std::is_same_v<Y, QuadSurd>) { \
            return ExactReal(QuadSurd(x, 0, y.d) OP y);                                     \
          } else if constexpr (std::is_same_v<X, QuadSurd> && std::is_same_v<Y, mpq_class>) { \
            return ExactReal(x OP QuadSurd(y, 0, x.d));                                     \
          } else if constexpr (std::is_same_v<X, mpq_class> && std::is_same_v<Y, RatInterval>) { \
            return ExactReal(RatInterval(x) OP y);                                          \
          } else if constexpr (std::is_same_v<X, RatInterval> && std::is_same_v<Y, mpq_class>) { \
            return ExactReal(x OP RatInterval(y));                                          \
          } else {                                                                          \
            throw SchemaError("cannot mix sqrt form with interval approximation");          \
          }                                                                                 \
        },                                                                                  \
        v_, o.v_);                                                                          \
  }

LAMGRAPH_EXACT_BINOP(+)
LAMGRAPH_EXACT_BINOP(-)
LAMGRAPH_EXACT_BINOP(*)
#undef LAMGRAPH_EXACT_BINOP

int ExactReal::cmp(const ExactReal& o) const {
  const ExactReal diff = *this - o;
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, mpq_class>) {
          return sgn(v);
        } else if constexpr (std::is_same_v<T, QuadSurd>) {
          return v.sign();
        } else {
          if (sgn(v.lo) > 0) return 1;
          if (sgn(v.hi) < 0) return -1;
          if (v.lo == 0 && v.hi == 0) return 0;
          throw PrecisionExhausted("comparison undecidable at the given precision");
        }
      },
      diff.v_);
}

long ExactReal::floor() const {
  return std::visit(
      [](const auto& v) -> long {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, mpq_class>) {
          return static_cast<long>(floor_q(v).get_num().get_si());
        } else if constexpr (std::is_same_v<T, QuadSurd>) {
          if (v.is_rational()) return static_cast<long>(floor_q(v.a).get_num().get_si());
          // Bracket sqrt(d) by integer bisection on squares, then refine the
          // candidate floor by exact sign tests.
          long n = static_cast<long>(v.to_double());  // good to ~1 ulp; verify exactly
          while ((QuadSurd(mpq_class(-n), 0, v.d) + v).sign() < 0) --n;
          while ((QuadSurd(mpq_class(-(n + 1)), 0, v.d) + v).sign() >= 0) ++n;
          return n;
        } else {
          const mpq_class fl = floor_q(v.lo), fh = floor_q(v.hi);
          if (fl != fh) throw PrecisionExhausted("floor undecidable at the given precision");
          return static_cast<long>(fl.get_num().get_si());
        }
      },
      v_);
}

double ExactReal::to_double() const {
  return std::visit([](const auto& v) -> double {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, mpq_class>) return v.get_d();
    else return v.to_double();
  }, v_);
}

std::string ExactReal::str() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, mpq_class>) return v.get_str();
        else if constexpr (std::is_same_v<T, QuadSurd>) return v.str();
        else return v.is_point() ? v.lo.get_str() : "[" + v.lo.get_str() + "," + v.hi.get_str() + "]";
      },
      v_);
}

std::string ExactReal::key() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, mpq_class>) {
          return v.get_str();
        } else if constexpr (std::is_same_v<T, QuadSurd>) {
          if (v.is_rational()) return v.a.get_str();
          return v.a.get_str() + "|" + v.b.get_str() + "|s" + std::to_string(v.d);
        } else {
          if (v.is_point()) return v.lo.get_str();
          throw PrecisionExhausted("no canonical key for a non-point interval");
        }
      },
      v_);
}

mpq_class parse_rational(const std::string& text) {
  static const std::regex re(R"(^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw SchemaError("bad rational: '" + text + "'");
  mpq_class q(m[1].str() + (m[2].matched ? "/" + m[2].str() : ""));
  q.canonicalize();
  return q;
}

namespace {

// Exact rational from a decimal literal like "1.8393" or "1e-6" / "2.5e3".
mpq_class decimal_to_rational(const std::string& s) {
  static const std::regex re(R"(^(-?)(\d+)(?:\.(\d+))?(?:[eE]([+-]?\d+))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw SchemaError("bad decimal: '" + s + "'");
  mpz_class num(m[2].str() + m[3].str());
  mpz_class den = 1;
  long exp10 = m[4].matched ? std::stol(m[4].str()) : 0;
  exp10 -= m[3].matched ? static_cast<long>(m[3].str().size()) : 0;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0) den = pow10; else num *= pow10;
  mpq_class q(num, den);
  q.canonicalize();
  if (m[1].length()) q = -q;
  return q;
}

}  // namespace

BetaNumber parse_beta(const std::string& text) {
  BetaNumber out;
  std::string s = text;
  if (s == "golden") s = "(1+1*sqrt(5))/2";

  static const std::regex surd_re(
      R"(^\s*\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*(?:/\s*(\d+)\s*)?$)");
  // canonical QuadSurd::str() form with rational coefficients
  static const std::regex surd_rat_re(
      R"(^\s*\(\s*(-?\d+(?:/\d+)?)\s*\)\s*\+\s*\(\s*(-?\d+(?:/\d+)?)\s*\)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*$)");
  static const std::regex approx_re(R"(^\s*~\s*([^+]+?)\s*\+-\s*(\S+)\s*$)");
  std::smatch m;

  if (std::regex_match(s, m, surd_rat_re)) {
    QuadSurd v(parse_rational(m[1].str()), parse_rational(m[2].str()), std::stol(m[3].str()));
    out.kind = BetaNumber::Kind::QuadraticSurd;
    out.value = ExactReal(v);
    out.display = v.str();
  } else if (std::regex_match(s, m, surd_re)) {
    const mpq_class c = m[5].matched ? mpq_class(m[5].str()) : mpq_class(1);
    if (c == 0) throw SchemaError("zero denominator in '" + text + "'");
    mpq_class a(m[1].str()), b(m[3].str());
    if (m[2].str() == "-") b = -b;
    QuadSurd v(a / c, b / c, std::stol(m[4].str()));
    out.kind = BetaNumber::Kind::QuadraticSurd;
    out.value = ExactReal(v);
    out.display = v.str();
  } else if (std::regex_match(s, m, approx_re)) {
    const mpq_class mid = decimal_to_rational(m[1].str());
    const mpq_class err = decimal_to_rational(m[2].str());
    if (err < 0) throw SchemaError("negative error bound in '" + text + "'");
    out.kind = BetaNumber::Kind::DecimalApprox;
    out.value = ExactReal(RatInterval(mid - err, mid + err));
    out.display = "~" + m[1].str() + "+-" + m[2].str();
  } else {
    mpq_class q = s.find('.') != std::string::npos ? decimal_to_rational(s) : parse_rational(s);
    out.p = q.get_num();
    out.q = q.get_den();
    out.kind = q.get_den() == 1 ? BetaNumber::Kind::Integer : BetaNumber::Kind::Rational;
    out.value = ExactReal(q);
    out.display = q.get_str();
  }

  if (!(ExactReal(mpq_class(1)) < out.value))
    throw SchemaError("beta must be > 1, got '" + text + "'");
  return out;
}

}  // namespace lamgraph
