#include "lamgraph/beta.hpp"

#include <map>
#include <utility>

namespace lamgraph {

Digits beta_expansion(const BetaNumber& beta, ExactReal x, int depth) {
  if (x.cmp(ExactReal(0L)) < 0 || ExactReal(1L) < x)
    throw SchemaError("beta_expansion: x must lie in [0,1]");
  Digits out;
  out.reserve(static_cast<std::size_t>(depth));
  for (int i = 0; i < depth; ++i) {
    const ExactReal v = beta.value * x;
    const long d = v.floor();
    out.push_back(d);
    x = v - ExactReal(d);
  }
  return out;
}

ExpansionOfOne expansion_of_one(const BetaNumber& beta, int depth) {
  ExpansionOfOne out;
  out.terminates = false;
  ExactReal x(1L);
  for (int i = 0; i < depth; ++i) {
    const ExactReal v = beta.value * x;
    const long d = v.floor();
    out.digits.push_back(d);
    x = v - ExactReal(d);
    if (x == ExactReal(0L)) {
      out.terminates = true;
      out.m = i + 1;
      out.digits.resize(static_cast<std::size_t>(depth), 0);
      break;
    }
  }
  return out;
}

Digits zeta_beta(const BetaNumber& beta, int depth) {
  BetaMembership mem(beta);
  Digits out;
  out.reserve(static_cast<std::size_t>(depth));
  for (int i = 0; i < depth; ++i) out.push_back(mem.zeta_digit(static_cast<std::size_t>(i)));
  return out;
}

std::vector<ExactReal> b_values(const BetaNumber& beta, int k) {
  const Digits xi = zeta_beta(beta, k);
  std::vector<ExactReal> out;
  out.reserve(static_cast<std::size_t>(k));
  ExactReal b(1L);
  for (int j = 0; j < k; ++j) {
    b = beta.value * b - ExactReal(xi[static_cast<std::size_t>(j)]);
    out.push_back(b);
  }
  return out;
}

std::string to_string(BetaClass c) {
  switch (c) {
    case BetaClass::FullShift: return "full-shift";
    case BetaClass::SFT: return "sft";
    case BetaClass::StrictlySofic: return "strictly-sofic";
    case BetaClass::NonSoficUpTo: return "non-sofic-up-to-depth";
    default: return "non-sofic-proven";
  }
}

BetaClassification classify_beta(const BetaNumber& beta, int depth) {
  if (depth < 1) throw SchemaError("classify_beta: depth must be >= 1");
  const std::vector<ExactReal> bs = b_values(beta, depth);
  const ExactReal one(1L);

  if (bs[0] == one)
    return {BetaClass::FullShift, depth, 1, 0, "b_1 = 1"};
  for (int k = 2; k <= depth; ++k)
    if (bs[static_cast<std::size_t>(k - 1)] == one)
      return {BetaClass::SFT, depth, k, 0, "b_k = 1 at k = " + std::to_string(k)};

  // No b-value equals 1; a repetition b_l = b_m still certifies sofic.
  for (int m = 2; m <= depth; ++m)
    for (int l = 1; l < m; ++l)
      if (bs[static_cast<std::size_t>(l - 1)] == bs[static_cast<std::size_t>(m - 1)])
        return {BetaClass::StrictlySofic, depth, m, l,
                "b_" + std::to_string(l) + " = b_" + std::to_string(m)};

  if (beta.kind == BetaNumber::Kind::Rational)
    return {BetaClass::NonSoficProven, depth, 0, 0,
            "reduced denominator of b_j grows as q^j, so b-values never repeat"};
  return {BetaClass::NonSoficUpTo, depth, 0, 0,
          "no coincidence among b_1..b_" + std::to_string(depth)};
}

BetaMembership::BetaMembership(BetaNumber beta) : beta_(std::move(beta)), orbit_(1L) {
  const long fl = beta_.value.floor();
  integer_ = beta_.value == ExactReal(fl);
  alphabet_size_ = static_cast<std::size_t>(integer_ ? fl : fl + 1);
}

long BetaMembership::zeta_digit(std::size_t i) {
  ensure(i + 1);
  return zeta_[i];
}

void BetaMembership::ensure(std::size_t len) {
  while (zeta_.size() < len) {
    long d;
    if (!period_.empty()) {
      d = period_[zeta_.size() % period_.size()];
    } else {
      const ExactReal v = beta_.value * orbit_;
      d = v.floor();
      orbit_ = v - ExactReal(d);
      if (orbit_ == ExactReal(0L)) {
        // d(1,beta) = eta_1..eta_m: switch to the quasi-greedy period.
        period_ = zeta_;
        period_.push_back(d - 1);
        d = d - 1;
      }
    }
    zeta_.push_back(d);
    // Extend the KMP failure function.
    const std::size_t i = zeta_.size() - 1;
    if (i == 0) {
      fail_.push_back(0);
    } else {
      int k = fail_[i - 1];
      while (k > 0 && zeta_[i] != zeta_[static_cast<std::size_t>(k)]) k = fail_[static_cast<std::size_t>(k - 1)];
      if (zeta_[i] == zeta_[static_cast<std::size_t>(k)]) ++k;
      fail_.push_back(k);
    }
  }
}

int BetaMembership::step(int state, long digit) {
  if (digit < 0 || digit >= static_cast<long>(alphabet_size_)) return kReject;
  ensure(static_cast<std::size_t>(state) + 1);
  const long bound = zeta_[static_cast<std::size_t>(state)];
  if (digit > bound) return kReject;
  if (digit == bound) return state + 1;
  // Strictly below the bound: the long match dies; chase shorter ones.
  int k = state;
  while (k > 0) {
    k = fail_[static_cast<std::size_t>(k - 1)];
    if (zeta_[static_cast<std::size_t>(k)] == digit) return k + 1;
    if (k == 0) break;
  }
  return 0;
}

bool BetaMembership::admissible(const Digits& w) {
  int s = initial_state();
  for (long d : w) {
    s = step(s, d);
    if (s == kReject) return false;
  }
  return true;
}

}  // namespace lamgraph
