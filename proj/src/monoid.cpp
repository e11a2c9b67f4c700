#include "lamgraph/monoid.hpp"

#include <algorithm>

namespace lamgraph {

namespace {

std::vector<std::string> bracket_names(std::size_t n, bool unit) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back("b" + std::to_string(i));
  if (unit) names.push_back("1");
  return names;
}

}  // namespace

BracketMonoid::BracketMonoid(BinMatrix a, bool with_unit)
    : a_(std::move(a)),
      n_(a_.size()),
      unit_(with_unit),
      alpha_(bracket_names(a_.size(), with_unit)) {
  check_binary_square(a_, "bracket monoid");
  // Greatest set of symbols admitting an infinite forward continuation.
  live_.assign(n_, 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!live_[i]) continue;
      bool alive = false;
      for (std::size_t j = 0; j < n_ && !alive; ++j) alive = a_[i][j] && live_[j];
      if (!alive) {
        live_[i] = 0;
        changed = true;
      }
    }
  }
}

BracketMonoid BracketMonoid::full(std::size_t n, bool with_unit) {
  return BracketMonoid(ones_matrix(n), with_unit);
}

bool BracketMonoid::Element::operator==(const Element& o) const {
  if (zero || o.zero) return zero == o.zero;
  return up == o.up && down == o.down && mask == o.mask;
}

std::string BracketMonoid::Element::key() const {
  if (zero) return "0";
  std::string k;
  for (Symbol s : up) k += std::to_string(s) + ".";
  k += "|";
  for (char m : mask) k += m ? '1' : '0';
  k += "|";
  for (Symbol s : down) k += std::to_string(s) + ".";
  return k;
}

BracketMonoid::Element BracketMonoid::make(Word up, Word down, std::vector<char> mask) const {
  if (std::find(mask.begin(), mask.end(), char(1)) == mask.end()) return zero_element();
  return Element{false, std::move(up), std::move(down), std::move(mask)};
}

BracketMonoid::Element BracketMonoid::one() const {
  return make({}, {}, live_);
}

BracketMonoid::Element BracketMonoid::generator(Symbol s) const {
  return mul(one(), s);
}

BracketMonoid::Element BracketMonoid::mul(Element x, Symbol s) const {
  if (s >= alpha_.size()) throw SchemaError("symbol out of range for bracket monoid");
  if (x.zero || is_unit(s)) return x;

  if (is_push(s)) {
    const Symbol m = s - static_cast<Symbol>(n_);
    if (!x.down.empty()) {
      // Cancellation against the pending pops: a_m b_m collapses, a_i b_m dies.
      if (x.down.front() != m) return zero_element();
      x.down.erase(x.down.begin());
      return x;  // mask already accounts for the cancelled letter
    }
    if (!x.mask[m]) return zero_element();
    x.up.push_back(m);
    std::vector<char> mask(n_);
    for (std::size_t j = 0; j < n_; ++j) mask[j] = a_[m][j] && live_[j];
    x.mask = std::move(mask);
    return make(std::move(x.up), std::move(x.down), std::move(x.mask));
  }

  // Pop a_m: one more letter stripped from the stack before everything else.
  const Symbol m = s;
  if (!x.down.empty()) {
    if (!a_[m][x.down.front()]) return zero_element();
    x.down.insert(x.down.begin(), m);
    return x;
  }
  x.down.assign(1, m);
  for (std::size_t j = 0; j < n_; ++j) x.mask[j] = x.mask[j] && a_[m][j];
  return make(std::move(x.up), std::move(x.down), std::move(x.mask));
}

BracketMonoid::Element BracketMonoid::mul(const Element& x, const Element& y) const {
  if (x.zero || y.zero) return zero_element();
  Element z = x;
  // x * (s_up P_mask s_down^-1): fold the pushes, then the projection,
  // then the pops (innermost pop letter first, hence reverse order).
  for (Symbol m : y.up) {
    z = mul(std::move(z), static_cast<Symbol>(m + n_));
    if (z.zero) return z;
  }
  if (!z.down.empty()) {
    if (!y.mask[z.down.front()]) return zero_element();
  } else {
    for (std::size_t j = 0; j < n_; ++j) z.mask[j] = z.mask[j] && y.mask[j];
    z = make(std::move(z.up), std::move(z.down), std::move(z.mask));
    if (z.zero) return z;
  }
  for (auto it = y.down.rbegin(); it != y.down.rend(); ++it) {
    z = mul(std::move(z), *it);
    if (z.zero) return z;
  }
  return z;
}

BracketMonoid::Element BracketMonoid::reduce(const Word& w) const {
  Element x = one();
  for (Symbol s : w) {
    x = mul(std::move(x), s);
    if (x.zero) break;
  }
  return x;
}

std::vector<Symbol> BracketMonoid::extensions(const Element& x) const {
  std::vector<Symbol> out;
  if (x.zero) return out;
  for (Symbol s = 0; s < alpha_.size(); ++s)
    if (!mul(x, s).zero) out.push_back(s);
  return out;
}

std::string BracketMonoid::element_str(const Element& e) const {
  if (e.zero) return "0";
  std::string s;
  for (Symbol m : e.up) s += "b" + std::to_string(m + 1) + " ";
  bool full_mask = true;
  for (std::size_t j = 0; j < n_; ++j) full_mask = full_mask && e.mask[j] == live_[j];
  if (!full_mask) {
    s += "P{";
    bool first = true;
    for (std::size_t j = 0; j < n_; ++j)
      if (e.mask[j]) {
        if (!first) s += ",";
        s += std::to_string(j + 1);
        first = false;
      }
    s += "} ";
  }
  for (Symbol m : e.down) s += "a" + std::to_string(m + 1) + " ";
  if (!s.empty()) s.pop_back();
  return s.empty() ? "1" : s;
}

}  // namespace lamgraph
