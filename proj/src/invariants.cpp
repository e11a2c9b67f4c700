#include "lamgraph/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lamgraph {
namespace {

void check_rectangular(const ZMat& m) {
  for (const auto& row : m)
    if (row.size() != m[0].size())
      throw SchemaError("integer matrix has ragged rows");
}

std::string join_plus(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

KGroupResult cyclic_k0(const mpz_class& order) {
  KGroupResult r;
  if (order == 0)
    r.k0_free_rank = 1;
  else if (order > 1)
    r.k0_torsion = {order};
  return r;  // order 1: trivial group
}

mpz_class sum_digits(const Digits& d, std::size_t from, std::size_t to) {
  mpz_class s = 0;
  for (std::size_t i = from; i < to; ++i) s += d[i];
  return s;
}

}  // namespace

ZMat z_identity(int n) {
  ZMat m(n, std::vector<mpz_class>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ZMat z_mul(const ZMat& a, const ZMat& b) {
  int r = static_cast<int>(a.size());
  int k = r ? static_cast<int>(a[0].size()) : 0;
  int c = k && !b.empty() ? static_cast<int>(b[0].size()) : 0;
  if (static_cast<int>(b.size()) != k)
    throw SchemaError("z_mul: inner dimensions disagree");
  ZMat out(r, std::vector<mpz_class>(c, 0));
  for (int i = 0; i < r; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

mpz_class z_det(const ZMat& a) {
  check_rectangular(a);
  int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  if (static_cast<int>(a[0].size()) != n) throw SchemaError("z_det: matrix not square");
  ZMat m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {  // Bareiss fraction-free elimination
    if (m[k][k] == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

SmithForm smith_normal_form(const ZMat& m) {
  check_rectangular(m);
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  SmithForm f{z_identity(rows), m, z_identity(cols)};
  ZMat& d = f.d;
  auto swap_rows = [&](int i, int j) {
    std::swap(d[i], d[j]);
    std::swap(f.u[i], f.u[j]);
  };
  auto swap_cols = [&](int i, int j) {
    for (auto& row : d) std::swap(row[i], row[j]);
    for (auto& row : f.v) std::swap(row[i], row[j]);
  };
  auto row_sub = [&](int i, int t, const mpz_class& q) {  // row_i -= q * row_t
    for (int j = 0; j < cols; ++j) d[i][j] -= q * d[t][j];
    for (int j = 0; j < rows; ++j) f.u[i][j] -= q * f.u[t][j];
  };
  auto col_sub = [&](int j, int t, const mpz_class& q) {  // col_j -= q * col_t
    for (int i = 0; i < rows; ++i) d[i][j] -= q * d[i][t];
    for (int i = 0; i < cols; ++i) f.v[i][j] -= q * f.v[i][t];
  };

  auto diagonalize = [&]() {
    const int steps = std::min(rows, cols);
    for (int t = 0; t < steps; ++t) {
      for (;;) {
        // least-|value| pivot in the remaining block controls entry growth
        int pi = -1, pj = -1;
        mpz_class best;
        for (int i = t; i < rows; ++i)
          for (int j = t; j < cols; ++j)
            if (d[i][j] != 0 &&
                (pi < 0 || cmp(abs(d[i][j]), best) < 0)) {
              pi = i;
              pj = j;
              best = abs(d[i][j]);
            }
        if (pi < 0) return;  // remaining block is zero
        if (pi != t) swap_rows(t, pi);
        if (pj != t) swap_cols(t, pj);
        bool clean = true;
        for (int i = t + 1; i < rows; ++i)
          if (d[i][t] != 0) {
            row_sub(i, t, d[i][t] / d[t][t]);
            if (d[i][t] != 0) clean = false;
          }
        for (int j = t + 1; j < cols; ++j)
          if (d[t][j] != 0) {
            col_sub(j, t, d[t][j] / d[t][t]);
            if (d[t][j] != 0) clean = false;
          }
        if (clean) break;  // smaller remainders feed the next pivot pass
      }
    }
  };

  diagonalize();
  // nonnegative diagonal, then repair the divisibility chain; gluing a
  // violating column back in strictly refines the leading gcd, so this ends
  for (;;) {
    for (int t = 0; t < std::min(rows, cols); ++t)
      if (d[t][t] < 0) {
        for (int j = 0; j < cols; ++j) d[t][j] = -d[t][j];
        for (int j = 0; j < rows; ++j) f.u[t][j] = -f.u[t][j];
      }
    int bad = -1;
    for (int t = 0; t + 1 < std::min(rows, cols); ++t)
      if (d[t][t] != 0 && d[t + 1][t + 1] % d[t][t] != 0) {
        bad = t;
        break;
      }
    if (bad < 0) break;
    col_sub(bad, bad + 1, -1);  // col_bad += col_{bad+1}
    diagonalize();
  }

  if (z_mul(z_mul(f.u, m), f.v) != d || abs(z_det(f.u)) != 1 ||
      abs(z_det(f.v)) != 1)
    throw Error("smith_normal_form: internal verification failed");
  return f;
}

std::string KGroupResult::k0_str() const {
  std::vector<std::string> parts;
  if (k0_free_rank == 1)
    parts.push_back("Z");
  else if (k0_free_rank > 1)
    parts.push_back("Z^" + std::to_string(k0_free_rank));
  for (const auto& t : k0_torsion) parts.push_back("Z/" + t.get_str() + "Z");
  return join_plus(parts);
}

std::string KGroupResult::k1_str() const {
  if (k1_free_rank == 0) return "0";
  if (k1_free_rank == 1) return "Z";
  return "Z^" + std::to_string(k1_free_rank);
}

KGroupResult kgroups_of_matrix(const BinMatrix& m) {
  check_binary_square(m, "K-group matrix");
  const int n = static_cast<int>(m.size());
  ZMat a(n, std::vector<mpz_class>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = (i == j ? 1 : 0) - m[j][i];
  SmithForm f = smith_normal_form(a);
  KGroupResult r;
  int rank = 0;
  for (int t = 0; t < n; ++t) {
    if (f.d[t][t] == 0) continue;
    ++rank;
    if (f.d[t][t] > 1) r.k0_torsion.push_back(f.d[t][t]);
  }
  r.k0_free_rank = n - rank;  // cokernel free part
  r.k1_free_rank = n - rank;  // kernel of a square map has the same rank gap
  return r;
}

KGroupResult ck_kgroups(const CKMatrix& m) { return kgroups_of_matrix(m.entries); }

BetaKGroupsResult beta_kgroups(const BetaNumber& beta, int depth) {
  if (depth < 1) throw SchemaError("beta_kgroups: depth must be positive");
  try {
    auto e = expansion_of_one(beta, depth);
    if (e.terminates) {
      BetaKGroupsResult r;
      r.branch = "finite";
      r.digits = Digits(e.digits.begin(), e.digits.begin() + e.m);
      r.modulus = sum_digits(r.digits, 0, r.digits.size()) - 1;
      r.groups = cyclic_k0(r.modulus);
      return r;
    }

    // d(1,beta) is infinite and equals the quasi-greedy expansion; its tail
    // repeats exactly when the orbit b_j of 1 under the beta-map revisits a
    // value, and the first revisit gives the minimal preperiod and period.
    Digits zeta = zeta_beta(beta, depth);
    std::vector<ExactReal> orbit = b_values(beta, depth);
    std::map<std::string, int> seen{{ExactReal(mpq_class(1)).key(), 0}};
    for (int j = 1; j <= static_cast<int>(orbit.size()); ++j) {
      auto [it, fresh] = seen.emplace(orbit[j - 1].key(), j);
      if (fresh) continue;
      BetaKGroupsResult r;
      r.branch = "eventually periodic";
      r.preperiod = it->second;
      r.digits = Digits(zeta.begin() + r.preperiod, zeta.begin() + j);
      r.modulus = sum_digits(r.digits, 0, r.digits.size());
      r.groups = cyclic_k0(r.modulus);
      return r;
    }

    bool aperiodic = false;
    if (beta.kind == BetaNumber::Kind::Rational) {
      aperiodic = true;  // b-value denominators are exactly q^j, never equal
    } else if (beta.kind == BetaNumber::Kind::QuadraticSurd) {
      // Eventual periodicity forces beta Pisot or Salem; quadratic Salem
      // numbers do not exist, so a non-Pisot surd is certified aperiodic.
      const QuadSurd* s = beta.value.as_surd();
      if (s) {
        mpq_class trace = 2 * s->a;
        mpq_class norm = s->a * s->a - s->b * s->b * mpq_class(s->d);
        bool algebraic_integer =
            trace.get_den() == 1 && norm.get_den() == 1;
        if (!algebraic_integer) {
          aperiodic = true;
        } else {
          ExactReal conj{QuadSurd(s->a, -s->b, s->d)};
          bool pisot = ExactReal(-1L) < conj && conj < ExactReal(1L);
          if (pisot)
            throw Unclassified(
                "beta_kgroups: beta is a quadratic Pisot number, so d(1,beta) "
                "is eventually periodic, but no repeat appeared within depth " +
                std::to_string(depth) + "; increase the depth");
          aperiodic = true;
        }
      }
    }
    if (aperiodic) {
      BetaKGroupsResult r;
      r.branch = "aperiodic";
      r.modulus = 0;
      r.groups = cyclic_k0(0);
      return r;
    }
    throw Unclassified(
        "beta_kgroups: no K-group branch certifiable within depth " +
        std::to_string(depth));
  } catch (const PrecisionExhausted& e) {
    throw Unclassified(
        std::string("beta_kgroups: beta known only approximately and the "
                    "approximation ran out before a branch was certified (") +
        e.what() + ")");
  }
}

EntropyResult entropy(const SubshiftSpec& spec) {
  if (spec.graph()) {
    LabeledGraph cover = fischer_cover(spec);
    auto counts = cover.adjacency_counts();
    const int n = cover.vertex_count();
    // Power iteration on A + id (primitive for irreducible A); for any
    // positive x the Perron root lies between the extreme ratios of
    // ((A+id)x)_i / x_i minus one, so the brackets below are rigorous.
    std::vector<mpq_class> x(n, 1);
    const mpq_class tol(1, 1000000000);
    const mpz_class denom = mpz_class(1) << 64;
    for (int iter = 0; iter < 100000; ++iter) {
      std::vector<mpq_class> y(n);
      for (int i = 0; i < n; ++i) {
        y[i] = x[i];
        for (int j = 0; j < n; ++j)
          if (counts[i][j]) y[i] += counts[i][j] * x[j];
      }
      mpq_class lo = y[0] / x[0], hi = lo;
      for (int i = 1; i < n; ++i) {
        mpq_class r = y[i] / x[i];
        if (r < lo) lo = r;
        if (r > hi) hi = r;
      }
      if (hi - lo < tol * (lo - 1)) {
        mpq_class mid = (lo + hi) / 2 - 1;
        EntropyResult res;
        res.value = std::log(mid.get_d());
        res.error = mpq_class((hi - lo) / (lo - 1) / 2).get_d() + 1e-14;
        res.method = "perron";
        return res;
      }
      mpq_class top = *std::max_element(y.begin(), y.end());
      for (int i = 0; i < n; ++i) {
        // truncate to a 64-bit-denominator rational: keeps numbers small,
        // brackets stay valid for any positive vector
        mpz_class scaled_num = y[i].get_num() * denom;
        mpz_class scaled_den = y[i].get_den() * top.get_num();
        scaled_num *= top.get_den();
        mpz_class num = scaled_num / scaled_den;
        if (num == 0) num = 1;
        x[i] = mpq_class(num, denom);
        x[i].canonicalize();
      }
    }
    throw PrecisionExhausted("entropy: power iteration did not converge");
  }

  if (const BetaNumber* b = spec.beta()) {
    // bracket beta by exact comparison, then take logs
    auto below = [&](const mpq_class& q) -> std::optional<bool> {
      try {
        return b->value < ExactReal(mpq_class(q));
      } catch (const PrecisionExhausted&) {
        return std::nullopt;  // q inside the uncertainty of a decimal beta
      }
    };
    mpq_class lo = 1, hi = 2;
    while (true) {
      auto r = below(hi);
      if (!r.has_value() || *r) break;
      lo = hi;
      hi *= 2;
    }
    const mpq_class target = mpq_class(1) / mpq_class(mpz_class("50000000000"));  // 2e-11
    while (hi - lo > target * lo) {
      mpq_class mid = (lo + hi) / 2;
      auto r = below(mid);
      if (!r.has_value()) break;  // at the decimal uncertainty floor
      (*r ? hi : lo) = mid;
    }
    double rel = mpq_class((hi - lo) / lo).get_d();
    if (rel > 2e-9)
      throw PrecisionExhausted(
          "entropy: beta is known only to a wider tolerance than the 1e-9 "
          "contract");
    EntropyResult res;
    res.value = std::log(mpq_class((lo + hi) / 2).get_d());
    res.error = rel / 2 + 1e-14;
    res.method = "beta";
    return res;
  }

  throw NotSofic("entropy: supported backends are sofic graphs and beta-shifts; got '" +
                 spec.backend_name() + "'");
}

}  // namespace lamgraph
