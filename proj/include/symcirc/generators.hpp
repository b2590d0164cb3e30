#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symcirc/circuit.hpp"
#include "symcirc/evaluate.hpp"
#include "symcirc/symmetry.hpp"

namespace symcirc {

/// Structured gate name: a kind plus integer indices, printed as
/// "kind(i,j,...)". Parsing the printed form gives the name back.
struct GateName {
  std::string kind;
  std::vector<int> idx;

  std::string to_string() const {
    std::string s = kind + "(";
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
    return s + ")";
  }

  static GateName parse(const std::string& text) {
    auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') throw InvalidArgument("malformed gate name '" + text + "'");
    GateName n{text.substr(0, open), {}};
    std::string body = text.substr(open + 1, text.size() - open - 2);
    std::size_t start = 0;
    while (start < body.size()) {
      auto comma = body.find(',', start);
      if (comma == std::string::npos) comma = body.size();
      n.idx.push_back(std::stoi(body.substr(start, comma - start)));
      start = comma + 1;
    }
    return n;
  }

  friend bool operator==(const GateName&, const GateName&) = default;
  friend auto operator<=>(const GateName&, const GateName&) = default;
};

/// A generated circuit with its symmetry group, one witness per group
/// generator, and named gates. Several names may denote the same gate.
struct GeneratedCircuit {
  Circuit circuit;
  GroupSpec group;
  std::vector<PermutationWitness> witnesses;
  std::map<GateName, GateId> names;

  GateId at(const GateName& name) const {
    auto it = names.find(name);
    if (it == names.end()) throw InvalidArgument("no gate named " + name.to_string());
    return it->second;
  }
  std::optional<GateId> find(const GateName& name) const {
    auto it = names.find(name);
    if (it == names.end()) return std::nullopt;
    return it->second;
  }
  /// Names of gate g, in name order.
  std::vector<GateName> names_of(GateId g) const {
    std::vector<GateName> out;
    for (const auto& [n, id] : names)
      if (id == g) out.push_back(n);
    return out;
  }
};

namespace detail {

inline std::vector<PermutationWitness> witnesses_for(const Circuit& c, const GroupSpec& spec) {
  std::vector<PermutationWitness> out;
  for (const auto& sigma : group_generators(spec)) {
    auto pi = find_extension(c, sigma);
    if (!pi) throw ConstructionError("generated circuit is not " + spec.to_string() + "-symmetric");
    out.push_back({sigma, std::move(*pi)});
  }
  return out;
}

// Split of trace(X^k) into trace(X^a X^b) used by the determinant circuit.
inline std::pair<int, int> trace_split(int k) {
  if (k == 3) return {2, 1};
  if (k == 4) return {3, 1};
  return {(k + 1) / 2, k / 2};
}

}  // namespace detail

/// Transpose-symmetric determinant circuit following Le Verrier's method:
/// power sums s_k = trace(X^k) and the coefficients
///   p_k = (1/k) * sum_{j=1..k} (-1)^{j-1} p_{k-j} s_j,  p_0 = 1,
/// with output p_n = det.
///
/// Matrix powers are built in two families, left products
/// power(k;i,j) = sum_a power(k-1;i,a) x_aj and right products
/// power_rev(k;i,j) = sum_a x_ia power_rev(k-1;a,j), which the transpose
/// exchanges (power(k;i,j) <-> power_rev(k;j,i)); power(2;.) is shared.
/// Only powers up to ceil(n/2) (at least 3 when n >= 4) are built. Traces use
/// trace(X^a X^b) with a term set that the transpose maps onto itself:
///   k <= 2:       sum_a power(k;a,a)
///   k = 3:        sum_{i,c} power(2;i,c) x_ci
///   a = b >= 3:   sum_{i,c} power(a;i,c) power_rev(a;c,i)
///   a != b:       sum_{i,c} 1/2 power(a;i,c) Y_b(c,i) + 1/2 power_rev(a;i,c) Y'_b(c,i)
/// Requires characteristic 0, or a prime p > n when `allow_positive_characteristic`.
inline GeneratedCircuit leverrier_det_circuit(int n, const Field& field, bool allow_positive_characteristic = false) {
  if (n < 1) throw InvalidArgument("leverrier_det_circuit: n must be >= 1");
  if (!field.is_rational()) {
    if (!allow_positive_characteristic)
      throw InvalidArgument("Le Verrier circuits need characteristic 0 (pass the experimental flag for p > n)");
    if (field.characteristic() <= static_cast<std::uint64_t>(n))
      throw InvalidArgument("experimental positive characteristic needs p > n");
  }
  CircuitBuilder b(field, VarSpace::matrix(n, n));
  GeneratedCircuit out;
  auto name = [&](std::string kind, std::vector<int> idx, GateId g) {
    out.names.emplace(GateName{std::move(kind), std::move(idx)}, g);
    return g;
  };

  // Constants -1, 0, 1, 1/2, ..., 1/n.
  GateId minus_one = name("const", {-1, 1}, b.constant(-1));
  name("const", {0, 1}, b.constant(0));
  std::vector<GateId> inv(n + 1);
  for (int k = 1; k <= n; ++k) {
    FieldValue v = FieldValue::one(field) / FieldValue::from_int(field, k);
    inv[k] = name("const", {1, k}, b.constant(v));
  }

  auto idx3 = [n](int i, int j) { return static_cast<std::size_t>((i - 1) * n + (j - 1)); };
  std::vector<GateId> x(n * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) x[idx3(i, j)] = name("x", {i, j}, b.input(VarSpace::matrix(n, n).entry(i, j)));

  int family_max = 2;
  for (int k = 3; k <= n; ++k) family_max = std::max(family_max, detail::trace_split(k).first);
  if (n < 2) family_max = 1;

  // left[k], right[k]: entries of X^k; index 1 is X itself.
  std::vector<std::vector<GateId>> left(family_max + 1), right(family_max + 1);
  left[1] = right[1] = x;
  if (family_max >= 2) {
    left[2].resize(n * n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        std::vector<GateId> terms;
        for (int a = 1; a <= n; ++a) terms.push_back(name("prod", {2, i, a, j}, b.mul({x[idx3(i, a)], x[idx3(a, j)]})));
        left[2][idx3(i, j)] = name("power", {2, i, j}, b.add(terms));
      }
    right[2] = left[2];
  }
  for (int k = 3; k <= family_max; ++k) {
    left[k].resize(n * n);
    right[k].resize(n * n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        std::vector<GateId> lt, rt;
        for (int a = 1; a <= n; ++a) {
          lt.push_back(name("prod", {k, i, a, j}, b.mul({left[k - 1][idx3(i, a)], x[idx3(a, j)]})));
          rt.push_back(name("prod_rev", {k, i, a, j}, b.mul({x[idx3(i, a)], right[k - 1][idx3(a, j)]})));
        }
        left[k][idx3(i, j)] = name("power", {k, i, j}, b.add(lt));
        right[k][idx3(i, j)] = name("power_rev", {k, i, j}, b.add(rt));
      }
  }

  std::vector<GateId> trace(n + 1);
  for (int k = 1; k <= n; ++k) {
    std::vector<GateId> terms;
    if (k <= 2) {
      for (int a = 1; a <= n; ++a) terms.push_back(left[k][idx3(a, a)]);
    } else {
      auto [pa, pb] = detail::trace_split(k);
      for (int i = 1; i <= n; ++i)
        for (int c = 1; c <= n; ++c) {
          if (pa == 2) {
            terms.push_back(name("trace_term", {k, i, c}, b.mul({left[2][idx3(i, c)], x[idx3(c, i)]})));
          } else if (pa == pb) {
            terms.push_back(name("trace_term", {k, i, c}, b.mul({left[pa][idx3(i, c)], right[pb][idx3(c, i)]})));
          } else {
            terms.push_back(name("trace_term", {k, i, c}, b.mul({inv[2], left[pa][idx3(i, c)], right[pb][idx3(c, i)]})));
            terms.push_back(name("trace_term_rev", {k, i, c}, b.mul({inv[2], right[pa][idx3(i, c)], left[pb][idx3(c, i)]})));
          }
        }
    }
    trace[k] = name("trace", {k}, b.add(terms));
  }

  std::vector<GateId> coeff(n + 1);
  coeff[1] = name("coeff", {1}, trace[1]);
  for (int k = 2; k <= n; ++k) {
    std::vector<GateId> terms;
    for (int j = 1; j < k; ++j) {
      GateId t = (j % 2 == 1) ? b.mul({coeff[k - j], trace[j]}) : b.mul({minus_one, coeff[k - j], trace[j]});
      terms.push_back(name("coeff_term", {k, j}, t));
    }
    terms.push_back(name("coeff_term", {k, k}, (k % 2 == 1) ? trace[k] : b.mul({minus_one, trace[k]})));
    GateId sum = name("coeff_sum", {k}, b.add(terms));
    coeff[k] = name("coeff", {k}, b.mul({inv[k], sum}));
  }

  out.circuit = std::move(b).finish(coeff[n]);
  out.group = GroupSpec::transpose(n);
  out.witnesses = detail::witnesses_for(out.circuit, out.group);
  return out;
}

namespace detail {

// Adds the gates of (-1)^n sum_S (-1)^{|S|} prod_i sum_{j in S} x_ij to the
// builder. With `by_columns` the roles of rows and columns are swapped.
inline GateId ryser_body(CircuitBuilder& b, GeneratedCircuit& out, int n, bool by_columns) {
  GateId plus = b.constant(1), minus = b.constant(-1);
  out.names.emplace(GateName{"const", {1, 1}}, plus);
  out.names.emplace(GateName{"const", {-1, 1}}, minus);
  const std::string tag = by_columns ? "col_" : "";
  std::vector<GateId> terms;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<GateId> sums;
    for (int i = 1; i <= n; ++i) {
      std::vector<GateId> entries;
      for (int j = 1; j <= n; ++j)
        if (mask & (1 << (j - 1))) {
          VarId v = by_columns ? VarSpace::matrix(n, n).entry(j, i) : VarSpace::matrix(n, n).entry(i, j);
          GateId in = b.input(v);
          out.names.emplace(GateName{"x", by_columns ? std::vector<int>{j, i} : std::vector<int>{i, j}}, in);
          entries.push_back(in);
        }
      GateId s = b.add(entries);
      out.names.emplace(GateName{tag + "row_sum", {i, mask}}, s);
      sums.push_back(s);
    }
    GateId prod = b.mul(sums);
    out.names.emplace(GateName{tag + "row_prod", {mask}}, prod);
    int sign = ((n + std::popcount(static_cast<unsigned>(mask))) % 2 == 0) ? 1 : -1;
    GateId term = b.mul({sign > 0 ? plus : minus, prod});
    out.names.emplace(GateName{tag + "subset_term", {mask}}, term);
    terms.push_back(term);
  }
  return b.add(terms);
}

}  // namespace detail

/// Ryser's formula perm = (-1)^n sum_{S subset [n]} (-1)^{|S|} prod_i sum_{j in S} x_ij
/// over non-empty column sets S (S = {} contributes 0). Subsets are bitmasks
/// over columns in gate names. Matrix symmetric.
inline GeneratedCircuit ryser_perm_circuit(int n, const Field& field) {
  if (n < 1) throw InvalidArgument("ryser_perm_circuit: n must be >= 1");
  CircuitBuilder b(field, VarSpace::matrix(n, n));
  GeneratedCircuit out;
  GateId root = detail::ryser_body(b, out, n, false);
  out.names.emplace(GateName{"perm", {}}, root);
  out.circuit = std::move(b).finish(root);
  out.group = GroupSpec::matrix(n, n);
  out.witnesses = detail::witnesses_for(out.circuit, out.group);
  return out;
}

/// (1/2)(row Ryser + column Ryser): the transpose exchanges the two halves, so
/// this circuit is both matrix and transpose symmetric. Needs char != 2.
inline GeneratedCircuit ryser_transpose_symmetric_circuit(int n, const Field& field) {
  if (n < 1) throw InvalidArgument("ryser_transpose_symmetric_circuit: n must be >= 1");
  if (field.characteristic() == 2) throw InvalidArgument("transpose-symmetric Ryser circuit needs char != 2");
  CircuitBuilder b(field, VarSpace::matrix(n, n));
  GeneratedCircuit out;
  GateId rows = detail::ryser_body(b, out, n, false);
  GateId cols = detail::ryser_body(b, out, n, true);
  out.names.emplace(GateName{"sum", {}}, rows);
  out.names.emplace(GateName{"col_sum", {}}, cols);
  GateId half = b.constant(FieldValue::one(field) / FieldValue::from_int(field, 2));
  out.names.emplace(GateName{"const", {1, 2}}, half);
  GateId half_rows = b.mul({half, rows}), half_cols = b.mul({half, cols});
  out.names.emplace(GateName{"half", {}}, half_rows);
  out.names.emplace(GateName{"col_half", {}}, half_cols);
  GateId root = b.add({half_rows, half_cols});
  out.names.emplace(GateName{"perm", {}}, root);
  out.circuit = std::move(b).finish(root);
  out.group = GroupSpec::transpose(n);
  out.witnesses = detail::witnesses_for(out.circuit, out.group);
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracles.

using Matrix = std::vector<std::vector<FieldValue>>;

inline Assignment matrix_assignment(const Matrix& m) {
  Assignment a;
  for (const auto& row : m) a.insert(a.end(), row.begin(), row.end());
  return a;
}

inline Matrix matrix_from_ints(const Field& f, const std::vector<std::vector<long long>>& rows) {
  Matrix m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (long long v : r) m.back().push_back(FieldValue::from_int(f, v));
  }
  return m;
}

inline Matrix random_int_matrix(const Field& f, int n, long long lo, long long hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> d(lo, hi);
  Matrix m(n);
  for (auto& row : m)
    for (int j = 0; j < n; ++j) row.push_back(FieldValue::from_int(f, d(rng)));
  return m;
}

namespace detail {

inline void check_square(const Matrix& m) {
  if (m.empty()) throw InvalidArgument("empty matrix");
  for (const auto& r : m)
    if (r.size() != m.size()) throw InvalidArgument("matrix is not square");
}

// Sum over permutations of sign^signed * prod m[i][perm(i)].
inline FieldValue leibniz(const Matrix& m, bool signed_sum) {
  check_square(m);
  const Field& f = m[0][0].field();
  const std::size_t n = m.size();
  if (n > 9) throw BudgetExceeded("Leibniz expansion limited to n <= 9");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  FieldValue total = FieldValue::zero(f);
  do {
    FieldValue term = FieldValue::one(f);
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    if (signed_sum) {
      std::size_t inversions = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
      if (inversions % 2) term = -term;
    }
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace detail

/// Leibniz expansion sum_sigma sgn(sigma) prod_i m[i][sigma(i)].
inline FieldValue det_oracle(const Matrix& m) { return detail::leibniz(m, true); }

/// Leibniz expansion without signs.
inline FieldValue perm_oracle(const Matrix& m) { return detail::leibniz(m, false); }

/// Determinant by exact Gaussian elimination.
inline FieldValue det_elimination(Matrix m) {
  detail::check_square(m);
  const Field& f = m[0][0].field();
  const std::size_t n = m.size();
  FieldValue det = FieldValue::one(f);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return FieldValue::zero(f);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    FieldValue inv = m[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      FieldValue factor = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] = m[r][c] - factor * m[col][c];
    }
  }
  return det;
}

}  // namespace symcirc
