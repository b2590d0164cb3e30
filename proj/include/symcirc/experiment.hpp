#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symcirc/cfi.hpp"
#include "symcirc/wl.hpp"

namespace symcirc {

struct ExperimentOptions {
  std::vector<unsigned> wl_dims;
  std::vector<std::uint64_t> moduli;
  MatchingOptions matching;
  bool permanent_oracle = true;
  unsigned wl_jobs = 1;
};

struct ModCheck {
  std::uint64_t p;
  BigInt mu_x, mu_tx;  // residues
  bool differ;
  bool expected_differ;
};

struct WLCheck {
  unsigned k;
  WLResult result;
  std::optional<bool> expected_equivalent;  // set when k < documented treewidth
};

/// Matching counts of X(G) and ~X(G) plus the derived consistency checks.
struct ExperimentReport {
  std::string graph;
  std::size_t vertices = 0, edges = 0;
  bool enumerated = false;
  std::string enumeration_error;
  MatchingClassification x, tx;
  std::optional<BigInt> perm_x, perm_tx;
  BigInt formula_x, formula_tx;
  BigInt difference;           // mu(X) - mu(~X)
  BigInt expected_difference;  // 2^(3|V|/2 + 1) up to sign
  std::vector<ModCheck> mods;
  std::vector<WLCheck> wl;

  bool difference_ok() const { return enumerated && (difference == expected_difference || difference == -expected_difference); }
  bool uniform_ok() const { return enumerated && x.uniform == formula_x && tx.uniform == formula_tx; }
  bool non_uniform_equal() const { return enumerated && x.non_uniform == tx.non_uniform; }
  bool oracle_ok() const {
    return enumerated && (!perm_x || (*perm_x == x.total && *perm_tx == tx.total));
  }
  bool mods_ok() const {
    for (const auto& m : mods)
      if (m.differ != m.expected_differ) return false;
    return enumerated;
  }
  bool wl_ok() const {
    for (const auto& w : wl)
      if (w.expected_equivalent && *w.expected_equivalent != w.result.equivalent) return false;
    return true;
  }
  bool ok() const {
    return difference_ok() && uniform_ok() && non_uniform_equal() && oracle_ok() && mods_ok() && wl_ok() &&
           x.projection_equations_hold && tx.projection_equations_hold;
  }
};

inline BigInt mod_floor(const BigInt& a, std::uint64_t p) {
  BigInt r = a % p;
  if (r < 0) r += p;
  return r;
}

inline ExperimentReport matching_experiment(const BaseGraph& base, const ExperimentOptions& opt) {
  ExperimentReport r;
  r.graph = base.name;
  r.vertices = base.graph.n;
  r.edges = base.graph.edges.size();
  CFIGraph x = build_cfi(base, false), tx = build_cfi(base, true);
  r.formula_x = uniform_count_formula(base.graph, false);
  r.formula_tx = uniform_count_formula(base.graph, true);
  r.expected_difference = pow2(static_cast<unsigned>(3 * base.graph.n / 2 + 1));
  try {
    r.x = classify_perfect_matchings(x, opt.matching);
    r.tx = classify_perfect_matchings(tx, opt.matching);
    r.enumerated = true;
  } catch (const BudgetExceeded& e) {
    r.enumeration_error = e.what();
  }
  if (r.enumerated) {
    r.difference = r.x.total - r.tx.total;
    if (opt.permanent_oracle) {
      r.perm_x = matching_count_via_permanent(x.graph);
      r.perm_tx = matching_count_via_permanent(tx.graph);
    }
    for (auto p : opt.moduli) {
      if (p < 2) throw InvalidArgument("modulus must be at least 2");
      ModCheck m{p, mod_floor(r.x.total, p), mod_floor(r.tx.total, p), false, true};
      // Only a power of two dividing 2^l leaves the counts congruent.
      if ((p & (p - 1)) == 0) m.expected_differ = BigInt(p) > r.expected_difference;
      m.differ = m.mu_x != m.mu_tx;
      r.mods.push_back(m);
    }
  }
  for (auto k : opt.wl_dims) {
    WLCheck w{k, wl_equivalent(x.graph, tx.graph, k, opt.wl_jobs), std::nullopt};
    if (base.treewidth && static_cast<int>(k) < *base.treewidth) w.expected_equivalent = true;
    r.wl.push_back(w);
  }
  return r;
}

}  // namespace symcirc
