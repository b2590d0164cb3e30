#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symcirc/circuit.hpp"

namespace symcirc {

/// Symmetry group acting on a variable space.
///  Square(n):    Sym(I) acting diagonally on I x I.
///  Matrix(m,n):  Sym(I) x Sym(J) on I x J.
///  Transpose(n): generated by the square action and the transpose x_ij -> x_ji.
///  Partition:    product of Sym(A_q) over the given disjoint parts.
struct GroupSpec {
  enum class Kind { Square, Matrix, Transpose, Partition };
  Kind kind = Kind::Square;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<VarId>> parts;

  static GroupSpec square(std::size_t n) { return {Kind::Square, n, n, {}}; }
  static GroupSpec matrix(std::size_t m, std::size_t n) { return {Kind::Matrix, m, n, {}}; }
  static GroupSpec transpose(std::size_t n) { return {Kind::Transpose, n, n, {}}; }
  static GroupSpec partition(std::vector<std::vector<VarId>> parts) {
    return {Kind::Partition, 0, 0, std::move(parts)};
  }

  std::size_t num_vars() const {
    if (kind != Kind::Partition) return rows * cols;
    std::size_t n = 0;
    for (const auto& p : parts)
      for (VarId v : p) n = std::max<std::size_t>(n, v + 1);
    return n;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Square: return "square:" + std::to_string(rows);
      case Kind::Matrix: return "matrix:" + std::to_string(rows) + "," + std::to_string(cols);
      case Kind::Transpose: return "transpose:" + std::to_string(rows);
      case Kind::Partition: return "partition:" + std::to_string(parts.size());
    }
    return "";
  }
};

/// Image of each variable id.
using VarPermutation = std::vector<VarId>;

/// A variable permutation together with a gate map claimed to extend it.
struct PermutationWitness {
  VarPermutation sigma;
  std::vector<GateId> pi;
};

inline VarPermutation identity_permutation(std::size_t n) {
  VarPermutation p(n);
  std::iota(p.begin(), p.end(), VarId{0});
  return p;
}

/// Variable permutation of an m x n matrix space induced by row permutation
/// `row` and column permutation `col` (0-based index images).
inline VarPermutation matrix_action(std::size_t m, std::size_t n, const std::vector<std::size_t>& row,
                                    const std::vector<std::size_t>& col) {
  VarPermutation p(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) p[i * n + j] = static_cast<VarId>(row[i] * n + col[j]);
  return p;
}

inline std::vector<std::size_t> index_transposition(std::size_t n, std::size_t a, std::size_t b) {
  std::vector<std::size_t> t(n);
  std::iota(t.begin(), t.end(), std::size_t{0});
  std::swap(t[a], t[b]);
  return t;
}

inline VarPermutation transpose_action(std::size_t n) {
  VarPermutation p(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p[i * n + j] = static_cast<VarId>(j * n + i);
  return p;
}

/// Transpositions generating the group (transpositions generate Sym).
inline std::vector<VarPermutation> group_generators(const GroupSpec& spec) {
  std::vector<VarPermutation> gens;
  auto identity = [](std::size_t n) {
    std::vector<std::size_t> t(n);
    std::iota(t.begin(), t.end(), std::size_t{0});
    return t;
  };
  switch (spec.kind) {
    case GroupSpec::Kind::Square:
    case GroupSpec::Kind::Transpose: {
      std::size_t n = spec.rows;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          auto t = index_transposition(n, a, b);
          gens.push_back(matrix_action(n, n, t, t));
        }
      if (spec.kind == GroupSpec::Kind::Transpose) gens.push_back(transpose_action(n));
      break;
    }
    case GroupSpec::Kind::Matrix: {
      std::size_t m = spec.rows, n = spec.cols;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) gens.push_back(matrix_action(m, n, index_transposition(m, a, b), identity(n)));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) gens.push_back(matrix_action(m, n, identity(m), index_transposition(n, a, b)));
      break;
    }
    case GroupSpec::Kind::Partition: {
      std::size_t nv = spec.num_vars();
      for (const auto& part : spec.parts)
        for (std::size_t a = 0; a < part.size(); ++a)
          for (std::size_t b = a + 1; b < part.size(); ++b) {
            auto p = identity_permutation(nv);
            std::swap(p[part[a]], p[part[b]]);
            gens.push_back(p);
          }
      break;
    }
  }
  return gens;
}

/// (a o b): apply b first, then a.
inline PermutationWitness compose(const PermutationWitness& a, const PermutationWitness& b) {
  PermutationWitness r;
  r.sigma.resize(b.sigma.size());
  for (std::size_t v = 0; v < b.sigma.size(); ++v) r.sigma[v] = a.sigma.at(b.sigma[v]);
  r.pi.resize(b.pi.size());
  for (std::size_t g = 0; g < b.pi.size(); ++g) r.pi[g] = a.pi.at(b.pi[g]);
  return r;
}

inline PermutationWitness inverse(const PermutationWitness& w) {
  PermutationWitness r;
  r.sigma.resize(w.sigma.size());
  for (std::size_t v = 0; v < w.sigma.size(); ++v) r.sigma.at(w.sigma[v]) = static_cast<VarId>(v);
  r.pi.resize(w.pi.size());
  for (std::size_t g = 0; g < w.pi.size(); ++g) r.pi.at(w.pi[g]) = static_cast<GateId>(g);
  return r;
}

/// Reason the witness is not an automorphism of `c`, or nullopt if it is.
/// Tagged wires must keep their tag.
inline std::optional<std::string> automorphism_violation(const Circuit& c, const PermutationWitness& w) {
  const std::size_t n = c.gates.size();
  if (w.pi.size() != n) return "gate map has wrong size";
  if (w.sigma.size() != c.num_vars()) return "variable permutation has wrong size";
  std::vector<std::uint8_t> hit(n, 0);
  for (GateId g = 0; g < n; ++g) {
    if (w.pi[g] >= n || hit[w.pi[g]]) return "gate map is not a bijection";
    hit[w.pi[g]] = 1;
  }
  std::vector<std::uint8_t> vhit(w.sigma.size(), 0);
  for (VarId v : w.sigma) {
    if (v >= w.sigma.size() || vhit[v]) return "variable map is not a bijection";
    vhit[v] = 1;
  }
  for (GateId g = 0; g < n; ++g) {
    const Gate& src = c.gates[g];
    const Gate& dst = c.gates[w.pi[g]];
    if (std::holds_alternative<label::Const>(src.label) && w.pi[g] != g)
      return "constant gate " + std::to_string(g) + " is moved";
    if (auto* in = std::get_if<label::Input>(&src.label)) {
      auto* out = std::get_if<label::Input>(&dst.label);
      if (!out || out->var != w.sigma[in->var])
        return "input gate " + std::to_string(g) + " is not mapped according to sigma";
    } else if (!(src.label == dst.label)) {
      return "label of gate " + std::to_string(g) + " is not preserved";
    }
    std::vector<Wire> image;
    image.reserve(src.children.size());
    for (const auto& wire : src.children) image.push_back({w.pi[wire.child], wire.tag});
    std::sort(image.begin(), image.end());
    std::vector<Wire> target = dst.children;
    std::sort(target.begin(), target.end());
    if (image != target) return "wires of gate " + std::to_string(g) + " are not preserved";
  }
  return std::nullopt;
}

inline bool verify_automorphism(const Circuit& c, const PermutationWitness& w) {
  return !automorphism_violation(c, w).has_value();
}

/// Searches for a gate map extending `sigma` (and fixing `fix`, if given).
/// Gates are visited children-first; each gate's image must carry the same
/// label and exactly the image of its children, so the candidates are the
/// gates in one structural class. Ties (structurally identical gates) are
/// resolved by backtracking in ascending gate-id order.
inline std::optional<std::vector<GateId>> find_extension(const Circuit& c, const VarPermutation& sigma,
                                                         std::optional<GateId> fix = std::nullopt) {
  const std::size_t n = c.gates.size();
  if (sigma.size() != c.num_vars()) return std::nullopt;
  auto order_opt = topological_order(c);
  if (!order_opt) return std::nullopt;
  const auto& order = *order_opt;

  std::vector<std::string> lkey(n);
  for (GateId g = 0; g < n; ++g) lkey[g] = label_key(c.gates[g].label);
  auto structural_key = [&](const std::string& label, std::vector<Wire> wires) {
    std::sort(wires.begin(), wires.end());
    std::string key = label + "|";
    for (const auto& w : wires) key += std::to_string(w.child) + (w.tag ? "#" + *w.tag : "") + ",";
    return key;
  };
  std::map<std::string, std::vector<GateId>> classes;
  for (GateId g = 0; g < n; ++g) classes[structural_key(lkey[g], c.gates[g].children)].push_back(g);

  std::vector<GateId> pi(n, 0);
  std::vector<std::uint8_t> used(n, 0);

  auto candidates_for = [&](GateId g) -> std::vector<GateId> {
    const Gate& gate = c.gates[g];
    if (std::holds_alternative<label::Const>(gate.label)) return {g};
    std::string l = lkey[g];
    if (auto* in = std::get_if<label::Input>(&gate.label)) l = label_key(label::Input{sigma[in->var]});
    std::vector<Wire> image;
    for (const auto& w : gate.children) image.push_back({pi[w.child], w.tag});
    auto it = classes.find(structural_key(l, std::move(image)));
    if (it == classes.end()) return {};
    return it->second;
  };

  // Iterative DFS over positions in `order`.
  std::vector<std::vector<GateId>> cand(n);
  std::vector<std::size_t> choice(n, 0);
  std::size_t pos = 0;
  bool descending = true;
  while (true) {
    if (pos == n) return pi;
    GateId g = order[pos];
    if (descending) {
      cand[pos] = candidates_for(g);
      choice[pos] = 0;
    } else {
      used[pi[g]] = 0;
      ++choice[pos];
    }
    bool placed = false;
    while (choice[pos] < cand[pos].size()) {
      GateId h = cand[pos][choice[pos]];
      bool ok = !used[h] && (!fix || g != *fix || h == *fix) && (!fix || h != *fix || g == *fix);
      if (ok) {
        pi[g] = h;
        used[h] = 1;
        placed = true;
        break;
      }
      ++choice[pos];
    }
    if (placed) {
      ++pos;
      descending = true;
    } else {
      if (pos == 0) return std::nullopt;
      --pos;
      descending = false;
    }
  }
}

struct SymmetryReport {
  bool symmetric = true;
  std::vector<VarPermutation> generators;
  std::vector<std::optional<PermutationWitness>> witnesses;
};

/// Symmetric iff every generator of the group extends; extensions compose, so
/// generators suffice.
inline SymmetryReport check_symmetric(const Circuit& c, const GroupSpec& spec) {
  SymmetryReport r;
  if (spec.num_vars() != c.num_vars())
    throw InvalidArgument("group " + spec.to_string() + " acts on " + std::to_string(spec.num_vars()) +
                          " variables, circuit has " + std::to_string(c.num_vars()));
  r.generators = group_generators(spec);
  for (const auto& sigma : r.generators) {
    auto pi = find_extension(c, sigma);
    if (pi) {
      r.witnesses.push_back(PermutationWitness{sigma, std::move(*pi)});
    } else {
      r.witnesses.push_back(std::nullopt);
      r.symmetric = false;
    }
  }
  return r;
}

struct OrbitPartition {
  std::vector<GateId> orbit_of;  // smallest gate id in the orbit
  std::vector<std::vector<GateId>> orbits;
  std::size_t max_orbit_size = 0;
};

/// Orbits of the group generated by the witness gate maps (union-find closure).
inline OrbitPartition orbits(const Circuit& c, const std::vector<PermutationWitness>& witnesses) {
  for (std::size_t i = 0; i < witnesses.size(); ++i)
    if (auto why = automorphism_violation(c, witnesses[i]))
      throw InvalidArgument("witness " + std::to_string(i) + " is not an automorphism: " + *why);
  const std::size_t n = c.gates.size();
  std::vector<GateId> parent(n);
  std::iota(parent.begin(), parent.end(), GateId{0});
  std::function<GateId(GateId)> find = [&](GateId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& w : witnesses)
    for (GateId g = 0; g < n; ++g) {
      GateId a = find(g), b = find(w.pi[g]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  OrbitPartition out;
  out.orbit_of.resize(n);
  std::map<GateId, std::size_t> slot;
  for (GateId g = 0; g < n; ++g) {
    GateId r = find(g);
    out.orbit_of[g] = r;
    auto [it, fresh] = slot.emplace(r, out.orbits.size());
    if (fresh) out.orbits.emplace_back();
    out.orbits[it->second].push_back(g);
  }
  for (const auto& o : out.orbits) out.max_orbit_size = std::max(out.max_orbit_size, o.size());
  return out;
}

/// Generators of the pointwise stabilizer of the index set S (1-based
/// indices): transpositions of indices outside S, applied diagonally for
/// Square and separately to rows and columns for Matrix. For Transpose the
/// diagonal part is used, as the transpose itself fixes every index.
inline std::vector<VarPermutation> stabilizer_generators(const GroupSpec& spec, const std::set<std::size_t>& support) {
  if (spec.kind == GroupSpec::Kind::Partition) throw InvalidArgument("supports are not defined for partition groups");
  std::size_t limit = std::max(spec.rows, spec.cols);
  for (std::size_t s : support)
    if (s < 1 || s > limit) throw InvalidArgument("support index " + std::to_string(s) + " outside index set");
  auto id = [](std::size_t n) {
    std::vector<std::size_t> t(n);
    std::iota(t.begin(), t.end(), std::size_t{0});
    return t;
  };
  std::vector<VarPermutation> gens;
  if (spec.kind != GroupSpec::Kind::Matrix) {
    std::size_t n = spec.rows;
    for (std::size_t a = 1; a <= n; ++a)
      for (std::size_t b = a + 1; b <= n; ++b)
        if (!support.contains(a) && !support.contains(b)) {
          auto t = index_transposition(n, a - 1, b - 1);
          gens.push_back(matrix_action(n, n, t, t));
        }
  } else {
    std::size_t m = spec.rows, n = spec.cols;
    for (std::size_t a = 1; a <= m; ++a)
      for (std::size_t b = a + 1; b <= m; ++b)
        if (!support.contains(a) && !support.contains(b))
          gens.push_back(matrix_action(m, n, index_transposition(m, a - 1, b - 1), id(n)));
    for (std::size_t a = 1; a <= n; ++a)
      for (std::size_t b = a + 1; b <= n; ++b)
        if (!support.contains(a) && !support.contains(b))
          gens.push_back(matrix_action(m, n, id(m), index_transposition(n, a - 1, b - 1)));
  }
  return gens;
}

/// S supports `gate` iff every generator of the pointwise stabilizer of S has
/// an extension fixing `gate`.
inline bool is_support(const Circuit& c, GateId gate, const std::set<std::size_t>& support, const GroupSpec& spec) {
  if (gate >= c.gates.size()) throw InvalidArgument("no gate " + std::to_string(gate));
  for (const auto& sigma : stabilizer_generators(spec, support))
    if (!find_extension(c, sigma, gate)) return false;
  return true;
}

/// Inclusion-minimal support by greedy removal from the whole index set.
///
/// Fixing n-1 indices pointwise fixes the last one too, so every (n-1)-subset
/// is a support and a single removal from the full set carries no
/// information. The first step therefore removes a pair (the first one in
/// descending order whose removal leaves a support); after that, indices are
/// dropped one at a time in descending order. Supports are closed under
/// supersets, so a single pass leaves no removable index.
inline std::set<std::size_t> minimal_support_greedy(const Circuit& c, GateId gate, const GroupSpec& spec) {
  if (spec.kind == GroupSpec::Kind::Partition) throw InvalidArgument("supports are not defined for partition groups");
  if (gate >= c.gates.size()) throw InvalidArgument("no gate " + std::to_string(gate));
  std::set<std::size_t> s;
  const std::size_t n = std::max(spec.rows, spec.cols);
  for (std::size_t i = 1; i <= n; ++i) s.insert(i);
  bool paired = false;
  for (std::size_t b = n; b >= 2 && !paired; --b)
    for (std::size_t a = b - 1; a >= 1 && !paired; --a) {
      auto smaller = s;
      smaller.erase(a);
      smaller.erase(b);
      if (is_support(c, gate, smaller, spec)) {
        s = std::move(smaller);
        paired = true;
      }
    }
  for (std::size_t i = n; i >= 1; --i) {
    auto smaller = s;
    smaller.erase(i);
    if (is_support(c, gate, smaller, spec)) s = std::move(smaller);
  }
  return s;
}

inline nlohmann::ordered_json witness_to_json(const PermutationWitness& w) {
  nlohmann::ordered_json j;
  auto sigma = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < w.sigma.size(); ++v)
    if (w.sigma[v] != v) sigma.push_back({v, w.sigma[v]});
  auto pi = nlohmann::ordered_json::array();
  for (std::size_t g = 0; g < w.pi.size(); ++g)
    if (w.pi[g] != g) pi.push_back({g, w.pi[g]});
  j["sigma"] = sigma;
  j["pi"] = pi;
  return j;
}

/// Reads the sparse {sigma, pi} form; unlisted entries are fixed points.
inline PermutationWitness witness_from_json(const nlohmann::json& j, std::size_t vars, std::size_t gates) {
  PermutationWitness w{identity_permutation(vars), std::vector<GateId>(gates)};
  std::iota(w.pi.begin(), w.pi.end(), GateId{0});
  for (const auto& pair : j.at("sigma")) w.sigma.at(pair.at(0).get<std::size_t>()) = pair.at(1).get<VarId>();
  for (const auto& pair : j.at("pi")) w.pi.at(pair.at(0).get<std::size_t>()) = pair.at(1).get<GateId>();
  return w;
}

}  // namespace symcirc
