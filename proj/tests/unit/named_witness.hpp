#pragma once

// Witnesses built from gate names alone, as an oracle that does not use the
// extension search.

#include <functional>

#include "symcirc/generators.hpp"

namespace symcirc::testing {

using IndexMap = std::function<int(int)>;

// Image of a Le Verrier gate name under the index permutation s, followed by
// the transpose when `transpose` is set.
inline GateName leverrier_image(const GateName& n, const IndexMap& s, bool transpose) {
  GateName r = n;
  const std::string& k = n.kind;
  auto& ix = r.idx;
  if (k == "x") {
    ix = {s(n.idx[0]), s(n.idx[1])};
    if (transpose) std::swap(ix[0], ix[1]);
  } else if (k == "prod" || k == "prod_rev") {
    ix = {n.idx[0], s(n.idx[1]), s(n.idx[2]), s(n.idx[3])};
    if (transpose) {
      std::swap(ix[1], ix[3]);
      if (n.idx[0] >= 3) r.kind = k == "prod" ? "prod_rev" : "prod";
    }
  } else if (k == "power" || k == "power_rev") {
    ix = {n.idx[0], s(n.idx[1]), s(n.idx[2])};
    if (transpose) {
      std::swap(ix[1], ix[2]);
      if (n.idx[0] >= 3) r.kind = k == "power" ? "power_rev" : "power";
    }
  } else if (k == "trace_term" || k == "trace_term_rev") {
    ix = {n.idx[0], s(n.idx[1]), s(n.idx[2])};
    if (transpose) {
      auto [a, b] = detail::trace_split(n.idx[0]);
      if (a == 2) {
        std::swap(ix[1], ix[2]);
      } else if (a != b) {
        std::swap(ix[1], ix[2]);
        r.kind = k == "trace_term" ? "trace_term_rev" : "trace_term";
      }
    }
  }
  return r;
}

inline GateName ryser_image(const GateName& n, const IndexMap& rows, const IndexMap& cols, bool transpose) {
  GateName r = n;
  auto map_mask = [&](int mask) {
    int out = 0;
    for (int j = 1; j <= 30; ++j)
      if (mask >> (j - 1) & 1) out |= 1 << (cols(j) - 1);
    return out;
  };
  auto map_mask_rows = [&](int mask) {
    int out = 0;
    for (int j = 1; j <= 30; ++j)
      if (mask >> (j - 1) & 1) out |= 1 << (rows(j) - 1);
    return out;
  };
  const std::string& k = n.kind;
  if (k == "x") {
    r.idx = {rows(n.idx[0]), cols(n.idx[1])};
    if (transpose) std::swap(r.idx[0], r.idx[1]);
  } else if (k == "row_sum") {
    r.idx = {rows(n.idx[0]), map_mask(n.idx[1])};
  } else if (k == "col_row_sum") {
    r.idx = {cols(n.idx[0]), map_mask_rows(n.idx[1])};
  } else if (k == "row_prod" || k == "subset_term") {
    r.idx = {map_mask(n.idx[0])};
  } else if (k == "col_row_prod" || k == "col_subset_term") {
    r.idx = {map_mask_rows(n.idx[0])};
  }
  if (transpose && k != "x" && k != "const" && k != "perm") {
    if (k.rfind("col_", 0) == 0) r.kind = k.substr(4);
    else r.kind = "col_" + k;
  }
  return r;
}

// Gate map induced by a name map; unnamed gates must be fan-in-1 Add gates
// over a mapped gate, whose image is the corresponding pass-through gate.
inline std::optional<std::vector<GateId>> witness_from_names(const GeneratedCircuit& g,
                                                             const std::function<GateName(const GateName&)>& image) {
  const Circuit& c = g.circuit;
  std::vector<std::optional<GateId>> pi(c.gates.size());
  for (const auto& [name, id] : g.names) {
    auto target = g.find(image(name));
    if (!target) return std::nullopt;
    if (pi[id] && *pi[id] != *target) return std::nullopt;
    pi[id] = *target;
  }
  auto order = topological_order(c);
  for (GateId u : *order) {
    if (pi[u]) continue;
    const Gate& gate = c.gates[u];
    if (!std::holds_alternative<label::Add>(gate.label) || gate.children.size() != 1) return std::nullopt;
    GateId child_image = pi[gate.children[0].child].value();
    std::optional<GateId> found;
    for (GateId h = 0; h < c.gates.size(); ++h)
      if (std::holds_alternative<label::Add>(c.gates[h].label) && c.gates[h].children.size() == 1 &&
          c.gates[h].children[0].child == child_image)
        found = h;
    if (!found) return std::nullopt;
    pi[u] = *found;
  }
  std::vector<GateId> out;
  for (auto p : pi) out.push_back(*p);
  return out;
}

inline IndexMap swap_indices(int a, int b) {
  return [a, b](int i) { return i == a ? b : i == b ? a : i; };
}

inline IndexMap identity_indices() {
  return [](int i) { return i; };
}

}  // namespace symcirc::testing
