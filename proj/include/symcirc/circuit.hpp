#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symcirc/error.hpp"
#include "symcirc/field.hpp"

namespace symcirc {

using GateId = std::uint32_t;
using VarId = std::uint32_t;

namespace label {

struct Input {
  VarId var;
  friend bool operator==(const Input&, const Input&) = default;
};
struct Const {
  FieldValue value;
  friend bool operator==(const Const&, const Const&) = default;
};
struct Add {
  friend bool operator==(const Add&, const Add&) = default;
};
struct Mul {
  friend bool operator==(const Mul&, const Mul&) = default;
};
struct And {
  friend bool operator==(const And&, const And&) = default;
};
struct Or {
  friend bool operator==(const Or&, const Or&) = default;
};
struct Not {
  friend bool operator==(const Not&, const Not&) = default;
};
// At least k children evaluate to 1.
struct ThresholdGE {
  std::uint32_t k;
  friend bool operator==(const ThresholdGE&, const ThresholdGE&) = default;
};
// Exactly k children evaluate to 1.
struct ThresholdEQ {
  std::uint32_t k;
  friend bool operator==(const ThresholdEQ&, const ThresholdEQ&) = default;
};
// 1 iff sum over parts of (#children of the part evaluating to 1) * q == c.
struct PartitionSum {
  FieldValue c;
  std::map<std::string, FieldValue> parts;
  friend bool operator==(const PartitionSum&, const PartitionSum&) = default;
};
// 1 iff product over parts of q^(#children of the part evaluating to 1) == c.
struct PartitionProd {
  FieldValue c;
  std::map<std::string, FieldValue> parts;
  friend bool operator==(const PartitionProd&, const PartitionProd&) = default;
};

}  // namespace label

using GateLabel = std::variant<label::Input, label::Const, label::Add, label::Mul, label::And,
                               label::Or, label::Not, label::ThresholdGE, label::ThresholdEQ,
                               label::PartitionSum, label::PartitionProd>;

inline bool is_partition_label(const GateLabel& l) {
  return std::holds_alternative<label::PartitionSum>(l) ||
         std::holds_alternative<label::PartitionProd>(l);
}

inline bool is_arithmetic_label(const GateLabel& l) {
  return std::holds_alternative<label::Input>(l) || std::holds_alternative<label::Const>(l) ||
         std::holds_alternative<label::Add>(l) || std::holds_alternative<label::Mul>(l);
}

inline bool is_leaf_label(const GateLabel& l) {
  return std::holds_alternative<label::Input>(l) || std::holds_alternative<label::Const>(l);
}

/// Short kind name, also used as the JSON "kind" field.
inline std::string label_kind(const GateLabel& l) {
  static constexpr const char* kNames[] = {"input",        "const",        "add",
                                           "mul",          "and",          "or",
                                           "not",          "threshold_ge", "threshold_eq",
                                           "partition_sum", "partition_prod"};
  return kNames[l.index()];
}

inline const std::map<std::string, FieldValue>* partition_parts(const GateLabel& l) {
  if (auto* s = std::get_if<label::PartitionSum>(&l)) return &s->parts;
  if (auto* p = std::get_if<label::PartitionProd>(&l)) return &p->parts;
  return nullptr;
}

/// Canonical text of a label including its parameters; equal labels give
/// equal keys.
inline std::string label_key(const GateLabel& l) {
  std::string key = label_kind(l);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, label::Input>) {
          key += ":" + std::to_string(v.var);
        } else if constexpr (std::is_same_v<T, label::Const>) {
          key += ":" + v.value.to_string();
        } else if constexpr (std::is_same_v<T, label::ThresholdGE> ||
                             std::is_same_v<T, label::ThresholdEQ>) {
          key += ":" + std::to_string(v.k);
        } else if constexpr (std::is_same_v<T, label::PartitionSum> ||
                             std::is_same_v<T, label::PartitionProd>) {
          key += ":" + v.c.to_string() + "{";
          for (const auto& [tag, q] : v.parts) key += tag + "=" + q.to_string() + ";";
          key += "}";
        }
      },
      l);
  return key;
}

struct Wire {
  GateId child;
  std::optional<std::string> tag;
  friend bool operator==(const Wire&, const Wire&) = default;
  friend auto operator<=>(const Wire&, const Wire&) = default;
};

struct Gate {
  GateLabel label;
  std::vector<Wire> children;
};

/// Shape of the variable index space. Matrix spaces number x_{ij} (1-based
/// i, j) as (i-1)*cols + (j-1).
struct VarSpace {
  enum class Kind { Generic, Matrix };
  Kind kind = Kind::Generic;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t count = 0;

  static VarSpace generic(std::size_t count) { return {Kind::Generic, 0, 0, count}; }
  static VarSpace matrix(std::size_t rows, std::size_t cols) {
    return {Kind::Matrix, rows, cols, rows * cols};
  }
  VarId entry(std::size_t i, std::size_t j) const {
    return static_cast<VarId>((i - 1) * cols + (j - 1));
  }
  std::size_t size() const { return count; }
  friend bool operator==(const VarSpace&, const VarSpace&) = default;
};

struct Circuit {
  Field field = Field::rationals();
  VarSpace space;
  std::vector<Gate> gates;
  GateId output = 0;

  std::size_t size() const { return gates.size(); }
  std::size_t num_vars() const { return space.size(); }

  GateId add_gate(GateLabel label, std::vector<Wire> children = {}) {
    gates.push_back(Gate{std::move(label), std::move(children)});
    return static_cast<GateId>(gates.size() - 1);
  }
};

/// Children-before-parents order, or nullopt when the wire graph has a cycle
/// or a dangling child reference.
inline std::optional<std::vector<GateId>> topological_order(const Circuit& c) {
  const std::size_t n = c.gates.size();
  std::vector<std::uint8_t> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<GateId> order;
  order.reserve(n);
  std::vector<std::pair<GateId, std::size_t>> stack;
  for (GateId root = 0; root < n; ++root) {
    if (state[root] != 0) continue;
    stack.push_back({root, 0});
    state[root] = 1;
    while (!stack.empty()) {
      auto& [g, next] = stack.back();
      const auto& kids = c.gates[g].children;
      if (next < kids.size()) {
        GateId ch = kids[next++].child;
        if (ch >= n || state[ch] == 1) return std::nullopt;
        if (state[ch] == 0) {
          state[ch] = 1;
          stack.push_back({ch, 0});
        }
      } else {
        state[g] = 2;
        order.push_back(g);
        stack.pop_back();
      }
    }
  }
  return order;
}

struct Diagnostic {
  std::optional<GateId> gate;
  std::string kind;  // cycle | arity | tag | duplicate-wire | variable | field | output | range
  std::string message;
};

/// Checks every structural invariant of a circuit; never throws.
inline std::vector<Diagnostic> validate(const Circuit& c) {
  std::vector<Diagnostic> out;
  const std::size_t n = c.gates.size();
  if (n == 0 || c.output >= n) {
    out.push_back({std::nullopt, "output", "output gate " + std::to_string(c.output) + " does not exist"});
  }
  bool ranges_ok = true;
  for (GateId g = 0; g < n; ++g) {
    const Gate& gate = c.gates[g];
    const auto* parts = partition_parts(gate.label);
    auto where = "gate " + std::to_string(g);
    for (const Wire& w : gate.children) {
      if (w.child >= n) {
        out.push_back({g, "range", where + " references missing child " + std::to_string(w.child)});
        ranges_ok = false;
      } else if (w.child == g) {
        out.push_back({g, "cycle", where + " is its own child"});
      }
      if (parts) {
        if (!w.tag) {
          out.push_back({g, "tag", where + ": partition wire without part tag"});
        } else if (!parts->contains(*w.tag)) {
          out.push_back({g, "tag", where + ": unknown part tag '" + *w.tag + "'"});
        }
      } else if (w.tag) {
        out.push_back({g, "tag", where + ": tagged wire on non-partition gate"});
      }
    }
    auto sorted = gate.children;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      out.push_back({g, "duplicate-wire", where + " has a repeated (child, tag) wire"});

    if (is_leaf_label(gate.label) && !gate.children.empty())
      out.push_back({g, "arity", where + ": input/constant gate with children"});
    if (std::holds_alternative<label::Not>(gate.label) && gate.children.size() != 1)
      out.push_back({g, "arity", where + ": not gate needs exactly one child, has " +
                                     std::to_string(gate.children.size())});
    if (auto* in = std::get_if<label::Input>(&gate.label); in && in->var >= c.num_vars())
      out.push_back({g, "variable", where + ": variable " + std::to_string(in->var) + " outside space"});
    if (auto* k = std::get_if<label::Const>(&gate.label); k && k->value.field() != c.field)
      out.push_back({g, "field", where + ": constant over " + k->value.field().to_string()});
    if (parts) {
      if (parts->empty()) out.push_back({g, "arity", where + ": empty part map"});
      for (const auto& [tag, q] : *parts)
        if (q.field() != c.field) out.push_back({g, "field", where + ": part '" + tag + "' value over wrong field"});
    }
  }
  if (ranges_ok && !topological_order(c)) out.push_back({std::nullopt, "cycle", "wire graph is not acyclic"});
  return out;
}

struct SizeStats {
  std::size_t gates = 0;
  std::size_t wires = 0;
  std::map<std::string, std::size_t> per_kind;
  std::size_t depth = 0;
};

inline SizeStats size_stats(const Circuit& c) {
  SizeStats s;
  s.gates = c.gates.size();
  for (const auto& g : c.gates) {
    s.wires += g.children.size();
    ++s.per_kind[label_kind(g.label)];
  }
  auto order = topological_order(c);
  if (!order) throw InvalidArgument("size_stats: circuit is cyclic");
  std::vector<std::size_t> depth(c.gates.size(), 0);
  for (GateId g : *order) {
    for (const auto& w : c.gates[g].children) depth[g] = std::max(depth[g], depth[w.child] + 1);
    s.depth = std::max(s.depth, depth[g]);
  }
  return s;
}

/// Hash-consing builder for arithmetic circuits: structurally identical gates
/// (same label, same child set) are created once. Repeated operands of add/mul
/// are routed through fan-in-1 Add gates so that wires stay a set.
class CircuitBuilder {
 public:
  CircuitBuilder(Field field, VarSpace space) {
    circuit_.field = field;
    circuit_.space = space;
  }

  const Field& field() const { return circuit_.field; }

  GateId input(VarId var) { return intern(label::Input{var}, {}); }
  GateId constant(const FieldValue& v) { return intern(label::Const{v}, {}); }
  GateId constant(long long v) { return constant(FieldValue::from_int(circuit_.field, v)); }

  GateId add(const std::vector<GateId>& operands) { return intern(label::Add{}, distinct(operands)); }
  GateId mul(const std::vector<GateId>& operands) { return intern(label::Mul{}, distinct(operands)); }

  /// Fan-in-1 Add gate; evaluates to its child.
  GateId pass_through(GateId g) { return intern(label::Add{}, {Wire{g, std::nullopt}}); }

  GateId gate(GateLabel label, std::vector<Wire> wires) { return intern(std::move(label), std::move(wires)); }

  Circuit finish(GateId output) && {
    circuit_.output = output;
    return std::move(circuit_);
  }

 private:
  std::vector<Wire> distinct(const std::vector<GateId>& operands) {
    std::vector<GateId> used;
    std::vector<Wire> wires;
    for (GateId g : operands) {
      GateId h = g;
      while (std::find(used.begin(), used.end(), h) != used.end()) h = pass_through(h);
      used.push_back(h);
      wires.push_back(Wire{h, std::nullopt});
    }
    return wires;
  }

  GateId intern(GateLabel label, std::vector<Wire> wires) {
    std::sort(wires.begin(), wires.end());
    std::string key = label_key(label) + "|";
    for (const auto& w : wires) key += std::to_string(w.child) + (w.tag ? "#" + *w.tag : "") + ",";
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    GateId id = circuit_.add_gate(std::move(label), std::move(wires));
    index_.emplace(std::move(key), id);
    return id;
  }

  Circuit circuit_;
  std::map<std::string, GateId> index_;
};

}  // namespace symcirc
