#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "symcirc/circuit.hpp"

namespace symcirc {

/// Arithmetic assignment indexed by variable id.
using Assignment = std::vector<FieldValue>;
/// Boolean assignment indexed by variable id; entries are 0 or 1.
using BitAssignment = std::vector<std::uint8_t>;

namespace detail {

inline const std::vector<GateId>& checked_order(const Circuit& c, std::vector<GateId>& storage) {
  auto order = topological_order(c);
  if (!order) throw InvalidArgument("circuit is cyclic");
  storage = std::move(*order);
  return storage;
}

}  // namespace detail

/// Values of every gate. Empty Add is 0, empty Mul is 1.
inline std::vector<FieldValue> evaluate_arith_all(const Circuit& c, const Assignment& a) {
  if (a.size() < c.num_vars())
    throw MissingVariable("assignment covers " + std::to_string(a.size()) + " of " +
                          std::to_string(c.num_vars()) + " variables");
  for (const auto& v : a)
    if (v.field() != c.field)
      throw FieldMismatch("assignment over " + v.field().to_string() + ", circuit over " +
                          c.field.to_string());
  std::vector<GateId> storage;
  const auto& order = detail::checked_order(c, storage);
  std::vector<FieldValue> val(c.gates.size());
  for (GateId g : order) {
    const Gate& gate = c.gates[g];
    std::visit(
        [&](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, label::Input>) {
            val[g] = a.at(l.var);
          } else if constexpr (std::is_same_v<T, label::Const>) {
            val[g] = l.value;
          } else if constexpr (std::is_same_v<T, label::Add>) {
            FieldValue s = FieldValue::zero(c.field);
            for (const auto& w : gate.children) s += val[w.child];
            val[g] = s;
          } else if constexpr (std::is_same_v<T, label::Mul>) {
            FieldValue p = FieldValue::one(c.field);
            for (const auto& w : gate.children) p *= val[w.child];
            val[g] = p;
          } else {
            throw InvalidArgument("evaluate_arith: gate " + std::to_string(g) + " has Boolean label " +
                                  label_kind(gate.label));
          }
        },
        gate.label);
  }
  return val;
}

inline FieldValue evaluate_arith(const Circuit& c, const Assignment& a) {
  return evaluate_arith_all(c, a)[c.output];
}

namespace detail {

inline bool partition_gate_value(const Circuit& c, const Gate& gate, const std::vector<std::uint8_t>& val,
                                 GateId g) {
  const auto* parts = partition_parts(gate.label);
  std::map<std::string, std::uint64_t> ones;
  for (const auto& w : gate.children) {
    if (!w.tag) throw InvalidArgument("gate " + std::to_string(g) + ": partition wire without tag");
    auto it = parts->find(*w.tag);
    if (it == parts->end()) throw InvalidArgument("gate " + std::to_string(g) + ": unknown tag " + *w.tag);
    if (val[w.child]) ++ones[*w.tag];
  }
  if (auto* s = std::get_if<label::PartitionSum>(&gate.label)) {
    FieldValue sum = FieldValue::zero(c.field);
    for (const auto& [tag, count] : ones)
      sum += parts->at(tag) * FieldValue::from_int(c.field, static_cast<long long>(count));
    return sum == s->c;
  }
  const auto& prod_label = std::get<label::PartitionProd>(gate.label);
  FieldValue prod = FieldValue::one(c.field);
  for (const auto& [tag, count] : ones) prod *= parts->at(tag).pow(count);
  return prod == prod_label.c;
}

}  // namespace detail

/// Values of every gate of a Boolean circuit. Constants must be 0 or 1.
inline std::vector<std::uint8_t> evaluate_bool_all(const Circuit& c, const BitAssignment& a) {
  if (a.size() < c.num_vars())
    throw MissingVariable("assignment covers " + std::to_string(a.size()) + " of " +
                          std::to_string(c.num_vars()) + " variables");
  std::vector<GateId> storage;
  const auto& order = detail::checked_order(c, storage);
  std::vector<std::uint8_t> val(c.gates.size(), 0);
  for (GateId g : order) {
    const Gate& gate = c.gates[g];
    auto ones = [&] {
      std::uint32_t n = 0;
      for (const auto& w : gate.children) n += val[w.child];
      return n;
    };
    std::visit(
        [&](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, label::Input>) {
            val[g] = a.at(l.var) ? 1 : 0;
          } else if constexpr (std::is_same_v<T, label::Const>) {
            if (l.value.is_zero()) {
              val[g] = 0;
            } else if (l.value.is_one()) {
              val[g] = 1;
            } else {
              throw InvalidArgument("evaluate_bool: non-Boolean constant " + l.value.to_string());
            }
          } else if constexpr (std::is_same_v<T, label::And>) {
            val[g] = ones() == gate.children.size();
          } else if constexpr (std::is_same_v<T, label::Or>) {
            val[g] = ones() > 0;
          } else if constexpr (std::is_same_v<T, label::Not>) {
            val[g] = gate.children.size() == 1 && !val[gate.children[0].child];
          } else if constexpr (std::is_same_v<T, label::ThresholdGE>) {
            val[g] = ones() >= l.k;
          } else if constexpr (std::is_same_v<T, label::ThresholdEQ>) {
            val[g] = ones() == l.k;
          } else if constexpr (std::is_same_v<T, label::PartitionSum> ||
                               std::is_same_v<T, label::PartitionProd>) {
            val[g] = detail::partition_gate_value(c, gate, val, g);
          } else {
            throw InvalidArgument("evaluate_bool: gate " + std::to_string(g) + " has arithmetic label " +
                                  label_kind(gate.label));
          }
        },
        gate.label);
  }
  return val;
}

inline bool evaluate_bool(const Circuit& c, const BitAssignment& a) {
  return evaluate_bool_all(c, a)[c.output] != 0;
}

/// Integers in [-10^6, 10^6] over Q, uniform elements over F_p.
inline Assignment random_assignment(const Field& field, std::size_t vars, std::mt19937_64& rng) {
  Assignment a;
  a.reserve(vars);
  for (std::size_t i = 0; i < vars; ++i) {
    if (field.is_rational()) {
      std::uniform_int_distribution<long long> d(-1'000'000, 1'000'000);
      a.push_back(FieldValue::from_int(field, d(rng)));
    } else {
      std::uniform_int_distribution<std::uint64_t> d(0, field.characteristic() - 1);
      a.push_back(FieldValue::from_int(field, BigInt(d(rng))));
    }
  }
  return a;
}

struct RandomEvalVerdict {
  bool consistent = true;
  std::optional<Assignment> counterexample;
  std::size_t trials_run = 0;
};

/// Probabilistic identity test: evaluates both circuits on `trials` random
/// assignments and reports the first disagreement.
inline RandomEvalVerdict compare_by_random_eval(const Circuit& c1, const Circuit& c2, std::size_t trials,
                                                std::uint64_t seed) {
  if (c1.field != c2.field) throw FieldMismatch("circuits over different fields");
  if (c1.num_vars() != c2.num_vars()) throw InvalidArgument("circuits over different variable spaces");
  std::mt19937_64 rng(seed);
  RandomEvalVerdict v;
  for (std::size_t t = 0; t < trials; ++t) {
    auto a = random_assignment(c1.field, c1.num_vars(), rng);
    ++v.trials_run;
    if (evaluate_arith(c1, a) != evaluate_arith(c2, a)) {
      v.consistent = false;
      v.counterexample = std::move(a);
      break;
    }
  }
  return v;
}

}  // namespace symcirc
