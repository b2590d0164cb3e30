#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>
#include <tuple>
#include <vector>

#include "symcirc/circuit.hpp"
#include "symcirc/evaluate.hpp"
#include "symcirc/symmetry.hpp"

namespace symcirc {

// ---------------------------------------------------------------------------
// Value sets
// ---------------------------------------------------------------------------

enum class ValueSetMode { Exact, Compositional };

/// Possible values of every gate over 0-1 inputs. `exact` sets are the realized
/// values; compositional sets are supersets computed from the children only.
struct ValueSetMap {
  std::vector<std::set<FieldValue>> sets;
  bool exact = false;
};

inline constexpr std::size_t kDefaultMaxInputs = 20;
/// Largest compositional value set tolerated before giving up.
inline constexpr std::size_t kMaxValueSetSize = std::size_t{1} << 16;

inline BitAssignment bits_of(std::uint64_t mask, std::size_t n) {
  BitAssignment a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1;
  return a;
}

inline Assignment field_bits(const Field& f, const BitAssignment& bits) {
  Assignment a;
  a.reserve(bits.size());
  for (auto b : bits) a.push_back(b ? FieldValue::one(f) : FieldValue::zero(f));
  return a;
}

inline ValueSetMap value_sets(const Circuit& c, ValueSetMode mode, std::size_t max_inputs = kDefaultMaxInputs) {
  ValueSetMap out;
  out.sets.resize(c.gates.size());
  if (mode == ValueSetMode::Exact) {
    if (c.num_vars() > max_inputs || c.num_vars() >= 63)
      throw BudgetExceeded("exact value sets need " + std::to_string(c.num_vars()) + " inputs, budget is " +
                           std::to_string(max_inputs));
    out.exact = true;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << c.num_vars()); ++m) {
      auto vals = evaluate_arith_all(c, field_bits(c.field, bits_of(m, c.num_vars())));
      for (GateId g = 0; g < vals.size(); ++g) out.sets[g].insert(vals[g]);
    }
    return out;
  }
  auto order = topological_order(c);
  if (!order) throw InvalidArgument("circuit is cyclic");
  for (GateId g : *order) {
    const Gate& gate = c.gates[g];
    auto& s = out.sets[g];
    if (std::holds_alternative<label::Input>(gate.label)) {
      s = {FieldValue::zero(c.field), FieldValue::one(c.field)};
    } else if (auto* k = std::get_if<label::Const>(&gate.label)) {
      s = {k->value};
    } else if (std::holds_alternative<label::Add>(gate.label) || std::holds_alternative<label::Mul>(gate.label)) {
      bool add = std::holds_alternative<label::Add>(gate.label);
      s = {add ? FieldValue::zero(c.field) : FieldValue::one(c.field)};
      for (const auto& w : gate.children) {
        std::set<FieldValue> next;
        for (const auto& a : s)
          for (const auto& b : out.sets[w.child]) next.insert(add ? a + b : a * b);
        if (next.size() > kMaxValueSetSize)
          throw BudgetExceeded("value set of gate " + std::to_string(g) + " exceeds " +
                               std::to_string(kMaxValueSetSize) + " elements");
        s = std::move(next);
      }
    } else {
      throw InvalidArgument("value_sets: gate " + std::to_string(g) + " is not arithmetic");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partition basis
// ---------------------------------------------------------------------------

/// Boolean circuit over the partition basis. Gate (v,c) of `gate_of` is true
/// exactly when arithmetic gate v of the source evaluates to c.
struct PartitionCircuit {
  Circuit circuit;
  std::map<std::pair<GateId, FieldValue>, GateId> gate_of;
  std::vector<std::optional<std::pair<GateId, FieldValue>>> origin;  // inverse of gate_of
  std::optional<GateId> accept_gate;  // the final Or; absent for constant circuits
  bool constant = false;
};

inline std::string tag_of(const FieldValue& q) { return q.to_string(); }

inline Circuit constant_bool_circuit(const Field& f, std::size_t vars, bool value) {
  Circuit c;
  c.field = f;
  c.space = VarSpace::generic(vars);
  c.output = c.add_gate(label::Const{value ? FieldValue::one(f) : FieldValue::zero(f)});
  return c;
}

inline PartitionCircuit lower_to_partition_basis(const Circuit& phi, const std::set<FieldValue>& accept,
                                                  const ValueSetMap& vs) {
  if (vs.sets.size() != phi.gates.size()) throw InvalidArgument("value sets do not match the circuit");
  for (const auto& b : accept)
    if (b.field() != phi.field) throw FieldMismatch("accepting set over " + b.field().to_string());
  PartitionCircuit d;
  const auto& qz = vs.sets[phi.output];
  std::set<FieldValue> hit;
  std::set_intersection(qz.begin(), qz.end(), accept.begin(), accept.end(), std::inserter(hit, hit.begin()));
  if (hit.size() == qz.size() || hit.empty()) {
    d.circuit = constant_bool_circuit(phi.field, phi.num_vars(), !hit.empty());
    d.circuit.space = phi.space;
    d.origin.assign(1, std::nullopt);
    d.constant = true;
    return d;
  }
  Circuit& out = d.circuit;
  out.field = phi.field;
  out.space = phi.space;
  auto order = topological_order(phi);
  if (!order) throw InvalidArgument("circuit is cyclic");
  auto emit = [&](GateId v, const FieldValue& c, GateLabel l, std::vector<Wire> w) {
    GateId g = out.add_gate(std::move(l), std::move(w));
    d.gate_of.emplace(std::make_pair(v, c), g);
    d.origin.push_back(std::make_pair(v, c));
    return g;
  };
  const FieldValue one = FieldValue::one(phi.field), zero = FieldValue::zero(phi.field);
  for (GateId v : *order) {
    const Gate& gate = phi.gates[v];
    if (auto* in = std::get_if<label::Input>(&gate.label)) {
      GateId pos = emit(v, one, *in, {});
      emit(v, zero, label::Not{}, {Wire{pos, std::nullopt}});
    } else if (std::holds_alternative<label::Const>(gate.label)) {
      for (const auto& c : vs.sets[v]) emit(v, c, label::Const{one}, {});
    } else {
      std::map<std::string, FieldValue> parts;
      std::vector<Wire> wires;
      for (const auto& w : gate.children)
        for (const auto& q : vs.sets[w.child]) {
          parts.emplace(tag_of(q), q);
          wires.push_back(Wire{d.gate_of.at({w.child, q}), tag_of(q)});
        }
      bool sum = std::holds_alternative<label::Add>(gate.label);
      for (const auto& c : vs.sets[v]) {
        GateLabel l = sum ? GateLabel{label::PartitionSum{c, parts}} : GateLabel{label::PartitionProd{c, parts}};
        emit(v, c, std::move(l), wires);
      }
    }
  }
  std::vector<Wire> top;
  for (const auto& c : hit) top.push_back(Wire{d.gate_of.at({phi.output, c}), std::nullopt});
  d.accept_gate = out.add_gate(label::Or{}, std::move(top));
  d.origin.push_back(std::nullopt);
  out.output = *d.accept_gate;
  return d;
}

// ---------------------------------------------------------------------------
// Gadgets
// ---------------------------------------------------------------------------

/// A partition-symmetric Boolean function: parts listed in canonical
/// (ascending value) order, with the accepting count vectors.
struct GadgetSpec {
  std::vector<FieldValue> values;
  std::vector<std::string> tags;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::uint32_t>> accepting;

  std::size_t num_inputs() const {
    std::size_t n = 0;
    for (auto s : sizes) n += s;
    return n;
  }
  bool accepts(const std::vector<std::uint32_t>& counts) const {
    return std::binary_search(accepting.begin(), accepting.end(), counts);
  }
};

inline constexpr std::size_t kMaxCountVectors = 1'000'000;

/// Gadget spec of a partition gate with the given number of wires per tag.
inline GadgetSpec gadget_spec_for(const Field& f, const GateLabel& l, const std::map<std::string, std::size_t>& sizes) {
  const auto* parts = partition_parts(l);
  if (!parts) throw InvalidArgument("gadget_spec_for: not a partition label");
  GadgetSpec spec;
  std::vector<std::pair<FieldValue, std::string>> sorted;
  for (const auto& [tag, q] : *parts) sorted.emplace_back(q, tag);
  std::sort(sorted.begin(), sorted.end());
  std::size_t total = 1;
  for (const auto& [q, tag] : sorted) {
    spec.values.push_back(q);
    spec.tags.push_back(tag);
    auto it = sizes.find(tag);
    spec.sizes.push_back(it == sizes.end() ? 0 : it->second);
    total *= spec.sizes.back() + 1;
    if (total > kMaxCountVectors)
      throw BudgetExceeded("partition gate has more than " + std::to_string(kMaxCountVectors) + " count vectors");
  }
  bool sum = std::holds_alternative<label::PartitionSum>(l);
  const FieldValue& target = sum ? std::get<label::PartitionSum>(l).c : std::get<label::PartitionProd>(l).c;
  std::vector<std::uint32_t> h(spec.sizes.size(), 0);
  // Count vectors in lexicographic order, so `accepting` ends up sorted.
  while (true) {
    FieldValue acc = sum ? FieldValue::zero(f) : FieldValue::one(f);
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (sum) acc += spec.values[i] * FieldValue::from_int(f, static_cast<long long>(h[i]));
      else acc *= spec.values[i].pow(h[i]);
    }
    if (acc == target) spec.accepting.push_back(h);
    std::size_t i = h.size();
    while (i > 0 && h[i - 1] == spec.sizes[i - 1]) h[--i] = 0;
    if (i == 0) break;
    ++h[i - 1];
  }
  return spec;
}

enum class GadgetRole { Tower, Threshold, Conjunction, Output };

/// Identifies a gadget gate: the partition gate it replaces, its role, the
/// accepting vector and part indices, the source child (towers) and level.
struct GadgetKey {
  GateId owner;
  GadgetRole role;
  std::uint32_t vector_index = 0;
  std::uint32_t part_index = 0;
  GateId source = 0;
  std::uint32_t level = 0;
  friend auto operator<=>(const GadgetKey&, const GadgetKey&) = default;
};

namespace detail {

// Emits the gadget for `spec` into `target`. inputs[i] lists (source id, gate)
// pairs of part i; keys are reported through `record`.
template <typename Record>
GateId emit_gadget(Circuit& target, const GadgetSpec& spec, GateId owner,
                   const std::vector<std::vector<std::pair<GateId, GateId>>>& inputs, Record&& record) {
  std::vector<std::vector<GateId>> tops(spec.sizes.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (const auto& [src, gate] : inputs[i]) {
      GateId cur = gate;
      for (std::uint32_t lvl = 1; lvl <= i + 1; ++lvl) {
        cur = target.add_gate(label::And{}, {Wire{cur, std::nullopt}});
        record(cur, GadgetKey{owner, GadgetRole::Tower, 0, static_cast<std::uint32_t>(i), src, lvl});
      }
      tops[i].push_back(cur);
    }
  }
  std::vector<Wire> disjuncts;
  for (std::size_t ci = 0; ci < spec.accepting.size(); ++ci) {
    std::vector<Wire> conj;
    for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
      std::vector<Wire> w;
      for (GateId t : tops[i]) w.push_back(Wire{t, std::nullopt});
      GateId th = target.add_gate(label::ThresholdEQ{spec.accepting[ci][i]}, std::move(w));
      record(th, GadgetKey{owner, GadgetRole::Threshold, static_cast<std::uint32_t>(ci), static_cast<std::uint32_t>(i)});
      conj.push_back(Wire{th, std::nullopt});
    }
    GateId a = target.add_gate(label::And{}, std::move(conj));
    record(a, GadgetKey{owner, GadgetRole::Conjunction, static_cast<std::uint32_t>(ci)});
    disjuncts.push_back(Wire{a, std::nullopt});
  }
  GateId o = target.add_gate(label::Or{}, std::move(disjuncts));
  record(o, GadgetKey{owner, GadgetRole::Output});
  return o;
}

}  // namespace detail

/// Threshold circuit computing the partition function of `spec`. Inputs are
/// numbered part by part in canonical order.
inline Circuit gadget_for_partition_function(const GadgetSpec& spec, const Field& field = Field::rationals()) {
  Circuit c;
  c.field = field;
  c.space = VarSpace::generic(spec.num_inputs());
  std::vector<std::vector<std::pair<GateId, GateId>>> inputs(spec.sizes.size());
  VarId v = 0;
  for (std::size_t i = 0; i < spec.sizes.size(); ++i)
    for (std::size_t a = 0; a < spec.sizes[i]; ++a, ++v) inputs[i].emplace_back(v, c.add_gate(label::Input{v}));
  c.output = detail::emit_gadget(c, spec, 0, inputs, [](GateId, const GadgetKey&) {});
  return c;
}

/// Threshold circuit with every partition gate of D replaced by its gadget.
struct ThresholdCircuit {
  Circuit circuit;
  std::vector<GateId> image;                       // D gate -> C gate computing it
  std::vector<std::optional<GateId>> copy_of;      // C gate -> D gate it copies
  std::vector<std::optional<GadgetKey>> key_of;    // C gate -> gadget key
  std::map<GadgetKey, GateId> gadget_gate;
};

inline ThresholdCircuit expand_to_threshold(const PartitionCircuit& d) {
  const Circuit& src = d.circuit;
  ThresholdCircuit t;
  Circuit& out = t.circuit;
  out.field = src.field;
  out.space = src.space;
  auto order = topological_order(src);
  if (!order) throw InvalidArgument("circuit is cyclic");
  t.image.assign(src.gates.size(), 0);
  auto note = [&](GateId g, std::optional<GateId> copy, std::optional<GadgetKey> key) {
    t.copy_of.resize(g + 1);
    t.key_of.resize(g + 1);
    t.copy_of[g] = copy;
    t.key_of[g] = key;
    if (key) t.gadget_gate.emplace(*key, g);
  };
  for (GateId g : *order) {
    const Gate& gate = src.gates[g];
    if (!is_partition_label(gate.label)) {
      std::vector<Wire> w;
      for (const auto& x : gate.children) w.push_back(Wire{t.image[x.child], std::nullopt});
      GateId n = out.add_gate(gate.label, std::move(w));
      note(n, g, std::nullopt);
      t.image[g] = n;
      continue;
    }
    std::map<std::string, std::size_t> sizes;
    for (const auto& w : gate.children) ++sizes[w.tag.value_or("")];
    GadgetSpec spec = gadget_spec_for(src.field, gate.label, sizes);
    std::vector<std::vector<std::pair<GateId, GateId>>> inputs(spec.sizes.size());
    for (const auto& w : gate.children) {
      auto i = std::find(spec.tags.begin(), spec.tags.end(), w.tag.value_or("")) - spec.tags.begin();
      inputs[i].emplace_back(w.child, t.image[w.child]);
    }
    t.image[g] = detail::emit_gadget(out, spec, g, inputs,
                                     [&](GateId n, const GadgetKey& k) { note(n, std::nullopt, k); });
  }
  out.output = t.image[src.output];
  return t;
}

/// Replaces every ThresholdEQ(k) by And{ThresholdGE(k), Not{ThresholdGE(k+1)}}.
inline Circuit desugar_threshold_eq(const Circuit& c) {
  auto order = topological_order(c);
  if (!order) throw InvalidArgument("circuit is cyclic");
  Circuit out;
  out.field = c.field;
  out.space = c.space;
  std::vector<GateId> image(c.gates.size());
  for (GateId g : *order) {
    std::vector<Wire> w;
    for (const auto& x : c.gates[g].children) w.push_back(Wire{image[x.child], x.tag});
    if (auto* eq = std::get_if<label::ThresholdEQ>(&c.gates[g].label)) {
      GateId ge = out.add_gate(label::ThresholdGE{eq->k}, w);
      GateId gt = out.add_gate(label::ThresholdGE{eq->k + 1}, std::move(w));
      GateId ngt = out.add_gate(label::Not{}, {Wire{gt, std::nullopt}});
      image[g] = out.add_gate(label::And{}, {Wire{ge, std::nullopt}, Wire{ngt, std::nullopt}});
    } else {
      image[g] = out.add_gate(c.gates[g].label, std::move(w));
    }
  }
  out.output = image[c.output];
  return out;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct LoweringVerdict {
  bool ok = true;
  std::optional<BitAssignment> counterexample;
  std::uint64_t assignments = 0;
};

/// Exhaustive 0-1 check that C accepts M exactly when Phi[M] is in B. With
/// jobs > 1 the assignment space is split into contiguous blocks.
inline LoweringVerdict verify_lowering_report(const Circuit& phi, const std::set<FieldValue>& accept, const Circuit& c,
                                              std::size_t max_inputs = kDefaultMaxInputs, unsigned jobs = 1) {
  const std::size_t n = phi.num_vars();
  if (n > max_inputs || n >= 63)
    throw BudgetExceeded(std::to_string(n) + " inputs exceed the budget of " + std::to_string(max_inputs));
  if (c.num_vars() != n) throw InvalidArgument("circuits have different variable counts");
  const std::uint64_t total = std::uint64_t{1} << n;
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(total, 256))));
  std::vector<std::optional<std::uint64_t>> first_bad(jobs);
  std::atomic<bool> stop{false};
  auto work = [&](unsigned j) {
    std::uint64_t lo = total * j / jobs, hi = total * (j + 1) / jobs;
    for (std::uint64_t m = lo; m < hi && !stop; ++m) {
      auto bits = bits_of(m, n);
      bool want = accept.count(evaluate_arith(phi, field_bits(phi.field, bits))) > 0;
      if (evaluate_bool(c, bits) != want) {
        first_bad[j] = m;
        stop = true;
        return;
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
    for (auto& th : pool) th.join();
  }
  LoweringVerdict v;
  v.assignments = total;
  for (const auto& b : first_bad)
    if (b) {
      v.ok = false;
      v.counterexample = bits_of(*b, n);
      break;
    }
  return v;
}

inline bool verify_lowering(const Circuit& phi, const std::set<FieldValue>& accept, const Circuit& c,
                            std::size_t max_inputs = kDefaultMaxInputs) {
  return verify_lowering_report(phi, accept, c, max_inputs).ok;
}

// ---------------------------------------------------------------------------
// Witness lifting
// ---------------------------------------------------------------------------

/// pi'(v,c) = (pi(v),c); the accepting Or gate is fixed.
inline PermutationWitness lift_to_partition(const PartitionCircuit& d, const PermutationWitness& w) {
  PermutationWitness out{w.sigma, std::vector<GateId>(d.circuit.gates.size())};
  for (GateId g = 0; g < d.circuit.gates.size(); ++g) {
    if (!d.origin[g]) {
      out.pi[g] = g;
      continue;
    }
    auto [v, c] = *d.origin[g];
    out.pi[g] = d.gate_of.at({w.pi.at(v), c});
  }
  return out;
}

inline PermutationWitness lift_to_threshold(const ThresholdCircuit& t, const PermutationWitness& wd) {
  PermutationWitness out{wd.sigma, std::vector<GateId>(t.circuit.gates.size())};
  for (GateId g = 0; g < t.circuit.gates.size(); ++g) {
    if (t.copy_of[g]) {
      out.pi[g] = t.image[wd.pi[*t.copy_of[g]]];
    } else {
      GadgetKey k = *t.key_of[g];
      k.owner = wd.pi[k.owner];
      if (k.role == GadgetRole::Tower) k.source = wd.pi[k.source];
      out.pi[g] = t.gadget_gate.at(k);
    }
  }
  return out;
}

struct OrbitPreservationReport {
  std::size_t orb_phi = 0, orb_d = 0, orb_c = 0;
  bool witnesses_verified = false;
  bool equal = false;
};

/// Lifts the witnesses of Phi to D and C, verifies them and compares the
/// largest orbit sizes of the three generated groups.
inline OrbitPreservationReport orbit_preservation_check(const Circuit& phi, const std::vector<PermutationWitness>& ws,
                                                        const PartitionCircuit& d, const ThresholdCircuit& t) {
  OrbitPreservationReport r;
  std::vector<PermutationWitness> wd, wc;
  for (const auto& w : ws) {
    if (auto why = automorphism_violation(phi, w)) throw InvalidArgument("source witness invalid: " + *why);
    if (d.constant) {
      wd.push_back({w.sigma, identity_permutation(d.circuit.gates.size())});
    } else {
      wd.push_back(lift_to_partition(d, w));
    }
    wc.push_back(lift_to_threshold(t, wd.back()));
    if (auto why = automorphism_violation(d.circuit, wd.back())) throw InvalidArgument("lifted witness invalid on D: " + *why);
    if (auto why = automorphism_violation(t.circuit, wc.back())) throw InvalidArgument("lifted witness invalid on C: " + *why);
  }
  r.witnesses_verified = true;
  r.orb_phi = orbits(phi, ws).max_orbit_size;
  r.orb_d = orbits(d.circuit, wd).max_orbit_size;
  r.orb_c = orbits(t.circuit, wc).max_orbit_size;
  r.equal = r.orb_phi == r.orb_d && r.orb_d == r.orb_c;
  return r;
}

/// The whole pass: value sets, partition basis, threshold expansion.
struct Lowering {
  ValueSetMap value_sets;
  PartitionCircuit partition;
  ThresholdCircuit threshold;
};

inline Lowering lower(const Circuit& phi, const std::set<FieldValue>& accept,
                      ValueSetMode mode = ValueSetMode::Compositional, std::size_t max_inputs = kDefaultMaxInputs) {
  Lowering l;
  l.value_sets = value_sets(phi, mode, max_inputs);
  l.partition = lower_to_partition_basis(phi, accept, l.value_sets);
  l.threshold = expand_to_threshold(l.partition);
  return l;
}

}  // namespace symcirc
