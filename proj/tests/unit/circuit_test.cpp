#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "symcirc/evaluate.hpp"
#include "symcirc/generators.hpp"

using namespace symcirc;

namespace {

const Field Q = Field::rationals();

FieldValue v(long long x, const Field& f = Q) { return FieldValue::from_int(f, x); }

bool has_kind(const std::vector<Diagnostic>& d, const std::string& kind) {
  return std::any_of(d.begin(), d.end(), [&](const Diagnostic& x) { return x.kind == kind; });
}

Circuit binary(const GateLabel& op, const Field& f = Q) {
  CircuitBuilder b(f, VarSpace::generic(2));
  GateId x = b.input(0), y = b.input(1);
  GateId out = b.gate(op, {Wire{x, std::nullopt}, Wire{y, std::nullopt}});
  return std::move(b).finish(out);
}

// Tagged-input Boolean circuit with one gate over `n` inputs.
Circuit boolean_gate(const GateLabel& l, std::size_t n, const std::string& tag = "") {
  Circuit c;
  c.field = Q;
  c.space = VarSpace::generic(n);
  std::vector<Wire> w;
  for (VarId i = 0; i < n; ++i)
    w.push_back(Wire{c.add_gate(label::Input{i}), tag.empty() ? std::nullopt : std::optional<std::string>(tag)});
  c.output = c.add_gate(l, w);
  return c;
}

}  // namespace

TEST(Validate, SingleConstantIsValid) {
  Circuit c;
  c.field = Q;
  c.output = c.add_gate(label::Const{v(1)});
  EXPECT_TRUE(validate(c).empty());
}

TEST(Validate, SelfLoopIsACycle) {
  Circuit c;
  c.field = Q;
  c.output = c.add_gate(label::Add{});
  c.gates[0].children.push_back(Wire{0, std::nullopt});
  auto d = validate(c);
  ASSERT_TRUE(has_kind(d, "cycle"));
  EXPECT_EQ(d.front().gate, std::optional<GateId>(0));
}

TEST(Validate, LongerCycleIsReported) {
  Circuit c;
  c.field = Q;
  c.add_gate(label::Add{}, {Wire{1, std::nullopt}});
  c.output = c.add_gate(label::Add{}, {Wire{0, std::nullopt}});
  EXPECT_TRUE(has_kind(validate(c), "cycle"));
}

TEST(Validate, NotWithTwoChildrenIsAnArityError) {
  Circuit c;
  c.field = Q;
  c.space = VarSpace::generic(2);
  GateId a = c.add_gate(label::Input{0}), b = c.add_gate(label::Input{1});
  c.output = c.add_gate(label::Not{}, {Wire{a, std::nullopt}, Wire{b, std::nullopt}});
  auto d = validate(c);
  ASSERT_TRUE(has_kind(d, "arity"));
  EXPECT_EQ(d.front().gate, std::optional<GateId>(c.output));
}

TEST(Validate, TagRules) {
  Circuit c = boolean_gate(label::PartitionSum{v(1), {{"a", v(1)}}}, 2);
  EXPECT_TRUE(has_kind(validate(c), "tag"));  // untagged partition wire
  c = boolean_gate(label::PartitionSum{v(1), {{"a", v(1)}}}, 2, "b");
  EXPECT_TRUE(has_kind(validate(c), "tag"));  // unknown tag
  c = boolean_gate(label::And{}, 2, "a");
  EXPECT_TRUE(has_kind(validate(c), "tag"));  // tag on non-partition gate
  c = boolean_gate(label::PartitionSum{v(1), {{"a", v(1)}}}, 2, "a");
  EXPECT_TRUE(validate(c).empty());
}

TEST(Validate, DuplicateWireAndMissingOutput) {
  Circuit c;
  c.field = Q;
  c.space = VarSpace::generic(1);
  GateId x = c.add_gate(label::Input{0});
  c.output = c.add_gate(label::Add{}, {Wire{x, std::nullopt}, Wire{x, std::nullopt}});
  EXPECT_TRUE(has_kind(validate(c), "duplicate-wire"));
  c.output = 17;
  EXPECT_TRUE(has_kind(validate(c), "output"));
}

TEST(Validate, VariableOutsideSpaceAndForeignConstant) {
  Circuit c;
  c.field = Q;
  c.space = VarSpace::generic(1);
  c.add_gate(label::Input{3});
  c.output = c.add_gate(label::Const{v(1, Field::prime(5))});
  auto d = validate(c);
  EXPECT_TRUE(has_kind(d, "variable"));
  EXPECT_TRUE(has_kind(d, "field"));
}

TEST(EvaluateArith, SpecExamples) {
  EXPECT_EQ(evaluate_arith(binary(label::Mul{}), {v(3), v(4)}), v(12));
  Field f5 = Field::prime(5);
  EXPECT_EQ(evaluate_arith(binary(label::Add{}, f5), {v(3, f5), v(4, f5)}), v(2, f5));
  auto det2 = leverrier_det_circuit(2, Q);
  EXPECT_EQ(evaluate_arith(det2.circuit, matrix_assignment(matrix_from_ints(Q, {{1, 2}, {3, 4}}))), v(-2));
}

TEST(EvaluateArith, EmptyGatesAreIdentities) {
  Circuit c;
  c.field = Q;
  c.output = c.add_gate(label::Add{});
  EXPECT_EQ(evaluate_arith(c, {}), v(0));
  c.gates[0].label = label::Mul{};
  EXPECT_EQ(evaluate_arith(c, {}), v(1));
}

TEST(EvaluateArith, Errors) {
  Circuit c = binary(label::Add{});
  EXPECT_THROW(evaluate_arith(c, {v(1)}), MissingVariable);
  EXPECT_THROW(evaluate_arith(c, {v(1), v(1, Field::prime(3))}), FieldMismatch);
  Circuit b = boolean_gate(label::And{}, 2);
  EXPECT_THROW(evaluate_arith(b, {v(1), v(1)}), InvalidArgument);
}

TEST(EvaluateArith, AgreesWithNaiveRecursiveEvaluator) {
  // Random DAGs over Q, evaluated by memo-free recursion as the reference.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Circuit c;
    c.field = Q;
    c.space = VarSpace::generic(3);
    for (VarId i = 0; i < 3; ++i) c.add_gate(label::Input{i});
    c.add_gate(label::Const{FieldValue::from_rational(Q, Rational(-3, 2))});
    for (int g = 0; g < 12; ++g) {
      std::set<GateId> kids;
      std::uniform_int_distribution<GateId> pick(0, static_cast<GateId>(c.gates.size() - 1));
      for (int k = 0; k < 3; ++k) kids.insert(pick(rng));
      std::vector<Wire> w;
      for (auto k : kids) w.push_back(Wire{k, std::nullopt});
      c.add_gate(rng() % 2 ? GateLabel{label::Add{}} : GateLabel{label::Mul{}}, w);
    }
    c.output = static_cast<GateId>(c.gates.size() - 1);
    Assignment a{v(static_cast<long long>(rng() % 7) - 3), v(2), FieldValue::from_rational(Q, Rational(1, 3))};
    std::function<FieldValue(GateId)> rec = [&](GateId g) -> FieldValue {
      const auto& gate = c.gates[g];
      if (auto* in = std::get_if<label::Input>(&gate.label)) return a[in->var];
      if (auto* k = std::get_if<label::Const>(&gate.label)) return k->value;
      bool add = std::holds_alternative<label::Add>(gate.label);
      FieldValue acc = add ? v(0) : v(1);
      for (const auto& w : gate.children) acc = add ? acc + rec(w.child) : acc * rec(w.child);
      return acc;
    };
    EXPECT_EQ(evaluate_arith(c, a), rec(c.output));
    EXPECT_EQ(evaluate_arith(c, a), evaluate_arith(c, a));
  }
}

TEST(EvaluateBool, ThresholdAndPartitionExamples) {
  EXPECT_TRUE(evaluate_bool(boolean_gate(label::ThresholdGE{2}, 3), {1, 1, 0}));
  auto ps = boolean_gate(label::PartitionSum{v(2), {{"t1", v(1)}}}, 3, "t1");
  EXPECT_TRUE(evaluate_bool(ps, {1, 1, 0}));
  EXPECT_FALSE(evaluate_bool(ps, {1, 0, 0}));
  auto pp = boolean_gate(label::PartitionProd{v(1), {{"t1", v(-1)}}}, 2, "t1");
  EXPECT_TRUE(evaluate_bool(pp, {1, 1}));
  EXPECT_FALSE(evaluate_bool(pp, {1, 0}));
  auto eq = boolean_gate(label::ThresholdEQ{2}, 3);
  EXPECT_TRUE(evaluate_bool(eq, {0, 1, 1}));
  EXPECT_FALSE(evaluate_bool(eq, {1, 1, 1}));
}

TEST(EvaluateBool, BasicGatesOnAllInputs) {
  for (unsigned m = 0; m < 8; ++m) {
    BitAssignment a{static_cast<std::uint8_t>(m & 1), static_cast<std::uint8_t>(m >> 1 & 1),
                    static_cast<std::uint8_t>(m >> 2 & 1)};
    int ones = a[0] + a[1] + a[2];
    EXPECT_EQ(evaluate_bool(boolean_gate(label::And{}, 3), a), ones == 3);
    EXPECT_EQ(evaluate_bool(boolean_gate(label::Or{}, 3), a), ones > 0);
    EXPECT_EQ(evaluate_bool(boolean_gate(label::ThresholdGE{0}, 3), a), true);
  }
  EXPECT_TRUE(evaluate_bool(boolean_gate(label::Not{}, 1), {0}));
  EXPECT_FALSE(evaluate_bool(boolean_gate(label::Not{}, 1), {1}));
}

TEST(EvaluateBool, MissingTagThrows) {
  auto c = boolean_gate(label::PartitionSum{v(1), {{"a", v(1)}}}, 2);
  EXPECT_THROW(evaluate_bool(c, {1, 0}), InvalidArgument);
}

TEST(CompareByRandomEval, SpecExamples) {
  auto r2 = ryser_perm_circuit(2, Q);
  EXPECT_TRUE(compare_by_random_eval(r2.circuit, r2.circuit, 20, 1).consistent);

  // Hand expansion of the 2x2 permanent.
  CircuitBuilder b(Q, VarSpace::matrix(2, 2));
  auto x = [&](int i, int j) { return b.input(VarSpace::matrix(2, 2).entry(i, j)); };
  GateId p = b.add({b.mul({x(1, 1), x(2, 2)}), b.mul({x(1, 2), x(2, 1)})});
  Circuit leibniz = std::move(b).finish(p);
  EXPECT_TRUE(compare_by_random_eval(r2.circuit, leibniz, 50, 2).consistent);

  auto verdict = compare_by_random_eval(binary(label::Add{}), binary(label::Mul{}), 10, 3);
  EXPECT_FALSE(verdict.consistent);
  ASSERT_TRUE(verdict.counterexample);
  EXPECT_LE(verdict.trials_run, 3u);
}

TEST(CompareByRandomEval, RejectsFieldMismatch) {
  EXPECT_THROW(compare_by_random_eval(binary(label::Add{}), binary(label::Add{}, Field::prime(3)), 1, 0),
               FieldMismatch);
}

TEST(SizeStats, Examples) {
  Circuit c;
  c.field = Q;
  c.output = c.add_gate(label::Const{v(1)});
  auto s = size_stats(c);
  EXPECT_EQ(s.gates, 1u);
  EXPECT_EQ(s.wires, 0u);
  EXPECT_EQ(s.depth, 0u);

  auto l3 = size_stats(leverrier_det_circuit(3, Q).circuit);
  EXPECT_LE(l3.gates, 270u);
  EXPECT_GE(l3.gates, 27u);

  // Ryser: 2^n subsets, each with n row sums plus product and signed term.
  for (int n = 1; n <= 5; ++n) {
    auto rs = size_stats(ryser_perm_circuit(n, Q).circuit);
    EXPECT_LE(rs.gates, static_cast<std::size_t>(2 * (1 << n) * n * n + 8)) << "n=" << n;
  }
}

TEST(CircuitBuilder, HashConsesAndSeparatesRepeatedOperands) {
  CircuitBuilder b(Q, VarSpace::generic(2));
  GateId x = b.input(0), y = b.input(1);
  EXPECT_EQ(b.input(0), x);
  EXPECT_EQ(b.add({x, y}), b.add({y, x}));
  GateId sq = b.mul({x, x});
  Circuit c = std::move(b).finish(sq);
  EXPECT_TRUE(validate(c).empty());
  EXPECT_EQ(c.gates[sq].children.size(), 2u);
  EXPECT_EQ(evaluate_arith(c, {v(5), v(0)}), v(25));
  CircuitBuilder b3(Q, VarSpace::generic(1));
  GateId z = b3.input(0);
  GateId cube = b3.mul({z, z, z});
  Circuit c3 = std::move(b3).finish(cube);
  EXPECT_TRUE(validate(c3).empty());
  EXPECT_EQ(evaluate_arith(c3, {v(-2)}), v(-8));
}

TEST(TopologicalOrder, ChildrenComeFirst) {
  auto c = leverrier_det_circuit(3, Q).circuit;
  auto order = topological_order(c);
  ASSERT_TRUE(order);
  std::vector<std::size_t> pos(c.gates.size());
  for (std::size_t i = 0; i < order->size(); ++i) pos[(*order)[i]] = i;
  for (GateId g = 0; g < c.gates.size(); ++g)
    for (const auto& w : c.gates[g].children) EXPECT_LT(pos[w.child], pos[g]);
}
