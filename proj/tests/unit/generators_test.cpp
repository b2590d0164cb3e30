#include <gtest/gtest.h>

#include <random>

#include "named_witness.hpp"
#include "symcirc/generators.hpp"

using namespace symcirc;
using namespace symcirc::testing;

namespace {

const Field Q = Field::rationals();

FieldValue z(long long v) { return FieldValue::from_int(Q, v); }

VarPermutation action(std::size_t n, const IndexMap& rows, const IndexMap& cols, bool transpose) {
  auto sp = VarSpace::matrix(n, n);
  VarPermutation sigma(n * n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      std::size_t a = rows(static_cast<int>(i)), b = cols(static_cast<int>(j));
      if (transpose) std::swap(a, b);
      sigma[sp.entry(i, j)] = sp.entry(a, b);
    }
  return sigma;
}

}  // namespace

TEST(LeVerrier, SmallExamples) {
  auto d2 = leverrier_det_circuit(2, Q).circuit;
  EXPECT_EQ(evaluate_arith(d2, matrix_assignment(matrix_from_ints(Q, {{1, 2}, {3, 4}}))), z(-2));
  auto d3 = leverrier_det_circuit(3, Q).circuit;
  EXPECT_EQ(evaluate_arith(d3, matrix_assignment(matrix_from_ints(Q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}))), z(1));
  auto d1 = leverrier_det_circuit(1, Q).circuit;
  EXPECT_EQ(evaluate_arith(d1, {z(-7)}), z(-7));
}

TEST(LeVerrier, MatchesLeibnizOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 5; ++n) {
    auto c = leverrier_det_circuit(n, Q).circuit;
    for (int t = 0; t < (n <= 4 ? 100 : 20); ++t) {
      auto m = random_int_matrix(Q, n, -9, 9, rng);
      ASSERT_EQ(evaluate_arith(c, matrix_assignment(m)), det_oracle(m)) << "n=" << n;
    }
  }
}

TEST(LeVerrier, RationalEntriesAgreeWithElimination) {
  std::mt19937_64 rng(12);
  auto c = leverrier_det_circuit(4, Q).circuit;
  for (int t = 0; t < 20; ++t) {
    Matrix m(4);
    for (auto& row : m)
      for (int j = 0; j < 4; ++j)
        row.push_back(FieldValue::from_rational(Q, make_rational(static_cast<long long>(rng() % 11) - 5,
                                                                 static_cast<long long>(rng() % 4) + 1)));
    EXPECT_EQ(evaluate_arith(c, matrix_assignment(m)), det_elimination(m));
  }
}

TEST(LeVerrier, ExperimentalPrimeField) {
  Field f7 = Field::prime(7);
  EXPECT_THROW(leverrier_det_circuit(3, f7), InvalidArgument);
  EXPECT_THROW(leverrier_det_circuit(7, f7, true), InvalidArgument);
  auto c = leverrier_det_circuit(4, f7, true).circuit;
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    auto m = random_int_matrix(f7, 4, 0, 6, rng);
    EXPECT_EQ(evaluate_arith(c, matrix_assignment(m)), det_oracle(m));
  }
  EXPECT_THROW(leverrier_det_circuit(0, Q), InvalidArgument);
}

TEST(LeVerrier, HasTheRequiredConstants) {
  auto g = leverrier_det_circuit(4, Q);
  EXPECT_EQ(std::get<label::Const>(g.circuit.gates[g.at({"const", {-1, 1}})].label).value, z(-1));
  EXPECT_EQ(std::get<label::Const>(g.circuit.gates[g.at({"const", {0, 1}})].label).value, z(0));
  for (int k = 1; k <= 4; ++k)
    EXPECT_EQ(std::get<label::Const>(g.circuit.gates[g.at({"const", {1, k}})].label).value,
              FieldValue::from_rational(Q, make_rational(1, k)));
}

TEST(LeVerrier, SizeIsCubic) {
  for (int n = 1; n <= 8; ++n) {
    auto size = leverrier_det_circuit(n, Q).circuit.size();
    EXPECT_LE(size, 10u * n * n * n) << "n=" << n;
    if (n >= 4) {
      EXPECT_GE(2 * size, static_cast<std::size_t>(n * n * n)) << "n=" << n;
    }
  }
}

TEST(LeVerrier, NamedWitnessesVerify) {
  for (int n = 2; n <= 4; ++n) {
    auto g = leverrier_det_circuit(n, Q);
    for (int a = 1; a < n; ++a) {
      auto s = swap_indices(a, a + 1);
      auto pi = witness_from_names(g, [&](const GateName& x) { return leverrier_image(x, s, false); });
      ASSERT_TRUE(pi) << "n=" << n << " swap " << a;
      EXPECT_TRUE(verify_automorphism(g.circuit, {action(n, s, s, false), *pi}));
    }
    auto id = identity_indices();
    auto pt = witness_from_names(g, [&](const GateName& x) { return leverrier_image(x, id, true); });
    ASSERT_TRUE(pt) << "n=" << n;
    EXPECT_TRUE(verify_automorphism(g.circuit, {action(n, id, id, true), *pt})) << "n=" << n;
  }
}

TEST(LeVerrier, GeneratedWitnessesVerifyAndSymmetryHolds) {
  for (int n = 1; n <= 5; ++n) {
    auto g = leverrier_det_circuit(n, Q);
    for (const auto& w : g.witnesses) EXPECT_TRUE(verify_automorphism(g.circuit, w));
    EXPECT_TRUE(check_symmetric(g.circuit, GroupSpec::transpose(n)).symmetric);
  }
}

TEST(Ryser, Examples) {
  auto p2 = ryser_perm_circuit(2, Q).circuit;
  EXPECT_EQ(evaluate_arith(p2, matrix_assignment(matrix_from_ints(Q, {{1, 2}, {3, 4}}))), z(10));
  auto p3 = ryser_perm_circuit(3, Q).circuit;
  EXPECT_EQ(evaluate_arith(p3, matrix_assignment(matrix_from_ints(Q, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}))), z(6));
  // Biadjacency matrix of the 8-cycle: two perfect matchings.
  auto p4 = ryser_perm_circuit(4, Q).circuit;
  EXPECT_EQ(evaluate_arith(p4, matrix_assignment(matrix_from_ints(Q, {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {1, 0, 0, 1}}))),
            z(2));
}

TEST(Ryser, MatchesLeibnizOnRandomMatrices) {
  std::mt19937_64 rng(21);
  for (int n = 1; n <= 5; ++n) {
    auto c = ryser_perm_circuit(n, Q).circuit;
    auto t = ryser_transpose_symmetric_circuit(n, Q).circuit;
    for (int s = 0; s < 30; ++s) {
      auto m = random_int_matrix(Q, n, -9, 9, rng);
      ASSERT_EQ(evaluate_arith(c, matrix_assignment(m)), perm_oracle(m));
      ASSERT_EQ(evaluate_arith(t, matrix_assignment(m)), perm_oracle(m));
    }
  }
}

TEST(Ryser, NamedWitnessesVerify) {
  for (int n = 2; n <= 4; ++n) {
    auto g = ryser_perm_circuit(n, Q);
    auto id = identity_indices();
    for (int a = 1; a < n; ++a) {
      auto s = swap_indices(a, a + 1);
      auto rows = witness_from_names(g, [&](const GateName& x) { return ryser_image(x, s, id, false); });
      ASSERT_TRUE(rows);
      EXPECT_TRUE(verify_automorphism(g.circuit, {action(n, s, id, false), *rows}));
      auto cols = witness_from_names(g, [&](const GateName& x) { return ryser_image(x, id, s, false); });
      ASSERT_TRUE(cols);
      EXPECT_TRUE(verify_automorphism(g.circuit, {action(n, id, s, false), *cols}));
    }
    auto sym = ryser_transpose_symmetric_circuit(n, Q);
    auto pt = witness_from_names(sym, [&](const GateName& x) { return ryser_image(x, id, id, true); });
    ASSERT_TRUE(pt);
    EXPECT_TRUE(verify_automorphism(sym.circuit, {action(n, id, id, true), *pt}));
  }
}

TEST(Ryser, PlainCircuitIsNotTransposeSymmetricButVariantIs) {
  // The function is transpose invariant, the row-sum circuit is not.
  auto plain = ryser_perm_circuit(2, Q);
  EXPECT_FALSE(find_extension(plain.circuit, transpose_action(2)));
  EXPECT_FALSE(check_symmetric(plain.circuit, GroupSpec::transpose(2)).symmetric);
  for (int n = 1; n <= 4; ++n) {
    auto sym = ryser_transpose_symmetric_circuit(n, Q);
    EXPECT_TRUE(check_symmetric(sym.circuit, GroupSpec::transpose(n)).symmetric);
    EXPECT_TRUE(check_symmetric(sym.circuit, GroupSpec::matrix(n, n)).symmetric);
  }
  EXPECT_THROW(ryser_transpose_symmetric_circuit(2, Field::prime(2)), InvalidArgument);
}

TEST(Ryser, SizeBound) {
  // Documented constant: at most 2 * 2^n * n^2 + 8 gates.
  for (int n = 1; n <= 8; ++n)
    EXPECT_LE(ryser_perm_circuit(n, Q).circuit.size(), 2u * (1u << n) * n * n + 8) << "n=" << n;
}

TEST(Sizes, PermanentCircuitDoublesWhileDeterminantStaysCubic) {
  std::size_t prev = ryser_perm_circuit(3, Q).circuit.size();
  for (int n = 4; n <= 9; ++n) {
    std::size_t perm = ryser_perm_circuit(n, Q).circuit.size();
    EXPECT_GE(perm, 2 * prev) << "n=" << n;
    prev = perm;
    EXPECT_LE(leverrier_det_circuit(n, Q).circuit.size(), 10u * n * n * n) << "n=" << n;
  }
}

TEST(Oracles, Examples) {
  auto m = matrix_from_ints(Q, {{0, 1}, {1, 0}});
  EXPECT_EQ(det_oracle(m), z(-1));
  EXPECT_EQ(perm_oracle(m), z(1));
  EXPECT_EQ(det_elimination(m), z(-1));
  Field f2 = Field::prime(2);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    auto a = random_int_matrix(f2, 3, 0, 1, rng);
    EXPECT_EQ(det_oracle(a), perm_oracle(a));
  }
  for (int t = 0; t < 20; ++t) {
    auto a = random_int_matrix(Q, 5, -9, 9, rng);
    EXPECT_EQ(det_oracle(a), det_elimination(a));
  }
}

TEST(GateNames, PrintAndParse) {
  GateName n{"power", {2, 1, 3}};
  EXPECT_EQ(n.to_string(), "power(2,1,3)");
  EXPECT_EQ(GateName::parse("power(2,1,3)"), n);
  EXPECT_EQ(GateName::parse("perm()"), (GateName{"perm", {}}));
  EXPECT_THROW(GateName::parse("power"), InvalidArgument);
}

TEST(Generation, IsDeterministic) {
  auto a = leverrier_det_circuit(4, Q), b = leverrier_det_circuit(4, Q);
  EXPECT_EQ(a.names, b.names);
  ASSERT_EQ(a.circuit.size(), b.circuit.size());
  for (std::size_t g = 0; g < a.circuit.size(); ++g) {
    EXPECT_TRUE(a.circuit.gates[g].label == b.circuit.gates[g].label);
    EXPECT_EQ(a.circuit.gates[g].children, b.circuit.gates[g].children);
  }
}
