// Copyright 2026 The lpd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lpd/pauli_operator.hpp"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "lpd/rng.hpp"

namespace lpd {
namespace {

TEST(PauliOperator, AccumulationAndLookup) {
    PauliOperator o(2);
    PauliString zz = pauli_string_from_text("ZZ");
    o.add_term(zz, 0.5);
    o.add_term(zz, 0.25);
    EXPECT_DOUBLE_EQ(o.coeff(zz), 0.75);
    EXPECT_EQ(o.term_count(), 1u);
    o.set_term(zz, -1.0);
    EXPECT_DOUBLE_EQ(o.coeff(zz), -1.0);
    EXPECT_DOUBLE_EQ(o.coeff(pauli_string_from_text("XX")), 0.0);
    EXPECT_THROW(o.add_term(pauli_string_from_text("Z"), 1.0), std::invalid_argument);
    EXPECT_THROW(PauliOperator(0), std::invalid_argument);
}

TEST(PauliOperator, Norms) {
    PauliOperator o(2);
    o.add_term(pauli_string_from_text("ZI"), 3.0);
    o.add_term(pauli_string_from_text("XY"), -4.0);
    EXPECT_DOUBLE_EQ(o.two_norm(), 5.0);
    EXPECT_DOUBLE_EQ(o.coeff_one_norm(), 7.0);
    EXPECT_EQ(o.max_weight(), 2u);
    EXPECT_DOUBLE_EQ(PauliOperator(2).two_norm(), 0.0);
}

TEST(PauliOperator, WeightHistogramHoldsSquaredNorm) {
    PauliOperator o(3);
    o.add_term(PauliString::identity(3), 0.5);
    o.add_term(pauli_string_from_text("ZII"), 0.6);
    o.add_term(pauli_string_from_text("IXI"), 0.3);
    o.add_term(pauli_string_from_text("XYZ"), -0.2);
    auto h = o.weight_histogram();
    ASSERT_EQ(h.size(), 4u);
    EXPECT_DOUBLE_EQ(h[0], 0.25);
    EXPECT_DOUBLE_EQ(h[1], 0.36 + 0.09);
    EXPECT_DOUBLE_EQ(h[2], 0.0);
    EXPECT_DOUBLE_EQ(h[3], 0.04);
    double total = 0;
    for (double b : h) total += b;
    EXPECT_NEAR(total, o.two_norm() * o.two_norm(), 1e-15);
}

// Truncation removes exactly the heavy tail: the discarded two-norm and the
// surviving two-norm recombine to the original by Pythagoras.
TEST(PauliOperator, TruncationPythagoras) {
    PauliOperator o(3);
    o.add_term(pauli_string_from_text("ZII"), 0.6);
    o.add_term(pauli_string_from_text("ZZI"), 0.8);
    o.add_term(pauli_string_from_text("XYZ"), 0.5);
    double before = o.two_norm();
    double dropped = o.truncate_by_weight(1);
    EXPECT_NEAR(dropped, std::sqrt(0.64 + 0.25), 1e-15);
    EXPECT_EQ(o.term_count(), 1u);
    EXPECT_NEAR(before * before, o.two_norm() * o.two_norm() + dropped * dropped, 1e-15);
    EXPECT_DOUBLE_EQ(o.truncate_by_weight(1), 0.0);
}

TEST(PauliOperator, PruneSmall) {
    PauliOperator o(1);
    o.add_term(pauli_string_from_text("Z"), 1.0);
    o.add_term(pauli_string_from_text("X"), 1e-16);
    double pruned = o.prune_small(1e-12);
    EXPECT_DOUBLE_EQ(pruned, 1e-16);
    EXPECT_EQ(o.term_count(), 1u);
}

TEST(PauliOperator, AddScaled) {
    PauliOperator a(pauli_string_from_text("Z"), 1.0);
    PauliOperator b(pauli_string_from_text("X"), 2.0);
    b.add_term(pauli_string_from_text("Z"), 1.0);
    a.add_scaled(b, -0.5);
    EXPECT_DOUBLE_EQ(a.coeff(pauli_string_from_text("Z")), 0.5);
    EXPECT_DOUBLE_EQ(a.coeff(pauli_string_from_text("X")), -1.0);
}

TEST(OperatorMagic, FrozenValues) {
    PauliOperator one(pauli_string_from_text("ZI"), 0.3);
    EXPECT_DOUBLE_EQ(operator_magic(one), 0.0);

    PauliOperator two(pauli_string_from_text("ZI"), 1 / std::sqrt(2));
    two.add_term(pauli_string_from_text("XI"), 1 / std::sqrt(2));
    EXPECT_NEAR(operator_magic(two), 1.0, 1e-12);

    // Four equal-magnitude terms, deliberately unnormalized: 2 bits.
    PauliOperator four(2);
    four.add_term(pauli_string_from_text("ZI"), 5.0);
    four.add_term(pauli_string_from_text("XI"), -5.0);
    four.add_term(pauli_string_from_text("YY"), 5.0);
    four.add_term(pauli_string_from_text("ZZ"), 5.0);
    EXPECT_NEAR(operator_magic(four), 2.0, 1e-12);

    EXPECT_THROW(operator_magic(PauliOperator(2)), std::domain_error);
}

TEST(BranchSign, MatchesHandComputedPhases) {
    // -i G P = s R: G=X, P=Z gives GP = -iY so s=+1; G=Z, P=X gives +iY so s=-1.
    EXPECT_EQ(multiply(PauliString::single(1, 'X', 0), PauliString::single(1, 'Z', 0)).phase_power,
              3);
    EXPECT_DOUBLE_EQ(branch_sign(3), 1.0);
    EXPECT_DOUBLE_EQ(branch_sign(1), -1.0);
}

TEST(RotateTerm, CommutingGeneratorPassesThrough) {
    RotationGate g{pauli_string_from_text("ZZ"), 0.7};
    auto r = rotate_term(pauli_string_from_text("ZI"), 0.4, g);
    ASSERT_EQ(r.count, 1);
    EXPECT_EQ(r.term[0].first, pauli_string_from_text("ZI"));
    EXPECT_DOUBLE_EQ(r.term[0].second, 0.4);
}

// Conjugating Z0 by exp(-i theta X0 X1): the branch partner is Y0 X1 with a
// plus sign, coefficients (cos 2theta, sin 2theta).
TEST(RotateTerm, AnticommutingBranchFrozen) {
    double theta = 0.15;
    RotationGate g{pauli_string_from_text("XX"), theta};
    auto r = rotate_term(pauli_string_from_text("ZI"), 1.0, g);
    ASSERT_EQ(r.count, 2);
    EXPECT_EQ(pauli_string_to_text(r.term[0].first), "ZI");
    EXPECT_NEAR(r.term[0].second, std::cos(0.3), 1e-15);
    EXPECT_EQ(pauli_string_to_text(r.term[1].first), "YX");
    EXPECT_NEAR(r.term[1].second, std::sin(0.3), 1e-15);
}

TEST(RotateTerm, NormConservedOnRandomInputs) {
    CounterRng rng(41);
    for (int it = 0; it < 200; ++it) {
        std::uint32_t n = 4;
        std::uint64_t mask = (1u << n) - 1;
        PauliString p(n, rng.next_u64() & mask, rng.next_u64() & mask);
        PauliString gstr(n, rng.next_u64() & mask, rng.next_u64() & mask);
        if (gstr.is_identity()) continue;
        double c = 2 * rng.next_double() - 1;
        RotationGate g{gstr, 4 * rng.next_double() - 2};
        auto r = rotate_term(p, c, g);
        double sq = 0;
        for (int i = 0; i < r.count; ++i) sq += r.term[i].second * r.term[i].second;
        EXPECT_NEAR(sq, c * c, 1e-14);
        if (r.count == 2) {
            EXPECT_FALSE(commutes(gstr, p));
            EXPECT_EQ(r.term[1].first, multiply(gstr, p).string);
        }
    }
}

TEST(CommutatorHerm, SingleQubitFrozen) {
    PauliOperator x(pauli_string_from_text("X"), 1.0);
    PauliOperator z(pauli_string_from_text("Z"), 1.0);
    // -i[X, Z] = -2Y and -i[Z, X] = +2Y.
    PauliOperator xz = commutator_herm(x, z);
    EXPECT_EQ(xz.term_count(), 1u);
    EXPECT_DOUBLE_EQ(xz.coeff(pauli_string_from_text("Y")), -2.0);
    PauliOperator zx = commutator_herm(z, x);
    EXPECT_DOUBLE_EQ(zx.coeff(pauli_string_from_text("Y")), 2.0);
    // Commuting inputs vanish identically.
    EXPECT_TRUE(commutator_herm(x, x).empty());
}

TEST(CommutatorHerm, Antisymmetry) {
    CounterRng rng(7);
    PauliOperator a(3), b(3);
    for (int i = 0; i < 5; ++i) {
        a.add_term(PauliString(3, rng.next_u64() & 7, rng.next_u64() & 7),
                   2 * rng.next_double() - 1);
        b.add_term(PauliString(3, rng.next_u64() & 7, rng.next_u64() & 7),
                   2 * rng.next_double() - 1);
    }
    PauliOperator ab = commutator_herm(a, b);
    PauliOperator ba = commutator_herm(b, a);
    ba.add_scaled(ab, 1.0);
    EXPECT_LT(ba.two_norm(), 1e-14);
}

TEST(OperatorText, RoundTripCanonicalOrder) {
    PauliOperator o(3);
    o.add_term(pauli_string_from_text("XYZ"), -0.25);
    o.add_term(pauli_string_from_text("ZII"), 1.0);
    o.add_term(pauli_string_from_text("IIX"), 0.125);
    std::string text = pauli_operator_to_text(o);
    EXPECT_EQ(text, "1 ZII\n0.125 IIX\n-0.25 XYZ\n");
    PauliOperator back = pauli_operator_from_text(text);
    EXPECT_EQ(back.term_count(), 3u);
    EXPECT_DOUBLE_EQ(back.coeff(pauli_string_from_text("XYZ")), -0.25);
    // A 17-significant-digit coefficient survives the round trip exactly.
    PauliOperator fine(pauli_string_from_text("Y"), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(pauli_operator_from_text(pauli_operator_to_text(fine))
                         .coeff(pauli_string_from_text("Y")),
                     1.0 / 3.0);
}

TEST(OperatorText, CommentsBlanksAndAccumulation) {
    PauliOperator o = pauli_operator_from_text(
        "# observable\n"
        "\n"
        "  0.5 ZI\n"
        "0.25 ZI\n"
        "-1 XY\n");
    EXPECT_EQ(o.n_qubits(), 2u);
    EXPECT_EQ(o.term_count(), 2u);
    EXPECT_DOUBLE_EQ(o.coeff(pauli_string_from_text("ZI")), 0.75);
}

TEST(OperatorText, ErrorsNameTheLine) {
    auto expect_error_with = [](const std::string& text, const std::string& needle) {
        try {
            pauli_operator_from_text(text);
            FAIL() << "expected invalid_argument for: " << text;
        } catch (const std::invalid_argument& e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    expect_error_with("0.5 ZI\nnonsense\n", "line 2");
    expect_error_with("0.5 ZI\n0.5 ZI extra\n", "trailing token");
    expect_error_with("0.5 ZI\n0.5 ZZI\n", "does not match earlier length");
    expect_error_with("0.5 ZQ\n", "position 1");
    expect_error_with("# only comments\n", "no terms");
}

}  // namespace
}  // namespace lpd
