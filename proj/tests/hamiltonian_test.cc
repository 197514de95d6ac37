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

#include "lpd/hamiltonian.hpp"

#include <gtest/gtest.h>

namespace lpd {
namespace {

std::uint64_t support(const PauliString& p) { return p.x | p.z; }

void check_layers_partition_with_disjoint_support(const Hamiltonian& h) {
    std::vector<bool> seen(h.terms.size(), false);
    for (const auto& layer : h.layers) {
        std::uint64_t mask = 0;
        for (std::size_t idx : layer) {
            ASSERT_LT(idx, h.terms.size());
            EXPECT_FALSE(seen[idx]);
            seen[idx] = true;
            std::uint64_t s = support(h.terms[idx].second);
            EXPECT_EQ(mask & s, 0u) << "supports overlap within a layer";
            mask |= s;
        }
    }
    for (bool b : seen) EXPECT_TRUE(b);
}

// The benchmark chain at n=10 with periodic bonds: 10 XX bonds + 10 X fields
// + 10 Y fields = 30 terms, 2-local, and exactly four disjoint-support
// layers (even bonds, odd bonds, X fields, Y fields).
TEST(Qmfi, PeriodicN10Shape) {
    Hamiltonian h = build_qmfi(10, 0.8, 0.9, true);
    EXPECT_EQ(h.n, 10u);
    EXPECT_EQ(h.term_count(), 30u);
    EXPECT_EQ(h.max_term_weight(), 2u);
    EXPECT_EQ(h.layer_count(), 4u);
    EXPECT_DOUBLE_EQ(h.max_abs_coeff(), 1.0);
    EXPECT_DOUBLE_EQ(h.alpha(), 2.0);
    check_layers_partition_with_disjoint_support(h);

    // Bond coefficients 1, field coefficients h_x and h_y on every site.
    std::size_t bonds = 0, xf = 0, yf = 0;
    for (const auto& [a, g] : h.terms) {
        if (g.weight() == 2) {
            ++bonds;
            EXPECT_DOUBLE_EQ(a, 1.0);
        } else if (g.z == 0) {
            ++xf;
            EXPECT_DOUBLE_EQ(a, 0.8);
        } else {
            ++yf;
            EXPECT_DOUBLE_EQ(a, 0.9);
            EXPECT_EQ(g.x, g.z);
        }
    }
    EXPECT_EQ(bonds, 10u);
    EXPECT_EQ(xf, 10u);
    EXPECT_EQ(yf, 10u);
}

TEST(Qmfi, OpenChainSmall) {
    Hamiltonian h = build_qmfi(2, 0.8, 0.9, false);
    EXPECT_EQ(h.term_count(), 5u);  // one bond + 2 X fields + 2 Y fields
    check_layers_partition_with_disjoint_support(h);

    Hamiltonian h4 = build_qmfi(4, 0.8, 0.9, false);
    EXPECT_EQ(h4.term_count(), 3u + 4u + 4u);
    EXPECT_EQ(h4.layer_count(), 4u);
    check_layers_partition_with_disjoint_support(h4);
}

// Even/odd bond split: in the periodic n=4 chain the first layer greedily
// takes bonds (0,1) and (2,3); bonds (1,2) and (3,0) land in the second.
TEST(Qmfi, EvenOddBondSplit) {
    Hamiltonian h = build_qmfi(4, 0.8, 0.9, true);
    ASSERT_GE(h.layer_count(), 2u);
    ASSERT_EQ(h.layers[0].size(), 2u);
    EXPECT_EQ(support(h.terms[h.layers[0][0]].second), 0b0011u);
    EXPECT_EQ(support(h.terms[h.layers[0][1]].second), 0b1100u);
    ASSERT_EQ(h.layers[1].size(), 2u);
    EXPECT_EQ(support(h.terms[h.layers[1][0]].second), 0b0110u);
    EXPECT_EQ(support(h.terms[h.layers[1][1]].second), 0b1001u);
}

TEST(Qmfi, PeriodicN2HasNoDuplicateBond) {
    Hamiltonian h = build_qmfi(2, 0.5, 0.5, true);
    EXPECT_EQ(h.term_count(), 5u);
    EXPECT_THROW(build_qmfi(1, 0.8, 0.9, false), std::invalid_argument);
}

TEST(Layerize, SingleLayerWhenAllSupportsDisjoint) {
    Hamiltonian h;
    h.n = 4;
    h.terms.push_back({1.0, pauli_string_from_text("ZIII")});
    h.terms.push_back({0.5, pauli_string_from_text("IXII")});
    h.terms.push_back({-0.25, pauli_string_from_text("IIYI")});
    layerize(h);
    EXPECT_EQ(h.layer_count(), 1u);
    check_layers_partition_with_disjoint_support(h);
}

// Commuting but overlapping supports must still split: Gamma counts support
// collisions, not commutation failures.
TEST(Layerize, OverlappingCommutingTermsSplit) {
    Hamiltonian h;
    h.n = 2;
    h.terms.push_back({1.0, pauli_string_from_text("ZI")});
    h.terms.push_back({1.0, pauli_string_from_text("ZZ")});  // commutes with ZI, shares qubit 0
    layerize(h);
    EXPECT_EQ(h.layer_count(), 2u);
    check_layers_partition_with_disjoint_support(h);
}

TEST(Layerize, GreedyIsDeterministicInTermOrder) {
    Hamiltonian h;
    h.n = 3;
    h.terms.push_back({1.0, pauli_string_from_text("XXI")});
    h.terms.push_back({1.0, pauli_string_from_text("IXX")});
    h.terms.push_back({1.0, pauli_string_from_text("ZII")});
    layerize(h);
    // XXI takes layer 0; IXX collides, opens layer 1; ZII fits in layer 1.
    ASSERT_EQ(h.layer_count(), 2u);
    EXPECT_EQ(h.layers[0], (std::vector<std::size_t>{0}));
    EXPECT_EQ(h.layers[1], (std::vector<std::size_t>{1, 2}));
}

TEST(Hamiltonian, LayerOperatorAndToOperator) {
    Hamiltonian h = build_qmfi(4, 0.8, 0.9, false);
    PauliOperator all = h.to_operator();
    EXPECT_EQ(all.term_count(), h.term_count());
    PauliOperator acc(4);
    for (std::size_t g = 0; g < h.layer_count(); ++g) {
        acc.add_scaled(h.layer_operator(g), 1.0);
    }
    acc.add_scaled(all, -1.0);
    EXPECT_LT(acc.two_norm(), 1e-15);
}

TEST(Hamiltonian, TextParsing) {
    Hamiltonian h = hamiltonian_from_text(
        "# chain\n"
        "1.0 XXI\n"
        "0.8 XII\n"
        "0.9 IYI\n");
    EXPECT_EQ(h.n, 3u);
    EXPECT_EQ(h.term_count(), 3u);
    EXPECT_GE(h.layer_count(), 2u);
    check_layers_partition_with_disjoint_support(h);
    EXPECT_THROW(hamiltonian_from_text("1.0 III\n"), std::invalid_argument);
    EXPECT_THROW(hamiltonian_from_text(""), std::invalid_argument);
}

}  // namespace
}  // namespace lpd
