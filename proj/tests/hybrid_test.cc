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

#include "lpd/hybrid.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "lpd/dense_oracle.hpp"
#include "lpd/states.hpp"

namespace lpd {
namespace {

PauliOperator z0(std::uint32_t n) { return PauliOperator(PauliString::single(n, 'Z', 0), 1.0); }

// t_F = 0 degenerates to a pure backward run evaluated on the initial
// product state; on a basis pattern the two paths agree bit for bit.
TEST(HybridRun, BackwardOnlyMatchesPlainPropagation) {
    const std::uint32_t n = 6;
    Hamiltonian h = build_qmfi(n, 0.8, 0.9, false);
    ProductState init = ProductState::from_bit_pattern("010101");
    auto hy = hybrid_run(h, z0(n), 1.5, 0.0, 8, 4, 2, 10, 10, init);
    EXPECT_TRUE(hy.forward.empty());

    StateHandle state = init;
    auto plain = lpd_run(h, z0(n), 1.5, 10, 2, 4, &state);
    // Same schedule, same records; the expectation differs only by summation
    // order between the product and chi=1 MPS contractions.
    EXPECT_NEAR(hy.mu, plain.final_mu, 1e-12);
    EXPECT_EQ(hy.backward.steps.size(), plain.steps.size());
    for (std::size_t d = 0; d < plain.steps.size(); ++d) {
        EXPECT_DOUBLE_EQ(hy.backward.steps[d].discarded_norm, plain.steps[d].discarded_norm);
        EXPECT_EQ(hy.backward.steps[d].term_count, plain.steps[d].term_count);
    }
}

// t_F = t degenerates to a pure forward TEBD run with the untouched
// observable measured at the end.
TEST(HybridRun, ForwardOnlyMatchesPlainTebd) {
    const std::uint32_t n = 6;
    Hamiltonian h = build_qmfi(n, 0.8, 0.9, false);
    ProductState init = ProductState::from_bit_pattern("010101");
    auto hy = hybrid_run(h, z0(n), 1.5, 1.5, 8, 4, 2, 10, 10, init);
    EXPECT_TRUE(hy.backward.steps.empty());
    ASSERT_EQ(hy.forward.size(), 10u);

    MpsState m = MpsState::from_product(init);
    tebd_evolve_inplace(m, h, 1.5, 10, 2, 8);
    EXPECT_DOUBLE_EQ(hy.mu, mps_expectation(m, z0(n)));
    EXPECT_EQ(hy.magic.size(), 1u);  // only the t = 0 observable
    EXPECT_DOUBLE_EQ(hy.magic[0], 0.0);
}

// The split point does not matter when nothing is truncated on either side:
// t_F in {0, t/2, t} all reproduce the dense Trotter-circuit value.
TEST(HybridRun, SplitInvarianceLossless) {
    const std::uint32_t n = 6;
    Hamiltonian h = build_qmfi(n, 0.8, 0.9, false);
    ProductState init = ProductState::from_bit_pattern("010101");
    const double t = 1.0;
    const int r = 8;

    DenseState s0 = dense_from_product(init);
    GateSchedule full = trotter_schedule(h, 2, t, r);
    double dense_mu = dense_expectation(dense_evolve_schedule(s0, full), z0(n));

    for (double tf : {0.0, 0.5, 1.0}) {
        int rf = static_cast<int>(std::lround(r * tf / t));
        int rb = r - rf;
        auto hy = hybrid_run(h, z0(n), t, tf, 8, n, 2, std::max(rf, 1), std::max(rb, 1), init);
        EXPECT_NEAR(hy.mu, dense_mu, 1e-9) << "t_F=" << tf;
    }
}

TEST(HybridRun, TrajectoriesAndStride) {
    const std::uint32_t n = 6;
    Hamiltonian h = build_qmfi(n, 0.8, 0.9, false);
    ProductState init = ProductState::from_bit_pattern("010101");
    HybridOptions opts;
    opts.expectation_stride = 2;
    auto hy = hybrid_run(h, z0(n), 2.0, 1.0, 8, 3, 2, 10, 10, init, opts);

    ASSERT_EQ(hy.forward.size(), 10u);
    for (const auto& rec : hy.forward) {
        EXPECT_EQ(rec.bond_entropies_bits.size(), n - 1);
        EXPECT_LE(rec.max_bond, 8);
    }
    // magic[0] is the bare observable; one entry per backward step follows.
    ASSERT_EQ(hy.magic.size(), 11u);
    EXPECT_DOUBLE_EQ(hy.magic[0], 0.0);
    for (double s : hy.magic) EXPECT_GE(s, 0.0);

    // Stride 2 samples steps 0,2,4,6,8,10.
    ASSERT_EQ(hy.mu_trajectory.size(), 6u);
    for (std::size_t i = 0; i < hy.mu_trajectory.size(); ++i) {
        EXPECT_EQ(hy.mu_trajectory[i].first, static_cast<int>(2 * i));
    }
    EXPECT_DOUBLE_EQ(hy.mu_trajectory.back().second, hy.mu);
    EXPECT_DOUBLE_EQ(hy.mu_trajectory.front().second,
                     mps_expectation(hy.state, z0(n)));
}

TEST(HybridRun, ValidatesSplit) {
    Hamiltonian h = build_qmfi(4, 0.8, 0.9, false);
    ProductState init = ProductState::from_bit_pattern("0101");
    EXPECT_THROW(hybrid_run(h, z0(4), 1.0, 2.0, 4, 4, 2, 5, 5, init), std::invalid_argument);
    EXPECT_THROW(hybrid_run(h, z0(4), -1.0, 0.0, 4, 4, 2, 5, 5, init), std::invalid_argument);
}

}  // namespace
}  // namespace lpd
