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

#include "lpd/dense_oracle.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace lpd {
namespace {

TEST(CounterRngTest, DeterministicAndSeedSensitive) {
    CounterRng a(123), b(123), c(124);
    bool all_equal = true, any_equal_across_seeds = false;
    for (int i = 0; i < 100; ++i) {
        std::uint64_t va = a.next_u64(), vb = b.next_u64(), vc = c.next_u64();
        all_equal = all_equal && (va == vb);
        any_equal_across_seeds = any_equal_across_seeds || (va == vc);
    }
    EXPECT_TRUE(all_equal);
    EXPECT_FALSE(any_equal_across_seeds);

    CounterRng u(7);
    for (int i = 0; i < 1000; ++i) {
        double d = u.next_double();
        EXPECT_GE(d, 0.0);
        EXPECT_LT(d, 1.0);
    }
    CounterRng g(11);
    double mean = 0, m2 = 0;
    const int kSamples = 20000;
    for (int i = 0; i < kSamples; ++i) {
        double v = g.next_gaussian();
        mean += v;
        m2 += v * v;
    }
    mean /= kSamples;
    m2 /= kSamples;
    EXPECT_NEAR(mean, 0.0, 0.03);
    EXPECT_NEAR(m2, 1.0, 0.05);
}

TEST(HaarSample, NormalizedAndDeterministic) {
    DenseState a = haar_sample(6, 99);
    DenseState b = haar_sample(6, 99);
    DenseState c = haar_sample(6, 100);
    EXPECT_NEAR(a.norm(), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ((a.amp - b.amp).norm(), 0.0);
    EXPECT_GT((a.amp - c.amp).norm(), 1e-3);
    EXPECT_THROW(haar_sample(15, 1), std::invalid_argument);
}

TEST(HaarSample, SingleQubitZMomentMatchesTwoDesign) {
    // E[<Z>^2] over Haar states of n qubits is 1/(2^n + 1); 0.2 at n = 2.
    const int kSamples = 4000;
    PauliString z0 = PauliString::single(2, 'Z', 0);
    double acc = 0;
    for (int s = 0; s < kSamples; ++s) {
        double mu = dense_pauli_expectation(haar_sample(2, 5000 + s), z0);
        acc += mu * mu;
    }
    acc /= kSamples;
    EXPECT_NEAR(acc, 0.2, 0.02);
}

TEST(DenseFromProduct, BasisPatternsAndBlochDirections) {
    DenseState s = dense_from_product(ProductState::from_bit_pattern("0101"));
    EXPECT_NEAR(std::abs(s.amp[10] - Complex(1, 0)), 0.0, 1e-15);  // bits 1 and 3
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);

    ProductState plus;
    plus.bloch = {{1.0, 0.0, 0.0}};
    DenseState sp = dense_from_product(plus);
    EXPECT_NEAR(dense_pauli_expectation(sp, PauliString::single(1, 'X', 0)), 1.0, 1e-12);
    EXPECT_NEAR(dense_pauli_expectation(sp, PauliString::single(1, 'Z', 0)), 0.0, 1e-12);

    ProductState mixed;
    mixed.bloch = {{0.0, 0.0, 0.5}};
    EXPECT_THROW(dense_from_product(mixed), std::invalid_argument);
}

TEST(DensePauliExpectation, BasisAndPhaseConventions) {
    DenseState s01 = dense_from_product(ProductState::from_bit_pattern("01"));
    EXPECT_DOUBLE_EQ(dense_pauli_expectation(s01, PauliString::single(2, 'Z', 0)), 1.0);
    EXPECT_DOUBLE_EQ(dense_pauli_expectation(s01, PauliString::single(2, 'Z', 1)), -1.0);
    EXPECT_DOUBLE_EQ(dense_pauli_expectation(s01, PauliString::single(2, 'X', 0)), 0.0);
    EXPECT_DOUBLE_EQ(dense_pauli_expectation(s01, pauli_string_from_text("ZZ")), -1.0);

    // (|0> + i|1>)/sqrt(2) is the +1 eigenstate of Y.
    Eigen::VectorXcd v(2);
    v << Complex(1 / std::sqrt(2.0), 0), Complex(0, 1 / std::sqrt(2.0));
    DenseState y_plus(1, std::move(v));
    EXPECT_NEAR(dense_pauli_expectation(y_plus, PauliString::single(1, 'Y', 0)), 1.0, 1e-15);

    EXPECT_THROW(dense_pauli_expectation(s01, PauliString::single(1, 'Z', 0)),
                 std::invalid_argument);
}

TEST(DenseMatrix, SingleQubitFrozenEntries) {
    Eigen::MatrixXcd x = dense_matrix(PauliOperator(pauli_string_from_text("X"), 1.0));
    Eigen::MatrixXcd y = dense_matrix(PauliOperator(pauli_string_from_text("Y"), 1.0));
    Eigen::MatrixXcd z = dense_matrix(PauliOperator(pauli_string_from_text("Z"), 1.0));
    EXPECT_EQ(x(0, 1), Complex(1, 0));
    EXPECT_EQ(x(1, 0), Complex(1, 0));
    EXPECT_EQ(y(0, 1), Complex(0, -1));
    EXPECT_EQ(y(1, 0), Complex(0, 1));
    EXPECT_EQ(z(0, 0), Complex(1, 0));
    EXPECT_EQ(z(1, 1), Complex(-1, 0));
    // Pauli algebra as matrices: XY = iZ.
    EXPECT_LT((x * y - Complex(0, 1) * z).norm(), 1e-15);

    Eigen::MatrixXcd zz = dense_matrix(PauliOperator(pauli_string_from_text("ZZ"), 2.0));
    Eigen::VectorXcd diag = zz.diagonal();
    EXPECT_EQ(diag[0], Complex(2, 0));
    EXPECT_EQ(diag[1], Complex(-2, 0));
    EXPECT_EQ(diag[2], Complex(-2, 0));
    EXPECT_EQ(diag[3], Complex(2, 0));
}

// exp(-i theta G) for a Pauli generator is cos(theta) I - i sin(theta) G;
// the block kernel must reproduce that matrix action exactly, for both the
// diagonal and the bit-flipping branch.
TEST(ApplyGateBlock, MatchesClosedFormUnitary) {
    CounterRng rng(314);
    for (const char* gen : {"ZIZ", "XIY", "YZX", "IXI"}) {
        PauliString gs = pauli_string_from_text(gen);
        RotationGate g{gs, 0.37};
        Eigen::VectorXcd v(8);
        for (int i = 0; i < 8; ++i) v[i] = Complex(rng.next_gaussian(), rng.next_gaussian());
        v /= v.norm();
        Eigen::MatrixXcd gm = dense_matrix(PauliOperator(gs, 1.0));
        Eigen::VectorXcd want =
            std::cos(g.theta) * v - Complex(0, 1) * std::sin(g.theta) * (gm * v);
        Eigen::MatrixXcd block = v;
        apply_gate_block(block, g, 3);
        EXPECT_LT((block.col(0) - want).norm(), 1e-14) << gen;
        EXPECT_NEAR(block.col(0).norm(), 1.0, 1e-14) << gen;
    }
}

// Single-qubit Rabi check: under H = X the Z expectation is cos(2t); the
// flip lands at t = pi/2 and the state returns (up to global phase) at pi.
TEST(ExactEvolverTest, RabiFlipAtHalfPi) {
    Hamiltonian h;
    h.n = 1;
    h.terms.push_back({1.0, pauli_string_from_text("X")});
    layerize(h);
    ExactEvolver ev(h);
    DenseState zero = DenseState::basis(1, 0);
    PauliString z = pauli_string_from_text("Z");
    const double pi = std::numbers::pi;
    EXPECT_NEAR(dense_pauli_expectation(ev.evolve(zero, pi / 4), z), 0.0, 1e-12);
    EXPECT_NEAR(dense_pauli_expectation(ev.evolve(zero, pi / 2), z), -1.0, 1e-12);
    EXPECT_NEAR(dense_pauli_expectation(ev.evolve(zero, pi), z), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(ev.evolve(zero, pi), zero), 1.0, 1e-12);

    // A single-term Hamiltonian is its own product formula: schedule replay
    // at p=1, r=1 matches the exact evolution.
    GateSchedule s = trotter_schedule(h, 1, pi / 2, 1);
    DenseState replay = dense_evolve_schedule(zero, s);
    EXPECT_NEAR(dense_pauli_expectation(replay, z), -1.0, 1e-12);
}

TEST(ExactEvolverTest, ConservesNormAndEnergy) {
    Hamiltonian h = build_qmfi(5, 0.8, 0.9, true);
    ExactEvolver ev(h);
    DenseState s0 = dense_from_product(ProductState::from_bit_pattern("01011"));
    PauliOperator ho = h.to_operator();
    double e0 = dense_expectation(s0, ho);
    DenseState st = ev.evolve(s0, 3.0);
    EXPECT_NEAR(st.norm(), 1.0, 1e-12);
    EXPECT_NEAR(dense_expectation(st, ho), e0, 1e-10);

    // Block evolution agrees with per-column evolution.
    Eigen::MatrixXcd block(32, 2);
    block.col(0) = s0.amp;
    block.col(1) = haar_sample(5, 17).amp;
    Eigen::MatrixXcd out = ev.evolve_block(block, 3.0);
    EXPECT_LT((out.col(0) - st.amp).norm(), 1e-12);
    EXPECT_LT((out.col(1) - ev.evolve(haar_sample(5, 17), 3.0).amp).norm(), 1e-12);
}

// p=2 replay error shrinks like 1/r^2: quadrupling r cuts the error by
// roughly 16 (asserted loosely; the acceptance suite pins the full slope).
TEST(TrotterReplay, SecondOrderErrorShrinks) {
    Hamiltonian h = build_qmfi(4, 0.8, 0.9, false);
    ExactEvolver ev(h);
    DenseState s0 = dense_from_product(ProductState::from_bit_pattern("0101"));
    PauliString z0 = PauliString::single(4, 'Z', 0);
    double exact = dense_pauli_expectation(ev.evolve(s0, 1.0), z0);
    auto err = [&](int r) {
        GateSchedule s = trotter_schedule(h, 2, 1.0, r);
        return std::abs(dense_pauli_expectation(dense_evolve_schedule(s0, s), z0) - exact);
    };
    double e10 = err(10), e40 = err(40);
    EXPECT_GT(e10, 1e-8);  // not already at noise floor
    EXPECT_LT(e40, e10 / 8.0);
}

TEST(SubsystemEntropyTest, PureProductAndBellCuts) {
    DenseState prod = dense_from_product(ProductState::from_bit_pattern("010"));
    auto spec = subsystem_entropy(prod, {0, 1});
    EXPECT_NEAR(spec.entropy_bits, 0.0, 1e-10);
    EXPECT_NEAR(spec.tracedist_to_mixed, 0.75, 1e-12);  // 1 - 1/4

    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell[0] = bell[3] = 1 / std::sqrt(2.0);
    DenseState b(2, std::move(bell));
    auto left = subsystem_entropy(b, {0});
    EXPECT_NEAR(left.entropy_bits, 1.0, 1e-12);
    EXPECT_NEAR(left.tracedist_to_mixed, 0.0, 1e-12);
    EXPECT_LT((left.rdm - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-12);

    // Whole-system "subsystem" of a pure state has zero entropy.
    auto whole = subsystem_entropy(b, {0, 1});
    EXPECT_NEAR(whole.entropy_bits, 0.0, 1e-10);

    EXPECT_THROW(subsystem_entropy(b, {}), std::invalid_argument);
    EXPECT_THROW(subsystem_entropy(b, {1, 0}), std::invalid_argument);
    EXPECT_THROW(subsystem_entropy(b, {0, 0}), std::invalid_argument);
    EXPECT_THROW(subsystem_entropy(b, {0, 2}), std::invalid_argument);
}

TEST(SubsystemEntropyTest, HaarTwoQubitMarginalsNearPage) {
    DenseState s = haar_sample(10, 424242);
    auto spec = subsystem_entropy(s, {3, 7});
    EXPECT_NEAR(spec.entropy_bits, 1.99, 0.05);
    EXPECT_LT(spec.tracedist_to_mixed, 0.2);
}

TEST(Fidelity, OverlapSquared) {
    DenseState a = DenseState::basis(2, 0);
    DenseState b = DenseState::basis(2, 3);
    EXPECT_DOUBLE_EQ(fidelity(a, b), 0.0);
    EXPECT_DOUBLE_EQ(fidelity(a, a), 1.0);
    DenseState c = a;
    c.amp *= std::polar(1.0, 1.234);  // global phase is invisible
    EXPECT_NEAR(fidelity(a, c), 1.0, 1e-14);
}

}  // namespace
}  // namespace lpd
