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

#ifndef LPD_DENSE_ORACLE_HPP
#define LPD_DENSE_ORACLE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "lpd/hamiltonian.hpp"
#include "lpd/pauli_operator.hpp"
#include "lpd/product_state.hpp"
#include "lpd/rng.hpp"
#include "lpd/trotter.hpp"

namespace lpd {

/// Brute-force statevector caps: states to 2^14 amplitudes, dense operator
/// matrices and exact (eigendecomposition) evolution to 2^12.
inline constexpr std::uint32_t kDenseStateCap = 14;
inline constexpr std::uint32_t kDenseMatrixCap = 12;

using Complex = std::complex<double>;

/// Dense pure state: 2^n complex amplitudes; basis index bit i is qubit i,
/// matching the PauliString mask convention (qubit 0 is the least
/// significant bit).
struct DenseState {
    std::uint32_t n = 0;
    Eigen::VectorXcd amp;

    DenseState() = default;
    DenseState(std::uint32_t n_qubits, Eigen::VectorXcd amplitudes)
        : n(n_qubits), amp(std::move(amplitudes)) {
        if (amp.size() != (Eigen::Index{1} << n)) {
            throw std::invalid_argument("DenseState: amplitude count != 2^n");
        }
    }

    double norm() const { return amp.norm(); }
    void normalize() { amp /= amp.norm(); }

    static DenseState basis(std::uint32_t n, std::uint64_t index) {
        check_cap(n);
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
        v[static_cast<Eigen::Index>(index)] = 1.0;
        return DenseState(n, std::move(v));
    }

    static void check_cap(std::uint32_t n) {
        if (n == 0 || n > kDenseStateCap) {
            throw std::invalid_argument("dense oracle caps at " +
                                        std::to_string(kDenseStateCap) + " qubits");
        }
    }
};

/// Haar-random state: i.i.d. standard complex Gaussian amplitudes,
/// normalized. Deterministic per (n, seed) on every platform.
inline DenseState haar_sample(std::uint32_t n, std::uint64_t seed) {
    DenseState::check_cap(n);
    CounterRng rng(seed);
    Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        double re = rng.next_gaussian();
        double im = rng.next_gaussian();
        v[i] = Complex(re, im);
    }
    v /= v.norm();
    return DenseState(n, std::move(v));
}

/// Dense vector of a pure product state (per-qubit Bloch vectors of unit
/// length). Mixed marginals have no statevector and are rejected.
inline DenseState dense_from_product(const ProductState& p) {
    std::uint32_t n = p.n_qubits();
    DenseState::check_cap(n);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    v[0] = 1.0;
    Eigen::Index filled = 1;
    for (std::uint32_t q = 0; q < n; ++q) {
        const auto& b = p.bloch[q];
        double r = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
        if (std::abs(r - 1.0) > 1e-9) {
            throw std::invalid_argument("dense_from_product: qubit " + std::to_string(q) +
                                        " has |r| != 1 (mixed marginal)");
        }
        double theta = std::acos(std::clamp(b[2], -1.0, 1.0));
        double phi = std::atan2(b[1], b[0]);
        Complex a0 = std::cos(theta / 2);
        Complex a1 = std::polar(std::sin(theta / 2), phi);
        for (Eigen::Index i = 0; i < filled; ++i) {
            v[i + (Eigen::Index{1} << q)] = v[i] * a1;
            v[i] *= a0;
        }
        filled <<= 1;
    }
    return DenseState(n, std::move(v));
}

namespace detail {

inline Complex i_power(int k) {
    switch (k & 3) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace detail

/// <psi|P|psi> for one Pauli string (always real for normalized input).
inline double dense_pauli_expectation(const DenseState& s, const PauliString& p) {
    if (p.n != s.n) {
        throw std::invalid_argument("dense_pauli_expectation: qubit count mismatch");
    }
    Complex phase = detail::i_power(std::popcount(p.x & p.z));
    Complex acc = 0;
    Eigen::Index dim = s.amp.size();
    for (Eigen::Index b = 0; b < dim; ++b) {
        double sign = (std::popcount(static_cast<std::uint64_t>(b) & p.z) & 1) ? -1.0 : 1.0;
        acc += std::conj(s.amp[static_cast<Eigen::Index>(b ^ static_cast<Eigen::Index>(p.x))]) *
               (phase * sign) * s.amp[b];
    }
    return acc.real();
}

/// <psi|O|psi>. Real by construction: every summand is the expectation of a
/// Hermitian Pauli string times a real coefficient.
inline double dense_expectation(const DenseState& s, const PauliOperator& o) {
    if (o.n_qubits() != s.n) {
        throw std::invalid_argument("dense_expectation: qubit count mismatch");
    }
    double acc = 0;
    for (const auto& [p, c] : o.terms()) {
        acc += c * dense_pauli_expectation(s, p);
    }
    return acc;
}

/// Dense matrix of a sparse Pauli sum (n <= 12).
inline Eigen::MatrixXcd dense_matrix(const PauliOperator& o) {
    if (o.n_qubits() > kDenseMatrixCap) {
        throw std::invalid_argument("dense_matrix caps at " +
                                    std::to_string(kDenseMatrixCap) + " qubits");
    }
    Eigen::Index dim = Eigen::Index{1} << o.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [p, c] : o.terms()) {
        Complex phase = c * detail::i_power(std::popcount(p.x & p.z));
        for (Eigen::Index b = 0; b < dim; ++b) {
            double sign = (std::popcount(static_cast<std::uint64_t>(b) & p.z) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(b ^ static_cast<Eigen::Index>(p.x)), b) += phase * sign;
        }
    }
    return m;
}

/// Apply exp(-i theta G) to every column of a 2^n-row block, in place.
inline void apply_gate_block(Eigen::Ref<Eigen::MatrixXcd> block, const RotationGate& g,
                             std::uint32_t n) {
    if (block.rows() != (Eigen::Index{1} << n)) {
        throw std::invalid_argument("apply_gate_block: row count != 2^n");
    }
    const double c = std::cos(g.theta);
    const double s = std::sin(g.theta);
    const Complex phase = detail::i_power(std::popcount(g.generator.x & g.generator.z));
    const std::uint64_t x = g.generator.x;
    const std::uint64_t z = g.generator.z;
    const Eigen::Index dim = block.rows();
    if (x == 0) {
        // Diagonal generator: amplitude b picks up e^{-i theta (+-1)}.
        const Complex mplus = Complex(c, 0) - Complex(0, s) * phase;
        const Complex mminus = Complex(c, 0) + Complex(0, s) * phase;
        for (Eigen::Index b = 0; b < dim; ++b) {
            bool neg = std::popcount(static_cast<std::uint64_t>(b) & z) & 1;
            block.row(b) *= neg ? mminus : mplus;
        }
        return;
    }
    for (Eigen::Index b = 0; b < dim; ++b) {
        Eigen::Index bx = static_cast<Eigen::Index>(b ^ static_cast<Eigen::Index>(x));
        if (bx < b) continue;
        // G|b> = phase * (-1)^{z.b} |b^x>
        double sb = (std::popcount(static_cast<std::uint64_t>(b) & z) & 1) ? -1.0 : 1.0;
        double sbx = (std::popcount(static_cast<std::uint64_t>(bx) & z) & 1) ? -1.0 : 1.0;
        Complex fb = Complex(0, -s) * phase * sb;    // contribution of b onto b^x
        Complex fbx = Complex(0, -s) * phase * sbx;  // contribution of b^x onto b
        for (Eigen::Index col = 0; col < block.cols(); ++col) {
            Complex vb = block(b, col);
            Complex vbx = block(bx, col);
            block(b, col) = c * vb + fbx * vbx;
            block(bx, col) = c * vbx + fb * vb;
        }
    }
}

/// Replay a Trotter schedule on a dense state: r steps of the schedule's
/// gates in state order. Shares the schedule object with the propagation
/// and MPS backends so all three realize the same unitary.
inline DenseState dense_evolve_schedule(const DenseState& s, const GateSchedule& schedule) {
    DenseState out = s;
    auto gates = schedule.state_order_gates();
    Eigen::Map<Eigen::MatrixXcd> block(out.amp.data(), out.amp.size(), 1);
    for (int step = 0; step < schedule.r; ++step) {
        for (const auto& g : gates) {
            apply_gate_block(block, g, out.n);
        }
    }
    return out;
}

/// Exact evolution e^{-iHt} via one cached eigendecomposition (n <= 12).
class ExactEvolver {
  public:
    explicit ExactEvolver(const Hamiltonian& h) : n_(h.n) {
        Eigen::MatrixXcd hm = dense_matrix(h.to_operator());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hm);
        if (es.info() != Eigen::Success) {
            throw std::runtime_error("ExactEvolver: eigendecomposition failed");
        }
        evals_ = es.eigenvalues();
        evecs_ = es.eigenvectors();
    }

    std::uint32_t n_qubits() const { return n_; }

    DenseState evolve(const DenseState& s, double t) const {
        if (s.n != n_) {
            throw std::invalid_argument("ExactEvolver: qubit count mismatch");
        }
        Eigen::VectorXcd y = evecs_.adjoint() * s.amp;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            y[i] *= std::polar(1.0, -evals_[i] * t);
        }
        return DenseState(n_, evecs_ * y);
    }

    /// Evolve every column of a block by the same time.
    Eigen::MatrixXcd evolve_block(const Eigen::MatrixXcd& block, double t) const {
        Eigen::MatrixXcd y = evecs_.adjoint() * block;
        for (Eigen::Index i = 0; i < y.rows(); ++i) {
            y.row(i) *= std::polar(1.0, -evals_[i] * t);
        }
        return evecs_ * y;
    }

  private:
    std::uint32_t n_;
    Eigen::VectorXd evals_;
    Eigen::MatrixXcd evecs_;
};

/// Partial-trace spectrum of a contiguous-or-not qubit subset.
struct SubsystemSpectrum {
    Eigen::MatrixXcd rdm;
    double entropy_bits = 0;
    double tracedist_to_mixed = 0;
};

/// Reduced density matrix over `qubits` (ascending, unique), its von Neumann
/// entropy in bits, and the trace distance (1/2)Tr|rho - I/2^k| to the
/// maximally mixed state, evaluated in rho's eigenbasis.
inline SubsystemSpectrum subsystem_entropy(const DenseState& s,
                                           const std::vector<std::uint32_t>& qubits) {
    const std::uint32_t k = static_cast<std::uint32_t>(qubits.size());
    if (k == 0 || k > kDenseMatrixCap) {
        throw std::invalid_argument("subsystem_entropy: subsystem size out of range");
    }
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] >= s.n || (i > 0 && qubits[i] <= qubits[i - 1])) {
            throw std::invalid_argument("subsystem_entropy: qubits must be ascending and in range");
        }
    }
    const std::uint32_t nr = s.n - k;
    std::vector<std::uint32_t> rest;
    rest.reserve(nr);
    {
        std::size_t qi = 0;
        for (std::uint32_t q = 0; q < s.n; ++q) {
            if (qi < qubits.size() && qubits[qi] == q) {
                ++qi;
            } else {
                rest.push_back(q);
            }
        }
    }
    const Eigen::Index dim_k = Eigen::Index{1} << k;
    const Eigen::Index dim_r = Eigen::Index{1} << nr;
    Eigen::MatrixXcd rdm = Eigen::MatrixXcd::Zero(dim_k, dim_k);
    Eigen::VectorXcd col(dim_k);
    for (Eigen::Index rv = 0; rv < dim_r; ++rv) {
        std::uint64_t base = 0;
        for (std::uint32_t i = 0; i < nr; ++i) {
            if ((rv >> i) & 1) base |= std::uint64_t{1} << rest[i];
        }
        for (Eigen::Index a = 0; a < dim_k; ++a) {
            std::uint64_t idx = base;
            for (std::uint32_t i = 0; i < k; ++i) {
                if ((a >> i) & 1) idx |= std::uint64_t{1} << qubits[i];
            }
            col[a] = s.amp[static_cast<Eigen::Index>(idx)];
        }
        rdm.noalias() += col * col.adjoint();
    }
    SubsystemSpectrum out;
    out.rdm = rdm;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rdm, Eigen::EigenvaluesOnly);
    const double mixed = 1.0 / static_cast<double>(dim_k);
    for (Eigen::Index i = 0; i < dim_k; ++i) {
        double lam = es.eigenvalues()[i];
        if (lam > 0) out.entropy_bits -= lam * std::log2(lam);
        out.tracedist_to_mixed += 0.5 * std::abs(lam - mixed);
    }
    return out;
}

/// |<a|b>|^2.
inline double fidelity(const DenseState& a, const DenseState& b) {
    if (a.n != b.n) {
        throw std::invalid_argument("fidelity: qubit count mismatch");
    }
    return std::norm(a.amp.dot(b.amp));
}

}  // namespace lpd

#endif  // LPD_DENSE_ORACLE_HPP
