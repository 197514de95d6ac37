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

#ifndef LPD_PRODUCT_STATE_HPP
#define LPD_PRODUCT_STATE_HPP

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "lpd/pauli.hpp"

namespace lpd {

/// A product state given by one Bloch vector (rx, ry, rz) per qubit,
/// |r| <= 1 (mixed per-qubit marginals allowed). Pauli expectations
/// factorize over qubits.
struct ProductState {
    std::vector<std::array<double, 3>> bloch;

    std::uint32_t n_qubits() const { return static_cast<std::uint32_t>(bloch.size()); }

    /// Computational-basis pattern, e.g. "0101": '0' is Bloch (0,0,+1),
    /// '1' is (0,0,-1). Character i is qubit i.
    static ProductState from_bit_pattern(const std::string& bits) {
        if (bits.empty() || bits.size() > kMaxQubits) {
            throw std::invalid_argument("bit pattern length must be in [1, 64]");
        }
        ProductState s;
        s.bloch.reserve(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '0') {
                s.bloch.push_back({0, 0, 1});
            } else if (bits[i] == '1') {
                s.bloch.push_back({0, 0, -1});
            } else {
                throw std::invalid_argument("bad bit '" + std::string(1, bits[i]) +
                                            "' at position " + std::to_string(i));
            }
        }
        return s;
    }

    /// |0101...> on n qubits.
    static ProductState alternating(std::uint32_t n) {
        std::string bits;
        for (std::uint32_t i = 0; i < n; ++i) bits.push_back(i % 2 == 0 ? '0' : '1');
        return from_bit_pattern(bits);
    }
};

/// Tr(rho P) for a product state: product over supp(P) of the matching Bloch
/// component; the identity string gives 1.
inline double product_expectation(const ProductState& state, const PauliString& p) {
    if (state.n_qubits() != p.n) {
        throw std::invalid_argument("product_expectation: qubit count mismatch");
    }
    double v = 1.0;
    std::uint64_t supp = p.x | p.z;
    while (supp) {
        unsigned q = static_cast<unsigned>(std::countr_zero(supp));
        supp &= supp - 1;
        const auto& b = state.bloch[q];
        switch (p.letter_at(q)) {
            case 'X': v *= b[0]; break;
            case 'Y': v *= b[1]; break;
            default: v *= b[2]; break;
        }
        if (v == 0.0) return 0.0;
    }
    return v;
}

}  // namespace lpd

#endif  // LPD_PRODUCT_STATE_HPP
