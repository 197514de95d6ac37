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

#ifndef LPD_STATES_HPP
#define LPD_STATES_HPP

#include <variant>

#include "lpd/dense_oracle.hpp"
#include "lpd/mps.hpp"
#include "lpd/pauli_operator.hpp"
#include "lpd/product_state.hpp"

namespace lpd {

/// Any state backend expectation evaluation can run against.
using StateHandle = std::variant<ProductState, DenseState, MpsState>;

inline std::uint32_t state_n_qubits(const StateHandle& state) {
    return std::visit(
        [](const auto& s) -> std::uint32_t {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DenseState>) {
                return s.n;
            } else {
                return s.n_qubits();
            }
        },
        state);
}

/// Tr(rho P) dispatched to the backend.
inline double expectation(const PauliString& p, const StateHandle& state) {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ProductState>) {
                return product_expectation(s, p);
            } else if constexpr (std::is_same_v<T, DenseState>) {
                return dense_pauli_expectation(s, p);
            } else {
                return mps_pauli_expectation(s, p);
            }
        },
        state);
}

/// Tr(rho O) dispatched to the backend. The MPS backend uses the
/// prefix-sharing sweep over the whole sum.
inline double expectation(const PauliOperator& o, const StateHandle& state) {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ProductState>) {
                double acc = 0;
                for (const auto& [p, c] : o.terms()) acc += c * product_expectation(s, p);
                return acc;
            } else if constexpr (std::is_same_v<T, DenseState>) {
                return dense_expectation(s, o);
            } else {
                return mps_expectation(s, o);
            }
        },
        state);
}

}  // namespace lpd

#endif  // LPD_STATES_HPP
