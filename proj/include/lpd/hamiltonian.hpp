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

#ifndef LPD_HAMILTONIAN_HPP
#define LPD_HAMILTONIAN_HPP

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "lpd/pauli.hpp"
#include "lpd/pauli_operator.hpp"

namespace lpd {

/// H = sum_l alpha_l G_l with the terms partitioned into layers of pairwise
/// support-disjoint generators. Terms keep their construction order; the
/// layer partition stores indices into `terms`.
struct Hamiltonian {
    std::uint32_t n = 0;
    std::vector<std::pair<double, PauliString>> terms;
    std::vector<std::vector<std::size_t>> layers;

    std::size_t term_count() const { return terms.size(); }
    std::size_t layer_count() const { return layers.size(); }

    /// Max weight over terms (k_h).
    std::uint32_t max_term_weight() const {
        std::uint32_t k = 0;
        for (const auto& [a, g] : terms) k = std::max(k, g.weight());
        return k;
    }

    double max_abs_coeff() const {
        double m = 0;
        for (const auto& [a, g] : terms) m = std::max(m, std::abs(a));
        return m;
    }

    /// alpha = 2 * max_l |alpha_l|; the per-gate effective-angle scale used
    /// by the bound calculators (dt_eff = alpha * t / r).
    double alpha() const { return 2.0 * max_abs_coeff(); }

    /// The full operator as a sparse Pauli sum.
    PauliOperator to_operator() const {
        PauliOperator o(n);
        for (const auto& [a, g] : terms) o.add_term(g, a);
        return o;
    }

    /// One layer H_gamma as a sparse Pauli sum.
    PauliOperator layer_operator(std::size_t gamma) const {
        PauliOperator o(n);
        for (std::size_t idx : layers.at(gamma)) {
            o.add_term(terms[idx].second, terms[idx].first);
        }
        return o;
    }
};

/// Populate H.layers by greedy coloring of the support-overlap graph in term
/// order: each term joins the first layer whose members all have disjoint
/// support with it. Deterministic given term order.
inline void layerize(Hamiltonian& h) {
    h.layers.clear();
    std::vector<std::uint64_t> layer_support;
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        std::uint64_t supp = h.terms[i].second.x | h.terms[i].second.z;
        bool placed = false;
        for (std::size_t g = 0; g < h.layers.size(); ++g) {
            if ((layer_support[g] & supp) == 0) {
                h.layers[g].push_back(i);
                layer_support[g] |= supp;
                placed = true;
                break;
            }
        }
        if (!placed) {
            h.layers.push_back({i});
            layer_support.push_back(supp);
        }
    }
}

/// Mixed-field Ising chain: H = sum_j X_j X_{j+1} + h_x sum_j X_j + h_y sum_j Y_j,
/// with an optional periodic bond (n-1, 0). Term order: bonds left to right,
/// then X fields, then Y fields. Layers come out as even bonds / odd bonds /
/// X fields / Y fields for even-n chains.
inline Hamiltonian build_qmfi(std::uint32_t n, double h_x, double h_y, bool periodic) {
    if (n < 2) {
        throw std::invalid_argument("build_qmfi: need at least 2 qubits");
    }
    if (n > kMaxQubits) {
        throw std::invalid_argument("build_qmfi: more than 64 qubits unsupported");
    }
    Hamiltonian h;
    h.n = n;
    for (std::uint32_t j = 0; j + 1 < n; ++j) {
        std::uint64_t bits = (std::uint64_t{1} << j) | (std::uint64_t{1} << (j + 1));
        h.terms.emplace_back(1.0, PauliString(n, bits, 0));
    }
    if (periodic && n > 2) {
        std::uint64_t bits = (std::uint64_t{1} << (n - 1)) | std::uint64_t{1};
        h.terms.emplace_back(1.0, PauliString(n, bits, 0));
    }
    for (std::uint32_t j = 0; j < n; ++j) {
        h.terms.emplace_back(h_x, PauliString::single(n, 'X', j));
    }
    for (std::uint32_t j = 0; j < n; ++j) {
        h.terms.emplace_back(h_y, PauliString::single(n, 'Y', j));
    }
    layerize(h);
    return h;
}

/// Parse a Hamiltonian from the operator text format (one
/// "<coefficient> <IXYZ string>" per line). Line order defines term order.
inline Hamiltonian hamiltonian_from_stream(std::istream& in) {
    Hamiltonian h;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        double a;
        std::string text;
        if (!(ls >> a >> text)) {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected '<coefficient> <pauli string>'");
        }
        PauliString g;
        try {
            g = pauli_string_from_text(text);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (g.is_identity()) {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": identity term not allowed in a Hamiltonian");
        }
        if (h.n == 0) {
            h.n = g.n;
        } else if (g.n != h.n) {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": string length mismatch");
        }
        h.terms.emplace_back(a, g);
    }
    if (h.terms.empty()) {
        throw std::invalid_argument("Hamiltonian text contains no terms");
    }
    layerize(h);
    return h;
}

inline Hamiltonian hamiltonian_from_text(const std::string& text) {
    std::istringstream in(text);
    return hamiltonian_from_stream(in);
}

}  // namespace lpd

#endif  // LPD_HAMILTONIAN_HPP
