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

#ifndef LPD_PAULI_HPP
#define LPD_PAULI_HPP

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace lpd {

/// Maximum number of qubits a PauliString can hold (one 64-bit mask pair).
inline constexpr std::uint32_t kMaxQubits = 64;

/// A single n-qubit Pauli string stored as an X/Z bitmask pair.
///
/// Qubit i carries I, X, Y, Z iff (x_i, z_i) equals (0,0), (1,0), (1,1),
/// (0,1). The operator identified with the mask pair is the Hermitian
/// product i^{|x & z|} X^x Z^z, so the single-qubit (1,1) case is
/// i * X * Z = Y. Bit i of the masks is qubit i; qubit 0 is the leftmost
/// character in the text form.
struct PauliString {
    std::uint32_t n = 0;
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    PauliString() = default;
    PauliString(std::uint32_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
        : n(n_qubits), x(x_mask), z(z_mask) {
        if (n == 0 || n > kMaxQubits) {
            throw std::invalid_argument("PauliString: qubit count must be in [1, 64], got " +
                                        std::to_string(n_qubits));
        }
        if (n < kMaxQubits && ((x | z) >> n) != 0) {
            throw std::invalid_argument("PauliString: mask bits set beyond qubit count");
        }
    }

    /// The identity string on n qubits.
    static PauliString identity(std::uint32_t n_qubits) {
        return PauliString(n_qubits, 0, 0);
    }

    /// A single-site Pauli: letter in {'X','Y','Z'} acting on qubit q, identity elsewhere.
    static PauliString single(std::uint32_t n_qubits, char letter, std::uint32_t q) {
        if (q >= n_qubits) {
            throw std::invalid_argument("PauliString::single: qubit index out of range");
        }
        std::uint64_t bit = std::uint64_t{1} << q;
        switch (letter) {
            case 'X': return PauliString(n_qubits, bit, 0);
            case 'Y': return PauliString(n_qubits, bit, bit);
            case 'Z': return PauliString(n_qubits, 0, bit);
            default:
                throw std::invalid_argument(std::string("PauliString::single: bad letter '") +
                                            letter + "'");
        }
    }

    /// Number of non-identity sites.
    std::uint32_t weight() const { return static_cast<std::uint32_t>(std::popcount(x | z)); }

    bool is_identity() const { return (x | z) == 0; }

    /// Letter at qubit q, one of 'I','X','Y','Z'.
    char letter_at(std::uint32_t q) const {
        bool xb = (x >> q) & 1, zb = (z >> q) & 1;
        return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }

    bool operator==(const PauliString& o) const { return n == o.n && x == o.x && z == o.z; }
    bool operator!=(const PauliString& o) const { return !(*this == o); }

    /// Canonical listing order: ascending weight, then x mask, then z mask.
    friend bool string_order_less(const PauliString& a, const PauliString& b) {
        auto wa = a.weight(), wb = b.weight();
        if (wa != wb) return wa < wb;
        if (a.x != b.x) return a.x < b.x;
        return a.z < b.z;
    }
};

/// True iff a and b commute. Two Pauli strings either commute or anticommute;
/// they anticommute iff the symplectic form popcount(a.x & b.z) + popcount(a.z & b.x)
/// is odd.
inline bool commutes(const PauliString& a, const PauliString& b) {
    if (a.n != b.n) {
        throw std::invalid_argument("commutes: length mismatch");
    }
    auto parity = std::popcount(a.x & b.z) ^ std::popcount(a.z & b.x);
    return (parity & 1) == 0;
}

/// Product of two Pauli strings, up to phase: a * b = i^phase_power * string.
struct PauliProduct {
    PauliString string;
    int phase_power;  // exponent of i, in {0,1,2,3}
};

/// Multiply two Pauli strings. The result satisfies a * b == i^{phase_power} * string
/// as operators, with phase_power reduced mod 4.
inline PauliProduct multiply(const PauliString& a, const PauliString& b) {
    if (a.n != b.n) {
        throw std::invalid_argument("multiply: length mismatch");
    }
    std::uint64_t rx = a.x ^ b.x;
    std::uint64_t rz = a.z ^ b.z;
    // Phase bookkeeping for sigma_{x,z} = i^{x z} X^x Z^z per qubit:
    // exponent = |a.x & a.z| + |b.x & b.z| - |rx & rz| + 2 |a.z & b.x|  (mod 4).
    int g = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) - std::popcount(rx & rz) +
            2 * std::popcount(a.z & b.x);
    g &= 3;
    return {PauliString(a.n, rx, rz), g};
}

struct PauliStringHash {
    std::size_t operator()(const PauliString& p) const {
        // splitmix64-style mixing of the two masks.
        std::uint64_t h = p.x + 0x9e3779b97f4a7c15ULL;
        h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
        h ^= p.z + 0x94d049bb133111ebULL + (h << 6) + (h >> 2);
        h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

/// Parse the text form of a Pauli string: characters from {I,X,Y,Z}, qubit 0
/// leftmost. Throws std::invalid_argument naming the offending position.
inline PauliString pauli_string_from_text(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("pauli string text is empty");
    }
    if (text.size() > kMaxQubits) {
        throw std::invalid_argument("pauli string text longer than 64 qubits");
    }
    std::uint64_t x = 0, z = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        std::uint64_t bit = std::uint64_t{1} << i;
        switch (text[i]) {
            case 'I': break;
            case 'X': x |= bit; break;
            case 'Y': x |= bit; z |= bit; break;
            case 'Z': z |= bit; break;
            default:
                throw std::invalid_argument("bad pauli letter '" + std::string(1, text[i]) +
                                            "' at position " + std::to_string(i));
        }
    }
    return PauliString(static_cast<std::uint32_t>(text.size()), x, z);
}

/// Text form of a Pauli string, qubit 0 leftmost.
inline std::string pauli_string_to_text(const PauliString& p) {
    std::string s(p.n, 'I');
    for (std::uint32_t i = 0; i < p.n; ++i) {
        s[i] = p.letter_at(i);
    }
    return s;
}

}  // namespace lpd

#endif  // LPD_PAULI_HPP
