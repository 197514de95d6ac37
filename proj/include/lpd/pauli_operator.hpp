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

#ifndef LPD_PAULI_OPERATOR_HPP
#define LPD_PAULI_OPERATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lpd/pauli.hpp"

namespace lpd {

/// A Hermitian operator stored as a sparse sum of Pauli strings with real
/// coefficients. Hermiticity of every supported transformation (rotation
/// conjugation, Hermitian commutator, truncation) keeps coefficients real,
/// so no complex storage is needed.
class PauliOperator {
  public:
    using TermMap = std::unordered_map<PauliString, double, PauliStringHash>;

    PauliOperator() = default;
    explicit PauliOperator(std::uint32_t n_qubits) : n_(n_qubits) {
        if (n_qubits == 0 || n_qubits > kMaxQubits) {
            throw std::invalid_argument("PauliOperator: qubit count must be in [1, 64]");
        }
    }

    /// Convenience: a single-term operator c * P.
    PauliOperator(const PauliString& p, double c) : n_(p.n) { add_term(p, c); }

    std::uint32_t n_qubits() const { return n_; }
    std::size_t term_count() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void reserve(std::size_t cap) { terms_.reserve(cap); }
    void clear() { terms_.clear(); }

    /// Accumulate c onto the coefficient of p. Zero-sum cancellations keep
    /// their (zero) entry until pruned.
    void add_term(const PauliString& p, double c) {
        if (p.n != n_) {
            throw std::invalid_argument("PauliOperator::add_term: qubit count mismatch");
        }
        terms_[p] += c;
    }

    void set_term(const PauliString& p, double c) {
        if (p.n != n_) {
            throw std::invalid_argument("PauliOperator::set_term: qubit count mismatch");
        }
        terms_[p] = c;
    }

    /// Coefficient of p (0 when absent).
    double coeff(const PauliString& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? 0.0 : it->second;
    }

    /// axpy: *this += a * other.
    void add_scaled(const PauliOperator& other, double a) {
        if (other.n_ != n_) {
            throw std::invalid_argument("PauliOperator::add_scaled: qubit count mismatch");
        }
        for (const auto& [p, c] : other.terms_) {
            terms_[p] += a * c;
        }
    }

    /// l2 norm of the coefficient vector. Equals 2^{-n/2} times the
    /// Frobenius norm of the dense matrix.
    double two_norm() const {
        double s = 0;
        for (const auto& [p, c] : terms_) s += c * c;
        return std::sqrt(s);
    }

    /// Sum over terms of |coefficient|; a certified upper bound on the
    /// operator (spectral) norm.
    double coeff_one_norm() const {
        double s = 0;
        for (const auto& [p, c] : terms_) s += std::abs(c);
        return s;
    }

    /// Squared two-norm per weight class: bins[w] = sum of c^2 over terms of
    /// weight w. Size n+1; sum of bins equals two_norm()^2 exactly.
    std::vector<double> weight_histogram() const {
        std::vector<double> bins(n_ + 1, 0.0);
        for (const auto& [p, c] : terms_) bins[p.weight()] += c * c;
        return bins;
    }

    /// Largest weight present with nonzero coefficient (0 for empty/identity).
    std::uint32_t max_weight() const {
        std::uint32_t w = 0;
        for (const auto& [p, c] : terms_) {
            if (c != 0.0) w = std::max(w, p.weight());
        }
        return w;
    }

    /// Remove every term of weight > w_max. Returns the two-norm of the
    /// removed part, so kept^2 + returned^2 == old two_norm^2. Coefficients
    /// of kept terms are untouched (no renormalization).
    double truncate_by_weight(std::uint32_t w_max) {
        double dropped_sq = 0;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.weight() > w_max) {
                dropped_sq += it->second * it->second;
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
        return std::sqrt(dropped_sq);
    }

    /// Remove every term with |coefficient| < abs_threshold. Returns the
    /// two-norm of the removed part.
    double prune_small(double abs_threshold) {
        double dropped_sq = 0;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (std::abs(it->second) < abs_threshold) {
                dropped_sq += it->second * it->second;
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
        return std::sqrt(dropped_sq);
    }

    /// Terms in canonical listing order: (weight, x mask, z mask) ascending.
    std::vector<std::pair<PauliString, double>> sorted_terms() const {
        std::vector<std::pair<PauliString, double>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
            return string_order_less(a.first, b.first);
        });
        return v;
    }

    void swap(PauliOperator& o) {
        std::swap(n_, o.n_);
        terms_.swap(o.terms_);
    }

  private:
    std::uint32_t n_ = 0;
    TermMap terms_;
};

inline double pauli_two_norm(const PauliOperator& o) { return o.two_norm(); }

/// Shannon entropy (base 2) of the normalized coefficient-square distribution
/// p_P = c_P^2 / ||O||^2. Zero for a single Pauli term; throws
/// std::domain_error for the zero operator, whose distribution is undefined.
inline double operator_magic(const PauliOperator& o) {
    double nsq = 0;
    for (const auto& [p, c] : o.terms()) nsq += c * c;
    if (nsq == 0.0) {
        throw std::domain_error("operator_magic: zero operator has no coefficient distribution");
    }
    double h = 0;
    for (const auto& [p, c] : o.terms()) {
        if (c == 0.0) continue;
        double prob = c * c / nsq;
        h -= prob * std::log2(prob);
    }
    return h;
}

/// One Pauli rotation exp(-i * theta * generator) as applied to states.
/// Heisenberg conjugation by this gate maps an anticommuting string P to
/// cos(2 theta) P + i sin(2 theta) G P, so the effective branching angle
/// is 2 * theta.
struct RotationGate {
    PauliString generator;
    double theta;
};

struct RotatedTerms {
    std::pair<PauliString, double> term[2];
    int count;
};

/// Sign s in -i G P = s R, where R is the Hermitian mask product of G and P.
/// Only meaningful when G and P anticommute (the product phase is odd).
inline double branch_sign(int phase_power) { return phase_power == 3 ? 1.0 : -1.0; }

/// Conjugate a single weighted term by a rotation gate:
///   commuting generator:      {(P, c)}
///   anticommuting generator:  {(P, c cos 2t), (R, s c sin 2t)}
/// where R is the mask product of generator and P and s its branch sign.
/// Exact conjugation: the squared coefficients always sum to c^2.
inline RotatedTerms rotate_term(const PauliString& p, double c, const RotationGate& gate) {
    if (commutes(gate.generator, p)) {
        return {{{p, c}, {}}, 1};
    }
    auto prod = multiply(gate.generator, p);
    double c2 = std::cos(2 * gate.theta);
    double s2 = std::sin(2 * gate.theta);
    return {{{p, c * c2}, {prod.string, branch_sign(prod.phase_power) * c * s2}}, 2};
}

/// Hermitian commutator: returns -i[A, B], which has real coefficients when
/// A and B do. All norms are invariant under the -i factor, and nested
/// commutator norms may iterate this helper directly.
inline PauliOperator commutator_herm(const PauliOperator& a, const PauliOperator& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("commutator_herm: qubit count mismatch");
    }
    PauliOperator out(a.n_qubits());
    for (const auto& [pa, ca] : a.terms()) {
        for (const auto& [pb, cb] : b.terms()) {
            if (commutes(pa, pb)) continue;
            // [P,Q] = 2 P Q for anticommuting strings; -i * i^g is +-1.
            auto prod = multiply(pa, pb);
            double s = (prod.phase_power == 1) ? 1.0 : -1.0;
            out.add_term(prod.string, 2.0 * s * ca * cb);
        }
    }
    return out;
}

namespace detail {

inline std::string format_coeff(double c) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", c);
    return buf;
}

}  // namespace detail

/// Parse the operator text format: one "<coefficient> <IXYZ string>" pair per
/// line, '#' lines and blank lines ignored, qubit 0 leftmost. Repeated
/// strings accumulate. Throws std::invalid_argument naming the line of the
/// first problem.
inline PauliOperator pauli_operator_from_stream(std::istream& in) {
    PauliOperator out;
    std::string line;
    std::size_t lineno = 0;
    std::uint32_t n = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        double c;
        std::string text;
        if (!(ls >> c >> text)) {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected '<coefficient> <pauli string>'");
        }
        std::string extra;
        if (ls >> extra) {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": trailing token '" + extra + "'");
        }
        PauliString p;
        try {
            p = pauli_string_from_text(text);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (n == 0) {
            n = p.n;
            out = PauliOperator(n);
        } else if (p.n != n) {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": string length " + std::to_string(p.n) +
                                        " does not match earlier length " + std::to_string(n));
        }
        out.add_term(p, c);
    }
    if (n == 0) {
        throw std::invalid_argument("operator text contains no terms");
    }
    return out;
}

inline PauliOperator pauli_operator_from_text(const std::string& text) {
    std::istringstream in(text);
    return pauli_operator_from_stream(in);
}

/// Write the operator text format in canonical listing order.
inline void pauli_operator_to_stream(const PauliOperator& o, std::ostream& out) {
    for (const auto& [p, c] : o.sorted_terms()) {
        out << detail::format_coeff(c) << ' ' << pauli_string_to_text(p) << '\n';
    }
}

inline std::string pauli_operator_to_text(const PauliOperator& o) {
    std::ostringstream out;
    pauli_operator_to_stream(o, out);
    return out.str();
}

}  // namespace lpd

#endif  // LPD_PAULI_OPERATOR_HPP
