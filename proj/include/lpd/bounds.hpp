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

#ifndef LPD_BOUNDS_HPP
#define LPD_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

#include "lpd/dense_oracle.hpp"
#include "lpd/hamiltonian.hpp"
#include "lpd/pauli_operator.hpp"

namespace lpd {

/// The constants the truncation-error theory is parameterized by.
struct ModelConstants {
    std::uint32_t k_o = 1;  // max initial observable weight
    std::uint32_t k_h = 2;  // max Hamiltonian term weight
    std::uint32_t gamma = 1;  // layer count
    double alpha = 1;       // 2 * max_l |alpha_l|
    double t = 0;
    double eps = 0.1;
};

inline void validate(const ModelConstants& c) {
    if (c.k_o < 1 || c.k_h < 1 || c.gamma < 1) {
        throw std::invalid_argument("ModelConstants: k_o, k_h, gamma must be >= 1");
    }
    if (!(c.alpha > 0) || !(c.t >= 0)) {
        throw std::invalid_argument("ModelConstants: need alpha > 0 and t >= 0");
    }
    if (!(c.eps > 0) || c.eps > 1) {
        throw std::invalid_argument("ModelConstants: need eps in (0, 1]");
    }
}

/// Convenience: read k_h, gamma, alpha off a Hamiltonian and k_o off the
/// observable.
inline ModelConstants model_constants(const Hamiltonian& h, const PauliOperator& o, double t,
                                      double eps) {
    ModelConstants c;
    c.k_o = std::max<std::uint32_t>(1, o.max_weight());
    c.k_h = std::max<std::uint32_t>(1, h.max_term_weight());
    c.gamma = static_cast<std::uint32_t>(std::max<std::size_t>(1, h.layer_count()));
    c.alpha = h.alpha();
    c.t = t;
    c.eps = eps;
    return c;
}

struct TimeValidity {
    double t0 = 0;
    bool valid = false;
};

/// t0 = 1 / (e * alpha * k_h^gamma * (k_o + k_h)); the error theory needs
/// t < t0.
inline TimeValidity time_validity(const ModelConstants& c) {
    validate(c);
    double khg = std::pow(static_cast<double>(c.k_h), static_cast<double>(c.gamma));
    TimeValidity v;
    v.t0 = 1.0 / (std::numbers::e * c.alpha * khg * (c.k_o + c.k_h));
    v.valid = c.t < v.t0;
    return v;
}

struct BoundResult {
    double value = 0;     // relative to the observable two-norm
    bool applicable = false;  // false when t >= t0 (reported, never silent)
    double t0 = 0;
};

/// Truncation error (relative to ||O||_2) of a whole propagation that keeps
/// m_star weight jumps:
///   2 alpha t k_o (k_o + k_h) k_h^{gamma+1} * (alpha t e k_h^gamma (k_o+k_h))^{m_star}.
/// The base of the power equals t/t0, so the bound only shrinks with m_star
/// inside the validity window.
inline BoundResult truncation_error_bound(const ModelConstants& c, std::uint32_t m_star) {
    auto tv = time_validity(c);
    double khg = std::pow(static_cast<double>(c.k_h), static_cast<double>(c.gamma));
    double base = c.alpha * c.t * std::numbers::e * khg * (c.k_o + c.k_h);
    double prefactor = 2.0 * c.alpha * c.t * c.k_o * (c.k_o + c.k_h) * khg *
                       static_cast<double>(c.k_h);
    BoundResult b;
    b.t0 = tv.t0;
    b.applicable = tv.valid;
    b.value = prefactor * std::pow(base, static_cast<double>(m_star));
    return b;
}

struct ThresholdResult {
    std::uint32_t m_star = 0;
    std::uint32_t w_star = 0;
    double target = 0;      // eps, or eps^2 * delta in random mode
    double bound_at_m = 0;  // bound value at m_star
    bool applicable = false;
};

enum class ThresholdMode { entangled, random };

/// Smallest m_star whose truncation_error_bound is at or below the target
/// (eps for entangled inputs; eps^2 * delta for random inputs, via the
/// Markov argument), and the induced weight cut w* = k_o + m_star (k_h - 1).
inline ThresholdResult truncation_threshold(const ModelConstants& c, ThresholdMode mode,
                                            std::optional<double> delta = std::nullopt) {
    validate(c);
    ThresholdResult res;
    if (mode == ThresholdMode::random) {
        if (!delta.has_value() || !(*delta > 0) || !(*delta < 1)) {
            throw std::invalid_argument("truncation_threshold: random mode needs delta in (0,1)");
        }
        res.target = c.eps * c.eps * *delta;
    } else {
        res.target = c.eps;
    }
    auto tv = time_validity(c);
    res.applicable = tv.valid;
    if (!tv.valid) {
        // Base >= 1: the bound never decreases, no finite threshold exists.
        return res;
    }
    std::uint32_t m = 0;
    BoundResult b = truncation_error_bound(c, m);
    while (b.value > res.target) {
        ++m;
        b = truncation_error_bound(c, m);
        if (m > 1000000) {
            throw std::runtime_error("truncation_threshold: no threshold below 1e6 jumps");
        }
    }
    res.m_star = m;
    res.w_star = c.k_o + m * (c.k_h - 1);
    res.bound_at_m = b.value;
    return res;
}

struct NormFlowBound {
    double value = 0;
    bool m_exceeds_g = false;  // no m-jump path exists yet; bound is exactly 0
};

/// High-weight norm cumulation after g gates:
///   N_{>= m}^{(g)} <= k_o * C(g, m) * sin^m(dt_eff) * ||O||_2.
/// The binomial is an exact factor product; when that overflows, the whole
/// value is rebuilt in log space from the same per-factor terms (term-wise
/// logs avoid the cancellation a large-argument lgamma difference suffers).
inline NormFlowBound norm_flow_bound(std::uint64_t g, std::uint64_t m, double dt_eff,
                                     std::uint32_t k_o, double norm_o) {
    NormFlowBound res;
    if (m > g) {
        res.m_exceeds_g = true;
        return res;
    }
    double s = std::sin(dt_eff);
    if (m > 0 && s <= 0) {
        res.value = 0;
        return res;
    }
    double binom = 1;
    for (std::uint64_t i = 1; i <= m; ++i) {
        binom *= static_cast<double>(g - m + i) / static_cast<double>(i);
    }
    if (std::isfinite(binom)) {
        res.value = k_o * binom * std::pow(s, static_cast<double>(m)) * norm_o;
    } else {
        double logv = std::log(static_cast<double>(k_o)) + std::log(norm_o) +
                      static_cast<double>(m) * std::log(s);
        for (std::uint64_t i = 1; i <= m; ++i) {
            logv += std::log(static_cast<double>(g - m + i) / static_cast<double>(i));
        }
        res.value = std::exp(logv);
    }
    return res;
}

/// Per-pair entry of the local-observable entanglement report.
struct PairReport {
    std::size_t j = 0, j_prime = 0;
    std::vector<std::uint32_t> support;  // supp(P_j P_j'), ascending
    double entropy_bits = 0;             // S(rho) of that support
    double trace_norm_to_mixed = 0;      // Tr|rho - I/2^k| (full trace norm)
    double pinsker_loose = 0;            // sqrt(2k - 2 S_bits): the bits-literal form
    double pinsker_tight = 0;            // sqrt(2 ln2 (k - S_bits)): rigorous Pinsker in nats
    double op_norm_product = 0;          // ||O_j^dag O_j'|| = |beta_j beta_j'|
    double entropy_required_bits = 0;    // k - 0.5 ||O||^4 / (sum_j ||O_j||)^4
};

struct EntanglementReport {
    std::vector<PairReport> pairs;  // pairs with nonempty support only
    double expectation = 0;         // <psi|O|psi>
    double lhs = 0;                 // its square
    double two_norm_sq = 0;
    double sum_term_norms = 0;      // sum_j |beta_j|
    double rhs_trace_form = 0;      // ||O||^2 + sum |bb'| Tr|rho - mixed|
    double rhs_entropy_form = 0;    // ||O||^2 + sum |bb'| sqrt(2k - 2S)
    bool chain_trace_holds = false;     // lhs <= rhs_trace_form
    bool chain_entropy_holds = false;   // lhs <= rhs_entropy_form
    bool entropy_condition_all_pairs = false;  // S >= required on every pair
    bool conclusion_two_norm_bound = false;    // lhs <= 2 ||O||^2
};

/// Evaluate the local-observable inequality chain against a dense state:
/// the trace-distance bound, its entropy relaxation, the per-pair entropy
/// condition, and the 2-norm conclusion. The entropy relaxation is carried
/// in two conventions: the bits-literal form (looser; what the analysis
/// writes) and the rigorous Pinsker form with the ln 2 factor tracked.
inline EntanglementReport entanglement_condition_report(const DenseState& state,
                                                        const PauliOperator& o) {
    if (o.n_qubits() != state.n) {
        throw std::invalid_argument("entanglement_condition_report: qubit count mismatch");
    }
    EntanglementReport rep;
    auto terms = o.sorted_terms();
    rep.expectation = dense_expectation(state, o);
    rep.lhs = rep.expectation * rep.expectation;
    for (const auto& [p, c] : terms) {
        rep.two_norm_sq += c * c;
        rep.sum_term_norms += std::abs(c);
    }
    double ratio = rep.two_norm_sq * rep.two_norm_sq /
                   (rep.sum_term_norms * rep.sum_term_norms * rep.sum_term_norms *
                    rep.sum_term_norms);
    rep.rhs_trace_form = rep.two_norm_sq;
    rep.rhs_entropy_form = rep.two_norm_sq;
    rep.entropy_condition_all_pairs = true;

    std::map<std::uint64_t, SubsystemSpectrum> spectra;  // keyed by support mask
    for (std::size_t j = 0; j < terms.size(); ++j) {
        for (std::size_t jp = 0; jp < terms.size(); ++jp) {
            auto prod = multiply(terms[j].first, terms[jp].first);
            std::uint64_t supp = prod.string.x | prod.string.z;
            if (supp == 0) continue;  // identity product contributes exactly 0
            PairReport pr;
            pr.j = j;
            pr.j_prime = jp;
            for (std::uint32_t q = 0; q < state.n; ++q) {
                if ((supp >> q) & 1) pr.support.push_back(q);
            }
            if (pr.support.size() > kDenseMatrixCap) {
                throw std::invalid_argument(
                    "entanglement_condition_report: pair support too large for dense RDMs");
            }
            auto it = spectra.find(supp);
            if (it == spectra.end()) {
                it = spectra.emplace(supp, subsystem_entropy(state, pr.support)).first;
            }
            const auto& spec = it->second;
            double k = static_cast<double>(pr.support.size());
            pr.entropy_bits = spec.entropy_bits;
            pr.trace_norm_to_mixed = 2.0 * spec.tracedist_to_mixed;
            pr.pinsker_loose = std::sqrt(std::max(0.0, 2 * k - 2 * spec.entropy_bits));
            pr.pinsker_tight =
                std::sqrt(std::max(0.0, 2 * std::numbers::ln2 * (k - spec.entropy_bits)));
            pr.op_norm_product = std::abs(terms[j].second * terms[jp].second);
            pr.entropy_required_bits = k - 0.5 * ratio;
            rep.rhs_trace_form += pr.op_norm_product * pr.trace_norm_to_mixed;
            rep.rhs_entropy_form += pr.op_norm_product * pr.pinsker_loose;
            if (pr.entropy_bits < pr.entropy_required_bits) {
                rep.entropy_condition_all_pairs = false;
            }
            rep.pairs.push_back(std::move(pr));
        }
    }
    rep.chain_trace_holds = rep.lhs <= rep.rhs_trace_form + 1e-12;
    rep.chain_entropy_holds = rep.lhs <= rep.rhs_entropy_form + 1e-12;
    rep.conclusion_two_norm_bound = rep.lhs <= 2 * rep.two_norm_sq + 1e-12;
    return rep;
}

}  // namespace lpd

#endif  // LPD_BOUNDS_HPP
