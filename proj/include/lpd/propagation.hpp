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

#ifndef LPD_PROPAGATION_HPP
#define LPD_PROPAGATION_HPP

#include <chrono>
#include <cmath>
#include <functional>
#include <vector>

#include "lpd/hamiltonian.hpp"
#include "lpd/pauli_operator.hpp"
#include "lpd/states.hpp"
#include "lpd/trotter.hpp"

namespace lpd {

/// Per-step diagnostics of a backward propagation run.
struct StepRecord {
    int d = 0;                      // step index, 1-based
    double mu = 0;                  // expectation snapshot (when a state is attached)
    bool has_mu = false;
    double discarded_norm = 0;      // two-norm removed by the end-of-step weight truncation
    double pruned_dust_norm = 0;    // two-norm removed by numerical dust pruning within the step
    std::size_t term_count = 0;     // term count after truncation
    std::size_t term_count_step_start = 0;  // term count at step start (pre-gate)
    std::vector<double> weight_histogram;   // squared norms by weight, before truncation
    double wall_seconds = 0;        // cumulative
};

struct PropagationResult {
    std::vector<StepRecord> steps;
    double final_mu = 0;
    bool has_final_mu = false;
    PauliOperator final_operator;
    // Effective configuration echo.
    std::uint32_t n = 0;
    double t = 0;
    int r = 1;
    int p = 1;
    std::uint32_t w_star = 0;
    std::size_t gates_per_step = 0;
    std::size_t layer_count = 0;
    double dt_eff = 0;  // alpha * t / r with alpha = 2 max|alpha_l|

    double total_discarded_norm() const {
        double s = 0;
        for (const auto& rec : steps) s += rec.discarded_norm;
        return s;
    }
};

struct LpdOptions {
    double dust_rel_threshold = 1e-14;  // relative to the current operator two-norm; 0 disables
    bool record_expectations = true;    // per-step snapshots when a state is attached
    bool keep_final_operator = true;
    // Called after every gate of every step with the current (unpruned-by-
    // weight) operator; used by the norm-flow instrumentation. Keep it cheap.
    std::function<void(std::size_t gate_index, const PauliOperator&)> gate_observer;
    // Called after each step's truncation with the fresh record and operator.
    std::function<void(const StepRecord&, const PauliOperator&)> step_observer;
};

/// Conjugate every term of O by one rotation gate. Branch outputs are summed
/// into colliding strings; dust below dust_abs_threshold is pruned, its norm
/// accumulated into *dust_norm_sq. Exact up to the pruning.
inline PauliOperator apply_gate(const PauliOperator& o, const RotationGate& g,
                                double dust_abs_threshold = 0.0,
                                double* dust_norm_sq = nullptr) {
    PauliOperator out(o.n_qubits());
    out.reserve(o.term_count() + o.term_count() / 2);
    const double c2 = std::cos(2 * g.theta);
    const double s2 = std::sin(2 * g.theta);
    for (const auto& [p, c] : o.terms()) {
        if (commutes(g.generator, p)) {
            out.add_term(p, c);
        } else {
            auto prod = multiply(g.generator, p);
            out.add_term(p, c * c2);
            out.add_term(prod.string, branch_sign(prod.phase_power) * c * s2);
        }
    }
    if (dust_abs_threshold > 0) {
        double pruned = out.prune_small(dust_abs_threshold);
        if (dust_norm_sq != nullptr) *dust_norm_sq += pruned * pruned;
    }
    return out;
}

/// One Trotter step of backward evolution: all gates of the step applied in
/// conjugation order, then one weight truncation at the very end (never
/// mid-step). Returns the step record (term_count, histogram, norms; mu left
/// unset).
inline StepRecord lpd_step(PauliOperator& o, const GateSchedule& schedule, std::uint32_t w_star,
                           const LpdOptions& opts = {}) {
    StepRecord rec;
    rec.term_count_step_start = o.term_count();
    double dust_sq = 0;
    double dust_abs = opts.dust_rel_threshold > 0
                          ? opts.dust_rel_threshold * o.two_norm()
                          : 0.0;
    std::size_t gate_index = 0;
    for (const auto& g : schedule.step_gates) {
        o = apply_gate(o, g, dust_abs, &dust_sq);
        if (opts.gate_observer) opts.gate_observer(gate_index, o);
        ++gate_index;
    }
    rec.weight_histogram = o.weight_histogram();
    rec.discarded_norm = o.truncate_by_weight(w_star);
    rec.pruned_dust_norm = std::sqrt(dust_sq);
    rec.term_count = o.term_count();
    return rec;
}

/// Alg-style full run: backward-evolve O through r Trotter steps built from
/// H, truncating to weight <= w_star at each step end, optionally evaluating
/// Tr(rho O) snapshots against a state. The returned expectation is exact
/// for the truncated operator (truncation is the only approximation beyond
/// Trotterization itself).
inline PropagationResult lpd_run(const Hamiltonian& h, const PauliOperator& observable, double t,
                                 int r, int p, std::uint32_t w_star,
                                 const StateHandle* state = nullptr,
                                 const LpdOptions& opts = {}) {
    if (t < 0) {
        throw std::invalid_argument("lpd_run: negative time");
    }
    if (r < 1) {
        throw std::invalid_argument("lpd_run: need r >= 1");
    }
    std::uint32_t k_o = observable.max_weight();
    if (w_star < k_o) {
        throw std::invalid_argument("lpd_run: w_star " + std::to_string(w_star) +
                                    " below the observable's max weight " + std::to_string(k_o) +
                                    " (the observable would be truncated away)");
    }
    if (state != nullptr && state_n_qubits(*state) != observable.n_qubits()) {
        throw std::invalid_argument("lpd_run: state and observable qubit counts differ");
    }
    GateSchedule schedule = trotter_schedule(h, p, t, r);

    PropagationResult res;
    res.n = observable.n_qubits();
    res.t = t;
    res.r = r;
    res.p = p;
    res.w_star = w_star;
    res.gates_per_step = schedule.gates_per_step();
    res.layer_count = h.layer_count();
    res.dt_eff = h.alpha() * t / r;
    res.steps.reserve(static_cast<std::size_t>(r));

    PauliOperator o = observable;
    auto t0 = std::chrono::steady_clock::now();
    for (int d = 1; d <= r; ++d) {
        StepRecord rec = lpd_step(o, schedule, w_star, opts);
        rec.d = d;
        if (state != nullptr && opts.record_expectations) {
            rec.mu = expectation(o, *state);
            rec.has_mu = true;
        }
        rec.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (opts.step_observer) opts.step_observer(rec, o);
        res.steps.push_back(std::move(rec));
    }
    if (state != nullptr) {
        bool reuse = !res.steps.empty() && res.steps.back().has_mu;
        res.final_mu = reuse ? res.steps.back().mu : expectation(o, *state);
        res.has_final_mu = true;
    }
    if (opts.keep_final_operator) {
        res.final_operator = std::move(o);
    }
    return res;
}

/// Max term count a weight-truncated n-qubit operator can reach:
/// sum over w <= w_star of 3^w C(n, w), plus 1 for the identity class
/// (weight 0 is included by the w=0 summand).
inline double pauli_count_bound(std::uint32_t n, std::uint32_t w_star) {
    double total = 0;
    double binom = 1;  // C(n, 0)
    double pow3 = 1;
    for (std::uint32_t w = 0; w <= std::min(w_star, n); ++w) {
        total += pow3 * binom;
        binom = binom * (n - w) / (w + 1);
        pow3 *= 3;
    }
    return total;
}

}  // namespace lpd

#endif  // LPD_PROPAGATION_HPP
