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

#ifndef LPD_HYBRID_HPP
#define LPD_HYBRID_HPP

#include <utility>
#include <vector>

#include "lpd/mps.hpp"
#include "lpd/propagation.hpp"

namespace lpd {

/// Result of the two-picture split: Schroedinger forward to t_F as an MPS,
/// Heisenberg backward from t to t_F as a truncated Pauli sum, meeting in
/// one expectation value.
struct HybridResult {
    std::vector<TebdStepRecord> forward;  // per forward step: entropies, discarded Schmidt mass
    MpsState state;                       // the MPS at t_F
    PropagationResult backward;           // per backward step: discarded norms, term counts
    std::vector<double> magic;            // operator magic, index d = after d backward steps
    std::vector<std::pair<int, double>> mu_trajectory;  // (backward step, expectation) samples
    double mu = 0;
    double t = 0, t_forward = 0, t_backward = 0;
    int r_forward = 0, r_backward = 0, p = 2;
    std::size_t chi = 1;
    std::uint32_t w_star = 0;
};

struct HybridOptions {
    // Evaluate the (expensive) full hybrid expectation every this many
    // backward steps; 0 records only step 0 and the final step.
    int expectation_stride = 0;
    LpdOptions lpd;
};

/// Forward-evolve `initial` by TEBD for t_F, backward-evolve O by truncated
/// propagation for t - t_F, and contract the two at the boundary. Resource
/// trajectories (bond entropies, operator magic, discarded norms on both
/// sides) ride along.
inline HybridResult hybrid_run(const Hamiltonian& h, const PauliOperator& o, double t, double t_f,
                               std::size_t chi, std::uint32_t w_star, int p, int r_f, int r_b,
                               const ProductState& initial, const HybridOptions& opts = {}) {
    if (t < 0 || t_f < 0 || t_f > t) {
        throw std::invalid_argument("hybrid_run: need 0 <= t_F <= t");
    }
    HybridResult res;
    res.t = t;
    res.t_forward = t_f;
    res.t_backward = t - t_f;
    res.r_forward = r_f;
    res.r_backward = r_b;
    res.p = p;
    res.chi = chi;
    res.w_star = w_star;

    res.state = MpsState::from_product(initial);
    if (t_f > 0) {
        res.forward = tebd_evolve_inplace(res.state, h, t_f, r_f, p, chi);
    }

    res.magic.push_back(operator_magic(o));
    res.mu_trajectory.emplace_back(0, mps_expectation(res.state, o));
    if (res.t_backward > 0) {
        LpdOptions lpd_opts = opts.lpd;
        lpd_opts.record_expectations = false;
        lpd_opts.keep_final_operator = true;
        const MpsState& state_ref = res.state;
        auto user_observer = opts.lpd.step_observer;
        int stride = opts.expectation_stride;
        auto* traj = &res.mu_trajectory;
        auto* magic = &res.magic;
        int r_total = r_b;
        lpd_opts.step_observer = [&state_ref, user_observer, stride, traj, magic,
                                  r_total](const StepRecord& rec, const PauliOperator& op) {
            magic->push_back(operator_magic(op));
            bool sample = (stride > 0 && rec.d % stride == 0) || rec.d == r_total;
            if (sample) {
                traj->emplace_back(rec.d, mps_expectation(state_ref, op));
            }
            if (user_observer) user_observer(rec, op);
        };
        res.backward = lpd_run(h, o, res.t_backward, r_b, p, w_star, nullptr, lpd_opts);
        res.mu = res.mu_trajectory.back().second;
    } else {
        res.backward.final_operator = o;
        res.backward.n = o.n_qubits();
        res.backward.p = p;
        res.backward.w_star = w_star;
        res.mu = res.mu_trajectory.back().second;
    }
    return res;
}

}  // namespace lpd

#endif  // LPD_HYBRID_HPP
