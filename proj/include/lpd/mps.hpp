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

#ifndef LPD_MPS_HPP
#define LPD_MPS_HPP

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <vector>

#include "lpd/dense_oracle.hpp"
#include "lpd/hamiltonian.hpp"
#include "lpd/pauli_operator.hpp"
#include "lpd/product_state.hpp"
#include "lpd/rng.hpp"
#include "lpd/trotter.hpp"

namespace lpd {

/// chi = 2^{w*}: the bond-dimension suggestion paired with a weight
/// threshold in the hybrid protocol. Overridable everywhere it is used.
inline std::size_t suggested_chi(std::uint32_t w_star) {
    if (w_star >= 24) {
        throw std::invalid_argument("suggested_chi: 2^w_star would be absurd, pass chi explicitly");
    }
    return std::size_t{1} << w_star;
}

/// Matrix-product pure state in mixed-canonical form.
///
/// site[i][s] is the (D_{i} x D_{i+1}) matrix for physical value s of qubit
/// i. Sites left of `center` are left-canonical, sites right of it
/// right-canonical. bond_sv[b] holds the Schmidt values recorded the last
/// time bond b (between sites b-1 and b) was decomposed; descending,
/// unit 2-norm.
class MpsState {
  public:
    std::vector<std::array<Eigen::MatrixXcd, 2>> site;
    std::vector<Eigen::VectorXd> bond_sv;  // index 0..n, entries 0 and n are {1}
    int center = 0;
    std::size_t chi_max = 1;  // largest bond dimension cap applied so far

    std::uint32_t n_qubits() const { return static_cast<std::uint32_t>(site.size()); }

    Eigen::Index bond_dim(std::size_t b) const {
        if (b == 0 || b >= site.size() + 1) return 1;
        return b == site.size() ? 1 : site[b].front().rows();
    }

    Eigen::Index max_bond_dim() const {
        Eigen::Index m = 1;
        for (const auto& t : site) m = std::max(m, t[0].cols());
        return m;
    }

    static MpsState from_product(const ProductState& p) {
        std::uint32_t n = p.n_qubits();
        if (n == 0) {
            throw std::invalid_argument("MpsState: empty product state");
        }
        MpsState m;
        m.site.resize(n);
        m.bond_sv.assign(n + 1, Eigen::VectorXd::Ones(1));
        for (std::uint32_t q = 0; q < n; ++q) {
            const auto& b = p.bloch[q];
            double r = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
            if (std::abs(r - 1.0) > 1e-9) {
                throw std::invalid_argument("MpsState: qubit " + std::to_string(q) +
                                            " has |r| != 1 (mixed marginal)");
            }
            double theta = std::acos(std::clamp(b[2], -1.0, 1.0));
            double phi = std::atan2(b[1], b[0]);
            m.site[q][0] = Eigen::MatrixXcd::Constant(1, 1, std::cos(theta / 2));
            m.site[q][1] = Eigen::MatrixXcd::Constant(1, 1, std::polar(std::sin(theta / 2), phi));
        }
        m.center = 0;
        m.chi_max = 1;
        return m;
    }

    /// Random MPS with bond dimension min(chi, exact cap), canonicalized and
    /// normalized. Deterministic per seed.
    static MpsState random(std::uint32_t n, std::size_t chi, std::uint64_t seed) {
        if (n == 0 || n > kMaxQubits) {
            throw std::invalid_argument("MpsState::random: bad qubit count");
        }
        CounterRng rng(seed);
        MpsState m;
        m.site.resize(n);
        m.bond_sv.assign(n + 1, Eigen::VectorXd::Ones(1));
        Eigen::Index dl = 1;
        for (std::uint32_t q = 0; q < n; ++q) {
            Eigen::Index dr = q + 1 == n ? 1 : std::min<Eigen::Index>(static_cast<Eigen::Index>(chi),
                                                                      dl * 2);
            // Cap against the right end so the tail stays exactly representable.
            Eigen::Index right_room = 1;
            for (std::uint32_t k = q + 1; k < n && right_room < dr; ++k) right_room *= 2;
            dr = std::min(dr, right_room);
            for (int s = 0; s < 2; ++s) {
                m.site[q][s].resize(dl, dr);
                for (Eigen::Index i = 0; i < dl; ++i) {
                    for (Eigen::Index j = 0; j < dr; ++j) {
                        m.site[q][s](i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
                    }
                }
            }
            dl = dr;
        }
        m.center = static_cast<int>(n) - 1;
        m.chi_max = chi;
        m.move_center_to(0);
        m.renormalize();
        return m;
    }

    /// <psi|psi>.
    double norm_squared() const {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Ones(1, 1);
        for (const auto& t : site) {
            e = (t[0].adjoint() * e * t[0] + t[1].adjoint() * e * t[1]).eval();
        }
        return e(0, 0).real();
    }

    void renormalize() {
        double nrm = std::sqrt(norm_squared());
        if (nrm == 0) {
            throw std::runtime_error("MpsState: zero norm");
        }
        for (int s = 0; s < 2; ++s) site[center][s] /= nrm;
    }

    /// Left-to-right QR pass through `center`, moving it one site right.
    void shift_center_right() {
        int i = center;
        if (i + 1 >= static_cast<int>(site.size())) {
            throw std::logic_error("shift_center_right: center at right end");
        }
        Eigen::Index dl = site[i][0].rows(), dr = site[i][0].cols();
        Eigen::MatrixXcd m(2 * dl, dr);
        m.topRows(dl) = site[i][0];
        m.bottomRows(dl) = site[i][1];
        Eigen::Index k = std::min(2 * dl, dr);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
        Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(2 * dl, k);
        Eigen::MatrixXcd r =
            qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
        site[i][0] = q.topRows(dl);
        site[i][1] = q.bottomRows(dl);
        site[i + 1][0] = (r * site[i + 1][0]).eval();
        site[i + 1][1] = (r * site[i + 1][1]).eval();
        center = i + 1;
    }

    /// Right-to-left pass (LQ via QR of the adjoint), moving center one left.
    void shift_center_left() {
        int i = center;
        if (i == 0) {
            throw std::logic_error("shift_center_left: center at left end");
        }
        Eigen::Index dl = site[i][0].rows(), dr = site[i][0].cols();
        Eigen::MatrixXcd m(dl, 2 * dr);
        m.leftCols(dr) = site[i][0];
        m.rightCols(dr) = site[i][1];
        Eigen::Index k = std::min(dl, 2 * dr);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m.adjoint());
        Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(2 * dr, k);
        Eigen::MatrixXcd r =
            qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
        Eigen::MatrixXcd qd = q.adjoint();  // k x 2dr
        Eigen::MatrixXcd l = r.adjoint();   // dl x k
        site[i][0] = qd.leftCols(dr);
        site[i][1] = qd.rightCols(dr);
        site[i - 1][0] = (site[i - 1][0] * l).eval();
        site[i - 1][1] = (site[i - 1][1] * l).eval();
        center = i - 1;
    }

    void move_center_to(int target) {
        if (target < 0 || target >= static_cast<int>(site.size())) {
            throw std::invalid_argument("move_center_to: site out of range");
        }
        while (center < target) shift_center_right();
        while (center > target) shift_center_left();
    }

    /// Apply a single-qubit unitary (2x2) at site q. Canonical structure is
    /// unaffected, so no center movement is needed.
    void apply_single_site(std::uint32_t q, const Eigen::Matrix2cd& u) {
        if (q >= site.size()) {
            throw std::invalid_argument("apply_single_site: site out of range");
        }
        Eigen::MatrixXcd t0 = u(0, 0) * site[q][0] + u(0, 1) * site[q][1];
        Eigen::MatrixXcd t1 = u(1, 0) * site[q][0] + u(1, 1) * site[q][1];
        site[q][0] = std::move(t0);
        site[q][1] = std::move(t1);
    }

    /// Apply a two-site unitary (4x4, pair index s_i*2 + s_{i+1}) at bond
    /// (i, i+1) with SVD truncation to `chi` (and the 1e-12 singular-value
    /// floor). Returns the discarded Schmidt mass sqrt(sum of dropped
    /// sigma^2); the kept spectrum is renormalized. Center ends at i+1.
    double apply_two_site(std::uint32_t i, const Eigen::Matrix4cd& u, std::size_t chi) {
        if (i + 1 >= site.size()) {
            throw std::invalid_argument("apply_two_site: bond out of range");
        }
        move_center_to(static_cast<int>(i));
        chi_max = std::max(chi_max, chi);
        Eigen::Index dl = site[i][0].rows();
        Eigen::Index dm = site[i][0].cols();
        Eigen::Index dr = site[i + 1][0].cols();
        if (site[i + 1][0].rows() != dm) {
            throw std::logic_error("apply_two_site: bond dimension mismatch");
        }
        // theta blocks: rows (s_i, left), cols (s_{i+1}, right)
        Eigen::MatrixXcd theta(2 * dl, 2 * dr);
        std::array<std::array<Eigen::MatrixXcd, 2>, 2> blk;
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                blk[a][b] = site[i][a] * site[i + 1][b];
            }
        }
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dl, dr);
                for (int s = 0; s < 2; ++s) {
                    for (int t = 0; t < 2; ++t) {
                        Complex coef = u(a * 2 + b, s * 2 + t);
                        if (coef != Complex(0, 0)) acc.noalias() += coef * blk[s][t];
                    }
                }
                theta.block(a * dl, b * dr, dl, dr) = acc;
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        Eigen::Index keep = 0;
        for (Eigen::Index j = 0; j < sv.size(); ++j) {
            if (sv[j] > 1e-12) ++keep;
        }
        keep = std::min<Eigen::Index>(std::max<Eigen::Index>(keep, 1),
                                      static_cast<Eigen::Index>(chi));
        double kept_sq = sv.head(keep).squaredNorm();
        double dropped_sq = sv.squaredNorm() - kept_sq;
        Eigen::VectorXd lam = sv.head(keep) / std::sqrt(kept_sq);
        Eigen::MatrixXcd usub = svd.matrixU().leftCols(keep);
        Eigen::MatrixXcd vsub = svd.matrixV().leftCols(keep);
        for (int a = 0; a < 2; ++a) {
            site[i][a] = usub.middleRows(a * dl, dl);
        }
        Eigen::MatrixXcd sv_right = lam.asDiagonal() * vsub.adjoint();  // keep x 2dr
        for (int b = 0; b < 2; ++b) {
            site[i + 1][b] = sv_right.middleCols(b * dr, dr).eval();
        }
        bond_sv[i + 1] = lam;
        center = static_cast<int>(i) + 1;
        return std::sqrt(std::max(0.0, dropped_sq));
    }

    /// Schmidt values across bond b (between sites b-1 and b), recomputed
    /// from scratch on a copy so stale cached spectra never leak out.
    Eigen::VectorXd schmidt_values(std::size_t b) const {
        if (b == 0 || b >= site.size()) {
            throw std::invalid_argument("schmidt_values: bond index must be in [1, n-1]");
        }
        MpsState tmp = *this;
        tmp.move_center_to(static_cast<int>(b) - 1);
        Eigen::Index dl = tmp.site[b - 1][0].rows(), dr = tmp.site[b - 1][0].cols();
        Eigen::MatrixXcd m(2 * dl, dr);
        m.topRows(dl) = tmp.site[b - 1][0];
        m.bottomRows(dl) = tmp.site[b - 1][1];
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        Eigen::VectorXd sv = svd.singularValues();
        double nrm = sv.norm();
        if (nrm > 0) sv /= nrm;
        return sv;
    }
};

/// Entropy in bits of a Schmidt spectrum: -sum lambda^2 log2 lambda^2.
inline double schmidt_entropy_bits(const Eigen::VectorXd& lam) {
    double s = 0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        double p = lam[i] * lam[i];
        if (p > 0) s -= p * std::log2(p);
    }
    return s;
}

/// Bond-cut entanglement entropy in bits across bond b.
inline double mps_bond_entropy(const MpsState& m, std::size_t b) {
    return schmidt_entropy_bits(m.schmidt_values(b));
}

namespace detail {

inline Eigen::MatrixXcd mps_transfer_step(const Eigen::MatrixXcd& e,
                                          const std::array<Eigen::MatrixXcd, 2>& t, char letter) {
    Eigen::MatrixXcd k0 = e * t[0];
    Eigen::MatrixXcd k1 = e * t[1];
    switch (letter) {
        case 'I': return t[0].adjoint() * k0 + t[1].adjoint() * k1;
        case 'Z': return t[0].adjoint() * k0 - t[1].adjoint() * k1;
        case 'X': return t[1].adjoint() * k0 + t[0].adjoint() * k1;
        case 'Y':
            return Complex(0, 1) * (t[1].adjoint() * k0) + Complex(0, -1) * (t[0].adjoint() * k1);
        default: throw std::logic_error("mps_transfer_step: bad letter");
    }
}

}  // namespace detail

/// <psi|P|psi> / <psi|psi> by one left-to-right transfer sweep.
inline double mps_pauli_expectation(const MpsState& m, const PauliString& p) {
    if (p.n != m.n_qubits()) {
        throw std::invalid_argument("mps_pauli_expectation: qubit count mismatch");
    }
    Eigen::MatrixXcd num = Eigen::MatrixXcd::Ones(1, 1);
    Eigen::MatrixXcd den = Eigen::MatrixXcd::Ones(1, 1);
    for (std::uint32_t q = 0; q < p.n; ++q) {
        num = detail::mps_transfer_step(num, m.site[q], p.letter_at(q));
        den = detail::mps_transfer_step(den, m.site[q], 'I');
    }
    return num(0, 0).real() / den(0, 0).real();
}

/// Sum_P c_P <psi|P|psi> / <psi|psi>. Exactly term-by-term contraction, but
/// terms are sorted by their per-site letter sequence so left environments
/// are shared across common prefixes.
inline double mps_expectation(const MpsState& m, const PauliOperator& o) {
    const std::uint32_t n = m.n_qubits();
    if (o.n_qubits() != n) {
        throw std::invalid_argument("mps_expectation: qubit count mismatch");
    }
    if (o.empty()) return 0.0;
    auto terms = o.sorted_terms();
    auto letter_code = [](const PauliString& p, std::uint32_t q) {
        return static_cast<int>(((p.x >> q) & 1) | (((p.z >> q) & 1) << 1));
    };
    std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
        for (std::uint32_t q = 0; q < n; ++q) {
            int ca = letter_code(a.first, q), cb = letter_code(b.first, q);
            if (ca != cb) return ca < cb;
        }
        return false;
    });
    std::vector<Eigen::MatrixXcd> env(n + 1);
    env[0] = Eigen::MatrixXcd::Ones(1, 1);
    double acc = 0;
    const PauliString* prev = nullptr;
    for (const auto& [p, c] : terms) {
        std::uint32_t d = 0;
        if (prev != nullptr) {
            while (d < n && letter_code(p, d) == letter_code(*prev, d)) ++d;
        }
        for (std::uint32_t q = d; q < n; ++q) {
            env[q + 1] = detail::mps_transfer_step(env[q], m.site[q], p.letter_at(q));
        }
        acc += c * env[n](0, 0).real();
        prev = &p;
    }
    double den = m.norm_squared();
    return acc / den;
}

/// Von Neumann entropy (bits) of the contiguous region [first, last]. Bond
/// cuts at the chain ends reduce to Schmidt entropies; interior regions go
/// through the dense region RDM (width capped).
inline double mps_entanglement_entropy(const MpsState& m, std::uint32_t first,
                                       std::uint32_t last) {
    const std::uint32_t n = m.n_qubits();
    if (first > last || last >= n) {
        throw std::invalid_argument("mps_entanglement_entropy: bad region");
    }
    const std::uint32_t width = last - first + 1;
    if (first == 0 && last + 1 < n) {
        return mps_bond_entropy(m, last + 1);
    }
    if (last == n - 1 && first > 0) {
        return mps_bond_entropy(m, first);
    }
    if (first == 0 && last == n - 1) {
        return 0.0;  // whole pure state
    }
    if (width > 10) {
        throw std::invalid_argument("mps_entanglement_entropy: interior region too wide");
    }
    MpsState tmp = m;
    tmp.move_center_to(static_cast<int>(first));
    tmp.renormalize();
    // W(s-combined; l, r): region tensor with identity environments.
    Eigen::Index dl = tmp.site[first][0].rows();
    std::vector<Eigen::MatrixXcd> w(2);  // indexed by combined physical value
    w[0] = tmp.site[first][0];
    w[1] = tmp.site[first][1];
    for (std::uint32_t q = first + 1; q <= last; ++q) {
        std::vector<Eigen::MatrixXcd> w2(w.size() * 2);
        for (std::size_t sv = 0; sv < w.size(); ++sv) {
            for (int s = 0; s < 2; ++s) {
                w2[sv + (static_cast<std::size_t>(s) << (q - first))] = w[sv] * tmp.site[q][s];
            }
        }
        w = std::move(w2);
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(w.size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        for (Eigen::Index b = 0; b < dim; ++b) {
            rho(a, b) = (w[a].array() * w[b].array().conjugate()).sum();
        }
    }
    (void)dl;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double s = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        double lam = es.eigenvalues()[i];
        if (lam > 0) s -= lam * std::log2(lam);
    }
    return s;
}

/// Contract to a dense statevector (n <= 14).
inline DenseState mps_to_dense(const MpsState& m) {
    const std::uint32_t n = m.n_qubits();
    DenseState::check_cap(n);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);  // rows: basis prefix, cols: bond
    for (std::uint32_t q = 0; q < n; ++q) {
        Eigen::Index rows = acc.rows();
        Eigen::MatrixXcd next(rows * 2, m.site[q][0].cols());
        next.topRows(rows) = acc * m.site[q][0];
        next.bottomRows(rows) = acc * m.site[q][1];
        // Row index bit q is the physical value of qubit q: the bottom block
        // carries s_q = 1 in the (high) bit position q of the basis index.
        acc = std::move(next);
    }
    // acc rows are ordered with qubit q as bit q already (each doubling
    // appended the new qubit as the most significant bit).
    Eigen::VectorXcd v = acc.col(0);
    DenseState out(n, std::move(v));
    double nrm = out.norm();
    if (nrm == 0) throw std::runtime_error("mps_to_dense: zero norm");
    out.amp /= nrm;
    return out;
}

/// Per-step TEBD record: Schmidt mass discarded by SVD truncation, bond
/// profile after the step, and cut entropies.
struct TebdStepRecord {
    int step = 0;
    double discarded_mass = 0;   // sqrt of the summed dropped sigma^2 over the step
    Eigen::Index max_bond = 1;
    std::vector<double> bond_entropies_bits;  // bonds 1..n-1
    double norm_drift = 0;       // |norm-1| before the post-step renormalize
};

namespace detail {

inline Eigen::Matrix2cd single_site_matrix(char letter) {
    Eigen::Matrix2cd s;
    switch (letter) {
        case 'X': s << 0, 1, 1, 0; break;
        case 'Y': s << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 'Z': s << 1, 0, 0, -1; break;
        default: s.setIdentity(); break;
    }
    return s;
}

}  // namespace detail

/// Evolve an MPS through r Trotter steps of order p for time t, using the
/// shared scheduler so the gate sequence matches the dense and Heisenberg
/// backends. Requires every Hamiltonian term to act on one site or two
/// adjacent sites. Mutates `state`; returns per-step records.
inline std::vector<TebdStepRecord> tebd_evolve_inplace(MpsState& state, const Hamiltonian& h,
                                                       double t, int r, int p, std::size_t chi) {
    const std::uint32_t n = state.n_qubits();
    if (h.n != n) {
        throw std::invalid_argument("tebd_evolve: qubit count mismatch");
    }
    if (chi < 1) {
        throw std::invalid_argument("tebd_evolve: chi must be >= 1");
    }
    for (const auto& [a, g] : h.terms) {
        std::uint64_t supp = g.x | g.z;
        int w = std::popcount(supp);
        if (w > 2) {
            throw std::invalid_argument("tebd_evolve: term '" + pauli_string_to_text(g) +
                                        "' acts on more than 2 sites");
        }
        if (w == 2) {
            unsigned lo = static_cast<unsigned>(std::countr_zero(supp));
            if ((supp >> lo) != 3) {
                throw std::invalid_argument("tebd_evolve: term '" + pauli_string_to_text(g) +
                                            "' is not nearest-neighbor");
            }
        }
    }
    GateSchedule schedule = trotter_schedule(h, p, t, r);
    auto gates = schedule.state_order_gates();
    std::vector<TebdStepRecord> records;
    records.reserve(static_cast<std::size_t>(r));
    for (int step = 0; step < r; ++step) {
        TebdStepRecord rec;
        rec.step = step + 1;
        double dropped_sq = 0;
        for (const auto& g : gates) {
            std::uint64_t supp = g.generator.x | g.generator.z;
            unsigned lo = static_cast<unsigned>(std::countr_zero(supp));
            if (std::popcount(supp) == 1) {
                char letter = g.generator.letter_at(lo);
                Eigen::Matrix2cd u = std::cos(g.theta) * Eigen::Matrix2cd::Identity() -
                                     Complex(0, 1) * std::sin(g.theta) *
                                         detail::single_site_matrix(letter);
                state.apply_single_site(lo, u);
            } else {
                Eigen::Matrix2cd a = detail::single_site_matrix(g.generator.letter_at(lo));
                Eigen::Matrix2cd b = detail::single_site_matrix(g.generator.letter_at(lo + 1));
                Eigen::Matrix4cd gg;
                for (int i = 0; i < 2; ++i) {
                    for (int j = 0; j < 2; ++j) {
                        for (int k = 0; k < 2; ++k) {
                            for (int l = 0; l < 2; ++l) {
                                gg(i * 2 + j, k * 2 + l) = a(i, k) * b(j, l);
                            }
                        }
                    }
                }
                Eigen::Matrix4cd u = std::cos(g.theta) * Eigen::Matrix4cd::Identity() -
                                     Complex(0, 1) * std::sin(g.theta) * gg;
                double d = state.apply_two_site(lo, u, chi);
                dropped_sq += d * d;
            }
        }
        double nrm = std::sqrt(state.norm_squared());
        rec.norm_drift = std::abs(nrm - 1.0);
        for (int s = 0; s < 2; ++s) state.site[state.center][s] /= nrm;
        rec.discarded_mass = std::sqrt(dropped_sq);
        rec.max_bond = state.max_bond_dim();
        rec.bond_entropies_bits.reserve(n - 1);
        for (std::uint32_t b = 1; b < n; ++b) {
            rec.bond_entropies_bits.push_back(mps_bond_entropy(state, b));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

/// Non-mutating variant returning the evolved state.
inline MpsState tebd_evolve(const MpsState& state, const Hamiltonian& h, double t, int r, int p,
                            std::size_t chi, std::vector<TebdStepRecord>* records = nullptr) {
    MpsState out = state;
    auto recs = tebd_evolve_inplace(out, h, t, r, p, chi);
    if (records != nullptr) *records = std::move(recs);
    return out;
}

}  // namespace lpd

#endif  // LPD_MPS_HPP
