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

#ifndef LPD_IO_HPP
#define LPD_IO_HPP

#include <cstdint>
#include <cstring>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lpd/bounds.hpp"
#include "lpd/hybrid.hpp"
#include "lpd/mps.hpp"
#include "lpd/propagation.hpp"

namespace lpd {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

inline std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// CSV output is byte-identical for identical config and seed: parameters go
// into '#' comment lines in their given order and no timestamp is written.
inline void write_propagation_csv(std::ostream& out, const PropagationResult& res,
                                  const KeyValues& params) {
    for (const auto& [k, v] : params) {
        out << "# " << k << "=" << v << "\n";
    }
    out << "d,mu,discarded_norm,term_count\n";
    for (const auto& s : res.steps) {
        out << s.d << ",";
        if (s.has_mu) out << detail::format_coeff(s.mu);
        out << "," << detail::format_coeff(s.discarded_norm) << "," << s.term_count << "\n";
    }
}

inline nlohmann::json propagation_to_json(const PropagationResult& res, const KeyValues& params,
                                          bool with_timestamp = true) {
    nlohmann::json j;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : params) cfg[k] = v;
    j["config"] = cfg;
    if (with_timestamp) j["generated_at"] = utc_timestamp();
    j["n"] = res.n;
    j["t"] = res.t;
    j["r"] = res.r;
    j["order"] = res.p;
    j["w_star"] = res.w_star;
    j["gates_per_step"] = res.gates_per_step;
    j["layer_count"] = res.layer_count;
    j["dt_eff"] = res.dt_eff;
    j["total_discarded_norm"] = res.total_discarded_norm();
    if (res.has_final_mu) j["mu"] = res.final_mu;
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : res.steps) {
        nlohmann::json js;
        js["d"] = s.d;
        if (s.has_mu) js["mu"] = s.mu;
        js["discarded_norm"] = s.discarded_norm;
        js["pruned_dust_norm"] = s.pruned_dust_norm;
        js["term_count"] = s.term_count;
        js["term_count_step_start"] = s.term_count_step_start;
        js["weight_histogram"] = s.weight_histogram;
        js["wall_seconds"] = s.wall_seconds;
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    return j;
}

inline nlohmann::json entanglement_report_to_json(const EntanglementReport& rep) {
    nlohmann::json j;
    j["expectation"] = rep.expectation;
    j["lhs"] = rep.lhs;
    j["two_norm_sq"] = rep.two_norm_sq;
    j["sum_term_norms"] = rep.sum_term_norms;
    j["rhs_trace_form"] = rep.rhs_trace_form;
    j["rhs_entropy_form"] = rep.rhs_entropy_form;
    j["chain_trace_holds"] = rep.chain_trace_holds;
    j["chain_entropy_holds"] = rep.chain_entropy_holds;
    j["entropy_condition_all_pairs"] = rep.entropy_condition_all_pairs;
    j["conclusion_two_norm_bound"] = rep.conclusion_two_norm_bound;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : rep.pairs) {
        nlohmann::json jp;
        jp["j"] = p.j;
        jp["j_prime"] = p.j_prime;
        jp["support"] = p.support;
        jp["entropy_bits"] = p.entropy_bits;
        jp["trace_norm_to_mixed"] = p.trace_norm_to_mixed;
        jp["pinsker_loose"] = p.pinsker_loose;
        jp["pinsker_tight"] = p.pinsker_tight;
        jp["op_norm_product"] = p.op_norm_product;
        jp["entropy_required_bits"] = p.entropy_required_bits;
        pairs.push_back(std::move(jp));
    }
    j["pairs"] = std::move(pairs);
    return j;
}

inline void write_tebd_csv(std::ostream& out, const std::vector<TebdStepRecord>& records,
                           const KeyValues& params) {
    for (const auto& [k, v] : params) {
        out << "# " << k << "=" << v << "\n";
    }
    std::size_t bonds = records.empty() ? 0 : records.front().bond_entropies_bits.size();
    out << "step,discarded_mass,max_bond,norm_drift";
    for (std::size_t b = 0; b < bonds; ++b) out << ",entropy_bond" << b;
    out << "\n";
    for (const auto& r : records) {
        out << r.step << "," << detail::format_coeff(r.discarded_mass) << "," << r.max_bond << ","
            << detail::format_coeff(r.norm_drift);
        for (double e : r.bond_entropies_bits) out << "," << detail::format_coeff(e);
        out << "\n";
    }
}

inline void write_hybrid_csv(std::ostream& out, const HybridResult& res, const KeyValues& params) {
    for (const auto& [k, v] : params) {
        out << "# " << k << "=" << v << "\n";
    }
    out << "backward_step,magic,mu_sampled\n";
    std::size_t traj_pos = 0;
    for (std::size_t d = 0; d < res.magic.size(); ++d) {
        out << d << "," << detail::format_coeff(res.magic[d]) << ",";
        if (traj_pos < res.mu_trajectory.size() &&
            res.mu_trajectory[traj_pos].first == static_cast<int>(d)) {
            out << detail::format_coeff(res.mu_trajectory[traj_pos].second);
            ++traj_pos;
        }
        out << "\n";
    }
}

// ---------------------------------------------------------------------------
// MPS container: "LPDMPS1\n" magic, little-endian u64 header length, JSON
// header (dims, center, bond spectra sizes), then raw doubles: per site and
// physical value the matrix entries column-major as (re, im) pairs, then the
// bond spectra. Host byte order (little-endian on every supported target).
// ---------------------------------------------------------------------------

inline constexpr char kMpsMagic[8] = {'L', 'P', 'D', 'M', 'P', 'S', '1', '\n'};

inline void save_mps(std::ostream& out, const MpsState& m) {
    nlohmann::json h;
    h["n"] = m.n_qubits();
    h["chi_max"] = m.chi_max;
    h["center"] = m.center;
    nlohmann::json sites = nlohmann::json::array();
    for (const auto& s : m.site) {
        sites.push_back({{"dl", s[0].rows()}, {"dr", s[0].cols()}});
    }
    h["sites"] = std::move(sites);
    nlohmann::json bonds = nlohmann::json::array();
    for (const auto& sv : m.bond_sv) bonds.push_back(sv.size());
    h["bonds"] = std::move(bonds);
    std::string header = h.dump();
    out.write(kMpsMagic, sizeof(kMpsMagic));
    std::uint64_t len = header.size();
    out.write(reinterpret_cast<const char*>(&len), sizeof(len));
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    auto put = [&out](double v) { out.write(reinterpret_cast<const char*>(&v), sizeof(v)); };
    for (const auto& s : m.site) {
        for (int phys = 0; phys < 2; ++phys) {
            const Eigen::MatrixXcd& mat = s[phys];
            for (Eigen::Index c = 0; c < mat.cols(); ++c) {
                for (Eigen::Index r = 0; r < mat.rows(); ++r) {
                    put(mat(r, c).real());
                    put(mat(r, c).imag());
                }
            }
        }
    }
    for (const auto& sv : m.bond_sv) {
        for (Eigen::Index i = 0; i < sv.size(); ++i) put(sv[i]);
    }
    if (!out) throw std::runtime_error("save_mps: write failed");
}

inline void save_mps_file(const std::string& path, const MpsState& m) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_mps_file: cannot open " + path);
    save_mps(f, m);
}

inline MpsState load_mps(std::istream& in) {
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMpsMagic, sizeof(magic)) != 0) {
        throw std::runtime_error("load_mps: bad magic");
    }
    std::uint64_t len = 0;
    in.read(reinterpret_cast<char*>(&len), sizeof(len));
    if (!in || len > (1u << 20)) throw std::runtime_error("load_mps: bad header length");
    std::string header(len, '\0');
    in.read(header.data(), static_cast<std::streamsize>(len));
    if (!in) throw std::runtime_error("load_mps: truncated header");
    nlohmann::json h = nlohmann::json::parse(header);
    std::uint32_t n = h.at("n").get<std::uint32_t>();
    MpsState m = MpsState::from_product(ProductState::from_bit_pattern(std::string(n, '0')));
    m.chi_max = h.at("chi_max").get<std::size_t>();
    m.center = h.at("center").get<int>();
    auto get = [&in]() {
        double v = 0;
        in.read(reinterpret_cast<char*>(&v), sizeof(v));
        return v;
    };
    const auto& sites = h.at("sites");
    if (sites.size() != n) throw std::runtime_error("load_mps: site count mismatch");
    for (std::uint32_t q = 0; q < n; ++q) {
        Eigen::Index dl = sites[q].at("dl").get<Eigen::Index>();
        Eigen::Index dr = sites[q].at("dr").get<Eigen::Index>();
        for (int phys = 0; phys < 2; ++phys) {
            Eigen::MatrixXcd mat(dl, dr);
            for (Eigen::Index c = 0; c < dr; ++c) {
                for (Eigen::Index r = 0; r < dl; ++r) {
                    double re = get();
                    double im = get();
                    mat(r, c) = Complex(re, im);
                }
            }
            m.site[q][phys] = std::move(mat);
        }
    }
    const auto& bonds = h.at("bonds");
    if (bonds.size() != m.bond_sv.size()) throw std::runtime_error("load_mps: bond count mismatch");
    for (std::size_t b = 0; b < m.bond_sv.size(); ++b) {
        Eigen::VectorXd sv(bonds[b].get<Eigen::Index>());
        for (Eigen::Index i = 0; i < sv.size(); ++i) sv[i] = get();
        m.bond_sv[b] = std::move(sv);
    }
    if (!in) throw std::runtime_error("load_mps: truncated payload");
    return m;
}

inline MpsState load_mps_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_mps_file: cannot open " + path);
    return load_mps(f);
}

}  // namespace lpd

#endif  // LPD_IO_HPP
