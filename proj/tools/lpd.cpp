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

// Batch front end: configure runs, execute experiments, and emit CSV/JSON
// data tables. CSV output is byte-identical for identical configuration and
// seed; the timestamp lives only in the JSON sidecar. Exit codes: 0 ok,
// 1 validation error, 2 runtime error.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpd/bounds.hpp"
#include "lpd/dense_oracle.hpp"
#include "lpd/hamiltonian.hpp"
#include "lpd/hybrid.hpp"
#include "lpd/io.hpp"
#include "lpd/mps.hpp"
#include "lpd/propagation.hpp"
#include "lpd/states.hpp"
#include "lpd/trotter.hpp"

namespace {

using namespace lpd;

// Shortest representation that parses back to the same double: stable for
// byte-identical output, readable for echoed parameters ("0.8", not
// "0.80000000000000004"; "10", not "1e+01").
std::string fnum(double v) {
    if (std::isfinite(v) && std::abs(v) < 1e15 && v == std::trunc(v)) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

// ---------------------------------------------------------------------------
// Shared flag groups and small parsers
// ---------------------------------------------------------------------------

// Strict nonnegative-integer parse: syntax and range problems are validation
// errors (exit 1), never runtime ones.
std::uint64_t parse_unsigned(const std::string& s, const char* what) {
    try {
        if (s.empty() || !std::isdigit(static_cast<unsigned char>(s[0]))) {
            throw std::invalid_argument("");
        }
        std::size_t used = 0;
        std::uint64_t v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + s +
                                    "' (expected a nonnegative integer)");
    }
}

struct ModelFlags {
    std::string model = "qmfi";
    unsigned n = 10;
    double hx = 0.8;
    double hy = 0.9;
    bool periodic = false;
    std::string model_file;
};

void add_model_flags(CLI::App* sub, ModelFlags& m) {
    sub->add_option("--model", m.model, "model name (available: qmfi)")
        ->capture_default_str();
    sub->add_option("--n", m.n, "qubit count")->capture_default_str();
    sub->add_option("--hx", m.hx, "transverse X field")->capture_default_str();
    sub->add_option("--hy", m.hy, "transverse Y field")->capture_default_str();
    sub->add_flag("--periodic", m.periodic, "use the periodic chain (default open)");
    sub->add_option("--model-file", m.model_file,
                    "read the Hamiltonian from a Pauli-sum text file instead");
}

Hamiltonian build_model(const ModelFlags& m) {
    if (!m.model_file.empty()) {
        std::ifstream f(m.model_file);
        if (!f) throw std::invalid_argument("cannot open model file " + m.model_file);
        std::stringstream buf;
        buf << f.rdbuf();
        return hamiltonian_from_text(buf.str());
    }
    if (m.model == "qmfi") return build_qmfi(m.n, m.hx, m.hy, m.periodic);
    throw std::invalid_argument("unknown model '" + m.model + "' (available: qmfi)");
}

// Observable grammar: comma-separated terms, each "[coeff*]L<q>[L<q>...]"
// with letters X/Y/Z and 1-based qubit indices, e.g. "Z1", "0.5*X2Y3,-1*Z4".
PauliOperator parse_observable(const std::string& spec, std::uint32_t n) {
    PauliOperator o(n);
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        double coeff = 1.0;
        std::size_t idx = 0;
        std::size_t star = token.find('*');
        if (star != std::string::npos) {
            try {
                std::size_t used = 0;
                coeff = std::stod(token.substr(0, star), &used);
                if (used != star) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw std::invalid_argument("bad coefficient in observable term '" + token + "'");
            }
            idx = star + 1;
        }
        std::string s(n, 'I');
        bool any = false;
        while (idx < token.size()) {
            char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(token[idx])));
            if (letter != 'X' && letter != 'Y' && letter != 'Z') {
                throw std::invalid_argument("bad Pauli letter '" + std::string(1, token[idx]) +
                                            "' in observable term '" + token + "'");
            }
            ++idx;
            std::size_t start = idx;
            while (idx < token.size() &&
                   std::isdigit(static_cast<unsigned char>(token[idx]))) {
                ++idx;
            }
            if (start == idx) {
                throw std::invalid_argument("missing qubit index after '" +
                                            std::string(1, letter) + "' in '" + token + "'");
            }
            std::uint64_t q = parse_unsigned(token.substr(start, idx - start), "qubit index");
            if (q < 1 || q > n) {
                throw std::invalid_argument("qubit index " + std::to_string(q) +
                                            " out of range 1.." + std::to_string(n));
            }
            if (s[q - 1] != 'I') {
                throw std::invalid_argument("qubit " + std::to_string(q) +
                                            " used twice in observable term '" + token + "'");
            }
            s[q - 1] = letter;
            any = true;
        }
        if (!any) throw std::invalid_argument("empty observable term '" + token + "'");
        o.add_term(pauli_string_from_text(s), coeff);
    }
    if (o.term_count() == 0) throw std::invalid_argument("observable has no terms");
    return o;
}

PauliOperator resolve_observable(const std::string& obs, const std::string& obs_file,
                                 std::uint32_t n) {
    if (!obs_file.empty()) {
        std::ifstream f(obs_file);
        if (!f) throw std::invalid_argument("cannot open observable file " + obs_file);
        std::stringstream buf;
        buf << f.rdbuf();
        PauliOperator o = pauli_operator_from_text(buf.str());
        if (o.n_qubits() != n) {
            throw std::invalid_argument("observable file is on " + std::to_string(o.n_qubits()) +
                                        " qubits, model has " + std::to_string(n));
        }
        return o;
    }
    return parse_observable(obs, n);
}

struct StateSpec {
    enum class Kind { product, haar, mps } kind = Kind::product;
    ProductState prod;
    std::size_t chi = 1;       // mps
    std::uint64_t seed = 0;    // haar
    int count = 1;             // haar
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) parts.push_back(part);
    return parts;
}

std::string alternating_bits(std::uint32_t n) {
    std::string bits;
    for (std::uint32_t i = 0; i < n; ++i) bits.push_back(i % 2 == 0 ? '0' : '1');
    return bits;
}

// State grammar: product:<bits> | haar:<seed>:<count> | mps:<chi>[:<bits>].
StateSpec parse_state_spec(const std::string& spec, std::uint32_t n) {
    auto parts = split(spec, ':');
    if (parts.empty()) throw std::invalid_argument("empty state spec");
    StateSpec st;
    auto want_bits = [n](const std::string& bits) {
        if (bits.size() != n) {
            throw std::invalid_argument("state pattern has " + std::to_string(bits.size()) +
                                        " bits, model has " + std::to_string(n) + " qubits");
        }
        return ProductState::from_bit_pattern(bits);
    };
    if (parts[0] == "product") {
        if (parts.size() != 2) throw std::invalid_argument("expected product:<bits>");
        st.kind = StateSpec::Kind::product;
        st.prod = want_bits(parts[1]);
    } else if (parts[0] == "haar") {
        if (parts.size() != 3) throw std::invalid_argument("expected haar:<seed>:<count>");
        st.kind = StateSpec::Kind::haar;
        st.seed = parse_unsigned(parts[1], "haar seed");
        std::uint64_t cnt = parse_unsigned(parts[2], "haar sample count");
        if (cnt < 1 || cnt > std::numeric_limits<int>::max()) {
            throw std::invalid_argument("haar sample count must be a positive integer");
        }
        st.count = static_cast<int>(cnt);
    } else if (parts[0] == "mps") {
        if (parts.size() != 2 && parts.size() != 3) {
            throw std::invalid_argument("expected mps:<chi>[:<bits>]");
        }
        st.kind = StateSpec::Kind::mps;
        st.chi = parse_unsigned(parts[1], "chi");
        if (st.chi < 1) throw std::invalid_argument("chi must be >= 1");
        st.prod = want_bits(parts.size() == 3 ? parts[2] : alternating_bits(n));
    } else {
        throw std::invalid_argument("unknown state kind '" + parts[0] +
                                    "' (product | haar | mps)");
    }
    return st;
}

std::filesystem::path resolve_out_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("LPD_OUT_DIR"); env != nullptr && *env != '\0') return env;
    return ".";
}

std::ofstream open_out(const std::filesystem::path& p) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot open output file " + p.string());
    return f;
}

void echo_schedule(const Hamiltonian& h, const GateSchedule& sched, std::uint32_t w_star) {
    std::cout << "schedule: order p=" << sched.p << " r=" << sched.r << " dt=" << fnum(sched.dt)
              << " dt_eff=" << fnum(h.alpha() * sched.dt) << " layers=" << h.layer_count()
              << " gates/step=" << sched.gates_per_step() << " w*=" << w_star << "\n";
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

struct RunArgs {
    ModelFlags model;
    std::string obs = "Z1";
    std::string obs_file;
    std::string state;  // empty -> alternating product pattern
    double t = 1.0;
    int r = 1;
    int order = 2;
    std::string w_star = "auto";
    double eps = 0.1;
    std::string threshold_mode = "entangled";
    double delta = 0.5;
    double dust = 1e-14;
    double t_f = 0.0;
    int r_forward = 0;   // 0 -> use r
    int r_backward = 0;  // 0 -> use r
    std::size_t chi = 32;
    int stride = 0;
    std::string out_dir;
    std::string prefix = "lpd_";
    std::string save_mps_path;
};

std::uint32_t resolve_w_star(const RunArgs& a, const Hamiltonian& h, const PauliOperator& obs) {
    if (a.w_star != "auto") {
        std::uint64_t v = 0;
        try {
            v = parse_unsigned(a.w_star, "w-star");
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("--w-star must be a nonnegative integer or 'auto'");
        }
        // Anything at or above n already means "no cut"; avoid wraparound.
        return static_cast<std::uint32_t>(
            std::min<std::uint64_t>(v, std::numeric_limits<std::uint32_t>::max()));
    }
    ModelConstants c = model_constants(h, obs, a.t, a.eps);
    auto tv = time_validity(c);
    ThresholdResult th =
        a.threshold_mode == "random"
            ? truncation_threshold(c, ThresholdMode::random, a.delta)
            : truncation_threshold(c, ThresholdMode::entangled);
    std::cout << "threshold theory: t0=" << fnum(tv.t0) << " applicable="
              << (th.applicable ? "yes" : "no (t >= t0)") << " target=" << fnum(th.target);
    if (th.applicable) {
        std::cout << " m*=" << th.m_star << " w*=" << th.w_star
                  << " bound=" << fnum(th.bound_at_m);
    }
    std::cout << "\n";
    if (!th.applicable) {
        throw std::invalid_argument(
            "w-star 'auto' is out of the theory's validity window (t >= t0); "
            "pass an explicit --w-star");
    }
    return std::max<std::uint32_t>(th.w_star, obs.max_weight());
}

KeyValues run_params(const RunArgs& a, const Hamiltonian& h, std::uint32_t w_star,
                     const std::string& state_desc) {
    KeyValues kv;
    kv.emplace_back("model", a.model.model_file.empty() ? a.model.model : a.model.model_file);
    kv.emplace_back("n", std::to_string(h.n));
    if (a.model.model_file.empty()) {
        kv.emplace_back("hx", fnum(a.model.hx));
        kv.emplace_back("hy", fnum(a.model.hy));
        kv.emplace_back("periodic", a.model.periodic ? "1" : "0");
    }
    kv.emplace_back("obs", a.obs_file.empty() ? a.obs : a.obs_file);
    kv.emplace_back("state", state_desc);
    kv.emplace_back("t", fnum(a.t));
    kv.emplace_back("r", std::to_string(a.r));
    kv.emplace_back("order", std::to_string(a.order));
    kv.emplace_back("w_star", std::to_string(w_star));
    kv.emplace_back("dust", fnum(a.dust));
    return kv;
}

int cmd_run(const RunArgs& a) {
    Hamiltonian h = build_model(a.model);
    PauliOperator obs = resolve_observable(a.obs, a.obs_file, h.n);
    std::uint32_t w_star = resolve_w_star(a, h, obs);
    GateSchedule sched = trotter_schedule(h, a.order, a.t, a.r);
    echo_schedule(h, sched, w_star);

    std::string state_spec = a.state.empty() ? "product:" + alternating_bits(h.n) : a.state;
    StateSpec st = parse_state_spec(state_spec, h.n);
    LpdOptions opts;
    opts.dust_rel_threshold = a.dust;
    auto out_dir = resolve_out_dir(a.out_dir);
    KeyValues params = run_params(a, h, w_star, state_spec);

    if (a.t_f > 0) {
        if (st.kind == StateSpec::Kind::haar) {
            throw std::invalid_argument("hybrid runs need a product or mps state, not haar");
        }
        std::size_t chi = st.kind == StateSpec::Kind::mps ? st.chi : a.chi;
        int rf = a.r_forward > 0 ? a.r_forward : a.r;
        int rb = a.r_backward > 0 ? a.r_backward : a.r;
        HybridOptions hopts;
        hopts.expectation_stride = a.stride;
        hopts.lpd = opts;
        HybridResult hy =
            hybrid_run(h, obs, a.t, a.t_f, chi, w_star, a.order, rf, rb, st.prod, hopts);
        params.emplace_back("t_f", fnum(a.t_f));
        params.emplace_back("chi", std::to_string(chi));
        params.emplace_back("r_forward", std::to_string(rf));
        params.emplace_back("r_backward", std::to_string(rb));

        auto hybrid_csv = open_out(out_dir / (a.prefix + "hybrid.csv"));
        write_hybrid_csv(hybrid_csv, hy, params);
        auto forward_csv = open_out(out_dir / (a.prefix + "forward_tebd.csv"));
        write_tebd_csv(forward_csv, hy.forward, params);
        auto json_out = open_out(out_dir / (a.prefix + "run.json"));
        nlohmann::json j = propagation_to_json(hy.backward, params, true);
        j["mu_hybrid"] = hy.mu;
        json_out << j.dump(2) << "\n";
        if (!a.save_mps_path.empty()) {
            save_mps_file(a.save_mps_path, hy.state);
            std::cout << "saved forward MPS to " << a.save_mps_path << "\n";
        }
        std::cout << "mu = " << fnum(hy.mu) << " (hybrid, t_F=" << fnum(a.t_f) << ", chi=" << chi
                  << ")\n";
        return 0;
    }

    if (st.kind == StateSpec::Kind::haar) {
        params.emplace_back("seed", std::to_string(st.seed));
        params.emplace_back("samples", std::to_string(st.count));
        PropagationResult res = lpd_run(h, obs, a.t, a.r, a.order, w_star, nullptr, opts);
        auto run_csv = open_out(out_dir / (a.prefix + "run.csv"));
        write_propagation_csv(run_csv, res, params);
        auto json_out = open_out(out_dir / (a.prefix + "run.json"));
        json_out << propagation_to_json(res, params, true).dump(2) << "\n";

        auto samples_csv = open_out(out_dir / (a.prefix + "haar_samples.csv"));
        for (const auto& [k, v] : params) samples_csv << "# " << k << "=" << v << "\n";
        samples_csv << "sample,seed,mu_truncated,mu_schedule_replay,truncation_error\n";
        double sum_err = 0, max_err = 0;
        for (int i = 0; i < st.count; ++i) {
            std::uint64_t seed = st.seed + static_cast<std::uint64_t>(i);
            DenseState psi = haar_sample(h.n, seed);
            double mu_trunc = dense_expectation(psi, res.final_operator);
            double mu_replay = dense_expectation(dense_evolve_schedule(psi, sched), obs);
            double err = std::abs(mu_trunc - mu_replay);
            sum_err += err;
            max_err = std::max(max_err, err);
            samples_csv << i << "," << seed << "," << fnum(mu_trunc) << "," << fnum(mu_replay)
                        << "," << fnum(err) << "\n";
        }
        std::cout << "haar truncation error over " << st.count
                  << " samples: mean=" << fnum(sum_err / st.count) << " max=" << fnum(max_err)
                  << "\n";
        std::cout << "total discarded norm = " << fnum(res.total_discarded_norm()) << "\n";
        return 0;
    }

    StateHandle state = st.kind == StateSpec::Kind::product
                            ? StateHandle(st.prod)
                            : StateHandle([&] {
                                  MpsState m = MpsState::from_product(st.prod);
                                  m.chi_max = st.chi;
                                  return m;
                              }());
    PropagationResult res = lpd_run(h, obs, a.t, a.r, a.order, w_star, &state, opts);
    auto run_csv = open_out(out_dir / (a.prefix + "run.csv"));
    write_propagation_csv(run_csv, res, params);
    auto json_out = open_out(out_dir / (a.prefix + "run.json"));
    json_out << propagation_to_json(res, params, true).dump(2) << "\n";
    std::cout << "mu = " << fnum(res.final_mu)
              << "  total discarded norm = " << fnum(res.total_discarded_norm()) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

double z_first_on_column(const Eigen::MatrixXcd& psi, Eigen::Index col) {
    double mu = 0;
    for (Eigen::Index b = 0; b < psi.rows(); ++b) {
        double w = std::norm(psi(b, col));
        mu += (b & 1) ? -w : w;
    }
    return mu;
}

// Benchmark data tables for the n=10 periodic chain: per-step expectations,
// Trotter error (product vs Haar average), per-weight norm histogram, and
// truncation error (product vs Haar average/max).
int reproduce_fig3(const std::filesystem::path& out_dir) {
    const std::uint32_t n = 10;
    const double t = 5;
    const int r = 50, p = 2;
    const std::uint32_t w_star = 5;
    const int kHaar = 100;
    const std::uint64_t seed_base = 9000;
    Hamiltonian h = build_qmfi(n, 0.8, 0.9, true);
    PauliOperator obs(PauliString::single(n, 'Z', 0), 1.0);
    ProductState prod = ProductState::alternating(n);
    const double dt = t / r;

    KeyValues params = {{"model", "qmfi"},   {"n", "10"},       {"hx", "0.8"},
                        {"hy", "0.9"},       {"periodic", "1"}, {"obs", "Z1"},
                        {"state", "product:" + alternating_bits(n) + " + haar"},
                        {"t", "5"},          {"r", "50"},       {"order", "2"},
                        {"w_star", "5"},     {"haar_samples", "100"},
                        {"seed_base", std::to_string(seed_base)}};

    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd psi0(dim, kHaar + 1);
    psi0.col(0) = dense_from_product(prod).amp;
    for (int i = 1; i <= kHaar; ++i) {
        psi0.col(i) = haar_sample(n, seed_base + static_cast<std::uint64_t>(i)).amp;
    }

    GateSchedule sched = trotter_schedule(h, p, t, r);
    auto gates = sched.state_order_gates();
    std::vector<std::vector<double>> replay(r + 1, std::vector<double>(kHaar + 1));
    std::vector<std::vector<double>> exact(r + 1, std::vector<double>(kHaar + 1));
    std::cerr << "fig3: exact eigendecomposition..." << std::endl;
    ExactEvolver ev(h);
    Eigen::MatrixXcd replay_b = psi0;
    Eigen::MatrixXcd exact_b = psi0;
    for (int i = 0; i <= kHaar; ++i) replay[0][i] = exact[0][i] = z_first_on_column(psi0, i);
    std::cerr << "fig3: replaying the schedule on 101 states..." << std::endl;
    for (int d = 1; d <= r; ++d) {
        for (const auto& g : gates) apply_gate_block(replay_b, g, n);
        exact_b = ev.evolve_block(exact_b, dt);
        for (int i = 0; i <= kHaar; ++i) {
            replay[d][i] = z_first_on_column(replay_b, i);
            exact[d][i] = z_first_on_column(exact_b, i);
        }
    }

    std::cerr << "fig3: truncated propagation..." << std::endl;
    std::vector<std::vector<double>> truncated(r + 1, std::vector<double>(kHaar + 1));
    for (int i = 0; i <= kHaar; ++i) truncated[0][i] = replay[0][i];
    LpdOptions opts;
    opts.step_observer = [&](const StepRecord& rec, const PauliOperator& op) {
        Eigen::MatrixXcd m = dense_matrix(op);
        Eigen::MatrixXcd x = m * psi0;
        for (int i = 0; i <= kHaar; ++i) {
            truncated[rec.d][i] = (psi0.col(i).adjoint() * x.col(i))(0).real();
        }
    };
    StateHandle state = prod;
    PropagationResult res = lpd_run(h, obs, t, r, p, w_star, &state, opts);

    auto exp_csv = open_out(out_dir / "fig3_expectation.csv");
    for (const auto& [k, v] : params) exp_csv << "# " << k << "=" << v << "\n";
    exp_csv << "d,t,mu_lpd,mu_exact,abs_error\n";
    for (int d = 0; d <= r; ++d) {
        exp_csv << d << "," << fnum(d * dt) << "," << fnum(truncated[d][0]) << ","
                << fnum(exact[d][0]) << "," << fnum(std::abs(truncated[d][0] - exact[d][0]))
                << "\n";
    }

    auto trot_csv = open_out(out_dir / "fig3_trotter_error.csv");
    for (const auto& [k, v] : params) trot_csv << "# " << k << "=" << v << "\n";
    trot_csv << "d,t,trotter_error_product,trotter_error_haar_mean\n";
    for (int d = 0; d <= r; ++d) {
        double mean = 0;
        for (int i = 1; i <= kHaar; ++i) mean += std::abs(replay[d][i] - exact[d][i]);
        mean /= kHaar;
        trot_csv << d << "," << fnum(d * dt) << "," << fnum(std::abs(replay[d][0] - exact[d][0]))
                 << "," << fnum(mean) << "\n";
    }

    auto hist_csv = open_out(out_dir / "fig3_weight_histogram.csv");
    for (const auto& [k, v] : params) hist_csv << "# " << k << "=" << v << "\n";
    hist_csv << "d,t";
    for (std::uint32_t w = 0; w <= n; ++w) hist_csv << ",norm_sq_w" << w;
    hist_csv << "\n";
    for (const auto& rec : res.steps) {
        hist_csv << rec.d << "," << fnum(rec.d * dt);
        for (std::uint32_t w = 0; w <= n; ++w) {
            hist_csv << ","
                     << fnum(w < rec.weight_histogram.size() ? rec.weight_histogram[w] : 0.0);
        }
        hist_csv << "\n";
    }

    auto trunc_csv = open_out(out_dir / "fig3_truncation_error.csv");
    for (const auto& [k, v] : params) trunc_csv << "# " << k << "=" << v << "\n";
    trunc_csv << "d,t,trunc_error_product,trunc_error_haar_mean,trunc_error_haar_max\n";
    for (int d = 0; d <= r; ++d) {
        double mean = 0, mx = 0;
        for (int i = 1; i <= kHaar; ++i) {
            double e = std::abs(replay[d][i] - truncated[d][i]);
            mean += e;
            mx = std::max(mx, e);
        }
        mean /= kHaar;
        trunc_csv << d << "," << fnum(d * dt) << ","
                  << fnum(std::abs(replay[d][0] - truncated[d][0])) << "," << fnum(mean) << ","
                  << fnum(mx) << "\n";
    }

    std::cout << "fig3 tables written to " << out_dir.string() << "\n";
    return 0;
}

// Hybrid protocol data tables on the open chain: forward MPS entanglement
// entropy, backward operator magic, and hybrid-vs-exact expectation.
int reproduce_fig4(const std::filesystem::path& out_dir) {
    const std::uint32_t n = 10;
    const double t = 10, t_f = 5;
    const int p = 2, r_f = 50, r_b = 50;
    const std::size_t chi = 32;
    const std::uint32_t w_star = 5;
    Hamiltonian h = build_qmfi(n, 0.8, 0.9, false);
    PauliOperator obs(PauliString::single(n, 'Z', 0), 1.0);
    ProductState prod = ProductState::alternating(n);
    const double dt_f = t_f / r_f;
    const double dt_b = (t - t_f) / r_b;

    KeyValues params = {{"model", "qmfi"}, {"n", "10"},        {"hx", "0.8"},
                        {"hy", "0.9"},     {"periodic", "0"},  {"obs", "Z1"},
                        {"state", "product:" + alternating_bits(n)},
                        {"t", "10"},       {"t_f", "5"},       {"r_forward", "50"},
                        {"r_backward", "50"}, {"order", "2"},  {"chi", "32"},
                        {"w_star", "5"}};

    // Forward entropy trajectory: step the TEBD manually so the state is
    // available after every step. One r=1 step at dt equals one step of the
    // r-step schedule.
    std::cerr << "fig4: forward TEBD..." << std::endl;
    auto ent_csv = open_out(out_dir / "fig4_entropy.csv");
    for (const auto& [k, v] : params) ent_csv << "# " << k << "=" << v << "\n";
    ent_csv << "forward_step,t,entropy_center_2q_bits,max_bond_entropy_bits,max_bond\n";
    MpsState m = MpsState::from_product(prod);
    ent_csv << "0,0,0,0,1\n";
    for (int f = 1; f <= r_f; ++f) {
        auto recs = tebd_evolve_inplace(m, h, dt_f, 1, p, chi);
        double max_be = 0;
        for (double e : recs[0].bond_entropies_bits) max_be = std::max(max_be, e);
        double center = mps_entanglement_entropy(m, n / 2 - 1, n / 2);
        ent_csv << f << "," << fnum(f * dt_f) << "," << fnum(center) << "," << fnum(max_be) << ","
                << recs[0].max_bond << "\n";
    }

    std::cerr << "fig4: hybrid run..." << std::endl;
    HybridOptions hopts;
    hopts.expectation_stride = 5;
    HybridResult hy = hybrid_run(h, obs, t, t_f, chi, w_star, p, r_f, r_b, prod, hopts);

    auto magic_csv = open_out(out_dir / "fig4_magic.csv");
    for (const auto& [k, v] : params) magic_csv << "# " << k << "=" << v << "\n";
    magic_csv << "backward_step,t,magic_bits\n";
    for (std::size_t d = 0; d < hy.magic.size(); ++d) {
        magic_csv << d << "," << fnum(t_f + static_cast<double>(d) * dt_b) << ","
                  << fnum(hy.magic[d]) << "\n";
    }

    std::cerr << "fig4: exact reference..." << std::endl;
    ExactEvolver ev(h);
    DenseState prod_dense = dense_from_product(prod);
    auto mu_csv = open_out(out_dir / "fig4_expectation.csv");
    for (const auto& [k, v] : params) mu_csv << "# " << k << "=" << v << "\n";
    mu_csv << "backward_step,t,mu_hybrid,mu_exact,abs_error\n";
    for (const auto& [d, mu] : hy.mu_trajectory) {
        double t_phys = t_f + d * dt_b;
        double exact = dense_pauli_expectation(ev.evolve(prod_dense, t_phys),
                                               PauliString::single(n, 'Z', 0));
        mu_csv << d << "," << fnum(t_phys) << "," << fnum(mu) << "," << fnum(exact) << ","
               << fnum(std::abs(mu - exact)) << "\n";
    }

    std::cout << "fig4 tables written to " << out_dir.string() << "\n";
    std::cout << "mu_hybrid(t=10) = " << fnum(hy.mu) << "\n";
    return 0;
}

int cmd_reproduce(const std::string& figure, const std::string& out_dir_flag) {
    auto out_dir = resolve_out_dir(out_dir_flag);
    std::filesystem::create_directories(out_dir);
    if (figure == "fig3") return reproduce_fig3(out_dir);
    if (figure == "fig4") return reproduce_fig4(out_dir);
    throw std::invalid_argument("unknown figure id '" + figure + "' (valid: fig3, fig4)");
}

// ---------------------------------------------------------------------------
// threshold / trotter-steps
// ---------------------------------------------------------------------------

struct ThresholdArgs {
    ModelFlags model;
    std::string obs = "Z1";
    double t = 0.03;
    double eps = 0.1;
    std::string mode = "entangled";
    double delta = 0.5;
    // Explicit constants override the model when k_o is set.
    unsigned k_o = 0, k_h = 0, gamma = 0;
    double alpha = 0;
    bool json = false;
};

int cmd_threshold(const ThresholdArgs& a) {
    ModelConstants c;
    std::optional<std::uint32_t> n;
    if (a.k_o > 0) {
        if (a.k_h == 0 || a.gamma == 0 || !(a.alpha > 0)) {
            throw std::invalid_argument(
                "explicit constants need all of --k-o, --k-h, --gamma, --alpha");
        }
        c.k_o = a.k_o;
        c.k_h = a.k_h;
        c.gamma = a.gamma;
        c.alpha = a.alpha;
        c.t = a.t;
        c.eps = a.eps;
    } else {
        Hamiltonian h = build_model(a.model);
        PauliOperator obs = parse_observable(a.obs, h.n);
        c = model_constants(h, obs, a.t, a.eps);
        n = h.n;
    }
    auto tv = time_validity(c);
    ThresholdResult th = a.mode == "random"
                             ? truncation_threshold(c, ThresholdMode::random, a.delta)
                             : truncation_threshold(c, ThresholdMode::entangled);
    if (a.json) {
        nlohmann::json j;
        j["k_o"] = c.k_o;
        j["k_h"] = c.k_h;
        j["gamma"] = c.gamma;
        j["alpha"] = c.alpha;
        j["t"] = c.t;
        j["eps"] = c.eps;
        j["mode"] = a.mode;
        if (a.mode == "random") j["delta"] = a.delta;
        j["t0"] = tv.t0;
        j["applicable"] = th.applicable;
        j["target"] = th.target;
        if (th.applicable) {
            j["m_star"] = th.m_star;
            j["w_star"] = th.w_star;
            j["bound_at_m_star"] = th.bound_at_m;
            if (n) j["pauli_count_bound"] = pauli_count_bound(*n, th.w_star);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "constants: k_o=" << c.k_o << " k_h=" << c.k_h << " gamma=" << c.gamma
              << " alpha=" << fnum(c.alpha) << " t=" << fnum(c.t) << " eps=" << fnum(c.eps)
              << "\n";
    std::cout << "validity window: t0=" << fnum(tv.t0)
              << (th.applicable ? " (t < t0: applicable)" : " (t >= t0: NOT applicable)") << "\n";
    std::cout << "target " << (a.mode == "random" ? "eps^2*delta" : "eps") << " = "
              << fnum(th.target) << "\n";
    if (th.applicable) {
        std::cout << "m* = " << th.m_star << "  w* = " << th.w_star
                  << "  bound(m*) = " << fnum(th.bound_at_m) << "\n";
        if (n) {
            std::cout << "Pauli count bound at w*: " << fnum(pauli_count_bound(*n, th.w_star))
                      << "\n";
        }
    } else {
        std::cout << "no finite threshold: the series does not decrease at this t\n";
    }
    return 0;
}

struct StepsArgs {
    ModelFlags model;
    std::string obs = "Z1";
    double t = 1.0;
    double eps = 0.01;
    int order = 2;
    std::string mode = "average";
};

int cmd_trotter_steps(const StepsArgs& a) {
    Hamiltonian h = build_model(a.model);
    PauliOperator obs = parse_observable(a.obs, h.n);
    StepCountMode mode;
    if (a.mode == "worst") {
        mode = StepCountMode::worst;
    } else if (a.mode == "average" || a.mode == "entangled") {
        mode = StepCountMode::average_or_entangled;
    } else {
        throw std::invalid_argument("--mode must be worst or average");
    }
    StepCountResult res = trotter_steps_required(h, obs, a.t, a.eps, a.order, mode);
    std::cout << "r = " << res.r << "  (order p=" << res.p << ", Lambda=" << fnum(res.lambda)
              << ", observable norm=" << fnum(res.observable_norm)
              << (res.lambda_heuristic ? ", Lambda from the p=2 fallback — heuristic" : "")
              << ")\n";
    std::cout << "theory-guided estimate with unit prefactor; validate against the oracle on "
                 "small instances\n";
    return 0;
}

// ---------------------------------------------------------------------------
// check-entanglement / oracle-diff
// ---------------------------------------------------------------------------

struct EntArgs {
    std::string state;  // product:<bits> | haar:<seed> | ghz | w | mps-file:<path>
    unsigned n = 0;
    std::string obs;
    std::string obs_file;
    std::string out;
};

int cmd_check_entanglement(const EntArgs& a) {
    auto parts = split(a.state, ':');
    if (parts.empty()) throw std::invalid_argument("empty --state");
    DenseState psi;
    if (parts[0] == "product" && parts.size() == 2) {
        psi = dense_from_product(ProductState::from_bit_pattern(parts[1]));
    } else if (parts[0] == "haar" && parts.size() == 2) {
        if (a.n == 0) throw std::invalid_argument("haar:<seed> needs --n");
        psi = haar_sample(a.n, parse_unsigned(parts[1], "haar seed"));
    } else if (parts[0] == "ghz" && parts.size() == 1) {
        if (a.n == 0) throw std::invalid_argument("ghz needs --n");
        DenseState::check_cap(a.n);
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << a.n);
        v[0] = v[v.size() - 1] = 1.0 / std::sqrt(2.0);
        psi = DenseState(a.n, std::move(v));
    } else if (parts[0] == "w" && parts.size() == 1) {
        if (a.n == 0) throw std::invalid_argument("w needs --n");
        DenseState::check_cap(a.n);
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << a.n);
        for (std::uint32_t q = 0; q < a.n; ++q) {
            v[Eigen::Index{1} << q] = 1.0 / std::sqrt(static_cast<double>(a.n));
        }
        psi = DenseState(a.n, std::move(v));
    } else if (parts[0] == "mps-file" && parts.size() == 2) {
        psi = mps_to_dense(load_mps_file(parts[1]));
    } else {
        throw std::invalid_argument(
            "unknown --state (product:<bits> | haar:<seed> | ghz | w | mps-file:<path>)");
    }
    PauliOperator obs = resolve_observable(a.obs.empty() ? "Z1" : a.obs, a.obs_file, psi.n);
    EntanglementReport rep = entanglement_condition_report(psi, obs);
    nlohmann::json j = entanglement_report_to_json(rep);
    j["state"] = a.state;
    j["n"] = psi.n;
    if (!a.out.empty()) {
        auto f = open_out(a.out);
        f << j.dump(2) << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    std::cout << "expectation = " << fnum(rep.expectation) << "  lhs = " << fnum(rep.lhs)
              << "  2*||O||^2 = " << fnum(2 * rep.two_norm_sq) << "\n";
    std::cout << "entropy condition on all pairs: "
              << (rep.entropy_condition_all_pairs ? "holds" : "does not hold")
              << "; conclusion lhs <= 2*||O||^2: "
              << (rep.conclusion_two_norm_bound ? "holds" : "does not hold") << "\n";
    return 0;
}

struct DiffArgs {
    ModelFlags model;
    std::string obs = "Z1";
    std::string state;  // product bits; empty -> alternating
    double t = 1.0;
    int r = 10;
    int order = 2;
    double tol = 1e-10;
};

int cmd_oracle_diff(const DiffArgs& a) {
    Hamiltonian h = build_model(a.model);
    DenseState::check_cap(h.n);
    PauliOperator obs = parse_observable(a.obs, h.n);
    ProductState prod = a.state.empty() ? ProductState::alternating(h.n)
                                        : ProductState::from_bit_pattern(a.state);
    if (prod.n_qubits() != h.n) {
        throw std::invalid_argument("state pattern length does not match the model");
    }
    LpdOptions opts;
    opts.dust_rel_threshold = 0;
    StateHandle state = prod;
    PropagationResult res = lpd_run(h, obs, a.t, a.r, a.order, h.n, &state, opts);
    GateSchedule sched = trotter_schedule(h, a.order, a.t, a.r);
    double reference =
        dense_expectation(dense_evolve_schedule(dense_from_product(prod), sched), obs);
    double diff = std::abs(res.final_mu - reference);
    std::cout << "lossless propagation mu = " << fnum(res.final_mu) << "\n";
    std::cout << "dense replay mu        = " << fnum(reference) << "\n";
    std::cout << "|diff| = " << fnum(diff) << "  (tol " << fnum(a.tol) << ")\n";
    if (diff > a.tol) {
        throw std::runtime_error("lossless propagation and the dense oracle disagree");
    }
    std::cout << "OK\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "lpd: sparse Heisenberg-picture propagation of Pauli observables with weight "
        "truncation, plus bound calculators, an MPS hybrid, and a dense oracle"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "propagate an observable and write CSV/JSON tables");
    add_model_flags(run, run_args.model);
    run->add_option("--obs", run_args.obs, "observable, e.g. Z1 or 0.5*X2Y3,-1*Z4")
        ->capture_default_str();
    run->add_option("--obs-file", run_args.obs_file, "observable from a Pauli-sum text file");
    run->add_option("--state", run_args.state,
                    "product:<bits> | haar:<seed>:<count> | mps:<chi>[:<bits>] "
                    "(default product:0101...)");
    run->add_option("--t", run_args.t, "total evolution time")->required();
    run->add_option("--r", run_args.r, "Trotter steps")->capture_default_str();
    run->add_option("--order", run_args.order, "Trotter order (1 or even)")
        ->capture_default_str();
    run->add_option("--w-star", run_args.w_star, "weight cut, or 'auto' from the bound theory")
        ->capture_default_str();
    run->add_option("--eps", run_args.eps, "target accuracy for --w-star auto")
        ->capture_default_str();
    run->add_option("--threshold-mode", run_args.threshold_mode,
                    "entangled | random (for --w-star auto)")
        ->capture_default_str();
    run->add_option("--delta", run_args.delta, "failure probability for random mode")
        ->capture_default_str();
    run->add_option("--dust", run_args.dust, "relative dust-pruning threshold (0 disables)")
        ->capture_default_str();
    run->add_option("--t-f", run_args.t_f,
                    "forward (MPS) time; > 0 switches to the hybrid protocol")
        ->capture_default_str();
    run->add_option("--r-forward", run_args.r_forward, "forward steps (default --r)");
    run->add_option("--r-backward", run_args.r_backward, "backward steps (default --r)");
    run->add_option("--chi", run_args.chi, "MPS bond cap for hybrid runs with a product state")
        ->capture_default_str();
    run->add_option("--stride", run_args.stride,
                    "hybrid expectation sampling stride (0: ends only)")
        ->capture_default_str();
    run->add_option("--out-dir", run_args.out_dir, "output directory (default $LPD_OUT_DIR or .)");
    run->add_option("--prefix", run_args.prefix, "output file prefix")->capture_default_str();
    run->add_option("--save-mps", run_args.save_mps_path,
                    "write the forward-evolved MPS container here (hybrid only)");

    std::string figure, reproduce_out;
    auto* rep = app.add_subcommand("reproduce", "emit benchmark data tables (fig3 | fig4)");
    rep->add_option("figure", figure, "figure id: fig3 | fig4")->required();
    rep->add_option("--out-dir", reproduce_out, "output directory (default $LPD_OUT_DIR or .)");

    ThresholdArgs th_args;
    auto* th = app.add_subcommand("threshold", "truncation threshold and error-bound calculator");
    add_model_flags(th, th_args.model);
    th->add_option("--obs", th_args.obs, "observable (for model-derived constants)")
        ->capture_default_str();
    th->add_option("--t", th_args.t, "evolution time")->required();
    th->add_option("--eps", th_args.eps, "target accuracy")->capture_default_str();
    th->add_option("--mode", th_args.mode, "entangled | random")->capture_default_str();
    th->add_option("--delta", th_args.delta, "failure probability (random mode)")
        ->capture_default_str();
    th->add_option("--k-o", th_args.k_o, "explicit max observable weight (overrides the model)");
    th->add_option("--k-h", th_args.k_h, "explicit max Hamiltonian term weight");
    th->add_option("--gamma", th_args.gamma, "explicit layer count");
    th->add_option("--alpha", th_args.alpha, "explicit 2*max|coefficient|");
    th->add_flag("--json", th_args.json, "emit JSON instead of text");

    StepsArgs steps_args;
    auto* steps = app.add_subcommand("trotter-steps",
                                     "theory-guided Trotter step-count estimate");
    add_model_flags(steps, steps_args.model);
    steps->add_option("--obs", steps_args.obs, "observable")->capture_default_str();
    steps->add_option("--t", steps_args.t, "evolution time")->required();
    steps->add_option("--eps", steps_args.eps, "target expectation error")->capture_default_str();
    steps->add_option("--order", steps_args.order, "Trotter order")->capture_default_str();
    steps->add_option("--mode", steps_args.mode, "worst | average")->capture_default_str();

    EntArgs ent_args;
    auto* ent = app.add_subcommand("check-entanglement",
                                   "evaluate the local-observable inequality chain on a state");
    ent->add_option("--state", ent_args.state,
                    "product:<bits> | haar:<seed> | ghz | w | mps-file:<path>")
        ->required();
    ent->add_option("--n", ent_args.n, "qubit count (haar/ghz/w states)");
    ent->add_option("--obs", ent_args.obs, "observable (default Z1)");
    ent->add_option("--obs-file", ent_args.obs_file, "observable from a Pauli-sum text file");
    ent->add_option("--out", ent_args.out, "write the JSON report here instead of stdout");

    DiffArgs diff_args;
    auto* diff = app.add_subcommand("oracle-diff",
                                    "lossless propagation vs dense replay of the same schedule");
    add_model_flags(diff, diff_args.model);
    diff->add_option("--obs", diff_args.obs, "observable")->capture_default_str();
    diff->add_option("--state", diff_args.state, "product bit pattern (default 0101...)");
    diff->add_option("--t", diff_args.t, "evolution time")->required();
    diff->add_option("--r", diff_args.r, "Trotter steps")->capture_default_str();
    diff->add_option("--order", diff_args.order, "Trotter order")->capture_default_str();
    diff->add_option("--tol", diff_args.tol, "agreement tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (rep->parsed()) return cmd_reproduce(figure, reproduce_out);
        if (th->parsed()) return cmd_threshold(th_args);
        if (steps->parsed()) return cmd_trotter_steps(steps_args);
        if (ent->parsed()) return cmd_check_entanglement(ent_args);
        if (diff->parsed()) return cmd_oracle_diff(diff_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
