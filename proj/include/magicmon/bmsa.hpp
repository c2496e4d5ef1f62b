#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "magicmon/entropy.hpp"
#include "magicmon/errors.hpp"
#include "magicmon/measures.hpp"
#include "magicmon/stab_basis.hpp"
#include "magicmon/statevec.hpp"

namespace magicmon {

inline constexpr int kBruteForceCap = 5;
inline constexpr int kBranchBoundCap = 12;

struct BmsaOptions {
    // The alpha = 1 pruning bound is a conjecture; it is applied only
    // when this flag is set (default on, matching how the exact
    // reference data for alpha = 1 is produced).
    bool assume_alpha1_bound = true;
    // Restrict the (Q', c) search when the amplitudes are known real
    // (c = 0) or positive real (Q' = 0 and c = 0); with these flags the
    // restricted minimum equals the global one.
    bool real_amplitudes = false;
    bool positive_amplitudes = false;
    int max_qubits = kBranchBoundCap;
};

struct BmsaResult {
    double value_nats = 0.0;
    double alpha = 1.0;
    StabBasisKey argmin;
    std::string method;
    uint64_t nodes_visited = 0;
    uint64_t nodes_pruned = 0;
    double wall_time_s = -1.0; // filled by callers that time runs

    nlohmann::json to_json() const {
        nlohmann::json j{{"alpha", std::isinf(alpha) ? nlohmann::json("inf") : nlohmann::json(alpha)},
                         {"value_nats", value_nats},
                         {"value_bits", nats_to_bits(value_nats)},
                         {"key", key_to_json(argmin)},
                         {"tableau", tableau_to_json(basis_to_tableau(argmin))},
                         {"method", method},
                         {"nodes", {{"visited", nodes_visited}, {"pruned", nodes_pruned}}}};
        if (wall_time_s >= 0.0) j["wall_time_s"] = wall_time_s;
        return j;
    }
};

namespace detail {

// Entropy of the basis distribution without materializing the key:
// shared kernel of the brute-force scan and the branch-and-bound.
struct BasisScanWorkspace {
    std::vector<cplx> phase;
    std::vector<cplx> f;
    std::vector<double> probs;
    std::vector<uint64_t> rx;
    std::vector<uint64_t> reps;
};

inline void prepare_r(BasisScanWorkspace& ws, const f2::BitMatrix& r) {
    const int k = r.cols;
    const std::size_t block = std::size_t{1} << k;
    ws.rx.assign(block, 0);
    for (uint64_t x = 0; x < block; ++x) ws.rx[x] = f2::mat_vec(r, x);
    ws.reps = f2::coset_reps(r);
    ws.phase.resize(block);
    ws.f.resize(block);
    ws.probs.resize(block * ws.reps.size());
}

inline double basis_entropy(BasisScanWorkspace& ws, const Statevector& state, const f2::BitMatrix& qp,
                            uint64_t c, double alpha) {
    const int k = qp.rows;
    const std::size_t block = std::size_t{1} << k;
    for (uint64_t x = 0; x < block; ++x) {
        cplx ph = i_power(-static_cast<int>(std::popcount(c & x)));
        if (quad_form_parity(qp, x)) ph = -ph;
        ws.phase[x] = ph;
    }
    const double scale = 1.0 / static_cast<double>(block);
    std::size_t out = 0;
    for (uint64_t t : ws.reps) {
        for (uint64_t x = 0; x < block; ++x) ws.f[x] = ws.phase[x] * state.amps[ws.rx[x] ^ t];
        fwht_inplace(std::span<cplx>(ws.f.data(), block));
        for (uint64_t d = 0; d < block; ++d) ws.probs[out++] = std::norm(ws.f[d]) * scale;
    }
    return renyi_entropy(std::span<const double>(ws.probs.data(), out), alpha);
}

inline Statevector modulus_state(const Statevector& state) {
    Statevector out;
    out.n = state.n;
    out.amps.resize(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i) out.amps[i] = cplx{std::abs(state.amps[i]), 0.0};
    return out;
}

inline bool alpha_supported_by_bound(double alpha, bool assume_alpha1) {
    if (std::isinf(alpha)) return true; // limit of the integer-alpha bounds
    if (alpha == 1.0) return assume_alpha1;
    return alpha > 1.0 && alpha == std::floor(alpha);
}

} // namespace detail

enum class BmsaBackend { Overlap, Pauli };

// Exact minimum over every stabilizer basis by exhaustive scan.
// 'Overlap' evaluates squared overlaps through Walsh-Hadamard
// transforms of the amplitudes; 'Pauli' goes through the Pauli vector
// of the state and the group-expectation pipeline. Ties keep the first
// key in enumeration order.
inline BmsaResult bmsa_bruteforce(const Statevector& state, double alpha, BmsaBackend backend = BmsaBackend::Overlap,
                                  int cap = kBruteForceCap) {
    if (state.n > cap) throw CapError("bmsa_bruteforce: qubit count exceeds cap");
    if (alpha < 0.0) throw std::domain_error("bmsa_bruteforce: alpha must be >= 0");
    BmsaResult best;
    best.alpha = alpha;
    best.method = backend == BmsaBackend::Overlap ? "bruteforce-overlap" : "bruteforce-pauli";
    best.value_nats = std::numeric_limits<double>::infinity();

    std::vector<double> spectrum;
    if (backend == BmsaBackend::Pauli) spectrum = pauli_spectrum(state);
    const std::size_t size = state.dim();

    for_each_basis_key(state.n, [&](const StabBasisKey& key) {
        double value = 0.0;
        if (backend == BmsaBackend::Overlap) {
            value = renyi_entropy(distribution_for_basis(state, key), alpha);
        } else {
            const auto gens = basis_group_generators(key);
            std::vector<double> c(size);
            c[0] = 1.0;
            PauliString cur = PauliString::identity(state.n);
            uint64_t gray = 0;
            for (uint64_t u = 1; u < size; ++u) {
                const uint64_t next_gray = u ^ (u >> 1);
                const int flipped = std::countr_zero(gray ^ next_gray);
                gray = next_gray;
                cur = multiply(cur, gens[static_cast<std::size_t>(flipped)]);
                c[gray] = cur.sign() * spectrum[pauli_index(cur)];
            }
            fwht_inplace(c);
            std::vector<double> probs(size);
            for (std::size_t i = 0; i < size; ++i) probs[i] = std::max(0.0, c[i] / static_cast<double>(size));
            value = renyi_entropy(probs, alpha);
        }
        ++best.nodes_visited;
        if (value < best.value_nats) {
            best.value_nats = value;
            best.argmin = key;
        }
    });
    best.value_nats = std::max(0.0, best.value_nats);
    return best;
}

// Lower bound over (Q', c) for a fixed R: the entropy of the Q' = 0,
// c = 0 distribution of the modulus state. Proven for integer
// alpha >= 2 (and their alpha -> infinity limit); alpha = 1 is the
// conjectured case and must be enabled explicitly.
inline double bound_for_r(const Statevector& modulus_state, const f2::BitMatrix& r, double alpha,
                          bool assume_alpha1_bound = false) {
    if (!detail::alpha_supported_by_bound(alpha, assume_alpha1_bound))
        throw std::domain_error("bound_for_r: alpha not covered by the proven bound");
    StabBasisKey key;
    key.n = modulus_state.n;
    key.k = r.cols;
    key.qp = f2::BitMatrix(r.cols, r.cols);
    key.c = 0;
    key.r = r;
    return renyi_entropy(distribution_for_basis(modulus_state, key), alpha);
}

// Branch-and-bound over stabilizer bases: k ascending, one branch per
// subspace R, pruned with bound_for_r against the running incumbent
// (initialized with the computational basis). alpha = infinity returns
// the min-relative entropy of magic.
inline BmsaResult bmsa_branch_bound(const Statevector& state, double alpha, const BmsaOptions& options = {}) {
    if (state.n > options.max_qubits) throw CapError("bmsa_branch_bound: qubit count exceeds cap");
    if (!detail::alpha_supported_by_bound(alpha, options.assume_alpha1_bound))
        throw std::domain_error("bmsa_branch_bound: alpha must be 1 (with the conjecture flag), "
                                "an integer >= 2, or infinity");

    BmsaResult best;
    best.alpha = alpha;
    best.method = "branch-bound";
    best.argmin = StabBasisKey::computational(state.n);
    {
        std::vector<double> probs(state.dim());
        for (std::size_t i = 0; i < state.dim(); ++i) probs[i] = std::norm(state.amps[i]);
        best.value_nats = renyi_entropy(probs, alpha);
    }

    const Statevector mod = detail::modulus_state(state);
    detail::BasisScanWorkspace ws;
    const f2::BitMatrix no_qp0(0, 0);

    for (int k = 1; k <= state.n; ++k) {
        const f2::BitMatrix zero_qp(k, k);
        f2::for_each_subspace(state.n, k, [&](const f2::BitMatrix& r) {
            ++best.nodes_visited;
            detail::prepare_r(ws, r);
            const double bound = detail::basis_entropy(ws, mod, zero_qp, 0, alpha);
            if (bound >= best.value_nats) {
                ++best.nodes_pruned;
                return;
            }
            auto consider = [&](const f2::BitMatrix& qp, uint64_t c) {
                const double value = detail::basis_entropy(ws, state, qp, c, alpha);
                if (value < best.value_nats) {
                    best.value_nats = value;
                    best.argmin.n = state.n;
                    best.argmin.k = k;
                    best.argmin.qp = qp;
                    best.argmin.c = c;
                    best.argmin.r = r;
                }
            };
            if (options.positive_amplitudes) {
                consider(zero_qp, 0);
            } else if (options.real_amplitudes) {
                f2::for_each_upper_triangular(k, true, [&](const f2::BitMatrix& qp) { consider(qp, 0); });
            } else {
                f2::for_each_upper_triangular(k, true, [&](const f2::BitMatrix& qp) {
                    for (uint64_t c = 0; c < (uint64_t{1} << k); ++c) consider(qp, c);
                });
            }
        });
    }
    best.value_nats = std::max(0.0, best.value_nats);
    return best;
}

// Linear Renyi-2 minimum: min over full-rank unsigned stabilizer groups
// of 1 - sum_{P in G} <P>^2 / 2^N. Related to the Renyi-2 minimum by
// -ln(1 - value) = A_2.
inline MeasureResult a2_lin_exact(const Statevector& state, int cap = kBruteForceCap) {
    if (state.n > cap) throw CapError("a2_lin_exact: qubit count exceeds cap");
    const auto spectrum = pauli_spectrum(state);
    const double dim = std::pow(2.0, state.n);
    double best_sum = -1.0;
    StabBasisKey best_key;
    for_each_basis_key(state.n, [&](const StabBasisKey& key) {
        const auto gens = basis_group_generators(key);
        std::vector<uint64_t> labels;
        for (const auto& g : gens) labels.push_back(pauli_index(g));
        double sum = 0.0;
        for (uint64_t u = 0; u < (uint64_t{1} << state.n); ++u) {
            uint64_t label = 0;
            for (int j = 0; j < state.n; ++j)
                if ((u >> j) & 1) label ^= labels[static_cast<std::size_t>(j)];
            sum += spectrum[label] * spectrum[label];
        }
        if (sum > best_sum) {
            best_sum = sum;
            best_key = key;
        }
    });
    MeasureResult r;
    r.measure = "a2_lin";
    r.value_nats = std::clamp(1.0 - best_sum / dim, 0.0, 1.0); // dimensionless, not nats
    r.certificate = key_to_json(best_key);
    return r;
}

} // namespace magicmon
