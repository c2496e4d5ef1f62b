#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "magicmon/entropy.hpp"
#include "magicmon/errors.hpp"
#include "magicmon/pauli.hpp"
#include "magicmon/stab_basis.hpp"
#include "magicmon/statevec.hpp"

namespace magicmon {

struct MeasureResult {
    std::string measure;
    nlohmann::json params;
    double value_nats = 0.0;
    nlohmann::json certificate; // argmin / argmax when applicable
};

inline nlohmann::json measure_result_to_json(const MeasureResult& r) {
    nlohmann::json j{{"measure", r.measure},
                     {"params", r.params},
                     {"value_nats", r.value_nats},
                     {"value_bits", nats_to_bits(r.value_nats)}};
    if (!r.certificate.is_null()) j["certificate"] = r.certificate;
    return j;
}

// Stabilizer Renyi entropy M_n in nats,
//   M_n = (1-n)^-1 ln sum_P <P>^2n / 2^N,
// with the n = 1 Shannon limit taken directly. The linear variant is
// 1 - sum_P <P>^2n / 2^N, the form consistent with
// M_n = (1-n)^-1 ln(1 - M_n^lin).
inline double sre(const Statevector& state, double n, bool linear = false, int cap = kDefaultSpectrumCap) {
    if (n <= 0.0) throw std::domain_error("sre: index must be positive");
    if (state.n > cap) throw CapError("sre: qubit count exceeds cap");
    const double dim = std::pow(2.0, state.n);
    double sum = 0.0;    // sum_P <P>^2n / 2^N
    double shannon = 0.0; // Shannon entropy of Xi_P = <P>^2 / 2^N
    for_each_pauli_slice(state, [&](uint64_t, std::span<const double> vals) {
        for (double b : vals) {
            const double xi = b * b / dim;
            if (xi > 0.0) {
                sum += std::pow(xi, n) * std::pow(dim, n - 1.0);
                shannon -= xi * std::log(xi);
            }
        }
    });
    if (linear) return std::clamp(1.0 - sum, 0.0, 1.0);
    if (n == 1.0) return std::max(0.0, shannon - state.n * std::log(2.0));
    return std::max(0.0, std::log(sum) / (1.0 - n));
}

// --- G-asymmetry for groups generated by commuting Paulis -------------

inline void validate_group_generators(const std::vector<PauliString>& gens) {
    if (gens.empty()) throw std::domain_error("group generators: empty set");
    const int n = gens[0].n;
    std::vector<uint64_t> rows;
    for (const PauliString& g : gens) {
        if (g.n != n) throw DimensionError("group generators: mixed qubit counts");
        if (!g.is_hermitian()) throw std::domain_error("group generators: non-Hermitian element");
        for (const PauliString& h : gens)
            if (!commute(g, h)) throw std::domain_error("group generators: elements do not commute");
        rows.push_back(g.x | (g.z << n));
    }
    f2::rref_rows(rows, 2 * n);
    for (uint64_t r : rows)
        if (r == 0) throw std::domain_error("group generators: not independent");
}

// Renyi-2 closed form -ln( sum_{P in G_perp} <P>^2 / 2^N ), used as an
// independent cross-check of the general pipeline.
inline double g_asymmetry_a2_pauli(const Statevector& state, const std::vector<PauliString>& gens) {
    validate_group_generators(gens);
    const std::size_t dim = std::size_t{1} << state.n;
    double total = 0.0, in_perp = 0.0;
    for_each_pauli_slice(state, [&](uint64_t x, std::span<const double> vals) {
        for (uint64_t z = 0; z < dim; ++z) {
            const PauliString p(state.n, x, z, 0);
            const double sq = vals[z] * vals[z];
            total += sq;
            bool commutes_all = true;
            for (const PauliString& g : gens)
                if (!commute(p, g)) { commutes_all = false; break; }
            if (commutes_all) in_perp += sq;
        }
    });
    return -std::log(in_perp / total);
}

// Renyi-alpha asymmetry of `state` with respect to the group generated
// by `gens`. Full-rank groups go through the Pauli-vector pipeline
// (group expectations, then a Walsh-Hadamard transform yields the
// stabilizer-basis distribution); smaller groups build the twirled
// density matrix densely.
inline double g_asymmetry(const Statevector& state, const std::vector<PauliString>& gens, double alpha) {
    validate_group_generators(gens);
    const int n = state.n;
    const int k = static_cast<int>(gens.size());
    if (gens[0].n != n) throw DimensionError("g_asymmetry: qubit counts differ");

    if (k == n) {
        if (n > kDefaultSpectrumCap) throw CapError("g_asymmetry: qubit count exceeds cap");
        // c_u = <psi| g_1^{u1} ... g_N^{uN} |psi>, with the product sign
        // tracked exactly; Gray-code order gives one multiply per step.
        const std::size_t size = std::size_t{1} << n;
        std::vector<double> c(size);
        PauliString cur = PauliString::identity(n);
        uint64_t gray = 0;
        c[0] = 1.0;
        for (uint64_t u = 1; u < size; ++u) {
            const uint64_t next_gray = u ^ (u >> 1);
            const int flipped = std::countr_zero(gray ^ next_gray);
            gray = next_gray;
            cur = multiply(cur, gens[static_cast<std::size_t>(flipped)]);
            if (!cur.is_hermitian()) throw std::logic_error("g_asymmetry: non-Hermitian group element");
            c[gray] = cur.sign() * expectation(state, PauliString(n, cur.x, cur.z, 0));
        }
        fwht_inplace(c);
        std::vector<double> probs(size);
        for (std::size_t i = 0; i < size; ++i) probs[i] = std::max(0.0, c[i] / static_cast<double>(size));
        return renyi_entropy(probs, alpha);
    }

    if (n > 6) throw CapError("g_asymmetry: dense twirl supports up to 6 qubits");
    const auto dim = static_cast<Eigen::Index>(state.dim());
    Eigen::MatrixXcd twirled = Eigen::MatrixXcd::Zero(dim, dim);
    for (uint64_t u = 0; u < (uint64_t{1} << k); ++u) {
        Statevector phi = state;
        for (int j = 0; j < k; ++j)
            if ((u >> j) & 1) phi = apply_pauli(phi, gens[static_cast<std::size_t>(j)]);
        Eigen::VectorXcd v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v(i) = phi.amps[static_cast<std::size_t>(i)];
        twirled += v * v.adjoint();
    }
    twirled /= std::pow(2.0, k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(twirled);
    std::vector<double> probs;
    for (Eigen::Index i = 0; i < dim; ++i) probs.push_back(std::max(0.0, es.eigenvalues()(i)));
    return renyi_entropy(probs, alpha);
}

// --- stabilizer fidelity / min-relative entropy ------------------------

inline constexpr int kExhaustiveStabCap = 5;

struct StabilizerFidelityResult {
    double fidelity = 0.0;
    StabBasisKey key;       // basis containing the closest stabilizer state
    uint64_t element = 0;   // (t_idx << k) | d within that basis
};

inline StabilizerFidelityResult stabilizer_fidelity(const Statevector& state, int cap = kExhaustiveStabCap) {
    if (state.n > cap)
        throw CapError("stabilizer_fidelity: exhaustive enumeration is capped; "
                       "use bmsa_branch_bound with alpha = infinity for larger systems");
    StabilizerFidelityResult best;
    best.fidelity = -1.0;
    for_each_basis_key(state.n, [&](const StabBasisKey& key) {
        const auto probs = distribution_for_basis(state, key);
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] > best.fidelity) {
                best.fidelity = probs[i];
                best.key = key;
                best.element = i;
            }
        }
    });
    return best;
}

inline double d_min(const Statevector& state, int cap = kExhaustiveStabCap) {
    return -std::log(stabilizer_fidelity(state, cap).fidelity);
}

// Stabilizer nullity nu = N - log2 |{P : |<P>| >= 1 - tol}|. The
// collected set is verified to be a group; an inconsistent count
// surfaces as an error rather than a wrong integer.
inline int nullity(const Statevector& state, double tol = 1e-8, int cap = kDefaultSpectrumCap) {
    if (state.n > cap) throw CapError("nullity: qubit count exceeds cap");
    std::set<uint64_t> labels;
    const std::size_t dim = state.dim();
    for_each_pauli_slice(state, [&](uint64_t x, std::span<const double> vals) {
        for (uint64_t z = 0; z < dim; ++z)
            if (std::abs(vals[z]) >= 1.0 - tol) labels.insert(x | (z << state.n));
    });
    const std::size_t count = labels.size();
    if (count == 0 || (count & (count - 1)) != 0)
        throw ToleranceError("nullity: near-unit Pauli count is not a power of two");
    for (uint64_t a : labels)
        for (uint64_t b : labels)
            if (!labels.count(a ^ b)) throw ToleranceError("nullity: near-unit Pauli set is not a group");
    int log2_count = 0;
    while ((std::size_t{1} << log2_count) < count) ++log2_count;
    return state.n - log2_count;
}

// --- convolved characteristic function --------------------------------

inline constexpr int kConvCap = 6;

// Q(b) = sum_a Xi(a) Xi(a xor b), the XOR self-convolution of the
// normalized squared Pauli spectrum, indexed like pauli_spectrum.
// Computed from the conjugated-state overlaps m(b) = |<psi|P_b|psi*>|^2
// / 2^N via m * m = Xi * Xi (both equal the four-copy Bell-difference
// distribution).
inline std::vector<double> convolved_spectrum(const Statevector& state, int cap = kConvCap) {
    if (state.n > cap) throw CapError("convolved_spectrum: qubit count exceeds cap");
    const std::size_t dim = state.dim();
    const std::size_t size = dim * dim;
    std::vector<double> m(size);
    std::vector<cplx> g(dim);
    for (uint64_t x = 0; x < dim; ++x) {
        for (std::size_t b = 0; b < dim; ++b) g[b] = std::conj(state.amps[b ^ x]) * std::conj(state.amps[b]);
        fwht_inplace(g);
        for (uint64_t z = 0; z < dim; ++z) m[x | (z << state.n)] = std::norm(g[z]) / static_cast<double>(dim);
    }
    fwht_inplace(m);
    for (double& v : m) v = v * v;
    fwht_inplace(m);
    for (double& v : m) v = std::max(0.0, v / static_cast<double>(size));
    return m;
}

// Convolved analogue of the Renyi-2 minimum: min over full-rank
// unsigned stabilizer groups of -ln sum_{b in G} Q(b).
inline MeasureResult a2_conv(const Statevector& state, int cap = 3) {
    if (state.n > cap) throw CapError("a2_conv: qubit count exceeds cap");
    const auto q = convolved_spectrum(state);
    double best = std::numeric_limits<double>::infinity();
    StabBasisKey best_key;
    for_each_basis_key(state.n, [&](const StabBasisKey& key) {
        const auto gens = basis_group_generators(key);
        std::vector<uint64_t> gen_labels;
        for (const auto& g : gens) gen_labels.push_back(pauli_index(g));
        double sum = 0.0;
        for (uint64_t u = 0; u < (uint64_t{1} << state.n); ++u) {
            uint64_t label = 0;
            for (int j = 0; j < state.n; ++j)
                if ((u >> j) & 1) label ^= gen_labels[static_cast<std::size_t>(j)];
            sum += q[label];
        }
        const double value = -std::log(sum);
        if (value < best) {
            best = value;
            best_key = key;
        }
    });
    MeasureResult r;
    r.measure = "a2_conv";
    r.value_nats = std::max(0.0, best);
    r.certificate = key_to_json(best_key);
    return r;
}

} // namespace magicmon
