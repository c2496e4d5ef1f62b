#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <random>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "magicmon/bits.hpp"
#include "magicmon/entropy.hpp"
#include "magicmon/errors.hpp"
#include "magicmon/pauli.hpp"

namespace magicmon {

using cplx = std::complex<double>;

inline constexpr int kDefaultSpectrumCap = 12;

// Dense pure state over 2^N amplitudes. Qubit 0 is the least
// significant bit of the basis index: |q0 q1 ... q(N-1)> labels read
// qubit 0 first.
struct Statevector {
    int n = 0;
    std::vector<cplx> amps;

    Statevector() = default;
    explicit Statevector(int n_qubits) : n(n_qubits) {
        if (n_qubits < 1 || n_qubits > 28) throw DimensionError("Statevector: qubit count out of range");
        amps.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
        amps[0] = 1.0;
    }

    std::size_t dim() const { return amps.size(); }

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& a : amps) s += std::norm(a);
        return s;
    }

    void normalize() {
        double norm = std::sqrt(norm_sq());
        if (norm <= 0.0) throw std::domain_error("Statevector::normalize: zero vector");
        for (cplx& a : amps) a /= norm;
    }

    static Statevector from_amplitudes(int n_qubits, std::vector<cplx> values, bool renormalize = false) {
        Statevector s;
        s.n = n_qubits;
        s.amps = std::move(values);
        if (s.amps.size() != (std::size_t{1} << n_qubits))
            throw DimensionError("Statevector::from_amplitudes: dimension is not 2^n");
        if (renormalize)
            s.normalize();
        else if (std::abs(s.norm_sq() - 1.0) > 1e-10)
            throw std::domain_error("Statevector::from_amplitudes: state is not normalized");
        return s;
    }

    static Statevector basis_state(int n_qubits, uint64_t index) {
        Statevector s(n_qubits);
        s.amps[0] = 0.0;
        s.amps[index] = 1.0;
        return s;
    }
};

inline cplx inner(const Statevector& a, const Statevector& b) {
    if (a.n != b.n) throw DimensionError("inner: qubit counts differ");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
    return s;
}

inline Statevector tensor(const Statevector& a, const Statevector& b) {
    Statevector out;
    out.n = a.n + b.n;
    out.amps.resize(std::size_t{1} << out.n);
    for (std::size_t ib = 0; ib < b.dim(); ++ib)
        for (std::size_t ia = 0; ia < a.dim(); ++ia)
            out.amps[(ib << a.n) | ia] = a.amps[ia] * b.amps[ib];
    return out;
}

// psi -> P psi with exact phase bookkeeping.
inline Statevector apply_pauli(const Statevector& state, const PauliString& p) {
    if (state.n != p.n) throw DimensionError("apply_pauli: qubit counts differ");
    Statevector out;
    out.n = state.n;
    out.amps.assign(state.dim(), cplx{0.0, 0.0});
    const cplx base = i_power(p.phase_exp + std::popcount(p.x & p.z));
    for (std::size_t b = 0; b < state.dim(); ++b) {
        const cplx phase = parity64(p.z & b) ? -base : base;
        out.amps[b ^ p.x] = phase * state.amps[b];
    }
    return out;
}

inline double expectation(const Statevector& state, const PauliString& p) {
    if (state.n != p.n) throw DimensionError("expectation: qubit counts differ");
    if (!p.is_hermitian()) throw std::domain_error("expectation: Pauli string is not Hermitian");
    const cplx base = i_power(p.phase_exp + std::popcount(p.x & p.z));
    cplx s{0.0, 0.0};
    for (std::size_t b = 0; b < state.dim(); ++b) {
        const cplx phase = parity64(p.z & b) ? -base : base;
        s += std::conj(state.amps[b ^ p.x]) * phase * state.amps[b];
    }
    return s.real();
}

// Streams the Pauli expectations one X-sector at a time: fn(x, vals)
// receives vals[z] = <P_{x,z}> for all 2^N values of z. Used by the
// spectrum, the stabilizer entropies and the nullity count.
template <typename Fn>
void for_each_pauli_slice(const Statevector& state, Fn&& fn) {
    const std::size_t dim = state.dim();
    std::vector<cplx> g(dim);
    std::vector<double> vals(dim);
    for (uint64_t x = 0; x < dim; ++x) {
        for (std::size_t b = 0; b < dim; ++b) g[b] = std::conj(state.amps[b ^ x]) * state.amps[b];
        fwht_inplace(g);
        for (uint64_t z = 0; z < dim; ++z) {
            const cplx ph = i_power(std::popcount(x & z));
            vals[z] = (ph * g[z]).real();
        }
        fn(x, std::span<const double>(vals));
    }
}

// All 4^N expectations indexed by pauli_index (x low, z high).
inline std::vector<double> pauli_spectrum(const Statevector& state, int cap = kDefaultSpectrumCap) {
    if (state.n > cap) throw CapError("pauli_spectrum: qubit count exceeds cap");
    std::vector<double> spec(std::size_t{1} << (2 * state.n));
    for_each_pauli_slice(state, [&](uint64_t x, std::span<const double> vals) {
        for (uint64_t z = 0; z < vals.size(); ++z) spec[x | (z << state.n)] = vals[z];
    });
    return spec;
}

inline double participation_entropy(const Statevector& state, double alpha) {
    std::vector<double> probs(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i) probs[i] = std::norm(state.amps[i]);
    return renyi_entropy(probs, alpha);
}

// Computational-basis measurement of qubit j; zero-probability branches
// are omitted and the posts are renormalized.
inline std::vector<std::pair<double, Statevector>> measure_qubit(const Statevector& state, int j) {
    if (j < 0 || j >= state.n) throw DimensionError("measure_qubit: qubit index out of range");
    std::vector<std::pair<double, Statevector>> out;
    for (int outcome = 0; outcome <= 1; ++outcome) {
        double p = 0.0;
        for (std::size_t b = 0; b < state.dim(); ++b)
            if (static_cast<int>((b >> j) & 1) == outcome) p += std::norm(state.amps[b]);
        if (p <= 1e-14) continue;
        Statevector post;
        post.n = state.n;
        post.amps.assign(state.dim(), cplx{0.0, 0.0});
        const double inv = 1.0 / std::sqrt(p);
        for (std::size_t b = 0; b < state.dim(); ++b)
            if (static_cast<int>((b >> j) & 1) == outcome) post.amps[b] = state.amps[b] * inv;
        out.emplace_back(p, std::move(post));
    }
    return out;
}

// Projective measurement of a Hermitian Pauli operator, outcomes
// lambda = +1, -1 via (I + lambda P)/2.
inline std::vector<std::pair<double, Statevector>> measure_pauli(const Statevector& state, const PauliString& p) {
    if (!p.is_hermitian()) throw std::domain_error("measure_pauli: operator is not Hermitian");
    const Statevector pp = apply_pauli(state, p);
    std::vector<std::pair<double, Statevector>> out;
    for (int lambda : {+1, -1}) {
        Statevector post;
        post.n = state.n;
        post.amps.resize(state.dim());
        double prob = 0.0;
        for (std::size_t b = 0; b < state.dim(); ++b) {
            post.amps[b] = 0.5 * (state.amps[b] + static_cast<double>(lambda) * pp.amps[b]);
            prob += std::norm(post.amps[b]);
        }
        if (prob <= 1e-14) continue;
        const double inv = 1.0 / std::sqrt(prob);
        for (cplx& a : post.amps) a *= inv;
        out.emplace_back(prob, std::move(post));
    }
    return out;
}

// exp(i theta P) psi = cos(theta) psi + i sin(theta) P psi.
inline Statevector apply_pauli_rotation(const Statevector& state, const PauliString& p, double theta) {
    if (!p.is_hermitian()) throw std::domain_error("apply_pauli_rotation: operator is not Hermitian");
    const Statevector pp = apply_pauli(state, p);
    Statevector out;
    out.n = state.n;
    out.amps.resize(state.dim());
    const cplx c{std::cos(theta), 0.0};
    const cplx is{0.0, std::sin(theta)};
    for (std::size_t b = 0; b < state.dim(); ++b) out.amps[b] = c * state.amps[b] + is * pp.amps[b];
    out.normalize();
    return out;
}

// Single-qubit gate; u is row-major over {|0>, |1>} of qubit q.
inline Statevector apply_gate(const Statevector& state, const std::array<cplx, 4>& u, int q) {
    if (q < 0 || q >= state.n) throw DimensionError("apply_gate: qubit index out of range");
    Statevector out = state;
    const uint64_t bit = uint64_t{1} << q;
    for (std::size_t b = 0; b < state.dim(); ++b) {
        if (b & bit) continue;
        const cplx a0 = state.amps[b];
        const cplx a1 = state.amps[b | bit];
        out.amps[b] = u[0] * a0 + u[1] * a1;
        out.amps[b | bit] = u[2] * a0 + u[3] * a1;
    }
    return out;
}

// Two-qubit gate; the gate-local index is (bit of qa) + 2 (bit of qb).
inline Statevector apply_gate(const Statevector& state, const std::array<cplx, 16>& u, int qa, int qb) {
    if (qa == qb || qa < 0 || qb < 0 || qa >= state.n || qb >= state.n)
        throw DimensionError("apply_gate: bad qubit pair");
    Statevector out = state;
    const uint64_t ba = uint64_t{1} << qa;
    const uint64_t bb = uint64_t{1} << qb;
    for (std::size_t b = 0; b < state.dim(); ++b) {
        if (b & (ba | bb)) continue;
        std::array<cplx, 4> in;
        for (int k = 0; k < 4; ++k) in[static_cast<std::size_t>(k)] = state.amps[b | ((k & 1) ? ba : 0) | ((k & 2) ? bb : 0)];
        for (int r = 0; r < 4; ++r) {
            cplx acc{0.0, 0.0};
            for (int k = 0; k < 4; ++k) acc += u[static_cast<std::size_t>(4 * r + k)] * in[static_cast<std::size_t>(k)];
            out.amps[b | ((r & 1) ? ba : 0) | ((r & 2) ? bb : 0)] = acc;
        }
    }
    return out;
}

inline Statevector random_state(int n_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    for (cplx& a : amps) a = cplx{gauss(rng), gauss(rng)};
    return Statevector::from_amplitudes(n_qubits, std::move(amps), true);
}

// --- import / export -------------------------------------------------
//
// JSON: array of [re, im] pairs, index order documented above.
// Binary: raw little-endian doubles, re/im interleaved.

inline void save_state_json(const Statevector& state, const std::string& path) {
    nlohmann::json arr = nlohmann::json::array();
    for (const cplx& a : state.amps) arr.push_back({a.real(), a.imag()});
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_state_json: cannot open " + path);
    f << arr.dump() << "\n";
}

inline Statevector load_state_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_state_json: cannot open " + path);
    nlohmann::json arr = nlohmann::json::parse(f);
    std::vector<cplx> amps;
    amps.reserve(arr.size());
    for (const auto& pair : arr) amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    int n = 0;
    while ((std::size_t{1} << n) < amps.size()) ++n;
    if ((std::size_t{1} << n) != amps.size()) throw ParseError("load_state_json: length is not a power of two");
    return Statevector::from_amplitudes(n, std::move(amps));
}

inline void save_state_bin(const Statevector& state, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_state_bin: cannot open " + path);
    for (const cplx& a : state.amps) {
        double re = a.real(), im = a.imag();
        f.write(reinterpret_cast<const char*>(&re), sizeof(double));
        f.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
}

inline Statevector load_state_bin(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_state_bin: cannot open " + path);
    std::vector<cplx> amps;
    double re = 0.0, im = 0.0;
    while (f.read(reinterpret_cast<char*>(&re), sizeof(double)) &&
           f.read(reinterpret_cast<char*>(&im), sizeof(double)))
        amps.emplace_back(re, im);
    int n = 0;
    while ((std::size_t{1} << n) < amps.size()) ++n;
    if (amps.empty() || (std::size_t{1} << n) != amps.size())
        throw ParseError("load_state_bin: length is not a power of two");
    return Statevector::from_amplitudes(n, std::move(amps));
}

} // namespace magicmon
