#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "magicmon/clifford.hpp"
#include "magicmon/errors.hpp"
#include "magicmon/pauli.hpp"
#include "magicmon/statevec.hpp"

namespace magicmon {

inline constexpr int kDenseCap = 14;

// --- model states ------------------------------------------------------

// (|0> + e^{i theta} |1>)^{x N} / 2^{N/2}
inline Statevector product_theta_state(int n, double theta) {
    std::vector<cplx> amps(std::size_t{1} << n);
    const double scale = std::pow(2.0, -0.5 * n);
    for (std::size_t b = 0; b < amps.size(); ++b)
        amps[b] = std::polar(scale, theta * std::popcount(static_cast<uint64_t>(b)));
    return Statevector::from_amplitudes(n, std::move(amps));
}

// e^{-i pi/4} cos(beta) |0> + sin(beta) |1> with cos(2 beta) = 1/sqrt(3)
inline Statevector chi_state() {
    const double beta = 0.5 * std::acos(1.0 / std::sqrt(3.0));
    return Statevector::from_amplitudes(
        1, {std::polar(std::cos(beta), -M_PI / 4.0), cplx{std::sin(beta), 0.0}});
}

inline Statevector w_state(int n) {
    if (n < 2) throw std::domain_error("w_state: need at least 2 qubits");
    std::vector<cplx> amps(std::size_t{1} << n, cplx{0.0, 0.0});
    for (int j = 0; j < n; ++j) amps[std::size_t{1} << j] = 1.0 / std::sqrt(double(n));
    return Statevector::from_amplitudes(n, std::move(amps));
}

// (|0>^N + eps |chi>^N) normalized
inline Statevector psi_eps(int n, double eps) {
    const Statevector chi = chi_state();
    std::vector<cplx> amps(std::size_t{1} << n);
    for (std::size_t b = 0; b < amps.size(); ++b) {
        cplx prod{1.0, 0.0};
        for (int j = 0; j < n; ++j) prod *= chi.amps[(b >> j) & 1];
        amps[b] = eps * prod;
    }
    amps[0] += 1.0;
    return Statevector::from_amplitudes(n, std::move(amps), true);
}

namespace detail {

// y += H x for the transverse-field Ising chain, real arithmetic.
inline void ising_matvec(int n, double h, bool periodic, const std::vector<double>& x, std::vector<double>& y) {
    const std::size_t dim = std::size_t{1} << n;
    const int bonds = periodic ? n : n - 1;
    for (std::size_t b = 0; b < dim; ++b) {
        double diag = 0.0;
        for (int i = 0; i < bonds; ++i) {
            const int j = (i + 1) % n;
            const bool same = (((b >> i) & 1) == ((b >> j) & 1));
            diag -= same ? 1.0 : -1.0;
        }
        y[b] += diag * x[b];
    }
    for (int j = 0; j < n; ++j) {
        const uint64_t bit = uint64_t{1} << j;
        for (std::size_t b = 0; b < dim; ++b) y[b] -= h * x[b ^ bit];
    }
}

inline std::vector<double> ising_ground_lanczos(int n, double h, bool periodic) {
    const std::size_t dim = std::size_t{1} << n;
    // fixed splitmix64 start vector keeps the routine deterministic
    std::vector<double> v(dim);
    uint64_t s = 0x9e3779b97f4a7c15ull;
    for (double& e : v) {
        s += 0x9e3779b97f4a7c15ull;
        uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        e = static_cast<double>((z ^ (z >> 31)) >> 11) / 9007199254740992.0 - 0.5;
    }
    auto normalize = [&](std::vector<double>& w) {
        double nrm = 0.0;
        for (double e : w) nrm += e * e;
        nrm = std::sqrt(nrm);
        for (double& e : w) e /= nrm;
    };
    normalize(v);

    for (int restart = 0; restart < 8; ++restart) {
        const int m = std::min<std::size_t>(160, dim);
        std::vector<std::vector<double>> basis;
        std::vector<double> alpha, beta;
        std::vector<double> w(dim);
        basis.push_back(v);
        for (int it = 0; it < m; ++it) {
            std::fill(w.begin(), w.end(), 0.0);
            ising_matvec(n, h, periodic, basis.back(), w);
            double a = 0.0;
            for (std::size_t i = 0; i < dim; ++i) a += basis.back()[i] * w[i];
            alpha.push_back(a);
            // full reorthogonalization
            for (const auto& q : basis) {
                double proj = 0.0;
                for (std::size_t i = 0; i < dim; ++i) proj += q[i] * w[i];
                for (std::size_t i = 0; i < dim; ++i) w[i] -= proj * q[i];
            }
            double nrm = 0.0;
            for (double e : w) nrm += e * e;
            nrm = std::sqrt(nrm);
            if (nrm < 1e-12) break;
            beta.push_back(nrm);
            for (double& e : w) e /= nrm;
            basis.push_back(w);
        }
        const int steps = static_cast<int>(alpha.size());
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(steps, steps);
        for (int i = 0; i < steps; ++i) {
            tri(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < steps) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
        std::vector<double> ground(dim, 0.0);
        for (int i = 0; i < steps; ++i) {
            const double coeff = es.eigenvectors()(i, 0);
            for (std::size_t b = 0; b < dim; ++b) ground[b] += coeff * basis[static_cast<std::size_t>(i)][b];
        }
        normalize(ground);
        // residual check
        std::vector<double> hg(dim, 0.0);
        ising_matvec(n, h, periodic, ground, hg);
        double e0 = 0.0;
        for (std::size_t i = 0; i < dim; ++i) e0 += ground[i] * hg[i];
        double res = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double r = hg[i] - e0 * ground[i];
            res += r * r;
        }
        v = std::move(ground);
        if (std::sqrt(res) < 1e-10) break;
    }
    return v;
}

} // namespace detail

// Ground state of H = -sum Z_i Z_{i+1} - h sum X_i. Dense solve for
// small chains, Lanczos with full reorthogonalization beyond. The
// largest-magnitude amplitude is made real positive; for h > 0 the
// ground state is unique and its amplitudes all share one sign.
inline Statevector ising_ground_state(int n, double h, bool periodic, int cap = kDenseCap) {
    if (n < 2 || n > cap) throw CapError("ising_ground_state: qubit count out of range");
    if (h == 0.0) throw std::domain_error("ising_ground_state: ground state is degenerate at h = 0");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> ground;
    if (n <= 11) {
        Eigen::MatrixXd hm = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        const int bonds = periodic ? n : n - 1;
        for (std::size_t b = 0; b < dim; ++b) {
            double diag = 0.0;
            for (int i = 0; i < bonds; ++i) {
                const int j = (i + 1) % n;
                diag -= (((b >> i) & 1) == ((b >> j) & 1)) ? 1.0 : -1.0;
            }
            hm(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = diag;
            for (int j = 0; j < n; ++j)
                hm(static_cast<Eigen::Index>(b ^ (uint64_t{1} << j)), static_cast<Eigen::Index>(b)) -= h;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hm);
        ground.resize(dim);
        for (std::size_t b = 0; b < dim; ++b) ground[b] = es.eigenvectors()(static_cast<Eigen::Index>(b), 0);
    } else {
        ground = detail::ising_ground_lanczos(n, h, periodic);
    }
    std::size_t imax = 0;
    for (std::size_t b = 0; b < dim; ++b)
        if (std::abs(ground[b]) > std::abs(ground[imax])) imax = b;
    const double sign = ground[imax] >= 0.0 ? 1.0 : -1.0;
    std::vector<cplx> amps(dim);
    for (std::size_t b = 0; b < dim; ++b) amps[b] = cplx{sign * ground[b], 0.0};
    return Statevector::from_amplitudes(n, std::move(amps), true);
}

inline double ising_energy(const Statevector& state, double h, bool periodic) {
    const int n = state.n;
    const std::size_t dim = state.dim();
    std::vector<double> re(dim), out_re(dim, 0.0), out_im(dim, 0.0), im(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        re[b] = state.amps[b].real();
        im[b] = state.amps[b].imag();
    }
    detail::ising_matvec(n, h, periodic, re, out_re);
    detail::ising_matvec(n, h, periodic, im, out_im);
    double e = 0.0;
    for (std::size_t b = 0; b < dim; ++b) e += re[b] * out_re[b] + im[b] * out_im[b];
    return e;
}

// exp(-i H t) |0...0> for H drawn from the GUE, rescaled so that its
// spectrum lies in [-2, 2] (pure scaling, recorded by callers).
inline Statevector gue_evolved(int n, double t, std::mt19937_64& rng, int cap = 6) {
    if (n > cap) throw CapError("gue_evolved: qubit count exceeds cap");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = cplx{gauss(rng), gauss(rng)};
    const Eigen::MatrixXcd hm = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hm);
    const double scale = 2.0 / es.eigenvalues().cwiseAbs().maxCoeff();
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index i = 0; i < dim; ++i) phases(i) = std::polar(1.0, -es.eigenvalues()(i) * scale * t);
    const Eigen::VectorXcd psi = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint().col(0);
    std::vector<cplx> amps(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) amps[static_cast<std::size_t>(i)] = psi(i);
    return Statevector::from_amplitudes(n, std::move(amps), true);
}

// Random Clifford circuit doped with T gates: alternating uniform
// tableaux and T = diag(1, e^{-i pi/4}) on qubit 0.
inline Statevector doped_clifford_state(int n, int n_t, std::mt19937_64& rng) {
    if (n > kDenseCap) throw CapError("doped_clifford_state: qubit count exceeds cap");
    Statevector psi(n);
    const std::array<cplx, 4> t_gate{cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0},
                                     std::polar(1.0, -M_PI / 4.0)};
    for (int k = 0; k < n_t; ++k) {
        psi = apply_to_state(random_clifford(n, rng), psi);
        psi = apply_gate(psi, t_gate, 0);
    }
    psi = apply_to_state(random_clifford(n, rng), psi);
    return psi;
}

// --- circuit IR ---------------------------------------------------------

struct CircuitGate {
    bool is_rotation = false;
    GateOp op;          // named Clifford gate
    PauliString pauli;  // rotation axis
    double theta = 0.0;
};

struct CircuitIR {
    int n = 0;
    std::vector<CircuitGate> gates;
};

// JSON-lines format: {"g":"H","q":[0]} for named Clifford gates and
// {"g":"ROT","p":"XIZ","theta":0.39} for Pauli rotations.
inline CircuitIR parse_circuit(std::istream& in) {
    CircuitIR ir;
    std::string line;
    int lineno = 0;
    int max_qubit = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("circuit line " + std::to_string(lineno) + ": " + e.what());
        }
        try {
            const std::string g = j.at("g").get<std::string>();
            CircuitGate gate;
            if (g == "ROT") {
                gate.is_rotation = true;
                gate.pauli = parse_pauli(j.at("p").get<std::string>());
                gate.theta = j.at("theta").get<double>();
                if (ir.n == 0)
                    ir.n = gate.pauli.n;
                else if (ir.n != gate.pauli.n)
                    throw ParseError("rotation width differs from circuit width");
                max_qubit = std::max(max_qubit, gate.pauli.n - 1);
            } else {
                static const std::map<std::string, Gate> names = {
                    {"H", Gate::H}, {"S", Gate::S}, {"SDG", Gate::Sdg}, {"X", Gate::X},
                    {"Z", Gate::Z}, {"CNOT", Gate::CNOT}, {"CZ", Gate::CZ}, {"SWAP", Gate::SWAP}};
                const auto it = names.find(g);
                if (it == names.end()) throw ParseError("circuit line " + std::to_string(lineno) + ": unsupported gate '" + g + "'");
                const auto q = j.at("q").get<std::vector<int>>();
                if (q.empty() || q.size() > 2) throw ParseError("circuit line " + std::to_string(lineno) + ": expected 1 or 2 qubit indices");
                gate.op = GateOp{it->second, q[0], q.size() == 2 ? q[1] : -1};
                for (int qi : q) max_qubit = std::max(max_qubit, qi);
            }
            ir.gates.push_back(std::move(gate));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError("circuit line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (ir.n == 0) ir.n = max_qubit + 1;
    if (ir.n <= 0) throw ParseError("circuit declares no qubits");
    if (max_qubit >= ir.n) throw ParseError("qubit index beyond circuit width");
    return ir;
}

// --- sparse stabilizer-basis simulation --------------------------------

// |psi> = sum_i c_i U_basis |i>, where U_basis is a Clifford tableau and
// only the nonzero c_i are stored. Clifford gates touch the basis only;
// a Pauli rotation either phases a term (axis in the stabilizer group)
// or splits it onto its partner index.
struct SparseStabExpansion {
    CliffordTableau basis;
    std::unordered_map<uint64_t, cplx> coeffs;
    double discarded_weight = 0.0;

    static SparseStabExpansion zero_state(int n) {
        SparseStabExpansion e;
        e.basis = CliffordTableau::identity(n);
        e.coeffs[0] = cplx{1.0, 0.0};
        return e;
    }

    std::size_t term_count() const { return coeffs.size(); }
};

inline void sparse_apply_clifford(SparseStabExpansion& exp, const CliffordTableau& gate) {
    exp.basis = compose(gate, exp.basis);
}

inline void sparse_apply_rotation(SparseStabExpansion& exp, const PauliString& p, double theta) {
    if (!p.is_hermitian()) throw std::domain_error("sparse_apply_rotation: axis is not Hermitian");
    const PauliString moved = conjugate(inverse(exp.basis), p);
    const cplx base = i_power(moved.phase_exp + std::popcount(moved.x & moved.z));
    if (moved.x == 0) {
        for (auto& [idx, c] : exp.coeffs) {
            const double lambda = (parity64(moved.z & idx) ? -base.real() : base.real());
            c *= std::polar(1.0, theta * lambda);
        }
        return;
    }
    const cplx cos_t{std::cos(theta), 0.0};
    const cplx i_sin_t{0.0, std::sin(theta)};
    std::unordered_map<uint64_t, cplx> next;
    next.reserve(exp.coeffs.size() * 2);
    for (const auto& [idx, c] : exp.coeffs) {
        if (std::cos(theta) != 0.0) next[idx] += cos_t * c;
        const cplx mu = parity64(moved.z & idx) ? -base : base;
        if (std::sin(theta) != 0.0) next[idx ^ moved.x] += i_sin_t * mu * c;
    }
    exp.coeffs = std::move(next);
}

inline void sparse_truncate(SparseStabExpansion& exp, double eps) {
    if (eps <= 0.0) return;
    double kept = 0.0;
    for (auto it = exp.coeffs.begin(); it != exp.coeffs.end();) {
        if (std::abs(it->second) < eps) {
            exp.discarded_weight += std::norm(it->second);
            it = exp.coeffs.erase(it);
        } else {
            kept += std::norm(it->second);
            ++it;
        }
    }
    if (exp.coeffs.empty()) throw std::domain_error("sparse_truncate: every coefficient was discarded");
    const double inv = 1.0 / std::sqrt(kept);
    for (auto& [idx, c] : exp.coeffs) c *= inv;
}

inline void sparse_apply(SparseStabExpansion& exp, const CircuitGate& gate, double eps = 0.0) {
    if (gate.is_rotation) {
        sparse_apply_rotation(exp, gate.pauli, gate.theta);
        sparse_truncate(exp, eps);
    } else {
        sparse_apply_clifford(exp, named_gate(gate.op.g, exp.basis.n, gate.op.a, gate.op.b));
    }
}

inline Statevector sparse_to_statevector(const SparseStabExpansion& exp) {
    Statevector dense;
    dense.n = exp.basis.n;
    dense.amps.assign(std::size_t{1} << exp.basis.n, cplx{0.0, 0.0});
    for (const auto& [idx, c] : exp.coeffs) dense.amps[idx] = c;
    Statevector out = apply_to_state(exp.basis, dense);
    out.normalize();
    return out;
}

// Shannon entropy (nats) of the coefficient weights |c_i|^2.
inline double sparse_coefficient_entropy(const SparseStabExpansion& exp) {
    std::vector<double> probs;
    probs.reserve(exp.coeffs.size());
    for (const auto& [idx, c] : exp.coeffs) probs.push_back(std::norm(c));
    return renyi_entropy(probs, 1.0);
}

} // namespace magicmon
