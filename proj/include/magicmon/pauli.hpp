#pragma once

#include <cstdint>
#include <string>

#include "magicmon/bits.hpp"
#include "magicmon/errors.hpp"

namespace magicmon {

// N-qubit Pauli string in the symplectic representation. The operator is
//
//   i^phase_exp * prod_j P(x_j, z_j),   P(a, b) = i^(a b) X^a Z^b,
//
// so each factor with phase_exp = 0 is Hermitian (X, Y, Z or I per
// qubit; P(1,1) is exactly Y). Bit j of x/z belongs to qubit j. A single
// 64-bit word per part covers all supported sizes.
struct PauliString {
    int n = 0;
    uint64_t x = 0;
    uint64_t z = 0;
    int phase_exp = 0; // power of i, mod 4

    PauliString() = default;
    PauliString(int n_qubits, uint64_t x_bits, uint64_t z_bits, int phase = 0)
        : n(n_qubits), x(x_bits), z(z_bits), phase_exp(((phase % 4) + 4) % 4) {
        if (n_qubits < 1 || n_qubits > 64) throw DimensionError("PauliString: qubit count out of range");
        uint64_t mask = (n_qubits == 64) ? ~uint64_t{0} : ((uint64_t{1} << n_qubits) - 1);
        if ((x_bits & ~mask) || (z_bits & ~mask)) throw DimensionError("PauliString: bits beyond qubit count");
    }

    static PauliString identity(int n_qubits) { return PauliString(n_qubits, 0, 0, 0); }

    bool is_identity_bits() const { return x == 0 && z == 0; }
    bool is_hermitian() const { return (phase_exp & 1) == 0; }
    // -1 or +1 prefactor of a Hermitian string.
    int sign() const { return phase_exp == 2 ? -1 : 1; }

    bool operator==(const PauliString& o) const {
        return n == o.n && x == o.x && z == o.z && phase_exp == o.phase_exp;
    }
};

// Symplectic product x_a.z_b + z_a.x_b mod 2; 0 iff the strings commute.
inline int symplectic_product(const PauliString& a, const PauliString& b) {
    if (a.n != b.n) throw DimensionError("symplectic_product: qubit counts differ");
    return parity64(a.x & b.z) ^ parity64(a.z & b.x);
}

inline bool commute(const PauliString& a, const PauliString& b) { return symplectic_product(a, b) == 0; }

// Exact operator product, including the i-power bookkeeping of the
// per-qubit P(a, b) convention.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
    if (a.n != b.n) throw DimensionError("multiply: qubit counts differ");
    const uint64_t cx = a.x ^ b.x;
    const uint64_t cz = a.z ^ b.z;
    int phase = a.phase_exp + b.phase_exp;
    phase += std::popcount(a.x & a.z);
    phase += std::popcount(b.x & b.z);
    phase += 2 * std::popcount(a.z & b.x);
    phase -= std::popcount(cx & cz);
    return PauliString(a.n, cx, cz, phase);
}

inline PauliString parse_pauli(const std::string& label) {
    if (label.empty()) throw ParseError("parse_pauli: empty label");
    PauliString p(static_cast<int>(label.size()), 0, 0, 0);
    for (std::size_t j = 0; j < label.size(); ++j) {
        switch (label[j]) {
        case 'I': break;
        case 'X': p.x |= uint64_t{1} << j; break;
        case 'Y': p.x |= uint64_t{1} << j; p.z |= uint64_t{1} << j; break;
        case 'Z': p.z |= uint64_t{1} << j; break;
        default: throw ParseError(std::string("parse_pauli: invalid character '") + label[j] + "'");
        }
    }
    return p;
}

// Letters only; qubit j at string position j. The phase prefactor is
// not part of the label.
inline std::string render_pauli(const PauliString& p) {
    std::string s(static_cast<std::size_t>(p.n), 'I');
    for (int j = 0; j < p.n; ++j) {
        bool xb = (p.x >> j) & 1;
        bool zb = (p.z >> j) & 1;
        if (xb && zb)
            s[static_cast<std::size_t>(j)] = 'Y';
        else if (xb)
            s[static_cast<std::size_t>(j)] = 'X';
        else if (zb)
            s[static_cast<std::size_t>(j)] = 'Z';
    }
    return s;
}

// Canonical index used for Pauli spectra: x bits in the low N
// positions, z bits above them.
inline uint64_t pauli_index(const PauliString& p) { return p.x | (p.z << p.n); }

inline PauliString pauli_from_index(int n, uint64_t index) {
    const uint64_t mask = (n == 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
    return PauliString(n, index & mask, (index >> n) & mask, 0);
}

} // namespace magicmon
