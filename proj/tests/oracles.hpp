#pragma once

// Independent dense / naive reference implementations used as test
// oracles. These deliberately avoid the library's own bit-level fast
// paths: Pauli matrices are built by explicit Kronecker products and
// GF(2) ranks by a separate boolean elimination.

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "magicmon/pauli.hpp"
#include "magicmon/statevec.hpp"

namespace oracles {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using magicmon::cplx;

inline Mat single_qubit_pauli(bool xbit, bool zbit) {
    Mat x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    Mat m = Mat::Identity(2, 2);
    if (xbit) m = x * m * 1.0;
    if (zbit) m = m * z;
    if (xbit && zbit) m *= cplx{0, 1}; // i^(xz) X^x Z^z
    return m;
}

// Dense matrix with qubit 0 as the least significant index bit.
inline Mat dense_pauli(const magicmon::PauliString& p) {
    Mat full = Mat::Identity(1, 1);
    for (int q = 0; q < p.n; ++q) {
        const Mat m = single_qubit_pauli((p.x >> q) & 1, (p.z >> q) & 1);
        Mat next(full.rows() * 2, full.cols() * 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) next.block(i * full.rows(), j * full.cols(), full.rows(), full.cols()) = m(i, j) * full;
        full = next;
    }
    cplx phase{1, 0};
    for (int k = 0; k < ((p.phase_exp % 4) + 4) % 4; ++k) phase *= cplx{0, 1};
    return phase * full;
}

inline Vec to_eigen(const magicmon::Statevector& s) {
    Vec v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s.amps[i];
    return v;
}

inline int naive_rank_gf2(std::vector<std::vector<bool>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < rows; ++c) {
        std::size_t sel = row;
        while (sel < rows && !m[sel][c]) ++sel;
        if (sel == rows) continue;
        std::swap(m[row], m[sel]);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != row && m[r][c])
                for (std::size_t cc = 0; cc < cols; ++cc) m[r][cc] = m[r][cc] != m[row][cc];
        ++row;
        ++rank;
    }
    return rank;
}

inline magicmon::PauliString random_pauli(int n, std::mt19937_64& rng, bool hermitian_only = false) {
    std::uniform_int_distribution<uint64_t> bits(0, (uint64_t{1} << n) - 1);
    std::uniform_int_distribution<int> phase(0, 3);
    int e = phase(rng);
    if (hermitian_only) e &= 2;
    return magicmon::PauliString(n, bits(rng), bits(rng), e);
}

} // namespace oracles
