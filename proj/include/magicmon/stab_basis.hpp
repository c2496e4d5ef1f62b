#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

#include "magicmon/bits.hpp"
#include "magicmon/clifford.hpp"
#include "magicmon/f2linalg.hpp"
#include "magicmon/statevec.hpp"

namespace magicmon {

// Label of one stabilizer basis: the 2^N states
//
//   |phi_{Qd,t}> = 2^(-k/2) sum_x (-1)^(x^T (Q'+Qd) x) i^(c.x) |R x + t>
//
// over diagonal parts Qd and coset representatives t share (k, Q', c, R)
// and form an orthonormal basis. k = 0 is the computational basis.
// c.x is evaluated as an integer before taking the i-power.
struct StabBasisKey {
    int n = 0;
    int k = 0;
    f2::BitMatrix qp; // strictly upper triangular k x k
    uint64_t c = 0;   // k bits
    f2::BitMatrix r;  // canonical N x k, rank k

    static StabBasisKey computational(int n_qubits) {
        StabBasisKey key;
        key.n = n_qubits;
        key.k = 0;
        key.qp = f2::BitMatrix(0, 0);
        key.r = f2::BitMatrix(n_qubits, 0);
        return key;
    }

    bool operator==(const StabBasisKey& o) const {
        return n == o.n && k == o.k && qp == o.qp && c == o.c && r == o.r;
    }
};

inline void validate_key(const StabBasisKey& key) {
    if (key.k < 0 || key.k > key.n) throw std::domain_error("StabBasisKey: k out of range");
    if (key.r.rows != key.n || key.r.cols != key.k) throw DimensionError("StabBasisKey: R has wrong shape");
    if (key.qp.rows != key.k || key.qp.cols != key.k) throw DimensionError("StabBasisKey: Q' has wrong shape");
    for (int i = 0; i < key.k; ++i)
        for (int j = 0; j <= i; ++j)
            if (key.qp.get(i, j)) throw std::domain_error("StabBasisKey: Q' must be strictly upper triangular");
    if (key.k > 0 && (f2::rank(key.r) != key.k || f2::column_space_canonical(key.r) != key.r))
        throw std::domain_error("StabBasisKey: R must be canonical with full column rank");
    if (key.k < 64 && (key.c >> key.k) != 0) throw std::domain_error("StabBasisKey: c has bits beyond k");
}

// Visits every stabilizer-basis key of N qubits: k ascending, then R in
// subspace order, then Q' and c in binary order. This fixed order is
// also the tie-breaking order for argmin certificates.
inline void for_each_basis_key(int n, const std::function<void(const StabBasisKey&)>& fn) {
    fn(StabBasisKey::computational(n));
    for (int k = 1; k <= n; ++k) {
        f2::for_each_subspace(n, k, [&](const f2::BitMatrix& r) {
            f2::for_each_upper_triangular(k, true, [&](const f2::BitMatrix& qp) {
                for (uint64_t c = 0; c < (uint64_t{1} << k); ++c) {
                    StabBasisKey key;
                    key.n = n;
                    key.k = k;
                    key.qp = qp;
                    key.c = c;
                    key.r = r;
                    fn(key);
                }
            });
        });
    }
}

inline unsigned long long count_basis_keys(int n) {
    unsigned long long total = 0;
    for (int k = 0; k <= n; ++k)
        total += (1ull << (k * (k - 1) / 2)) * (1ull << k) * f2::q_binomial(n, k);
    return total;
}

namespace detail {

// (-1)^(x^T Q' x) for strictly upper triangular Q'.
inline int quad_form_parity(const f2::BitMatrix& qp, uint64_t x) {
    int par = 0;
    for (int i = 0; i < qp.rows; ++i)
        if ((x >> i) & 1) par ^= parity64(qp.row(i) & x);
    return par;
}

} // namespace detail

// Squared overlaps of `state` with the 2^N elements of the basis,
// indexed by (t_idx << k) | d where d packs the diagonal of Qd and
// t_idx counts the canonical coset representatives. One length-2^k
// Walsh-Hadamard transform per coset handles all Qd at once.
inline std::vector<double> distribution_for_basis(const Statevector& state, const StabBasisKey& key) {
    validate_key(key);
    if (key.n != state.n) throw DimensionError("distribution_for_basis: qubit counts differ");
    const int k = key.k;
    const std::size_t block = std::size_t{1} << k;
    std::vector<double> probs(state.dim());

    // per-x phase (-1)^(x^T Q' x) * conj(i^(c.x)), c.x as an integer
    std::vector<cplx> phase(block);
    for (uint64_t x = 0; x < block; ++x) {
        cplx ph = i_power(-static_cast<int>(std::popcount(key.c & x)));
        if (detail::quad_form_parity(key.qp, x)) ph = -ph;
        phase[x] = ph;
    }
    std::vector<uint64_t> rx(block);
    for (uint64_t x = 0; x < block; ++x) rx[x] = f2::mat_vec(key.r, x);

    const auto reps = f2::coset_reps(key.r);
    const double scale = 1.0 / static_cast<double>(block);
    std::vector<cplx> f(block);
    for (std::size_t t_idx = 0; t_idx < reps.size(); ++t_idx) {
        const uint64_t t = reps[t_idx];
        for (uint64_t x = 0; x < block; ++x) f[x] = phase[x] * state.amps[rx[x] ^ t];
        fwht_inplace(f);
        for (uint64_t d = 0; d < block; ++d) probs[(t_idx << k) | d] = std::norm(f[d]) * scale;
    }
    return probs;
}

// Clifford tableau sending each computational basis state |(t_idx<<k)|d>
// to the basis element |phi_{Qd(d), t(t_idx)}>: Hadamards on the first k
// qubits, then the S / CZ phase layer for c and Q', then a CNOT network
// for the linear relabeling x -> R x + t.
inline CliffordTableau basis_to_tableau(const StabBasisKey& key) {
    validate_key(key);
    const int n = key.n;
    const int k = key.k;
    CliffordTableau t = CliffordTableau::identity(n);
    auto apply = [&](const CliffordTableau& g) { t = compose(g, t); };

    for (int j = 0; j < k; ++j) apply(named_gate(Gate::H, n, j));
    for (int j = 0; j < k; ++j)
        if ((key.c >> j) & 1) apply(named_gate(Gate::S, n, j));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (key.qp.get(i, j)) apply(named_gate(Gate::CZ, n, i, j));

    // full-rank map M = [R | E], E scattering the coset-index bits onto
    // the non-pivot rows
    f2::BitMatrix m(n, n);
    for (int col = 0; col < k; ++col)
        for (int row = 0; row < n; ++row)
            if (key.r.get(row, col)) m.set(row, col, true);
    if (k < n) {
        const auto pivots = (k > 0) ? f2::pivot_rows(key.r) : std::vector<int>{};
        std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
        for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
        int col = k;
        for (int row = 0; row < n; ++row)
            if (!is_pivot[static_cast<std::size_t>(row)]) m.set(row, col++, true);
    }

    // reduce M to the identity by row additions; the recorded operations
    // reversed give the CNOT program for |y> -> |M y|
    std::vector<std::pair<int, int>> ops; // (target_row, source_row)
    f2::BitMatrix work = m;
    auto add_row = [&](int target, int source) {
        work.row_bits[static_cast<std::size_t>(target)] ^= work.row(source);
        ops.emplace_back(target, source);
    };
    for (int col = 0; col < n; ++col) {
        if (!work.get(col, col)) {
            int pivot = -1;
            for (int row = col + 1; row < n; ++row)
                if (work.get(row, col)) { pivot = row; break; }
            if (pivot < 0) throw std::logic_error("basis_to_tableau: relabeling matrix is singular");
            add_row(col, pivot);
        }
        for (int row = 0; row < n; ++row)
            if (row != col && work.get(row, col)) add_row(row, col);
    }
    for (auto it = ops.rbegin(); it != ops.rend(); ++it)
        apply(named_gate(Gate::CNOT, n, it->second, it->first)); // control = source row

    return t;
}

// Hermitian generators of the unsigned stabilizer group shared by all
// elements of the basis: the images of Z_j under the basis tableau.
inline std::vector<PauliString> basis_group_generators(const StabBasisKey& key) {
    const CliffordTableau t = basis_to_tableau(key);
    std::vector<PauliString> gens;
    gens.reserve(static_cast<std::size_t>(key.n));
    for (int j = 0; j < key.n; ++j) gens.push_back(t.image_of_z(j));
    return gens;
}

inline nlohmann::json key_to_json(const StabBasisKey& key) {
    nlohmann::json qp_rows = nlohmann::json::array();
    for (int i = 0; i < key.k; ++i) qp_rows.push_back(bits_to_string(key.qp.row(i), key.k));
    nlohmann::json r_rows = nlohmann::json::array();
    for (int i = 0; i < key.n; ++i) r_rows.push_back(bits_to_string(key.r.row(i), key.k));
    return {{"n", key.n}, {"k", key.k}, {"Qp", qp_rows}, {"c", bits_to_string(key.c, key.k)}, {"R", r_rows}};
}

} // namespace magicmon
