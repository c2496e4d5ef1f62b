#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "magicmon/bits.hpp"
#include "magicmon/errors.hpp"

namespace magicmon::f2 {

// Dense matrix over GF(2). Each row is stored in one 64-bit word
// (bit c of row_bits[r] is the entry at row r, column c), which covers
// every dimension this library works at.
struct BitMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<uint64_t> row_bits;

    BitMatrix() = default;
    BitMatrix(int r, int c) : rows(r), cols(c), row_bits(static_cast<std::size_t>(r), 0) {
        if (r < 0 || c < 0 || r > 64 || c > 64)
            throw DimensionError("BitMatrix dimensions must be in [0, 64]");
    }

    static BitMatrix identity(int n) {
        BitMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.row_bits[static_cast<std::size_t>(i)] = uint64_t{1} << i;
        return m;
    }

    bool get(int r, int c) const { return (row_bits[static_cast<std::size_t>(r)] >> c) & 1; }
    void set(int r, int c, bool v) {
        uint64_t mask = uint64_t{1} << c;
        if (v)
            row_bits[static_cast<std::size_t>(r)] |= mask;
        else
            row_bits[static_cast<std::size_t>(r)] &= ~mask;
    }
    uint64_t row(int r) const { return row_bits[static_cast<std::size_t>(r)]; }

    bool operator==(const BitMatrix& o) const {
        return rows == o.rows && cols == o.cols && row_bits == o.row_bits;
    }
};

inline BitMatrix transpose(const BitMatrix& m) {
    BitMatrix t(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            if (m.get(r, c)) t.set(c, r, true);
    return t;
}

// y = M x with x given as packed bits (bit i = coordinate i).
inline uint64_t mat_vec(const BitMatrix& m, uint64_t x) {
    uint64_t y = 0;
    for (int r = 0; r < m.rows; ++r)
        if (parity64(m.row(r) & x)) y |= uint64_t{1} << r;
    return y;
}

inline BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols != b.rows) throw DimensionError("mat_mul: inner dimensions differ");
    BitMatrix c(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (int k = 0; k < a.cols; ++k)
            if (a.get(r, k)) c.row_bits[static_cast<std::size_t>(r)] ^= b.row(k);
    return c;
}

// Reduced row echelon form of packed row vectors; returns pivot columns.
inline std::vector<int> rref_rows(std::vector<uint64_t>& rows, int ncols) {
    std::vector<int> pivots;
    std::size_t lead = 0;
    for (int c = 0; c < ncols && lead < rows.size(); ++c) {
        std::size_t sel = lead;
        while (sel < rows.size() && !((rows[sel] >> c) & 1)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[lead], rows[sel]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != lead && ((rows[r] >> c) & 1)) rows[r] ^= rows[lead];
        pivots.push_back(c);
        ++lead;
    }
    return pivots;
}

inline int rank(const BitMatrix& m) {
    std::vector<uint64_t> rows = m.row_bits;
    return static_cast<int>(rref_rows(rows, m.cols).size());
}

// Canonical representative of the column space: the transpose of the
// RREF row basis. Idempotent; two matrices have equal column spaces iff
// their canonical forms are equal. Zero columns are dropped, so the
// result is rows x rank(m).
inline BitMatrix column_space_canonical(const BitMatrix& m) {
    std::vector<uint64_t> rows;
    const BitMatrix t = transpose(m);
    rows = t.row_bits;
    rref_rows(rows, t.cols);
    while (!rows.empty() && rows.back() == 0) rows.pop_back();
    BitMatrix basis(static_cast<int>(rows.size()), m.rows);
    basis.row_bits = rows;
    return transpose(basis);
}

// Pivot rows of a canonical (column-space) matrix: row p_i is the unit
// vector e_i. Throws if the matrix is not in canonical form.
inline std::vector<int> pivot_rows(const BitMatrix& r) {
    if (column_space_canonical(r) != r || rank(r) != r.cols)
        throw std::domain_error("pivot_rows: matrix is not a canonical full-column-rank form");
    std::vector<int> pivots(static_cast<std::size_t>(r.cols), -1);
    for (int row = 0; row < r.rows; ++row) {
        uint64_t bits = r.row(row);
        if (bits != 0 && (bits & (bits - 1)) == 0) {
            int c = std::countr_zero(bits);
            if (pivots[static_cast<std::size_t>(c)] < 0) pivots[static_cast<std::size_t>(c)] = row;
        }
    }
    // The first unit row for each column is its pivot; canonical form
    // guarantees existence and increasing order.
    for (int i = 0; i < r.cols; ++i)
        if (pivots[static_cast<std::size_t>(i)] < 0)
            throw std::domain_error("pivot_rows: missing pivot row");
    return pivots;
}

inline BitMatrix inverse(const BitMatrix& m) {
    if (m.rows != m.cols) throw DimensionError("inverse: matrix not square");
    const int n = m.rows;
    std::vector<uint64_t> aug = m.row_bits;
    for (int r = 0; r < n; ++r) aug[static_cast<std::size_t>(r)] |= (uint64_t{1} << (n + r));
    std::vector<int> pivots = rref_rows(aug, n);
    if (static_cast<int>(pivots.size()) != n) throw std::domain_error("inverse: matrix is singular");
    BitMatrix inv(n, n);
    for (int r = 0; r < n; ++r) inv.row_bits[static_cast<std::size_t>(r)] = aug[static_cast<std::size_t>(r)] >> n;
    return inv;
}

// Number of k-dimensional subspaces of F2^N (Gaussian binomial, q = 2),
// via the q-Pascal recurrence. Exact in 64 bits for N <= 16.
inline unsigned long long q_binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) throw std::domain_error("q_binomial: need 0 <= k <= n");
    if (n > 16) throw CapError("q_binomial: n > 16 would overflow 64-bit exact arithmetic");
    std::vector<std::vector<unsigned long long>> t(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        t[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 0);
        t[static_cast<std::size_t>(i)][0] = 1;
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        for (int j = 1; j < i; ++j)
            t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                t[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1] +
                (t[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)] << j);
    }
    return t[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

namespace detail {

// Free cells of the canonical form for a given pivot-row set: entry
// (r, i) with r a non-pivot row and r > p_i. Listed column-major
// (column i ascending, then row ascending) to fix the enumeration order.
inline std::vector<std::pair<int, int>> free_cells(const std::vector<int>& pivots, int n) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::pair<int, int>> cells;
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (int r = pivots[i] + 1; r < n; ++r)
            if (!is_pivot[static_cast<std::size_t>(r)]) cells.emplace_back(r, static_cast<int>(i));
    return cells;
}

inline bool next_combination(std::vector<int>& comb, int n) {
    const int k = static_cast<int>(comb.size());
    for (int i = k - 1; i >= 0; --i) {
        if (comb[static_cast<std::size_t>(i)] < n - (k - i)) {
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j) - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace detail

// Visits one canonical N x k matrix per k-dimensional subspace of F2^N,
// in a fixed order: pivot-row sets lexicographically, then free cells
// counted in binary. Exactly q_binomial(n, k) matrices are produced.
inline void for_each_subspace(int n, int k, const std::function<void(const BitMatrix&)>& fn) {
    if (k < 0 || k > n) throw std::domain_error("for_each_subspace: need 0 <= k <= n");
    if (k == 0) {
        fn(BitMatrix(n, 0));
        return;
    }
    std::vector<int> pivots(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pivots[static_cast<std::size_t>(i)] = i;
    do {
        const auto cells = detail::free_cells(pivots, n);
        const uint64_t combos = uint64_t{1} << cells.size();
        for (uint64_t bits = 0; bits < combos; ++bits) {
            BitMatrix m(n, k);
            for (int i = 0; i < k; ++i) m.set(pivots[static_cast<std::size_t>(i)], i, true);
            for (std::size_t c = 0; c < cells.size(); ++c)
                if ((bits >> c) & 1) m.set(cells[c].first, cells[c].second, true);
            fn(m);
        }
    } while (detail::next_combination(pivots, n));
}

inline std::vector<BitMatrix> enumerate_subspaces(int n, int k) {
    std::vector<BitMatrix> out;
    out.reserve(q_binomial(n, k));
    for_each_subspace(n, k, [&](const BitMatrix& m) { out.push_back(m); });
    return out;
}

// Canonical coset representatives of F2^N / Im(R) for a canonical
// full-column-rank R: all vectors supported on the non-pivot rows,
// ordered by counting the non-pivot rows in increasing position.
inline std::vector<uint64_t> coset_reps(const BitMatrix& r) {
    const auto pivots = pivot_rows(r);
    std::vector<bool> is_pivot(static_cast<std::size_t>(r.rows), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<int> free_rows;
    for (int row = 0; row < r.rows; ++row)
        if (!is_pivot[static_cast<std::size_t>(row)]) free_rows.push_back(row);
    std::vector<uint64_t> reps;
    reps.reserve(uint64_t{1} << free_rows.size());
    for (uint64_t idx = 0; idx < (uint64_t{1} << free_rows.size()); ++idx) {
        uint64_t t = 0;
        for (std::size_t m = 0; m < free_rows.size(); ++m)
            if ((idx >> m) & 1) t |= uint64_t{1} << free_rows[m];
        reps.push_back(t);
    }
    return reps;
}

// Upper-triangular k x k matrices (strictly upper when strict), in a
// fixed order: cells (i, j), i < j (or i <= j), listed row-major and
// counted in binary.
inline void for_each_upper_triangular(int k, bool strict, const std::function<void(const BitMatrix&)>& fn) {
    if (k < 0) throw std::domain_error("for_each_upper_triangular: k must be >= 0");
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < k; ++i)
        for (int j = strict ? i + 1 : i; j < k; ++j) cells.emplace_back(i, j);
    const uint64_t combos = uint64_t{1} << cells.size();
    for (uint64_t bits = 0; bits < combos; ++bits) {
        BitMatrix m(k, k);
        for (std::size_t c = 0; c < cells.size(); ++c)
            if ((bits >> c) & 1) m.set(cells[c].first, cells[c].second, true);
        fn(m);
    }
}

inline std::vector<BitMatrix> enumerate_upper_triangular(int k, bool strict) {
    std::vector<BitMatrix> out;
    for_each_upper_triangular(k, strict, [&](const BitMatrix& m) { out.push_back(m); });
    return out;
}

} // namespace magicmon::f2
