#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "magicmon/f2linalg.hpp"
#include "oracles.hpp"

using namespace magicmon;
using f2::BitMatrix;

namespace {

std::vector<std::vector<bool>> to_bool(const BitMatrix& m) {
    std::vector<std::vector<bool>> out(static_cast<std::size_t>(m.rows),
                                       std::vector<bool>(static_cast<std::size_t>(m.cols)));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m.get(r, c);
    return out;
}

// All vectors in the column space, for column-space comparisons.
std::set<uint64_t> column_space(const BitMatrix& m) {
    std::set<uint64_t> space;
    for (uint64_t coeff = 0; coeff < (uint64_t{1} << m.cols); ++coeff) {
        uint64_t v = 0;
        for (int c = 0; c < m.cols; ++c)
            if ((coeff >> c) & 1)
                for (int r = 0; r < m.rows; ++r)
                    if (m.get(r, c)) v ^= uint64_t{1} << r;
        space.insert(v);
    }
    return space;
}

} // namespace

TEST_CASE("rank basics and random agreement with naive elimination", "[f2linalg]") {
    CHECK(f2::rank(BitMatrix::identity(3)) == 3);
    CHECK(f2::rank(BitMatrix(4, 3)) == 0);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        BitMatrix m(5, 3);
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 3; ++c) m.set(r, c, bit(rng));
        CHECK(f2::rank(m) == oracles::naive_rank_gf2(to_bool(m)));
    }
}

TEST_CASE("q_binomial values", "[f2linalg]") {
    CHECK(f2::q_binomial(2, 1) == 3);
    for (int n = 0; n <= 6; ++n) {
        CHECK(f2::q_binomial(n, 0) == 1);
        CHECK(f2::q_binomial(n, n) == 1);
    }
    // count rank-2 column spaces of F2^{4x2} by brute force
    std::set<std::set<uint64_t>> spaces;
    for (uint64_t bits = 0; bits < (1u << 8); ++bits) {
        BitMatrix m(4, 2);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 2; ++c) m.set(r, c, (bits >> (2 * r + c)) & 1);
        if (f2::rank(m) == 2) spaces.insert(column_space(m));
    }
    CHECK(spaces.size() == 35);
    CHECK(f2::q_binomial(4, 2) == 35);
    CHECK_THROWS_AS(f2::q_binomial(3, 4), std::domain_error);
}

TEST_CASE("subspace enumeration is canonical, complete and distinct", "[f2linalg]") {
    const auto one_dim = f2::enumerate_subspaces(2, 1);
    REQUIRE(one_dim.size() == 3);
    std::set<std::set<uint64_t>> spans;
    for (const auto& m : one_dim) spans.insert(column_space(m));
    CHECK(spans.count({0, 1}) == 1);
    CHECK(spans.count({0, 2}) == 1);
    CHECK(spans.count({0, 3}) == 1);

    CHECK(f2::enumerate_subspaces(3, 2).size() == 7);
    CHECK(f2::q_binomial(3, 2) == 7);

    for (int n = 1; n <= 4; ++n) {
        for (int k = 0; k <= n; ++k) {
            const auto subs = f2::enumerate_subspaces(n, k);
            REQUIRE(subs.size() == f2::q_binomial(n, k));
            std::set<std::set<uint64_t>> all;
            for (const auto& m : subs) {
                CHECK(f2::rank(m) == k);
                CHECK(f2::column_space_canonical(m) == m); // canonical form is idempotent
                all.insert(column_space(m));
            }
            CHECK(all.size() == subs.size());
        }
    }
}

TEST_CASE("coset representatives tile the whole space", "[f2linalg]") {
    BitMatrix e1(2, 1);
    e1.set(0, 0, true);
    const auto reps2 = f2::coset_reps(e1);
    CHECK(reps2 == std::vector<uint64_t>{0, 2});

    const auto full = f2::coset_reps(BitMatrix::identity(3));
    CHECK(full == std::vector<uint64_t>{0});

    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= n; ++k)
            f2::for_each_subspace(n, k, [&](const BitMatrix& r) {
                const auto reps = f2::coset_reps(r);
                REQUIRE(reps.size() == (std::size_t{1} << (n - k)));
                std::set<uint64_t> covered;
                for (uint64_t t : reps)
                    for (uint64_t x = 0; x < (uint64_t{1} << k); ++x) covered.insert(f2::mat_vec(r, x) ^ t);
                CHECK(covered.size() == (std::size_t{1} << n)); // exact cover, each point once
            });

    BitMatrix rank_deficient(2, 2);
    rank_deficient.set(0, 0, true);
    rank_deficient.set(0, 1, true);
    CHECK_THROWS_AS(f2::coset_reps(rank_deficient), std::domain_error);

    BitMatrix not_canonical(2, 2); // full rank but not the canonical column-space form
    not_canonical.set(0, 0, true);
    not_canonical.set(0, 1, true);
    not_canonical.set(1, 1, true);
    CHECK_THROWS_AS(f2::coset_reps(not_canonical), std::domain_error);
}

TEST_CASE("upper triangular enumeration counts", "[f2linalg]") {
    CHECK(f2::enumerate_upper_triangular(1, true).size() == 1);
    CHECK(f2::enumerate_upper_triangular(1, true)[0] == BitMatrix(1, 1));
    CHECK(f2::enumerate_upper_triangular(2, false).size() == 8);
    CHECK(f2::enumerate_upper_triangular(3, true).size() == 8);
    for (int k = 0; k <= 4; ++k) {
        CHECK(f2::enumerate_upper_triangular(k, false).size() == (std::size_t{1} << (k * (k + 1) / 2)));
        CHECK(f2::enumerate_upper_triangular(k, true).size() == (std::size_t{1} << (k * (k - 1) / 2)));
    }
}

TEST_CASE("stabilizer-basis and stabilizer-state counting identities", "[f2linalg]") {
    for (int n = 1; n <= 4; ++n) {
        unsigned long long bases = 0;
        for (int k = 0; k <= n; ++k)
            bases += (1ull << (k * (k - 1) / 2)) * (1ull << k) * f2::q_binomial(n, k);
        unsigned long long product = 1;
        for (int j = 1; j <= n; ++j) product *= (1ull << j) + 1;
        CHECK(bases == product);
    }
    for (int n = 1; n <= 3; ++n) {
        unsigned long long states = 0;
        for (int k = 0; k <= n; ++k)
            states += (1ull << (k * (k + 1) / 2)) * (1ull << k) * f2::q_binomial(n, k) * (1ull << (n - k));
        unsigned long long product = 1ull << n;
        for (int j = 1; j <= n; ++j) product *= (1ull << j) + 1;
        CHECK(states == product);
    }
}
