#include <catch2/catch_amalgamated.hpp>

#include "magicmon/pauli.hpp"
#include "oracles.hpp"

using namespace magicmon;

TEST_CASE("commutation matches the symplectic product", "[pauli]") {
    const PauliString x = parse_pauli("X");
    const PauliString z = parse_pauli("Z");
    CHECK(symplectic_product(x, z) == 1);
    CHECK(symplectic_product(parse_pauli("XX"), parse_pauli("ZZ")) == 0);
    CHECK(symplectic_product(parse_pauli("III"), parse_pauli("XYZ")) == 0);
    CHECK(commute(parse_pauli("XX"), parse_pauli("ZZ")));
    CHECK_FALSE(commute(x, z));
    CHECK_THROWS_AS(symplectic_product(x, parse_pauli("XX")), DimensionError);
}

TEST_CASE("commutation agrees with dense commutators, exhaustive N<=3", "[pauli]") {
    for (int n = 1; n <= 3; ++n) {
        const uint64_t count = uint64_t{1} << (2 * n);
        for (uint64_t ia = 0; ia < count; ++ia) {
            for (uint64_t ib = 0; ib < count; ++ib) {
                const PauliString a = pauli_from_index(n, ia);
                const PauliString b = pauli_from_index(n, ib);
                const auto da = oracles::dense_pauli(a);
                const auto db = oracles::dense_pauli(b);
                const bool dense_commutes = (da * db - db * da).norm() < 1e-12;
                CHECK(commute(a, b) == dense_commutes);
            }
        }
    }
}

TEST_CASE("multiply tracks phases exactly", "[pauli]") {
    const PauliString x = parse_pauli("X");
    const PauliString z = parse_pauli("Z");
    const PauliString xz = multiply(x, z);
    CHECK(xz.x == 1);
    CHECK(xz.z == 1);
    // X Z = -i Y, i.e. phase exponent 3 on the Hermitian Y string
    CHECK(xz.phase_exp == 3);
    const PauliString sq = multiply(xz, xz);
    CHECK(sq.is_identity_bits());
    CHECK(sq.phase_exp == 2); // (XZ)^2 = -I

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const PauliString p = oracles::random_pauli(3, rng);
        const PauliString pi = multiply(p, PauliString::identity(3));
        CHECK(pi == p);
        const PauliString p2 = multiply(p, p);
        CHECK(p2.is_identity_bits());
        CHECK((p2.phase_exp == 0 || p2.phase_exp == 2));
    }
}

TEST_CASE("multiply matches dense products", "[pauli]") {
    // exhaustive at N<=2 over all bit patterns and phases
    for (int n = 1; n <= 2; ++n) {
        const uint64_t count = uint64_t{1} << (2 * n);
        for (uint64_t ia = 0; ia < count; ++ia) {
            for (uint64_t ib = 0; ib < count; ++ib) {
                for (int ea : {0, 1, 2, 3}) {
                    const PauliString a(n, ia & ((1u << n) - 1), ia >> n, ea);
                    const PauliString b = pauli_from_index(n, ib);
                    const auto got = oracles::dense_pauli(multiply(a, b));
                    const oracles::Mat want = oracles::dense_pauli(a) * oracles::dense_pauli(b);
                    REQUIRE((got - want).norm() < 1e-12);
                }
            }
        }
    }
    // random pairs at N=3
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const PauliString a = oracles::random_pauli(3, rng);
        const PauliString b = oracles::random_pauli(3, rng);
        const auto da = oracles::dense_pauli(a);
        const auto db = oracles::dense_pauli(b);
        const auto got = oracles::dense_pauli(multiply(a, b));
        REQUIRE((got - da * db).cwiseAbs().maxCoeff() < 1e-12);
        // a (b b) = +-a with the squared phase applied
        const auto assoc = oracles::dense_pauli(multiply(a, multiply(b, b)));
        REQUIRE((assoc - da * db * db).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("parse and render round-trip", "[pauli]") {
    const PauliString p = parse_pauli("XIZ");
    CHECK(p.x == 0b001);
    CHECK(p.z == 0b100);
    CHECK(p.phase_exp == 0);

    const auto y = oracles::dense_pauli(parse_pauli("Y"));
    CHECK(std::abs(y(0, 1) - cplx{0, -1}) < 1e-15);
    CHECK(std::abs(y(1, 0) - cplx{0, 1}) < 1e-15);
    CHECK(std::abs(y(0, 0)) < 1e-15);

    const std::string letters = "IXYZ";
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                std::string label{letters[a], letters[b], letters[c]};
                CHECK(render_pauli(parse_pauli(label)) == label);
            }

    CHECK_THROWS_AS(parse_pauli("XQZ"), ParseError);
}

TEST_CASE("phase-free strings are Hermitian, exhaustive N<=2", "[pauli]") {
    for (int n = 1; n <= 2; ++n) {
        const uint64_t count = uint64_t{1} << (2 * n);
        for (uint64_t i = 0; i < count; ++i) {
            const auto d = oracles::dense_pauli(pauli_from_index(n, i));
            REQUIRE((d - d.adjoint()).norm() < 1e-14);
        }
    }
}

TEST_CASE("pauli index round-trips", "[pauli]") {
    for (uint64_t i = 0; i < 64; ++i) {
        const PauliString p = pauli_from_index(3, i);
        CHECK(pauli_index(p) == i);
    }
}
