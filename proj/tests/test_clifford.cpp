#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "magicmon/clifford.hpp"
#include "oracles.hpp"

using namespace magicmon;

namespace {

// Unitary matrix realized by the tableau (one fixed global phase).
oracles::Mat tableau_unitary(const CliffordTableau& t) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << t.n);
    oracles::Mat u(dim, dim);
    const auto circuit = synthesize_circuit(t);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const Statevector out = apply_circuit(Statevector::basis_state(t.n, static_cast<uint64_t>(col)), circuit);
        for (Eigen::Index row = 0; row < dim; ++row) u(row, col) = out.amps[static_cast<std::size_t>(row)];
    }
    return u;
}

std::vector<CliffordTableau> single_qubit_group() {
    std::vector<CliffordTableau> gens{named_gate(Gate::H, 1, 0), named_gate(Gate::S, 1, 0)};
    std::map<std::string, CliffordTableau> seen;
    auto key = [](const CliffordTableau& t) {
        return bits_to_string(t.rows[0].x | t.rows[0].z << 1 | uint64_t(t.rows[0].phase_exp) << 2 |
                                  t.rows[1].x << 4 | t.rows[1].z << 5 | uint64_t(t.rows[1].phase_exp) << 6,
                              8);
    };
    std::vector<CliffordTableau> frontier{CliffordTableau::identity(1)};
    seen[key(frontier[0])] = frontier[0];
    while (!frontier.empty()) {
        std::vector<CliffordTableau> next;
        for (const auto& t : frontier)
            for (const auto& g : gens) {
                CliffordTableau c = compose(g, t);
                if (!seen.count(key(c))) {
                    seen[key(c)] = c;
                    next.push_back(std::move(c));
                }
            }
        frontier = std::move(next);
    }
    std::vector<CliffordTableau> out;
    for (auto& [k, t] : seen) out.push_back(t);
    return out;
}

} // namespace

TEST_CASE("conjugation by named gates", "[clifford]") {
    const CliffordTableau h = named_gate(Gate::H, 1, 0);
    CHECK(conjugate(h, parse_pauli("X")) == parse_pauli("Z"));
    CHECK(conjugate(h, parse_pauli("Z")) == parse_pauli("X"));

    const CliffordTableau s = named_gate(Gate::S, 1, 0);
    CHECK(conjugate(s, parse_pauli("X")) == parse_pauli("Y"));
    CHECK(conjugate(s, parse_pauli("Z")) == parse_pauli("Z"));

    CHECK_THROWS_AS(conjugate(h, parse_pauli("XX")), DimensionError);
}

TEST_CASE("conjugation preserves commutation and matches dense conjugation", "[clifford]") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
        const CliffordTableau t = random_clifford(3, rng);
        REQUIRE(is_valid_tableau(t));
        for (int pair = 0; pair < 100; ++pair) {
            const PauliString p = oracles::random_pauli(3, rng, true);
            const PauliString q = oracles::random_pauli(3, rng, true);
            CHECK(commute(p, q) == commute(conjugate(t, p), conjugate(t, q)));
        }
        const auto u = tableau_unitary(t);
        for (int k = 0; k < 10; ++k) {
            const PauliString p = oracles::random_pauli(3, rng);
            const oracles::Mat want = u * oracles::dense_pauli(p) * u.adjoint();
            const auto got = oracles::dense_pauli(conjugate(t, p));
            REQUIRE((got - want).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("tableau application to states", "[clifford]") {
    const Statevector psi = Statevector::basis_state(2, 1); // |10>: qubit 0 set
    const Statevector out = apply_to_state(named_gate(Gate::CNOT, 2, 0, 1), psi);
    CHECK(std::abs(out.amps[3]) == Catch::Approx(1.0)); // |11>

    std::mt19937_64 rng(8);
    const Statevector phi = random_state(3, rng);
    const Statevector same = apply_to_state(CliffordTableau::identity(3), phi);
    for (std::size_t i = 0; i < phi.dim(); ++i) CHECK(std::abs(same.amps[i] - phi.amps[i]) < 1e-12);

    for (int trial = 0; trial < 5; ++trial) {
        const CliffordTableau t = random_clifford(3, rng);
        const CliffordTableau tinv = inverse(t);
        const Statevector moved = apply_to_state(t, phi);
        for (int k = 0; k < 50; ++k) {
            const PauliString p = oracles::random_pauli(3, rng, true);
            CHECK(expectation(moved, p) ==
                  Catch::Approx(expectation(phi, conjugate(tinv, p))).margin(1e-10));
        }
    }
}

TEST_CASE("random tableaux are uniform on the single-qubit group", "[clifford]") {
    const auto group = single_qubit_group();
    REQUIRE(group.size() == 24);

    std::mt19937_64 rng(123);
    std::map<uint32_t, int> counts;
    const int samples = 6000;
    for (int i = 0; i < samples; ++i) {
        CliffordTableau t = random_clifford(1, rng);
        REQUIRE(is_valid_tableau(t));
        uint32_t key = static_cast<uint32_t>(t.rows[0].x | t.rows[0].z << 1 | uint64_t(t.rows[0].phase_exp) << 2 |
                                             t.rows[1].x << 4 | t.rows[1].z << 5 | uint64_t(t.rows[1].phase_exp) << 6);
        counts[key]++;
    }
    REQUIRE(counts.size() == 24);
    const double expected = samples / 24.0;
    const double sigma = std::sqrt(samples * (1.0 / 24.0) * (23.0 / 24.0));
    for (const auto& [key, c] : counts) CHECK(std::abs(c - expected) <= 5.0 * sigma + 1.0);

    std::mt19937_64 rng_a(55), rng_b(55);
    CHECK(random_clifford(4, rng_a) == random_clifford(4, rng_b));
}

TEST_CASE("group operations", "[clifford]") {
    const CliffordTableau h = named_gate(Gate::H, 2, 0);
    CHECK(compose(h, h) == CliffordTableau::identity(2));

    const CliffordTableau s = named_gate(Gate::S, 1, 0);
    CHECK(inverse(s) == compose(s, compose(s, s)));

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const CliffordTableau t = random_clifford(3, rng);
        const CliffordTableau ti = inverse(t);
        REQUIRE(is_valid_tableau(ti));
        CHECK(compose(ti, t) == CliffordTableau::identity(3));
        CHECK(compose(t, ti) == CliffordTableau::identity(3));
        const CliffordTableau u = random_clifford(3, rng);
        REQUIRE(is_valid_tableau(compose(t, u)));
    }
}

TEST_CASE("two-qubit group and coset structure", "[clifford][slow]") {
    const auto& group = two_qubit_clifford_group();
    REQUIRE(group.size() == 11520);

    std::size_t z_preserving = 0;
    for (const auto& t : group)
        if (preserves_diagonal_paulis(t)) ++z_preserving;
    CHECK(z_preserving == 768);

    const auto& reps = two_qubit_coset_reps();
    REQUIRE(reps.size() == 15);
    int trivial = 0;
    for (const auto& r : reps)
        if (preserves_diagonal_paulis(r)) ++trivial;
    CHECK(trivial == 1);

    std::vector<CliffordTableau> rep_inverses;
    for (const auto& r : reps) rep_inverses.push_back(inverse(r));
    for (std::size_t i = 0; i < group.size(); i += 7) { // stride keeps runtime modest; still covers 1646 elements
        const auto& g = group[i];
        int left_hits = 0, right_hits = 0;
        for (std::size_t k = 0; k < reps.size(); ++k) {
            if (preserves_diagonal_paulis(compose(rep_inverses[k], g))) ++left_hits;  // g = rep * h
            if (preserves_diagonal_paulis(compose(g, rep_inverses[k]))) ++right_hits; // g = h * rep
        }
        REQUIRE(left_hits == 1);
        REQUIRE(right_hits == 1);
    }
}

TEST_CASE("pauli spectrum transforms as a signed permutation under Clifford", "[clifford]") {
    std::mt19937_64 rng(19);
    for (int n = 2; n <= 3; ++n) {
        const Statevector psi = random_state(n, rng);
        const CliffordTableau t = random_clifford(n, rng);
        const auto before = pauli_spectrum(psi);
        const auto after = pauli_spectrum(apply_to_state(t, psi));
        for (uint64_t idx = 0; idx < before.size(); ++idx) {
            const PauliString image = conjugate(t, pauli_from_index(n, idx));
            const double expected = image.sign() * before[idx];
            CHECK(after[pauli_index(image)] == Catch::Approx(expected).margin(1e-9));
        }
    }
}

TEST_CASE("tableau json round-trip", "[clifford]") {
    std::mt19937_64 rng(99);
    const CliffordTableau t = random_clifford(3, rng);
    const auto j = tableau_to_json(t);
    CHECK(tableau_from_json(j) == t);
}
