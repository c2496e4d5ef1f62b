#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "magicmon/bits.hpp"
#include "magicmon/errors.hpp"
#include "magicmon/f2linalg.hpp"
#include "magicmon/pauli.hpp"
#include "magicmon/statevec.hpp"

namespace magicmon {

enum class Gate { H, S, Sdg, X, Z, CNOT, CZ, SWAP };

struct GateOp {
    Gate g;
    int a = 0;
    int b = -1; // second qubit for two-qubit gates
};

// Clifford unitary modulo global phase, stored as the signed Hermitian
// images of the 2N Pauli generators: row j is U X_j U^dag, row N+j is
// U Z_j U^dag (phase_exp 0 or 2 encodes the sign).
struct CliffordTableau {
    int n = 0;
    std::vector<PauliString> rows;

    CliffordTableau() = default;

    static CliffordTableau identity(int n_qubits) {
        CliffordTableau t;
        t.n = n_qubits;
        t.rows.reserve(2 * static_cast<std::size_t>(n_qubits));
        for (int j = 0; j < n_qubits; ++j) t.rows.push_back(PauliString(n_qubits, uint64_t{1} << j, 0, 0));
        for (int j = 0; j < n_qubits; ++j) t.rows.push_back(PauliString(n_qubits, 0, uint64_t{1} << j, 0));
        return t;
    }

    const PauliString& image_of_x(int j) const { return rows[static_cast<std::size_t>(j)]; }
    const PauliString& image_of_z(int j) const { return rows[static_cast<std::size_t>(n + j)]; }

    bool operator==(const CliffordTableau& o) const { return n == o.n && rows == o.rows; }
};

inline PauliString conjugate(const CliffordTableau& t, const PauliString& p) {
    if (t.n != p.n) throw DimensionError("conjugate: qubit counts differ");
    PauliString acc(p.n, 0, 0, p.phase_exp + std::popcount(p.x & p.z));
    for (int j = 0; j < p.n; ++j) {
        if ((p.x >> j) & 1) acc = multiply(acc, t.image_of_x(j));
        if ((p.z >> j) & 1) acc = multiply(acc, t.image_of_z(j));
    }
    return acc;
}

// a after b: (a o b)(P) = a(b(P)).
inline CliffordTableau compose(const CliffordTableau& a, const CliffordTableau& b) {
    if (a.n != b.n) throw DimensionError("compose: qubit counts differ");
    CliffordTableau out;
    out.n = a.n;
    out.rows.reserve(b.rows.size());
    for (const PauliString& r : b.rows) out.rows.push_back(conjugate(a, r));
    return out;
}

// Commutation relations of the generator images match the canonical ones
// and every image is Hermitian.
inline bool is_valid_tableau(const CliffordTableau& t) {
    const int n = t.n;
    if (static_cast<int>(t.rows.size()) != 2 * n) return false;
    for (const PauliString& r : t.rows)
        if (!r.is_hermitian()) return false;
    for (int i = 0; i < 2 * n; ++i)
        for (int j = i + 1; j < 2 * n; ++j) {
            const int want = (j == i + n) ? 1 : 0;
            if (symplectic_product(t.rows[static_cast<std::size_t>(i)], t.rows[static_cast<std::size_t>(j)]) != want)
                return false;
        }
    return true;
}

inline CliffordTableau inverse(const CliffordTableau& t) {
    const int n = t.n;
    f2::BitMatrix m(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r) {
        const PauliString& p = t.rows[static_cast<std::size_t>(r)];
        m.row_bits[static_cast<std::size_t>(r)] = p.x | (p.z << n);
    }
    const f2::BitMatrix minv = f2::inverse(m);
    CliffordTableau raw;
    raw.n = n;
    const uint64_t mask = (uint64_t{1} << n) - 1;
    for (int r = 0; r < 2 * n; ++r) {
        const uint64_t bits = minv.row(r);
        raw.rows.push_back(PauliString(n, bits & mask, (bits >> n) & mask, 0));
    }
    // raw has the correct symplectic action; fix the signs so that
    // raw o t differs from the identity only by a Pauli-frame tableau d,
    // and return d o raw which is the exact inverse.
    const CliffordTableau d = compose(raw, t);
    return compose(d, raw);
}

inline CliffordTableau named_gate(Gate g, int n, int a, int b = -1) {
    CliffordTableau t = CliffordTableau::identity(n);
    const uint64_t ba = uint64_t{1} << a;
    auto& xr = t.rows[static_cast<std::size_t>(a)];
    auto& zr = t.rows[static_cast<std::size_t>(n + a)];
    switch (g) {
    case Gate::H:
        xr = PauliString(n, 0, ba, 0);
        zr = PauliString(n, ba, 0, 0);
        break;
    case Gate::S:
        xr = PauliString(n, ba, ba, 0); // X -> Y
        break;
    case Gate::Sdg:
        xr = PauliString(n, ba, ba, 2); // X -> -Y
        break;
    case Gate::X:
        zr = PauliString(n, 0, ba, 2);
        break;
    case Gate::Z:
        xr = PauliString(n, ba, 0, 2);
        break;
    case Gate::CNOT: {
        if (b < 0) throw DimensionError("named_gate: CNOT needs two qubits");
        const uint64_t bb = uint64_t{1} << b;
        t.rows[static_cast<std::size_t>(a)] = PauliString(n, ba | bb, 0, 0);     // X_c -> X_c X_t
        t.rows[static_cast<std::size_t>(n + b)] = PauliString(n, 0, ba | bb, 0); // Z_t -> Z_c Z_t
        break;
    }
    case Gate::CZ: {
        if (b < 0) throw DimensionError("named_gate: CZ needs two qubits");
        const uint64_t bb = uint64_t{1} << b;
        t.rows[static_cast<std::size_t>(a)] = PauliString(n, ba, bb, 0); // X_a -> X_a Z_b
        t.rows[static_cast<std::size_t>(b)] = PauliString(n, bb, ba, 0); // X_b -> Z_a X_b
        break;
    }
    case Gate::SWAP: {
        if (b < 0) throw DimensionError("named_gate: SWAP needs two qubits");
        const uint64_t bb = uint64_t{1} << b;
        t.rows[static_cast<std::size_t>(a)] = PauliString(n, bb, 0, 0);
        t.rows[static_cast<std::size_t>(b)] = PauliString(n, ba, 0, 0);
        t.rows[static_cast<std::size_t>(n + a)] = PauliString(n, 0, bb, 0);
        t.rows[static_cast<std::size_t>(n + b)] = PauliString(n, 0, ba, 0);
        break;
    }
    }
    return t;
}

inline CliffordTableau named_gate(const std::string& name, int n, int a, int b = -1) {
    static const std::map<std::string, Gate> names = {
        {"H", Gate::H}, {"S", Gate::S}, {"SDG", Gate::Sdg}, {"X", Gate::X},
        {"Z", Gate::Z}, {"CNOT", Gate::CNOT}, {"CZ", Gate::CZ}, {"SWAP", Gate::SWAP}};
    auto it = names.find(name);
    if (it == names.end()) throw ParseError("named_gate: unknown gate " + name);
    return named_gate(it->second, n, a, b);
}

namespace detail {

// Normalizes the cell of `row` at qubit q to Z (x=0, z=1) by emitting
// S/H gates, conjugating all rows accordingly.
template <typename EmitFn>
void normalize_cell_to_z(std::vector<PauliString>& rows, int q, int target_row, EmitFn&& emit) {
    bool xb = (rows[static_cast<std::size_t>(target_row)].x >> q) & 1;
    bool zb = (rows[static_cast<std::size_t>(target_row)].z >> q) & 1;
    if (xb && zb) {
        emit(GateOp{Gate::S, q, -1});
        xb = (rows[static_cast<std::size_t>(target_row)].x >> q) & 1;
        zb = (rows[static_cast<std::size_t>(target_row)].z >> q) & 1;
    }
    if (xb && !zb) emit(GateOp{Gate::H, q, -1});
}

} // namespace detail

// Gate sequence realizing the tableau's unitary (up to a global phase),
// in application order. Standard sweep: for each qubit, reduce the Z
// image, then the X image using gates that stabilize the cleared part.
inline std::vector<GateOp> synthesize_circuit(const CliffordTableau& t) {
    const int n = t.n;
    std::vector<PauliString> rows = t.rows;
    std::vector<GateOp> applied;

    auto emit = [&](GateOp op) {
        const CliffordTableau g = named_gate(op.g, n, op.a, op.b);
        for (PauliString& r : rows) r = conjugate(g, r);
        applied.push_back(op);
    };

    for (int j = 0; j < n; ++j) {
        const auto zrow = [&]() -> PauliString& { return rows[static_cast<std::size_t>(n + j)]; };
        const auto xrow = [&]() -> PauliString& { return rows[static_cast<std::size_t>(j)]; };

        // Bring the Z_j image to +-Z_j.
        if (!((zrow().x >> j) & 1) && !((zrow().z >> j) & 1)) {
            int l = -1;
            for (int q = j + 1; q < n; ++q)
                if (((zrow().x >> q) & 1) || ((zrow().z >> q) & 1)) { l = q; break; }
            if (l < 0) throw std::logic_error("synthesize_circuit: invalid tableau");
            detail::normalize_cell_to_z(rows, l, n + j, emit);
            emit(GateOp{Gate::SWAP, j, l});
        } else {
            detail::normalize_cell_to_z(rows, j, n + j, emit);
        }
        for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            if (!((zrow().x >> l) & 1) && !((zrow().z >> l) & 1)) continue;
            detail::normalize_cell_to_z(rows, l, n + j, emit);
            emit(GateOp{Gate::CNOT, l, j});
        }

        // Bring the X_j image to +-X_j; it already anticommutes with Z_j.
        for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            if ((xrow().x >> l) & 1) emit(GateOp{Gate::CNOT, j, l});
        }
        if ((xrow().z >> j) & 1) emit(GateOp{Gate::S, j, -1});
        for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            if ((xrow().z >> l) & 1) emit(GateOp{Gate::CZ, j, l});
        }
    }
    for (int j = 0; j < n; ++j) {
        if (rows[static_cast<std::size_t>(j)].phase_exp == 2) emit(GateOp{Gate::Z, j, -1});
        if (rows[static_cast<std::size_t>(n + j)].phase_exp == 2) emit(GateOp{Gate::X, j, -1});
    }
    for (int j = 0; j < 2 * n; ++j)
        if (!(rows[static_cast<std::size_t>(j)] == CliffordTableau::identity(n).rows[static_cast<std::size_t>(j)]))
            throw std::logic_error("synthesize_circuit: reduction failed");

    // rows were reduced by conjugating with g_1 ... g_m, so the tableau
    // equals g_1^-1 ... g_m^-1 applied right to left: emit adjoints in
    // reverse application order.
    std::vector<GateOp> circuit;
    circuit.reserve(applied.size());
    for (auto it = applied.rbegin(); it != applied.rend(); ++it) {
        GateOp op = *it;
        if (op.g == Gate::S) op.g = Gate::Sdg;
        else if (op.g == Gate::Sdg) op.g = Gate::S;
        circuit.push_back(op);
    }
    return circuit;
}

inline Statevector apply_gate_dense(const Statevector& state, const GateOp& op, int offset = 0) {
    static constexpr double r = 0.70710678118654752440;
    static const std::array<cplx, 4> kH{cplx{r, 0}, cplx{r, 0}, cplx{r, 0}, cplx{-r, 0}};
    static const std::array<cplx, 4> kS{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, 1}};
    static const std::array<cplx, 4> kSdg{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, -1}};
    static const std::array<cplx, 4> kX{cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
    static const std::array<cplx, 4> kZ{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
    // gate-local index: first qubit is the low bit; CNOT control = first
    static const std::array<cplx, 16> kCnot{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, 0},
                                            cplx{0, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0},
                                            cplx{0, 0}, cplx{0, 0}, cplx{1, 0}, cplx{0, 0},
                                            cplx{0, 0}, cplx{1, 0}, cplx{0, 0}, cplx{0, 0}};
    static const std::array<cplx, 16> kCz{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, 0},
                                          cplx{0, 0}, cplx{1, 0}, cplx{0, 0}, cplx{0, 0},
                                          cplx{0, 0}, cplx{0, 0}, cplx{1, 0}, cplx{0, 0},
                                          cplx{0, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
    static const std::array<cplx, 16> kSwap{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, 0},
                                            cplx{0, 0}, cplx{0, 0}, cplx{1, 0}, cplx{0, 0},
                                            cplx{0, 0}, cplx{1, 0}, cplx{0, 0}, cplx{0, 0},
                                            cplx{0, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
    const int a = op.a + offset;
    const int b = op.b < 0 ? -1 : op.b + offset;
    switch (op.g) {
    case Gate::H: return apply_gate(state, kH, a);
    case Gate::S: return apply_gate(state, kS, a);
    case Gate::Sdg: return apply_gate(state, kSdg, a);
    case Gate::X: return apply_gate(state, kX, a);
    case Gate::Z: return apply_gate(state, kZ, a);
    case Gate::CNOT: return apply_gate(state, kCnot, a, b);
    case Gate::CZ: return apply_gate(state, kCz, a, b);
    case Gate::SWAP: return apply_gate(state, kSwap, a, b);
    }
    throw std::logic_error("apply_gate_dense: unreachable");
}

inline Statevector apply_circuit(Statevector state, std::span<const GateOp> ops, int offset = 0) {
    for (const GateOp& op : ops) state = apply_gate_dense(state, op, offset);
    return state;
}

inline Statevector apply_to_state(const CliffordTableau& t, const Statevector& state) {
    if (t.n != state.n) throw DimensionError("apply_to_state: qubit counts differ");
    const auto circuit = synthesize_circuit(t);
    return apply_circuit(state, circuit);
}

// --- uniform random tableau ------------------------------------------

namespace detail {

inline int symp_packed(uint64_t u, uint64_t v, int n) {
    const uint64_t mask = (uint64_t{1} << n) - 1;
    return parity64((u & mask) & (v >> n)) ^ parity64((u >> n) & (v & mask));
}

// Basis of the symplectic complement of the span of `chosen`.
inline std::vector<uint64_t> symplectic_complement_basis(const std::vector<uint64_t>& chosen, int n) {
    std::vector<uint64_t> constraints;
    const uint64_t mask = (uint64_t{1} << n) - 1;
    for (uint64_t w : chosen) constraints.push_back(((w & mask) << n) | ((w >> n) & mask));
    f2::rref_rows(constraints, 2 * n);
    while (!constraints.empty() && constraints.back() == 0) constraints.pop_back();
    std::vector<int> pivot_of_row;
    std::vector<bool> is_pivot(static_cast<std::size_t>(2 * n), false);
    for (uint64_t row : constraints) {
        const int c = std::countr_zero(row);
        pivot_of_row.push_back(c);
        is_pivot[static_cast<std::size_t>(c)] = true;
    }
    std::vector<uint64_t> basis;
    for (int f = 0; f < 2 * n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        uint64_t v = uint64_t{1} << f;
        for (std::size_t r = 0; r < constraints.size(); ++r)
            if ((constraints[r] >> f) & 1) v |= uint64_t{1} << pivot_of_row[r];
        basis.push_back(v);
    }
    return basis;
}

} // namespace detail

// Uniform sample over the tableau group (uniform symplectic part times
// uniform signs), via successive hyperbolic pairs.
inline CliffordTableau random_clifford(int n, std::mt19937_64& rng) {
    std::vector<uint64_t> chosen; // a_0, b_0, a_1, b_1, ...
    std::uniform_int_distribution<uint64_t> coins;
    for (int j = 0; j < n; ++j) {
        const auto basis = detail::symplectic_complement_basis(chosen, n);
        auto sample_in_span = [&]() {
            uint64_t v = 0;
            const uint64_t c = coins(rng);
            for (std::size_t i = 0; i < basis.size(); ++i)
                if ((c >> i) & 1) v ^= basis[i];
            return v;
        };
        uint64_t a = 0;
        do { a = sample_in_span(); } while (a == 0);
        uint64_t b = 0;
        do { b = sample_in_span(); } while (detail::symp_packed(a, b, n) != 1);
        chosen.push_back(a);
        chosen.push_back(b);
    }
    CliffordTableau t;
    t.n = n;
    t.rows.resize(2 * static_cast<std::size_t>(n));
    const uint64_t mask = (uint64_t{1} << n) - 1;
    const uint64_t signs = coins(rng);
    for (int j = 0; j < n; ++j) {
        const uint64_t a = chosen[static_cast<std::size_t>(2 * j)];
        const uint64_t b = chosen[static_cast<std::size_t>(2 * j) + 1];
        t.rows[static_cast<std::size_t>(j)] = PauliString(n, a & mask, (a >> n) & mask, ((signs >> (2 * j)) & 1) ? 2 : 0);
        t.rows[static_cast<std::size_t>(n + j)] = PauliString(n, b & mask, (b >> n) & mask, ((signs >> (2 * j + 1)) & 1) ? 2 : 0);
    }
    return t;
}

// --- two-qubit group and coset representatives -----------------------

inline uint32_t pack_two_qubit_tableau(const CliffordTableau& t) {
    uint32_t key = 0;
    for (int r = 0; r < 4; ++r) {
        const PauliString& p = t.rows[static_cast<std::size_t>(r)];
        const uint32_t cell = static_cast<uint32_t>(p.x) | (static_cast<uint32_t>(p.z) << 2) |
                              ((p.phase_exp == 2 ? 1u : 0u) << 4);
        key |= cell << (5 * r);
    }
    return key;
}

// True when the tableau maps Z-type strings to Z-type strings (up to
// sign); such gates permute the computational basis up to phases.
inline bool preserves_diagonal_paulis(const CliffordTableau& t) {
    for (int j = 0; j < t.n; ++j)
        if (t.image_of_z(j).x != 0) return false;
    return true;
}

// The full two-qubit tableau group, generated once and sorted by packed
// key; 11520 elements.
inline const std::vector<CliffordTableau>& two_qubit_clifford_group() {
    static const std::vector<CliffordTableau> group = [] {
        std::vector<CliffordTableau> gens;
        gens.push_back(named_gate(Gate::H, 2, 0));
        gens.push_back(named_gate(Gate::H, 2, 1));
        gens.push_back(named_gate(Gate::S, 2, 0));
        gens.push_back(named_gate(Gate::S, 2, 1));
        gens.push_back(named_gate(Gate::CNOT, 2, 0, 1));
        gens.push_back(named_gate(Gate::CNOT, 2, 1, 0));
        std::map<uint32_t, CliffordTableau> seen;
        std::vector<CliffordTableau> frontier{CliffordTableau::identity(2)};
        seen[pack_two_qubit_tableau(frontier[0])] = frontier[0];
        while (!frontier.empty()) {
            std::vector<CliffordTableau> next;
            for (const CliffordTableau& t : frontier)
                for (const CliffordTableau& g : gens) {
                    CliffordTableau c = compose(g, t);
                    const uint32_t key = pack_two_qubit_tableau(c);
                    if (!seen.count(key)) {
                        seen[key] = c;
                        next.push_back(std::move(c));
                    }
                }
            frontier = std::move(next);
        }
        std::vector<CliffordTableau> out;
        out.reserve(seen.size());
        for (auto& [key, t] : seen) out.push_back(std::move(t));
        return out;
    }();
    return group;
}

namespace detail {

// Canonical key of the span of the two Z images of `t` (subspace of
// F2^4), used to label cosets of the diagonal-preserving subgroup.
inline uint64_t z_span_key(const CliffordTableau& t) {
    f2::BitMatrix m(4, 2);
    for (int j = 0; j < 2; ++j) {
        const PauliString& p = t.image_of_z(j);
        const uint64_t packed = p.x | (p.z << 2);
        for (int r = 0; r < 4; ++r)
            if ((packed >> r) & 1) m.set(r, j, true);
    }
    const f2::BitMatrix canon = f2::column_space_canonical(m);
    uint64_t key = 0;
    for (int r = 0; r < 4; ++r) key |= canon.row(static_cast<int>(r)) << (2 * r);
    return key;
}

} // namespace detail

// 15 representatives, one per coset C_z g of the diagonal-preserving
// subgroup C_z in the two-qubit Clifford group. The set is chosen as a
// common transversal, so it also decomposes the group as disjoint
// left cosets rep C_z. Cosets C_z g are exactly the classes with equal
// participation entropy of g |phi> for every state.
inline const std::vector<CliffordTableau>& two_qubit_coset_reps() {
    static const std::vector<CliffordTableau> reps = [] {
        const auto& group = two_qubit_clifford_group();
        // Right-coset label: preimage of the Z span under the tableau.
        // Left-coset label: image of the Z span.
        std::map<uint64_t, std::vector<std::size_t>> classes;
        std::vector<uint64_t> left_label(group.size());
        for (std::size_t i = 0; i < group.size(); ++i) {
            const CliffordTableau inv = inverse(group[i]);
            classes[detail::z_span_key(inv)].push_back(i);
            left_label[i] = detail::z_span_key(group[i]);
        }
        if (classes.size() != 15) throw std::logic_error("two_qubit_coset_reps: expected 15 classes");
        // Pick one element per class with all left labels distinct
        // (Kuhn matching; candidates are already in packed-key order, so
        // the outcome is deterministic and lexicographically greedy).
        std::vector<uint64_t> class_keys;
        for (const auto& [key, members] : classes) class_keys.push_back(key);
        std::map<uint64_t, std::size_t> left_owner; // left label -> class index
        std::vector<std::size_t> pick(class_keys.size(), SIZE_MAX);
        std::function<bool(std::size_t, std::map<uint64_t, bool>&)> try_assign =
            [&](std::size_t ci, std::map<uint64_t, bool>& visited) -> bool {
            for (std::size_t member : classes[class_keys[ci]]) {
                const uint64_t ll = left_label[member];
                if (visited.count(ll)) continue;
                visited[ll] = true;
                auto owner = left_owner.find(ll);
                if (owner == left_owner.end() || try_assign(owner->second, visited)) {
                    left_owner[ll] = ci;
                    pick[ci] = member;
                    return true;
                }
            }
            return false;
        };
        for (std::size_t ci = 0; ci < class_keys.size(); ++ci) {
            std::map<uint64_t, bool> visited;
            if (!try_assign(ci, visited)) throw std::logic_error("two_qubit_coset_reps: no common transversal");
        }
        std::vector<CliffordTableau> out;
        out.reserve(15);
        for (std::size_t ci = 0; ci < class_keys.size(); ++ci) out.push_back(group[pick[ci]]);
        return out;
    }();
    return reps;
}

// Embeds a two-qubit tableau on qubits (q, q+1) of an n-qubit register.
inline CliffordTableau embed_two_qubit(const CliffordTableau& t2, int n, int q) {
    if (t2.n != 2 || q < 0 || q + 1 >= n) throw DimensionError("embed_two_qubit: bad placement");
    CliffordTableau t = CliffordTableau::identity(n);
    auto lift = [&](const PauliString& p) {
        uint64_t x = 0, z = 0;
        for (int j = 0; j < 2; ++j) {
            if ((p.x >> j) & 1) x |= uint64_t{1} << (q + j);
            if ((p.z >> j) & 1) z |= uint64_t{1} << (q + j);
        }
        return PauliString(n, x, z, p.phase_exp);
    };
    t.rows[static_cast<std::size_t>(q)] = lift(t2.image_of_x(0));
    t.rows[static_cast<std::size_t>(q + 1)] = lift(t2.image_of_x(1));
    t.rows[static_cast<std::size_t>(n + q)] = lift(t2.image_of_z(0));
    t.rows[static_cast<std::size_t>(n + q + 1)] = lift(t2.image_of_z(1));
    return t;
}

// --- serialization ----------------------------------------------------

inline nlohmann::json tableau_to_json(const CliffordTableau& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const PauliString& p : t.rows)
        rows.push_back({{"x", bits_to_string(p.x, p.n)},
                        {"z", bits_to_string(p.z, p.n)},
                        {"sign", p.phase_exp == 2 ? 1 : 0}});
    return {{"n", t.n}, {"rows", rows}};
}

inline CliffordTableau tableau_from_json(const nlohmann::json& j) {
    CliffordTableau t;
    t.n = j.at("n").get<int>();
    for (const auto& row : j.at("rows"))
        t.rows.push_back(PauliString(t.n, string_to_bits(row.at("x").get<std::string>()),
                                     string_to_bits(row.at("z").get<std::string>()),
                                     row.at("sign").get<int>() ? 2 : 0));
    if (!is_valid_tableau(t)) throw ParseError("tableau_from_json: not a valid tableau");
    return t;
}

} // namespace magicmon
