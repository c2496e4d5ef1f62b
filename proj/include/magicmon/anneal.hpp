#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "magicmon/clifford.hpp"
#include "magicmon/entropy.hpp"
#include "magicmon/errors.hpp"
#include "magicmon/statevec.hpp"

namespace magicmon {

inline std::vector<double> default_temperature_grid(int points = 16, double t_high = 1e-1, double t_low = 1e-4) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid.push_back(t_high * std::pow(t_low / t_high, points == 1 ? 0.0 : double(i) / (points - 1)));
    return grid;
}

struct AnnealConfig {
    double alpha = 1.0;
    std::vector<double> temperatures = default_temperature_grid();
    int sweeps_per_temperature = 2;
    uint64_t seed = 0;
    std::optional<CliffordTableau> initial_tableau;
};

struct AnnealResult {
    double best_value = 0.0;
    CliffordTableau best_tableau; // participation_entropy(best_tableau^dag psi) = best_value
    std::vector<double> trace;    // running best after each sweep
    uint64_t accepted_moves = 0;

    nlohmann::json to_json() const {
        return {{"best_value_nats", best_value},
                {"best_value_bits", nats_to_bits(best_value)},
                {"best_tableau", tableau_to_json(best_tableau)},
                {"accepted_moves", accepted_moves},
                {"trace", trace}};
    }
};

// Heat-bath minimization of the participation entropy over nearest-
// neighbor two-qubit Clifford moves: for each pair (j, j+1) the 15
// coset representatives are evaluated on the current frame and one is
// drawn with probability proportional to exp(-dS/T). The trivial coset
// is among the candidates, so the chain can stay put.
inline AnnealResult anneal_minimize(const Statevector& state, const AnnealConfig& config) {
    if (state.n < 2 || state.n > 14) throw CapError("anneal_minimize: qubit count out of range");
    if (config.temperatures.empty()) throw std::domain_error("anneal_minimize: empty temperature grid");
    for (std::size_t i = 0; i < config.temperatures.size(); ++i) {
        if (config.temperatures[i] <= 0.0) throw std::domain_error("anneal_minimize: temperatures must be positive");
        if (i > 0 && config.temperatures[i] >= config.temperatures[i - 1])
            throw std::domain_error("anneal_minimize: temperatures must be strictly descending");
    }

    const auto& reps = two_qubit_coset_reps();
    std::vector<std::vector<GateOp>> rep_circuits;
    std::size_t trivial_rep = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        rep_circuits.push_back(synthesize_circuit(reps[i]));
        if (preserves_diagonal_paulis(reps[i])) trivial_rep = i;
    }

    CliffordTableau ref = config.initial_tableau ? *config.initial_tableau : CliffordTableau::identity(state.n);
    if (ref.n != state.n) throw DimensionError("anneal_minimize: initial tableau has wrong qubit count");
    Statevector frame = apply_to_state(ref, state);

    AnnealResult result;
    result.best_value = participation_entropy(frame, config.alpha);
    CliffordTableau best_ref = ref;

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> values(reps.size()), weights(reps.size());
    std::vector<Statevector> candidates(reps.size());

    for (double temperature : config.temperatures) {
        for (int sweep = 0; sweep < config.sweeps_per_temperature; ++sweep) {
            for (int pair = 0; pair + 1 < state.n; ++pair) {
                double lowest = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < reps.size(); ++i) {
                    candidates[i] = apply_circuit(frame, rep_circuits[i], pair);
                    values[i] = participation_entropy(candidates[i], config.alpha);
                    lowest = std::min(lowest, values[i]);
                }
                double total = 0.0;
                for (std::size_t i = 0; i < reps.size(); ++i) {
                    weights[i] = std::exp(-(values[i] - lowest) / temperature);
                    total += weights[i];
                }
                const double draw = unit(rng) * total;
                double acc = 0.0;
                std::size_t pick = reps.size() - 1;
                for (std::size_t i = 0; i < reps.size(); ++i) {
                    acc += weights[i];
                    if (draw < acc) { pick = i; break; }
                }
                frame = std::move(candidates[pick]);
                ref = compose(embed_two_qubit(reps[pick], state.n, pair), ref);
                if (pick != trivial_rep) ++result.accepted_moves;
                if (values[pick] < result.best_value) {
                    result.best_value = values[pick];
                    best_ref = ref;
                }
            }
            result.trace.push_back(result.best_value);
        }
    }
    result.best_tableau = inverse(best_ref);
    return result;
}

// Reference frame that maps the h -> 0 Ising ground state to a product
// state: H on qubit 0 after a descending chain of CNOTs.
inline CliffordTableau ising_initial_guess(int n) {
    if (n < 2) throw std::domain_error("ising_initial_guess: need at least 2 qubits");
    CliffordTableau t = CliffordTableau::identity(n);
    for (int j = n - 2; j >= 0; --j) t = compose(named_gate(Gate::CNOT, n, j, j + 1), t);
    return compose(named_gate(Gate::H, n, 0), t);
}

inline void anneal_trace_csv(const AnnealResult& result, const AnnealConfig& config, std::ostream& out) {
    out << "sweep,temperature,best_value_nats\n";
    std::size_t idx = 0;
    for (double temperature : config.temperatures)
        for (int sweep = 0; sweep < config.sweeps_per_temperature; ++sweep) {
            if (idx >= result.trace.size()) return;
            out << idx << "," << temperature << "," << result.trace[idx] << "\n";
            ++idx;
        }
}

} // namespace magicmon
