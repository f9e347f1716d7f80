#pragma once

#include <stdexcept>
#include <vector>

#include "gpur/threshold.hpp"

namespace gpur {

// Where the depolarizing of each phase gate sits relative to the gate.
//  before_each_gate: noise on both qubits, then the gate, for every bond.
//  table_fit: the first bond is noisy before its gate, every later bond after its gate.
enum class CreationNoise { before_each_gate, table_fit };

inline const char *to_string(CreationNoise c) {
    return c == CreationNoise::before_each_gate ? "before_each_gate" : "table_fit";
}

inline std::vector<bool> noise_after_flags(int n, CreationNoise c) {
    std::vector<bool> after(std::max(n - 1, 0), false);
    if (c == CreationNoise::table_fit)
        for (int k = 1; k < n - 1; k++)
            after[k] = true;
    return after;
}

struct ChainCreation {
    LabelDistribution state;
    double fidelity;
};

// Sequential phase gates on bonds (1,2), (2,3), ... starting from |+>^N. The state is kept as a
// label distribution over the partial chain built so far; Pauli noise is translated into label
// flips with the adjacency current at that moment.
inline ChainCreation create_chain(int n, double p, CreationNoise schedule = CreationNoise::table_fit) {
    if (n < 2)
        throw std::invalid_argument("chain creation needs N >= 2");
    check_unit(p, "gate noise");
    auto after = noise_after_flags(n, schedule);
    // |+>^N is label 0 of the empty graph
    std::vector<double> probs(std::size_t{1} << n, 0.0);
    probs[0] = 1;
    std::vector<Edge> edges;
    auto partial = [&](const std::vector<Edge> &e) {
        Label a = 0;
        for (int k = 0; k < n; k += 2)
            a |= bit(k);
        return TwoColorableGraph(n, e, a);
    };
    auto noisy = [&](const TwoColorableGraph &g, int k) {
        apply_channel_inplace(g, probs, {NoiseChannel::depolarizing, p, k});
        apply_channel_inplace(g, probs, {NoiseChannel::depolarizing, p, k + 1});
    };
    for (int k = 0; k + 1 < n; k++) {
        if (!after[k])
            noisy(partial(edges), k);
        // a CZ maps graph states to graph states with the same label
        edges.push_back({k, k + 1});
        if (after[k])
            noisy(partial(edges), k);
    }
    LabelDistribution s(share(make_chain(n)), std::move(probs));
    double f = s.fidelity();
    return {std::move(s), f};
}

struct LatticeFmax {
    double f_max;
    double p1_first, p2_first, adaptive;
};

inline LatticeFmax lattice_fmax(int n, double p, CreationNoise schedule = CreationNoise::table_fit) {
    auto c = create_chain(n, p, schedule);
    auto r = find_fmax(c.state, p);
    if (!r.f_max)
        throw ProtocolFailure("chain of " + std::to_string(n) + " created at p=" + std::to_string(p) +
                              " cannot be purified");
    return {*r.f_max, r.p1_first, r.p2_first, r.adaptive};
}

struct PumpingRow {
    int round;
    Subprotocol which;
    double fidelity;
    double success_prob;
    bool failed;
};

// rho_k = step(rho_{k-1}, rho_0): the evolving state is kept, the fresh copy is measured.
inline std::vector<PumpingRow> pumping_run(const LabelDistribution &rho0, double p, int rounds) {
    if (rounds < 1)
        throw std::invalid_argument("pumping needs at least one round");
    check_unit(p, "gate noise");
    std::vector<NoiseChannel> noise;
    if (p < 1)
        noise = depolarizing_all(rho0.graph(), p);
    auto fresh = apply_channels(rho0, noise);
    LabelDistribution cur = rho0;
    std::vector<PumpingRow> rows;
    Subprotocol which = Subprotocol::P1;
    for (int k = 1; k <= rounds; k++) {
        try {
            auto r = combine_copies(apply_channels(cur, noise), fresh, which);
            cur = std::move(r.state);
            rows.push_back({k, which, cur.fidelity(), r.success_prob, false});
        } catch (const ProtocolFailure &) {
            rows.push_back({k, which, cur.fidelity(), 0, true});
            break;
        }
        which = other(which);
    }
    return rows;
}

inline std::vector<PumpingRow> pumping_run(int n, double p, int rounds,
                                           CreationNoise schedule = CreationNoise::table_fit) {
    return pumping_run(create_chain(n, p, schedule).state, p, rounds);
}

}  // namespace gpur
