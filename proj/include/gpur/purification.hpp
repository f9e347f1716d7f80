#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpur/label_state.hpp"
#include "gpur/xor_transform.hpp"

namespace gpur {

enum class Subprotocol { P1, P2 };

inline const char *to_string(Subprotocol w) { return w == Subprotocol::P1 ? "P1" : "P2"; }
inline Subprotocol other(Subprotocol w) { return w == Subprotocol::P1 ? Subprotocol::P2 : Subprotocol::P1; }

// Raised when post-selection keeps nothing.
struct ProtocolFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepResult {
    LabelDistribution state;
    double success_prob;
};

// All submasks of `mask` in the order of their compressed index.
inline std::vector<Label> deposit_table(Label mask) {
    std::vector<Label> out;
    out.reserve(std::size_t{1} << std::popcount(mask));
    Label s = 0;
    do {
        out.push_back(s);
        s = (s - mask) & mask;
    } while (s);
    return out;
}

// Post-selected two-copy step on (possibly different) copies; copy 1 is kept.
// P1 keeps when the A-labels agree and XORs copy 2's B-bits into copy 1; P2 swaps A and B.
inline StepResult combine_copies(const LabelDistribution &c1, const LabelDistribution &c2, Subprotocol which,
                                 bool use_transform = true) {
    const auto &g = c1.graph();
    if (c2.probs().size() != c1.probs().size())
        throw std::invalid_argument("copies live on different graphs");
    Label check = which == Subprotocol::P1 ? g.a_mask() : g.b_mask();
    Label mix = which == Subprotocol::P1 ? g.b_mask() : g.a_mask();
    auto slices = deposit_table(check);
    auto inner = deposit_table(mix);
    std::size_t m = inner.size();
    std::vector<double> out(c1.probs().size(), 0.0);
    std::vector<double> a(m), b(m), r(m);
    double kept = 0;
    for (Label s : slices) {
        double ma = 0, mb = 0;
        for (std::size_t i = 0; i < m; i++) {
            a[i] = c1[s | inner[i]];
            b[i] = c2[s | inner[i]];
            ma += a[i];
            mb += b[i];
        }
        if (ma == 0 || mb == 0)
            continue;
        kept += ma * mb;
        if (use_transform)
            xor_convolve(a, b, r);
        else
            xor_convolve_direct(a, b, r);
        for (std::size_t i = 0; i < m; i++)
            out[s | inner[i]] = r[i];
    }
    if (!(kept > 0))
        throw ProtocolFailure(std::string(to_string(which)) + ": post-selection kept zero weight");
    LabelDistribution st(c1.graph_ptr(), std::move(out));
    renormalize(st);
    return {std::move(st), kept};
}

inline StepResult apply_subprotocol(const LabelDistribution &s, Subprotocol which,
                                    const std::vector<NoiseChannel> &per_copy_noise) {
    LabelDistribution noisy = apply_channels(s, per_copy_noise);
    return combine_copies(noisy, noisy, which);
}

// Gate noise p: depolarizing(p) on every qubit of each copy before the local CNOTs.
inline StepResult apply_subprotocol(const LabelDistribution &s, Subprotocol which, double p = 1) {
    check_unit(p, "gate noise");
    if (p == 1)
        return combine_copies(s, s, which);
    return apply_subprotocol(s, which, depolarizing_all(s.graph(), p));
}

struct BinaryMapResult {
    std::vector<double> coeffs;
    double k;
};

inline BinaryMapResult binary_p1_map(const std::vector<double> &c) {
    double k = 0;
    for (double v : c) {
        if (v < 0)
            throw std::invalid_argument("negative coefficient");
        k += v * v;
    }
    if (!(k > 0))
        throw std::invalid_argument("all-zero coefficients");
    BinaryMapResult r{c, k};
    for (auto &v : r.coeffs)
        v = v * v / k;
    return r;
}

// ---- sequencing ----

struct Strategy {
    enum Kind { alternate, fixed, adaptive_greedy } kind = alternate;
    Subprotocol start = Subprotocol::P1;
    std::vector<Subprotocol> sequence;

    static Strategy make_alternate(Subprotocol s = Subprotocol::P1) { return {alternate, s, {}}; }
    static Strategy make_fixed(std::vector<Subprotocol> seq) {
        if (seq.empty())
            throw std::invalid_argument("fixed strategy needs a nonempty sequence");
        return {fixed, seq.front(), std::move(seq)};
    }
    static Strategy make_adaptive() { return {adaptive_greedy, Subprotocol::P1, {}}; }

    int period() const { return kind == fixed ? int(sequence.size()) : 2; }
};

// "alternate:P1", "alternate:P2", "adaptive", "fixed:P1P1P2"
inline Strategy parse_strategy(const std::string &s) {
    auto tok = [&](const std::string &t) {
        if (t == "P1")
            return Subprotocol::P1;
        if (t == "P2")
            return Subprotocol::P2;
        throw std::invalid_argument("bad protocol token '" + t + "'");
    };
    if (s == "adaptive")
        return Strategy::make_adaptive();
    if (s == "alternate")
        return Strategy::make_alternate();
    if (s.rfind("alternate:", 0) == 0)
        return Strategy::make_alternate(tok(s.substr(10)));
    if (s.rfind("fixed:", 0) == 0) {
        std::string body = s.substr(6);
        std::vector<Subprotocol> seq;
        if (body.size() % 2)
            throw std::invalid_argument("bad fixed sequence '" + body + "'");
        for (std::size_t i = 0; i < body.size(); i += 2)
            seq.push_back(tok(body.substr(i, 2)));
        return Strategy::make_fixed(seq);
    }
    throw std::invalid_argument("unknown strategy '" + s + "' (alternate[:P1|P2], adaptive, fixed:P1P2...)");
}

inline std::string format_strategy(const Strategy &s) {
    switch (s.kind) {
    case Strategy::alternate:
        return std::string("alternate:") + to_string(s.start);
    case Strategy::adaptive_greedy:
        return "adaptive";
    case Strategy::fixed: {
        std::string r = "fixed:";
        for (auto w : s.sequence)
            r += to_string(w);
        return r;
    }
    }
    return "";
}

struct TraceRow {
    int step;
    Subprotocol which;
    double fidelity;
    double success_prob;
    double cumulative_cost;
};

enum class Outcome { converged, unpurifiable, step_limit };

inline const char *to_string(Outcome o) {
    switch (o) {
    case Outcome::converged:
        return "converged";
    case Outcome::unpurifiable:
        return "unpurifiable";
    case Outcome::step_limit:
        return "step_limit";
    }
    return "";
}

struct SequenceOptions {
    int max_steps = 500;
    double fixpoint_tol = 1e-10;
};

struct SequenceTrace {
    double initial_fidelity;
    std::vector<TraceRow> rows;
    Outcome outcome;
    LabelDistribution final_state;
    double cycle_max_fidelity;  // max fidelity over the final period of the sequence

    double final_fidelity() const { return rows.empty() ? initial_fidelity : rows.back().fidelity; }
};

// Label 0 clearly outweighs every other label.
inline bool target_dominant(const LabelDistribution &s, double margin = 1e-6) {
    double best = 0;
    for (Label mu = 1; mu < s.probs().size(); mu++)
        best = std::max(best, s[mu]);
    return s[0] > best + margin;
}

inline SequenceTrace run_sequence(const LabelDistribution &start, const Strategy &strategy,
                                  const std::vector<NoiseChannel> &noise, SequenceOptions opt = {}) {
    if (opt.max_steps < 1)
        throw std::invalid_argument("max_steps must be >= 1");
    SequenceTrace tr{start.fidelity(), {}, Outcome::step_limit, start, start.fidelity()};
    std::vector<double> fid{start.fidelity()};
    double cost = 1;
    bool settled = false;
    int lag = strategy.period();
    for (int step = 1; step <= opt.max_steps; step++) {
        Subprotocol which;
        std::optional<StepResult> r;
        switch (strategy.kind) {
        case Strategy::alternate:
            which = (step % 2 == 1) ? strategy.start : other(strategy.start);
            break;
        case Strategy::fixed:
            which = strategy.sequence[(step - 1) % strategy.sequence.size()];
            break;
        case Strategy::adaptive_greedy: {
            auto r1 = apply_subprotocol(tr.final_state, Subprotocol::P1, noise);
            auto r2 = apply_subprotocol(tr.final_state, Subprotocol::P2, noise);
            bool first = r1.state.fidelity() >= r2.state.fidelity();
            which = first ? Subprotocol::P1 : Subprotocol::P2;
            r.emplace(first ? std::move(r1) : std::move(r2));
            break;
        }
        }
        if (!r)
            r.emplace(apply_subprotocol(tr.final_state, which, noise));
        cost *= 2 / r->success_prob;
        tr.final_state = std::move(r->state);
        double f = tr.final_state.fidelity();
        tr.rows.push_back({step, which, f, r->success_prob, cost});
        fid.push_back(f);
        bool still = false;
        if (strategy.kind == Strategy::adaptive_greedy) {
            for (int l = 1; l <= 2 && l < int(fid.size()); l++)
                still |= std::abs(f - fid[fid.size() - 1 - l]) < opt.fixpoint_tol;
        } else if (int(fid.size()) > lag) {
            still = std::abs(f - fid[fid.size() - 1 - lag]) < opt.fixpoint_tol;
        }
        if (still) {
            settled = true;
            break;
        }
    }
    int tail = std::min<int>(lag, int(tr.rows.size()));
    tr.cycle_max_fidelity = tr.final_fidelity();
    for (int i = 0; i < tail; i++)
        tr.cycle_max_fidelity = std::max(tr.cycle_max_fidelity, tr.rows[tr.rows.size() - 1 - i].fidelity);
    if (!target_dominant(tr.final_state))
        tr.outcome = Outcome::unpurifiable;
    else
        tr.outcome = settled ? Outcome::converged : Outcome::step_limit;
    return tr;
}

inline SequenceTrace run_sequence(const LabelDistribution &start, const Strategy &strategy, double p,
                                  SequenceOptions opt = {}) {
    check_unit(p, "gate noise");
    std::vector<NoiseChannel> noise;
    if (p < 1)
        noise = depolarizing_all(start.graph(), p);
    return run_sequence(start, strategy, noise, opt);
}

// ---- hashing ----

inline double hashing_yield_raw(const LabelDistribution &s) {
    auto d = diagnostics(s);
    const auto &g = s.graph();
    double sa = 0, sb = 0;
    for (int j = 0; j < g.size(); j++)
        (g.is_a(j) ? sa : sb) = std::max(g.is_a(j) ? sa : sb, d.bit_entropies[j]);
    return 1 - sa - sb;
}

inline double hashing_yield(const LabelDistribution &s) { return std::max(0.0, hashing_yield_raw(s)); }

enum class Side { a, b };

// XOR of the side-restricted labels of all m copies, recovered from measurements on copy m
// after the multilateral CNOTs have accumulated the other copies onto it.
inline Label parity_readout(const TwoColorableGraph &g, const std::vector<Label> &labels, Side side,
                            std::mt19937_64 &rng) {
    if (labels.size() < 2)
        throw std::invalid_argument("parity readout needs at least two copies");
    Label side_mask = side == Side::a ? g.a_mask() : g.b_mask();
    Label other_mask = side == Side::a ? g.b_mask() : g.a_mask();
    // CNOT block between copy i (first) and copy m (second): for the A-side, the A-bits of the
    // first are added to the second and the B-bits of the second to the first.
    std::vector<Label> lab = labels;
    Label &last = lab.back();
    for (std::size_t i = 0; i + 1 < lab.size(); i++) {
        last ^= lab[i] & side_mask;
        lab[i] ^= last & other_mask;
    }
    // Measure copy m: the other side in z, this side in x. Conditioned on the z outcomes the
    // side qubits are a product of x eigenstates whose signs carry the label bits.
    std::uniform_int_distribution<int> coin(0, 1);
    Label zeta = 0;
    for (int k = 0; k < g.size(); k++)
        if ((other_mask >> k) & 1 && coin(rng))
            zeta |= bit(k);
    Label xi = 0;
    for (int j = 0; j < g.size(); j++)
        if ((side_mask >> j) & 1) {
            int v = ((last >> j) & 1) ^ (std::popcount(g.neighbors(j) & zeta) & 1);
            if (v)
                xi |= bit(j);
        }
    // readout rule: mu_j = xi_j + sum of zeta over neighbours
    Label parity = 0;
    for (int j = 0; j < g.size(); j++)
        if ((side_mask >> j) & 1)
            if ((((xi >> j) & 1) ^ (std::popcount(g.neighbors(j) & zeta) & 1)))
                parity |= bit(j);
    return parity;
}

}  // namespace gpur
