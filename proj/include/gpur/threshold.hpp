#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpur/purification.hpp"

namespace gpur {

// ---- maximal reachable fidelity ----

struct FmaxResult {
    std::optional<double> f_max;  // empty when every ordering loses the target
    double p1_first = NAN, p2_first = NAN, adaptive = NAN;
    int steps = 0;
    bool converged = false;
};

struct ScanOptions {
    int max_steps = 500;
    double fixpoint_tol = 1e-10;
    double bisect_tol = 1e-5;
    int coarse_points = 21;
};

inline FmaxResult find_fmax(const LabelDistribution &start, double p, int max_steps = 5000) {
    SequenceOptions opt{max_steps, 1e-13};
    FmaxResult r;
    auto t1 = run_sequence(start, Strategy::make_alternate(Subprotocol::P1), p, opt);
    auto t2 = run_sequence(start, Strategy::make_alternate(Subprotocol::P2), p, opt);
    auto ta = run_sequence(start, Strategy::make_adaptive(), p, opt);
    r.steps = int(std::max(t1.rows.size(), t2.rows.size()));
    r.converged = t1.outcome != Outcome::step_limit && t2.outcome != Outcome::step_limit;
    auto val = [](const SequenceTrace &t) { return t.outcome == Outcome::unpurifiable ? NAN : t.cycle_max_fidelity; };
    r.p1_first = val(t1);
    r.p2_first = val(t2);
    r.adaptive = val(ta);
    for (double v : {r.p1_first, r.p2_first, r.adaptive})
        if (!std::isnan(v))
            r.f_max = std::max(r.f_max.value_or(0), v);
    return r;
}

inline FmaxResult find_fmax(const GraphPtr &g, double p) {
    return find_fmax(make_state(g, StateFamily::make_werner(0.99)), p);
}

// ---- bisection on a monotone predicate ----

struct ThresholdResult {
    double value = NAN;  // smallest parameter where the predicate holds
    double lo = NAN, hi = NAN;
    bool monotone = true;
    bool found = false;
    std::string note;
};

// pred is expected false below and true above the threshold on [lo, hi].
inline ThresholdResult bisect_threshold(const std::function<bool(double)> &pred, double lo, double hi,
                                        const ScanOptions &opt = {}) {
    ThresholdResult r;
    int n = std::max(opt.coarse_points, 2);
    std::vector<char> v(n);
    std::vector<double> xs(n);
    for (int i = 0; i < n; i++) {
        xs[i] = lo + (hi - lo) * i / (n - 1);
        v[i] = pred(xs[i]);
    }
    int first = -1;
    for (int i = 0; i < n; i++)
        if (v[i]) {
            first = i;
            break;
        }
    if (first < 0) {
        r.note = "predicate false on the whole bracket";
        return r;
    }
    for (int i = first; i < n; i++)
        if (!v[i]) {
            r.monotone = false;
            r.lo = xs[first];
            r.hi = xs[i];
            r.note = "predicate not monotone: true at " + std::to_string(xs[first]) + ", false at " +
                     std::to_string(xs[i]);
            return r;
        }
    r.found = true;
    if (first == 0) {
        r.value = r.lo = r.hi = xs[0];
        r.note = "predicate already true at the lower bracket edge";
        return r;
    }
    double a = xs[first - 1], b = xs[first];
    while (b - a > opt.bisect_tol) {
        double m = 0.5 * (a + b);
        (pred(m) ? b : a) = m;
    }
    r.lo = a;
    r.hi = b;
    r.value = b;
    return r;
}

// Some strategy (either alternation order, or greedy) ends on the noisy fixed point f_max,
// climbing there unless it already started at or above it.
inline bool purifies(const LabelDistribution &start, double p, double f_max, const ScanOptions &opt = {}) {
    SequenceOptions so{opt.max_steps, opt.fixpoint_tol};
    for (auto &st : {Strategy::make_alternate(Subprotocol::P1), Strategy::make_alternate(Subprotocol::P2),
                     Strategy::make_adaptive()}) {
        auto t = run_sequence(start, st, p, so);
        if (t.outcome == Outcome::unpurifiable)
            continue;
        bool climbed = t.final_fidelity() > start.fidelity() + 1e-6 || start.fidelity() >= f_max - 1e-6;
        if (climbed && std::abs(t.cycle_max_fidelity - f_max) < 1e-6)
            return true;
    }
    return false;
}

enum class ScanKind { x_min, q_min, p_min };

struct ScanRecord {
    std::string graph;
    std::string noise;
    std::string parameter;
    ThresholdResult threshold;
    double f_min = NAN;
    double f_max = NAN;
    int steps = 0;
};

// A nonempty purification window exists at gate noise p: the iteration started from the
// pure state settles on a fixed point dominated by the target.
inline bool window_exists(const GraphPtr &g, double p, int max_steps = 20000) {
    auto pure = make_state(g, StateFamily::make_pure());
    for (auto &st : {Strategy::make_alternate(Subprotocol::P1), Strategy::make_alternate(Subprotocol::P2),
                     Strategy::make_adaptive()})
        if (run_sequence(pure, st, p, SequenceOptions{max_steps, 1e-13}).outcome == Outcome::converged)
            return true;
    return false;
}

inline ScanRecord find_threshold(const GraphPtr &g, ScanKind kind, double p = 1, const ScanOptions &opt = {}) {
    ScanRecord rec{g->name(), "depolarizing", "", {}, NAN, NAN, 0};
    if (kind == ScanKind::p_min) {
        rec.parameter = "p";
        rec.threshold = bisect_threshold([&](double pp) { return window_exists(g, pp); }, 0.5, 1.0, opt);
        if (rec.threshold.found) {
            auto fm = find_fmax(g, rec.threshold.value);
            rec.f_max = fm.f_max.value_or(NAN);
        }
        return rec;
    }
    auto fm = find_fmax(g, p);
    rec.steps = fm.steps;
    if (!fm.f_max) {
        rec.threshold.note = "no purification window at p=" + std::to_string(p);
        return rec;
    }
    rec.f_max = *fm.f_max;
    auto family = [&](double v) {
        return make_state(g, kind == ScanKind::x_min ? StateFamily::make_werner(v) : StateFamily::make_channel_noise(v));
    };
    rec.parameter = kind == ScanKind::x_min ? "x" : "q";
    rec.threshold = bisect_threshold([&](double v) { return purifies(family(v), p, *fm.f_max, opt); }, 0.0, 1.0, opt);
    if (rec.threshold.found)
        rec.f_min = family(rec.threshold.value).fidelity();
    return rec;
}

// ---- restricted (binary) error models on the A-reduced label space ----

enum class BinaryModel { bitflip_b, bitflip_b_phaseflip_a };

inline const char *to_string(BinaryModel m) {
    return m == BinaryModel::bitflip_b ? "bitflipB" : "binaryAB";
}

// Per-step noise on one copy: bit flips on every B qubit, and for the full model phase flips on
// every A qubit.
inline std::vector<NoiseChannel> binary_noise(const TwoColorableGraph &g, BinaryModel m, double p) {
    std::vector<NoiseChannel> cs;
    for (int j = 0; j < g.size(); j++) {
        if (!g.is_a(j))
            cs.push_back({NoiseChannel::bitflip, p, j});
        else if (m == BinaryModel::bitflip_b_phaseflip_a)
            cs.push_back({NoiseChannel::phaseflip, p, j});
    }
    return cs;
}

// States supported on mu_B = 0 stay there under these channels and under P1, so only the
// 2^{N_A} A-labels need tracking. Index bit t is the t-th A vertex.
class BinaryReducedModel {
  public:
    BinaryReducedModel(const TwoColorableGraph &g, BinaryModel m, double p) : na_(g.a_count()) {
        std::vector<int> pos(g.size(), -1);
        int t = 0;
        for (int j = 0; j < g.size(); j++)
            if (g.is_a(j))
                pos[j] = t++;
        auto compress = [&](Label mask) {
            Label r = 0;
            for (int j = 0; j < g.size(); j++)
                if ((mask >> j) & 1)
                    r |= bit(pos[j]);
            return r;
        };
        for (auto &c : binary_noise(g, m, p)) {
            Label mask = c.kind == NoiseChannel::bitflip ? compress(g.neighbors(c.qubit)) : compress(bit(c.qubit));
            flips_.push_back({mask, (1 + c.param) / 2});
        }
    }

    int size() const { return na_; }

    void noise(std::vector<double> &v) const {
        std::vector<double> tmp(v.size());
        for (auto [mask, keep] : flips_) {
            if (mask == 0 || keep == 1)
                continue;
            for (std::size_t i = 0; i < v.size(); i++)
                tmp[i] = keep * v[i] + (1 - keep) * v[i ^ mask];
            v.swap(tmp);
        }
    }

    // One noisy P1 round; returns the success probability.
    double step(std::vector<double> &v) const {
        noise(v);
        auto r = binary_p1_map(v);
        v = std::move(r.coeffs);
        return r.k;
    }

  private:
    int na_;
    std::vector<std::pair<Label, double>> flips_;
};

struct BinaryRun {
    double fidelity;
    bool dominant;
    bool settled;
    int steps;
};

inline BinaryRun run_binary(const TwoColorableGraph &g, BinaryModel m, double p, std::vector<double> v,
                            int max_steps = 20000, double tol = 1e-14) {
    BinaryReducedModel model(g, m, p);
    BinaryRun r{v[0], false, false, 0};
    for (int s = 1; s <= max_steps; s++) {
        model.step(v);
        r.steps = s;
        bool done = std::abs(v[0] - r.fidelity) < tol;
        r.fidelity = v[0];
        if (done) {
            r.settled = true;
            break;
        }
    }
    double best = 0;
    for (std::size_t i = 1; i < v.size(); i++)
        best = std::max(best, v[i]);
    r.dominant = v[0] > best + 1e-6;
    return r;
}

inline bool binary_window_exists(const TwoColorableGraph &g, BinaryModel m, double p) {
    std::vector<double> v(std::size_t{1} << g.a_count(), 0.0);
    v[0] = 1;
    auto r = run_binary(g, m, p, v);
    return r.settled && r.dominant;
}

inline ThresholdResult binary_error_pmin(const TwoColorableGraph &g, BinaryModel m = BinaryModel::bitflip_b_phaseflip_a,
                                         ScanOptions opt = {}) {
    if (g.a_count() > 20)
        throw std::invalid_argument("binary model limited to 20 A vertices");
    opt.bisect_tol = std::min(opt.bisect_tol, 1e-6);
    return bisect_threshold([&](double p) { return binary_window_exists(g, m, p); }, 0.5, 1.0, opt);
}

// ---- bipartite comparison ----

struct BellDiagonalState {
    double phi_plus = 1, phi_minus = 0, psi_plus = 0, psi_minus = 0;

    double fidelity() const { return phi_plus; }
    double total() const { return phi_plus + phi_minus + psi_plus + psi_minus; }
};

// Depolarizing(p) on both qubits of each pair, then the bilateral-CNOT recurrence with the
// usual local rotations (coefficient order Phi+, Psi-, Psi+, Phi-).
inline std::pair<BellDiagonalState, double> dejmps_step(BellDiagonalState s, double p) {
    double w = p * p;
    auto mix = [&](double v) { return w * v + (1 - w) / 4; };
    double a = mix(s.phi_plus), b = mix(s.psi_minus), c = mix(s.psi_plus), d = mix(s.phi_minus);
    double n = (a + b) * (a + b) + (c + d) * (c + d);
    if (!(n > 0))
        throw ProtocolFailure("bipartite step kept zero weight");
    BellDiagonalState r;
    r.phi_plus = (a * a + b * b) / n;
    r.psi_minus = 2 * c * d / n;
    r.psi_plus = (c * c + d * d) / n;
    r.phi_minus = 2 * a * b / n;
    return {r, n};
}

inline std::optional<BellDiagonalState> bipartite_fixed_point(double p, int max_steps = 100000) {
    BellDiagonalState s;
    for (int i = 0; i < max_steps; i++) {
        auto [next, k] = dejmps_step(s, p);
        double change = std::abs(next.phi_plus - s.phi_plus) + std::abs(next.phi_minus - s.phi_minus) +
                        std::abs(next.psi_plus - s.psi_plus) + std::abs(next.psi_minus - s.psi_minus);
        s = next;
        if (change < 1e-15)
            break;
    }
    if (s.phi_plus <= 0.5 + 1e-9)
        return std::nullopt;
    return s;
}

// Pauli channel I/X/Y/Z with the given weights on one qubit of a graph-diagonal state.
inline LabelDistribution apply_pauli_weights(const LabelDistribution &s, int qubit, std::array<double, 4> w) {
    const auto &g = s.graph();
    Label m[4] = {0, flip_pattern(g, qubit, Axis::x).mask, flip_pattern(g, qubit, Axis::y).mask,
                  flip_pattern(g, qubit, Axis::z).mask};
    LabelDistribution out = s;
    detail::pauli_mix(out.mutable_probs(), m, w.data(), 4);
    return out;
}

// Fidelity of the target when every non-hub vertex is connected through a purified pair whose
// residual error acts on that vertex: Phi+ -> I, Psi+ -> X, Psi- -> Y, Phi- -> Z.
inline std::optional<double> bipartite_bound(double p, const GraphPtr &target, int hub = 0) {
    auto fp = bipartite_fixed_point(p);
    if (!fp)
        return std::nullopt;
    auto s = make_state(target, StateFamily::make_pure());
    std::array<double, 4> w{fp->phi_plus, fp->psi_plus, fp->psi_minus, fp->phi_minus};
    for (int j = 0; j < target->size(); j++)
        if (j != hub)
            s = apply_pauli_weights(s, j, w);
    return s.fidelity();
}

}  // namespace gpur
