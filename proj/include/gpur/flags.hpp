#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "gpur/purification.hpp"

namespace gpur {

constexpr int max_flag_qubits = 7;

// Joint distribution over (chain label, error flag); row = label, column = flag.
class FlagMatrix {
  public:
    explicit FlagMatrix(int n) : n_(n), g_(make_chain_checked(n)), m_(std::size_t{1} << (2 * n), 0.0) {}

    int size() const { return n_; }
    Label dim() const { return Label{1} << n_; }
    const TwoColorableGraph &graph() const { return *g_; }
    const GraphPtr &graph_ptr() const { return g_; }
    double &at(Label label, Label flag) { return m_[(std::size_t(label) << n_) | flag]; }
    double at(Label label, Label flag) const { return m_[(std::size_t(label) << n_) | flag]; }
    std::vector<double> &data() { return m_; }
    const std::vector<double> &data() const { return m_; }

    double total() const {
        double s = 0;
        for (double v : m_)
            s += v;
        return s;
    }

    // Marginal over flags.
    LabelDistribution labels() const {
        std::vector<double> p(dim(), 0.0);
        for (Label k = 0; k < dim(); k++)
            for (Label f = 0; f < dim(); f++)
                p[k] += at(k, f);
        return {g_, p};
    }

    static FlagMatrix delta(int n, Label label = 0, Label flag = 0) {
        FlagMatrix m(n);
        m.at(label, flag) = 1;
        return m;
    }

  private:
    static GraphPtr make_chain_checked(int n) {
        if (n < 1 || n > max_flag_qubits)
            throw std::invalid_argument("flag tracking supports open chains of 1..7 qubits");
        return share(make_chain(n));
    }

    int n_;
    GraphPtr g_;
    std::vector<double> m_;
};

// Weights (f_0, f_x, f_y, f_z).
using DemonWeights = std::array<double, 4>;

inline DemonWeights depolarizing_weights(double p) {
    return {(1 + 3 * p) / 4, (1 - p) / 4, (1 - p) / 4, (1 - p) / 4};
}

// A Pauli error flips the same bit pattern in the label and in the flag.
inline FlagMatrix demon_channel(const FlagMatrix &m, int qubit, const DemonWeights &f) {
    const auto &g = m.graph();
    double sum = 0;
    for (double w : f) {
        if (w < 0)
            throw std::invalid_argument("negative demon weight");
        sum += w;
    }
    if (std::abs(sum - 1) > 1e-12)
        throw std::invalid_argument("demon weights must sum to one");
    Label masks[4] = {0, flip_pattern(g, qubit, Axis::x).mask, flip_pattern(g, qubit, Axis::y).mask,
                      flip_pattern(g, qubit, Axis::z).mask};
    FlagMatrix out(m.size());
    for (int t = 0; t < 4; t++) {
        if (f[t] == 0)
            continue;
        Label s = masks[t];
        for (Label k = 0; k < m.dim(); k++)
            for (Label fl = 0; fl < m.dim(); fl++)
                out.at(k, fl) += f[t] * m.at(k ^ s, fl ^ s);
    }
    return out;
}

// Flags are propagated like labels on the `mix` positions; a disagreement on the `check`
// positions while the copy is kept resets the flag.
inline Label flag_update(Label kappa, Label lambda, Label check, Label mix) {
    if ((kappa ^ lambda) & check)
        return 0;
    return kappa ^ (lambda & mix);
}

namespace detail {
inline Label positions_with_parity(int n, int parity_one_based) {
    Label m = 0;
    for (int j = 1; j <= n; j++)
        if (j % 2 == parity_one_based)
            m |= bit(j - 1);
    return m;
}
}  // namespace detail

// XOR on odd positions, keep kappa on even positions, reset when an even position differs.
inline Label flag_update_p1(Label kappa, Label lambda, int n) {
    if (n < 1 || n > max_vertices || (kappa >> n) || (lambda >> n))
        throw std::invalid_argument("flag length mismatch");
    return flag_update(kappa, lambda, detail::positions_with_parity(n, 0), detail::positions_with_parity(n, 1));
}

// Same with even and odd exchanged.
inline Label flag_update_p2(Label kappa, Label lambda, int n) {
    if (n < 1 || n > max_vertices || (kappa >> n) || (lambda >> n))
        throw std::invalid_argument("flag length mismatch");
    return flag_update(kappa, lambda, detail::positions_with_parity(n, 1), detail::positions_with_parity(n, 0));
}

struct FlagStepResult {
    FlagMatrix state;
    double success_prob;
};

// Noise on every qubit of both copies, then the two-copy step. The flag update uses the same
// check/mix positions as the label update of `which`.
inline FlagStepResult flag_step(const FlagMatrix &m, Subprotocol which, const DemonWeights &f) {
    FlagMatrix noisy = m;
    for (int j = 0; j < m.size(); j++)
        noisy = demon_channel(noisy, j, f);
    const auto &g = m.graph();
    Label check = which == Subprotocol::P1 ? g.a_mask() : g.b_mask();
    Label mix = which == Subprotocol::P1 ? g.b_mask() : g.a_mask();
    Label dim = m.dim();
    struct Entry {
        Label label, flag;
        double w;
    };
    std::vector<Entry> nz;
    for (Label k = 0; k < dim; k++)
        for (Label fl = 0; fl < dim; fl++)
            if (double w = noisy.at(k, fl); w != 0)
                nz.push_back({k, fl, w});
    FlagMatrix out(m.size());
    double kept = 0;
    for (auto &e1 : nz)
        for (auto &e2 : nz) {
            if ((e1.label ^ e2.label) & check)
                continue;
            double w = e1.w * e2.w;
            kept += w;
            out.at(e1.label ^ (e2.label & mix), flag_update(e1.flag, e2.flag, check, mix)) += w;
        }
    if (!(kept > 0))
        throw ProtocolFailure("flag step kept zero weight");
    for (auto &v : out.data())
        v /= kept;
    return {std::move(out), kept};
}

struct Fidelities {
    double f;
    double f_cond;
};

inline Fidelities fidelities(const FlagMatrix &m) {
    Fidelities r{0, 0};
    for (Label l = 0; l < m.dim(); l++) {
        r.f += m.at(0, l);
        r.f_cond += m.at(l, l);
    }
    return r;
}

struct FlagTraceRow {
    int step;
    Subprotocol which;
    double f, f_cond, success_prob;
};

// Alternating steps from the given start (default: noiseless state with a clean flag).
inline std::vector<FlagTraceRow> run_flags(FlagMatrix m, double p, int steps, Subprotocol start = Subprotocol::P1) {
    auto w = depolarizing_weights(p);
    std::vector<FlagTraceRow> rows;
    Subprotocol which = start;
    for (int s = 1; s <= steps; s++) {
        auto r = flag_step(m, which, w);
        m = std::move(r.state);
        auto fd = fidelities(m);
        rows.push_back({s, which, fd.f, fd.f_cond, r.success_prob});
        which = other(which);
    }
    return rows;
}

}  // namespace gpur
