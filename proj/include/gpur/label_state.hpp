#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpur/graph.hpp"

namespace gpur {

using GraphPtr = std::shared_ptr<const TwoColorableGraph>;

inline GraphPtr share(TwoColorableGraph g) { return std::make_shared<const TwoColorableGraph>(std::move(g)); }

constexpr double sum_tolerance = 1e-12;
constexpr double negative_floor = -1e-14;

// Probability vector over graph-basis labels; probs[0] is the target state.
class LabelDistribution {
  public:
    LabelDistribution(GraphPtr g, std::vector<double> probs) : g_(std::move(g)), p_(std::move(probs)) {
        if (!g_)
            throw std::invalid_argument("null graph");
        if (p_.size() != g_->dim())
            throw std::invalid_argument("probability vector has wrong length");
    }

    const TwoColorableGraph &graph() const { return *g_; }
    const GraphPtr &graph_ptr() const { return g_; }
    const std::vector<double> &probs() const { return p_; }
    std::vector<double> &mutable_probs() { return p_; }
    double operator[](Label mu) const { return p_[mu]; }
    double fidelity() const { return p_[0]; }
    int size() const { return g_->size(); }
    double total() const { return std::accumulate(p_.begin(), p_.end(), 0.0); }

  private:
    GraphPtr g_;
    std::vector<double> p_;
};

// Clamps tiny negatives to zero and rescales to unit sum; returns the number of clamped entries.
inline int renormalize(LabelDistribution &s) {
    int clamped = 0;
    double sum = 0;
    for (auto &v : s.mutable_probs()) {
        if (v < 0) {
            if (v < negative_floor)
                throw std::domain_error("negative probability " + std::to_string(v));
            v = 0;
            clamped++;
        }
        sum += v;
    }
    if (!(sum > 0))
        throw std::domain_error("distribution has zero total weight");
    for (auto &v : s.mutable_probs())
        v /= sum;
    return clamped;
}

struct StateFamily {
    enum Kind { pure, werner, channel_noise, binary_family } kind = pure;
    double param = 1;

    static StateFamily make_pure() { return {pure, 1}; }
    static StateFamily make_werner(double x) { return {werner, x}; }
    static StateFamily make_channel_noise(double q) { return {channel_noise, q}; }
    static StateFamily make_binary(double f) { return {binary_family, f}; }
};

struct NoiseChannel {
    enum Kind { depolarizing, bitflip, phaseflip } kind = depolarizing;
    double param = 1;
    int qubit = 0;  // 0-based
};

inline void check_unit(double v, const char *what) {
    if (!(v >= 0 && v <= 1))
        throw std::invalid_argument(std::string(what) + " must lie in [0,1], got " + std::to_string(v));
}

namespace detail {
// out[mu] = sum_k w_k in[mu ^ m_k]
inline void pauli_mix(std::vector<double> &p, const Label *masks, const double *w, int terms) {
    std::vector<double> out(p.size(), 0.0);
    for (int t = 0; t < terms; t++) {
        if (w[t] == 0)
            continue;
        for (Label mu = 0; mu < p.size(); mu++)
            out[mu] += w[t] * p[mu ^ masks[t]];
    }
    p.swap(out);
}
}  // namespace detail

inline void apply_channel_inplace(const TwoColorableGraph &g, std::vector<double> &p, const NoiseChannel &c) {
    check_unit(c.param, "channel parameter");
    Label z = flip_pattern(g, c.qubit, Axis::z).mask;
    Label x = flip_pattern(g, c.qubit, Axis::x).mask;
    double q = c.param;
    switch (c.kind) {
    case NoiseChannel::depolarizing: {
        Label m[4] = {0, x, x ^ z, z};
        double w[4] = {(1 + 3 * q) / 4, (1 - q) / 4, (1 - q) / 4, (1 - q) / 4};
        detail::pauli_mix(p, m, w, 4);
        break;
    }
    case NoiseChannel::bitflip: {
        Label m[2] = {0, x};
        double w[2] = {(1 + q) / 2, (1 - q) / 2};
        detail::pauli_mix(p, m, w, 2);
        break;
    }
    case NoiseChannel::phaseflip: {
        Label m[2] = {0, z};
        double w[2] = {(1 + q) / 2, (1 - q) / 2};
        detail::pauli_mix(p, m, w, 2);
        break;
    }
    }
}

inline LabelDistribution apply_channel(const LabelDistribution &s, const NoiseChannel &c) {
    LabelDistribution out = s;
    apply_channel_inplace(s.graph(), out.mutable_probs(), c);
    return out;
}

inline LabelDistribution apply_channels(const LabelDistribution &s, const std::vector<NoiseChannel> &cs) {
    LabelDistribution out = s;
    for (auto &c : cs)
        apply_channel_inplace(s.graph(), out.mutable_probs(), c);
    return out;
}

inline std::vector<NoiseChannel> depolarizing_all(const TwoColorableGraph &g, double q) {
    std::vector<NoiseChannel> cs;
    for (int j = 0; j < g.size(); j++)
        cs.push_back({NoiseChannel::depolarizing, q, j});
    return cs;
}

inline LabelDistribution make_state(GraphPtr g, StateFamily f) {
    check_unit(f.param, "state parameter");
    std::vector<double> p(g->dim(), 0.0);
    switch (f.kind) {
    case StateFamily::pure:
        p[0] = 1;
        break;
    case StateFamily::werner:
        for (auto &v : p)
            v = (1 - f.param) / double(p.size());
        p[0] += f.param;
        break;
    case StateFamily::channel_noise: {
        p[0] = 1;
        for (auto &c : depolarizing_all(*g, f.param))
            apply_channel_inplace(*g, p, c);
        break;
    }
    case StateFamily::binary_family: {
        Label a = g->a_mask();
        double rest = (1 - f.param) / double((Label{1} << g->a_count()) - 1);
        for (Label mu = a;; mu = (mu - 1) & a) {  // all submasks of A
            if (mu)
                p[mu] = rest;
            if (!mu)
                break;
        }
        p[0] = f.param;
        break;
    }
    }
    return {std::move(g), std::move(p)};
}

inline double binary_entropy(double p0) {
    auto h = [](double v) { return v > 0 ? -v * std::log2(v) : 0.0; };
    return h(p0) + h(1 - p0);
}

struct Diagnostics {
    double fidelity;
    std::vector<std::pair<double, double>> bit_marginals;
    std::vector<double> bit_entropies;
};

inline Diagnostics diagnostics(const LabelDistribution &s) {
    int n = s.size();
    std::vector<double> one(n, 0.0);
    double tot = 0;
    for (Label mu = 0; mu < s.probs().size(); mu++) {
        tot += s[mu];
        for (int j = 0; j < n; j++)
            if ((mu >> j) & 1)
                one[j] += s[mu];
    }
    Diagnostics d{s.fidelity(), {}, {}};
    for (int j = 0; j < n; j++) {
        d.bit_marginals.push_back({tot - one[j], one[j]});
        d.bit_entropies.push_back(binary_entropy(std::clamp(1 - one[j] / tot, 0.0, 1.0)));
    }
    return d;
}

// Vertex 1 is the leftmost character.
inline std::string label_string(Label mu, int n) {
    std::string s(n, '0');
    for (int j = 0; j < n; j++)
        if ((mu >> j) & 1)
            s[j] = '1';
    return s;
}

inline Label parse_label(const std::string &s) {
    if (s.empty() || s.size() > max_vertices)
        throw std::invalid_argument("bad label '" + s + "'");
    Label mu = 0;
    for (std::size_t j = 0; j < s.size(); j++) {
        if (s[j] == '1')
            mu |= bit(int(j));
        else if (s[j] != '0')
            throw std::invalid_argument("bad label '" + s + "'");
    }
    return mu;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_state_csv(std::ostream &out, const LabelDistribution &s, double omit_below = 1e-15) {
    out << "# graph: " << s.graph().name() << "\n";
    out << "label,probability\n";
    for (Label mu = 0; mu < s.probs().size(); mu++)
        if (s[mu] >= omit_below || mu == 0)
            out << label_string(mu, s.size()) << "," << format_double(s[mu]) << "\n";
}

inline LabelDistribution read_state_csv(std::istream &in, GraphPtr g) {
    std::vector<double> p(g->dim(), 0.0);
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            if (line != "label,probability")
                throw std::invalid_argument("line " + std::to_string(lineno) + ": expected header");
            header = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected label,probability");
        std::string ls = line.substr(0, comma);
        if (int(ls.size()) != g->size())
            throw std::invalid_argument("line " + std::to_string(lineno) + ": label length mismatch");
        p[parse_label(ls)] = std::stod(line.substr(comma + 1));
    }
    return {std::move(g), std::move(p)};
}

}  // namespace gpur
