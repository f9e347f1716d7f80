#pragma once

// Brute-force density-matrix reference. Slow on purpose: every map is applied as an explicit
// operator on the full Hilbert space, with no label bookkeeping.

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "gpur/graph.hpp"

namespace gpur::dense {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;

constexpr int max_vector_qubits = 12;
constexpr int max_matrix_qubits = 10;

inline void check_vector_cap(int n) {
    if (n > max_vector_qubits)
        throw std::length_error("dense vectors are capped at 12 qubits");
}
inline void check_matrix_cap(int n) {
    if (n > max_matrix_qubits)
        throw std::length_error("dense matrices are capped at 10 qubits");
}

inline int parity(std::uint64_t x) { return std::popcount(x) & 1; }

// Computational basis index: bit j is qubit j in the z basis.
inline Vec graph_state_vector(const TwoColorableGraph &g, Label mu) {
    int n = g.size();
    check_vector_cap(n);
    std::size_t dim = std::size_t{1} << n;
    Vec v(dim);
    double amp = std::pow(2.0, -n / 2.0);
    for (std::size_t x = 0; x < dim; x++) {
        int s = parity(x & mu);
        for (auto e : g.edges())
            s ^= ((x >> e.a) & (x >> e.b)) & 1;
        v[x] = s ? -amp : amp;
    }
    return v;
}

// K_j = X_j prod_{k in N(j)} Z_k
inline Vec apply_correlation(const TwoColorableGraph &g, int j, const Vec &v) {
    Vec out(v.size());
    Label nb = g.neighbors(j);
    for (std::size_t x = 0; x < std::size_t(v.size()); x++)
        out[x] = (parity(x & nb) ? -1.0 : 1.0) * v[x ^ bit(j)];
    return out;
}

inline Mat from_labels(const TwoColorableGraph &g, const std::vector<double> &probs) {
    check_matrix_cap(g.size());
    std::size_t dim = g.dim();
    Mat rho = Mat::Zero(dim, dim);
    for (Label mu = 0; mu < dim; mu++)
        if (probs[mu] != 0) {
            Vec v = graph_state_vector(g, mu);
            rho += probs[mu] * v * v.adjoint();
        }
    return rho;
}

inline std::vector<double> graph_diagonal(const Mat &rho, const TwoColorableGraph &g) {
    std::vector<double> d(g.dim());
    for (Label mu = 0; mu < g.dim(); mu++) {
        Vec v = graph_state_vector(g, mu);
        d[mu] = (v.adjoint() * rho * v)(0, 0).real();
    }
    return d;
}

// rho -> P rho P^dag for the Pauli string X^xm Z^zm (global phase drops out).
inline Mat conjugate_pauli(const Mat &rho, std::uint64_t xm, std::uint64_t zm) {
    Mat out(rho.rows(), rho.cols());
    for (Eigen::Index a = 0; a < rho.rows(); a++)
        for (Eigen::Index b = 0; b < rho.cols(); b++) {
            double s = (parity(zm & a) ^ parity(zm & b)) ? -1.0 : 1.0;
            out(a, b) = s * rho(a ^ xm, b ^ xm);
        }
    return out;
}

// rho -> q rho + (1-q)/2 * 1_k (x) tr_k rho
inline Mat whitenoise(const Mat &rho, int k, double q) {
    std::uint64_t m = std::uint64_t{1} << k;
    Mat out = q * rho;
    for (Eigen::Index a = 0; a < rho.rows(); a++)
        for (Eigen::Index b = 0; b < rho.cols(); b++) {
            if (((a ^ b) & m) != 0)
                continue;
            cd tr = rho(a & ~m, b & ~m) + rho(a | m, b | m);
            out(a, b) += (1 - q) / 2 * tr;
        }
    return out;
}

inline Mat bitflip(const Mat &rho, const TwoColorableGraph &g, int k, double p) {
    (void)g;
    return (1 + p) / 2 * rho + (1 - p) / 2 * conjugate_pauli(rho, std::uint64_t{1} << k, 0);
}

inline Mat phaseflip(const Mat &rho, int k, double p) {
    return (1 + p) / 2 * rho + (1 - p) / 2 * conjugate_pauli(rho, 0, std::uint64_t{1} << k);
}

// Basis permutation |x> -> |x ^ (x_c ? 1<<t : 0)>
inline Mat cnot(const Mat &rho, int c, int t) {
    auto f = [&](std::uint64_t x) { return ((x >> c) & 1) ? x ^ (std::uint64_t{1} << t) : x; };
    Mat out(rho.rows(), rho.cols());
    for (Eigen::Index a = 0; a < rho.rows(); a++)
        for (Eigen::Index b = 0; b < rho.cols(); b++)
            out(f(a), f(b)) = rho(a, b);
    return out;
}

inline Mat cz(const Mat &rho, int c, int t) {
    Mat out = rho;
    for (Eigen::Index a = 0; a < rho.rows(); a++)
        for (Eigen::Index b = 0; b < rho.cols(); b++) {
            int s = (((a >> c) & (a >> t)) ^ ((b >> c) & (b >> t))) & 1;
            if (s)
                out(a, b) = -out(a, b);
        }
    return out;
}

inline Mat hadamard(const Mat &rho, int k) {
    std::uint64_t m = std::uint64_t{1} << k;
    const double h = 1 / std::sqrt(2.0);
    Mat tmp(rho.rows(), rho.cols());
    // left multiply
    for (Eigen::Index a = 0; a < rho.rows(); a++) {
        Eigen::Index a0 = a & ~m, a1 = a | m;
        double s = (a & m) ? -1 : 1;
        tmp.row(a) = h * (rho.row(a0) + s * rho.row(a1));
    }
    Mat out(rho.rows(), rho.cols());
    for (Eigen::Index b = 0; b < rho.cols(); b++) {
        Eigen::Index b0 = b & ~m, b1 = b | m;
        double s = (b & m) ? -1 : 1;
        out.col(b) = h * (tmp.col(b0) + s * tmp.col(b1));
    }
    return out;
}

inline Mat kron(const Mat &a, const Mat &b) {
    // copy 1 occupies the low qubits
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < b.rows(); i++)
        for (Eigen::Index j = 0; j < b.cols(); j++)
            out.block(i * a.rows(), j * a.cols(), a.rows(), a.cols()) = b(i, j) * a;
    return out;
}

struct DepolarizeResult {
    Mat rho;
    std::vector<double> diagonal;
};

// rho -> (rho + K_j rho K_j) / 2 for every j
inline DepolarizeResult depolarize(const Mat &rho, const TwoColorableGraph &g) {
    check_matrix_cap(g.size());
    Mat r = rho;
    for (int j = 0; j < g.size(); j++)
        r = 0.5 * (r + conjugate_pauli(r, bit(j), g.neighbors(j)));
    return {r, graph_diagonal(r, g)};
}

// Largest off-diagonal magnitude in the graph basis.
inline double offdiagonal_norm(const Mat &rho, const TwoColorableGraph &g) {
    std::size_t dim = g.dim();
    Mat basis(dim, dim);
    for (Label mu = 0; mu < dim; mu++)
        basis.col(mu) = graph_state_vector(g, mu);
    Mat m = basis.adjoint() * rho * basis;
    double worst = 0;
    for (std::size_t a = 0; a < dim; a++)
        for (std::size_t b = 0; b < dim; b++)
            if (a != b)
                worst = std::max(worst, std::abs(m(a, b)));
    return worst;
}

inline bool is_physical(const Mat &rho, double tol = 1e-10) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        return false;
    if (std::abs(rho.trace() - cd(1, 0)) > 1e-12)
        return false;
    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    return es.eigenvalues().minCoeff() >= -tol;
}

struct SubprotocolResult {
    std::vector<double> diagonal;
    double success_prob;
};

// which_p1: true for P1. Copy 1 = qubits 0..n-1, copy 2 = qubits n..2n-1.
inline SubprotocolResult subprotocol(const TwoColorableGraph &g, const std::vector<double> &probs1,
                                     const std::vector<double> &probs2, bool which_p1, double p) {
    int n = g.size();
    if (n > 5)
        throw std::length_error("dense two-copy simulation is capped at 5 qubits per copy");
    Mat rho = kron(from_labels(g, probs1), from_labels(g, probs2));
    if (p < 1)
        for (int k = 0; k < 2 * n; k++)
            rho = whitenoise(rho, k, p);
    Label check = which_p1 ? g.a_mask() : g.b_mask();
    // parties on the checked side use copy 2 as control, the others use copy 1
    for (int j = 0; j < n; j++) {
        if ((check >> j) & 1)
            rho = cnot(rho, n + j, j);
        else
            rho = cnot(rho, j, n + j);
    }
    // checked side of copy 2 is read in x, the rest in z
    for (int j = 0; j < n; j++)
        if ((check >> j) & 1)
            rho = hadamard(rho, n + j);
    std::size_t dim = g.dim();
    Mat kept = Mat::Zero(dim, dim);
    for (std::size_t o = 0; o < dim; o++) {
        bool ok = true;
        for (int j = 0; j < n && ok; j++)
            if ((check >> j) & 1)
                ok = (((o >> j) & 1) ^ parity(o & g.neighbors(j))) == 0;
        if (!ok)
            continue;
        for (std::size_t a = 0; a < dim; a++)
            for (std::size_t b = 0; b < dim; b++)
                kept(a, b) += rho(a | (o << n), b | (o << n));
    }
    double prob = kept.trace().real();
    if (!(prob > 0))
        throw std::runtime_error("dense oracle: post-selection kept zero weight");
    kept /= prob;
    return {graph_diagonal(kept, g), prob};
}

inline SubprotocolResult subprotocol(const TwoColorableGraph &g, const std::vector<double> &probs, bool which_p1,
                                     double p) {
    return subprotocol(g, probs, probs, which_p1, p);
}

// Chain creation from |+>^N with CZ gates on bonds (1,2), (2,3), ...; noise_after[k] places the
// depolarizing of bond k after its gate instead of before.
inline std::vector<double> create_chain(int n, double p, const std::vector<bool> &noise_after) {
    check_matrix_cap(n);
    std::size_t dim = std::size_t{1} << n;
    Vec plus = Vec::Constant(dim, cd(std::pow(2.0, -n / 2.0), 0));
    Mat rho = plus * plus.adjoint();
    for (int k = 0; k + 1 < n; k++) {
        bool after = k < int(noise_after.size()) && noise_after[k];
        if (!after) {
            rho = whitenoise(rho, k, p);
            rho = whitenoise(rho, k + 1, p);
        }
        rho = cz(rho, k, k + 1);
        if (after) {
            rho = whitenoise(rho, k, p);
            rho = whitenoise(rho, k + 1, p);
        }
    }
    return graph_diagonal(rho, make_chain(n));
}

}  // namespace gpur::dense
