#include "gpur/dense_oracle.hpp"

#include <random>

#include "gpur/purification.hpp"
#include "gtest/gtest.h"
#include "test_util.h"

using namespace gpur;
using gpur::testing::max_diff;
using gpur::testing::random_probs;

namespace {
std::vector<TwoColorableGraph> small_graphs() {
    return {make_chain(2), make_ghz(3), make_chain(3), make_ghz(4), make_chain(4), make_chain(4, true),
            make_grid(2, 2, false, false), make_chain(5), make_ghz(5)};
}
}  // namespace

TEST(oracle, eigenvalue_equations) {
    for (auto &g : small_graphs())
        for (Label mu = 0; mu < g.dim(); mu++) {
            auto v = dense::graph_state_vector(g, mu);
            for (int j = 0; j < g.size(); j++) {
                double sign = ((mu >> j) & 1) ? -1 : 1;
                ASSERT_LT((dense::apply_correlation(g, j, v) - sign * v).norm(), 1e-12) << g.name();
            }
        }
}

TEST(oracle, orthonormal_basis) {
    for (auto &g : small_graphs())
        for (Label a = 0; a < g.dim(); a++)
            for (Label b = 0; b < g.dim(); b++) {
                double o = std::norm(dense::graph_state_vector(g, a).dot(dense::graph_state_vector(g, b)));
                ASSERT_NEAR(o, a == b ? 1 : 0, 1e-12);
            }
}

TEST(oracle, ghz_explicit_form) {
    // (|0>|++> + |1>|-->)/sqrt2 with qubit 1 as the centre
    dense::Vec plus(2), minus(2), zero(2), one(2);
    double h = 1 / std::sqrt(2.0);
    plus << h, h;
    minus << h, -h;
    zero << 1, 0;
    one << 0, 1;
    auto tensor = [](const dense::Vec &q1, const dense::Vec &q2, const dense::Vec &q3) {
        dense::Vec v(8);
        for (int x = 0; x < 8; x++)
            v[x] = q1[x & 1] * q2[(x >> 1) & 1] * q3[(x >> 2) & 1];
        return v;
    };
    dense::Vec ghz = h * (tensor(zero, plus, plus) + tensor(one, minus, minus));
    EXPECT_NEAR(std::norm(ghz.dot(dense::graph_state_vector(make_ghz(3), 0))), 1, 1e-12);
}

TEST(oracle, vector_cap) { EXPECT_THROW(dense::graph_state_vector(make_chain(13), 0), std::length_error); }

TEST(oracle, depolarize_keeps_diagonal_and_kills_coherences) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    auto g = make_chain(3);
    for (int trial = 0; trial < 10; trial++) {
        dense::Mat m(8, 8);
        for (int a = 0; a < 8; a++)
            for (int b = 0; b < 8; b++)
                m(a, b) = {nd(rng), nd(rng)};
        dense::Mat rho = m * m.adjoint();
        rho /= rho.trace();
        auto before = dense::graph_diagonal(rho, g);
        auto r = dense::depolarize(rho, g);
        EXPECT_LT(max_diff(before, r.diagonal), 1e-12);
        EXPECT_LT(dense::offdiagonal_norm(r.rho, g), 1e-12);
        EXPECT_TRUE(dense::is_physical(r.rho));
    }
    // graph-diagonal input is a fixed point
    auto p = random_probs(8, rng);
    auto rho = dense::from_labels(g, p);
    EXPECT_LT((dense::depolarize(rho, g).rho - rho).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(oracle, single_round_kills_coherence) {
    auto g = make_chain(2);
    auto v0 = dense::graph_state_vector(g, 0), v1 = dense::graph_state_vector(g, 1);
    dense::Mat c = v0 * v1.adjoint() + v1 * v0.adjoint();
    dense::Mat r = 0.5 * (c + dense::conjugate_pauli(c, bit(0), g.neighbors(0)));
    EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(oracle, cnot_permutes_labels) {
    // For each party the CNOT directions used in P1 map |Psi_mu>|Psi_nu> to
    // |Psi_{mu_A, mu_B ^ nu_B}>|Psi_{nu_A ^ mu_A, nu_B}>.
    for (auto g : {make_ghz(3), make_chain(3), make_chain(2)}) {
        int n = g.size();
        for (Label mu = 0; mu < g.dim(); mu++)
            for (Label nu = 0; nu < g.dim(); nu++) {
                auto v1 = dense::graph_state_vector(g, mu), v2 = dense::graph_state_vector(g, nu);
                dense::Mat rho = dense::kron(v1 * v1.adjoint(), v2 * v2.adjoint());
                for (int j = 0; j < n; j++)
                    rho = g.is_a(j) ? dense::cnot(rho, n + j, j) : dense::cnot(rho, j, n + j);
                Label m1 = (mu & g.a_mask()) | ((mu ^ nu) & g.b_mask());
                Label m2 = ((mu ^ nu) & g.a_mask()) | (nu & g.b_mask());
                auto w1 = dense::graph_state_vector(g, m1), w2 = dense::graph_state_vector(g, m2);
                dense::Mat expect = dense::kron(w1 * w1.adjoint(), w2 * w2.adjoint());
                ASSERT_LT((rho - expect).cwiseAbs().maxCoeff(), 1e-12) << g.name() << " " << mu << " " << nu;
            }
    }
}

TEST(oracle, pure_input_is_fixed) {
    auto g = make_chain(3);
    std::vector<double> p(8, 0.0);
    p[0] = 1;
    for (bool p1 : {true, false}) {
        auto r = dense::subprotocol(g, p, p1, 1);
        EXPECT_NEAR(r.success_prob, 1, 1e-12);
        EXPECT_NEAR(r.diagonal[0], 1, 1e-12);
    }
}

TEST(oracle, ghz3_werner_two_steps) {
    auto g = share(make_ghz(3));
    auto s = make_state(g, StateFamily::make_werner(0.7));
    auto f1 = apply_subprotocol(s, Subprotocol::P1);
    auto d1 = dense::subprotocol(*g, s.probs(), true, 1);
    EXPECT_LT(max_diff(f1.state.probs(), d1.diagonal), 1e-12);
    EXPECT_NEAR(f1.success_prob, d1.success_prob, 1e-12);
    auto f2 = apply_subprotocol(f1.state, Subprotocol::P2);
    auto d2 = dense::subprotocol(*g, d1.diagonal, false, 1);
    EXPECT_LT(max_diff(f2.state.probs(), d2.diagonal), 1e-12);
    EXPECT_NEAR(f2.success_prob, d2.success_prob, 1e-12);
}

TEST(oracle, fast_path_matches_on_random_states) {
    std::mt19937_64 rng(11);
    for (auto &g0 : small_graphs()) {
        if (g0.size() > 4)
            continue;
        auto g = share(g0);
        for (int trial = 0; trial < 10; trial++) {
            auto s = gpur::testing::random_state(g, rng, trial % 3 == 0);
            for (double p : {1.0, 0.97})
                for (auto w : {Subprotocol::P1, Subprotocol::P2}) {
                    auto f = apply_subprotocol(s, w, p);
                    auto d = dense::subprotocol(*g, s.probs(), w == Subprotocol::P1, p);
                    ASSERT_LT(max_diff(f.state.probs(), d.diagonal), 1e-12) << g->name();
                    ASSERT_NEAR(f.success_prob, d.success_prob, 1e-12) << g->name();
                }
        }
    }
}

TEST(oracle, distinct_copies_match) {
    std::mt19937_64 rng(12);
    auto g = share(make_chain(4));
    for (int trial = 0; trial < 10; trial++) {
        auto a = gpur::testing::random_state(g, rng), b = gpur::testing::random_state(g, rng);
        for (auto w : {Subprotocol::P1, Subprotocol::P2}) {
            auto f = combine_copies(a, b, w);
            auto d = dense::subprotocol(*g, a.probs(), b.probs(), w == Subprotocol::P1, 1);
            ASSERT_LT(max_diff(f.state.probs(), d.diagonal), 1e-12);
            ASSERT_NEAR(f.success_prob, d.success_prob, 1e-12);
        }
    }
}
