#include "gpur/lattice.hpp"

#include "gpur/dense_oracle.hpp"
#include "gtest/gtest.h"
#include "test_util.h"

using namespace gpur;
using gpur::testing::max_diff;

TEST(create_chain, perfect_gates_give_delta) {
    for (auto sched : {CreationNoise::table_fit, CreationNoise::before_each_gate})
        for (int n = 2; n <= 12; n++) {
            auto c = create_chain(n, 1, sched);
            EXPECT_EQ(c.fidelity, 1);
            EXPECT_EQ(c.state.probs()[0], 1);
        }
}

TEST(create_chain, pair_closed_form) {
    for (double p : {0.9, 0.99, 0.999}) {
        double f = (1 + p) / 2 * (1 + p) / 2;
        EXPECT_NEAR(create_chain(2, p).fidelity, f, 1e-15);
        EXPECT_NEAR(create_chain(2, p, CreationNoise::before_each_gate).fidelity, f, 1e-15);
    }
    EXPECT_NEAR(create_chain(2, 0.99).fidelity, 0.9900, 5e-5);
}

TEST(create_chain, table_values) {
    EXPECT_NEAR(create_chain(6, 0.99).fidelity, 0.9324, 5e-4);
    EXPECT_EQ(create_chain(4, 1).fidelity, 1);
}

TEST(create_chain, matches_dense) {
    for (auto sched : {CreationNoise::table_fit, CreationNoise::before_each_gate})
        for (int n = 2; n <= 6; n++)
            for (double p : {0.9, 0.99}) {
                auto c = create_chain(n, p, sched);
                auto d = dense::create_chain(n, p, noise_after_flags(n, sched));
                EXPECT_LT(max_diff(c.state.probs(), d), 1e-12) << n << " " << to_string(sched);
            }
}

TEST(create_chain, rejects_bad_input) {
    EXPECT_THROW(create_chain(1, 0.9), std::invalid_argument);
    EXPECT_THROW(create_chain(3, 1.5), std::invalid_argument);
}

TEST(lattice_fmax, table_values) {
    EXPECT_NEAR(lattice_fmax(3, 0.99).f_max, 0.9836, 0.002);
    EXPECT_NEAR(lattice_fmax(5, 0.99).f_max, 0.9734, 0.002);
    EXPECT_NEAR(lattice_fmax(2, 1).f_max, 1, 1e-9);
}

TEST(pumping, identical_inputs_reduce_to_two_copy_step) {
    auto g = share(make_chain(4));
    auto s = make_state(g, StateFamily::make_werner(0.8));
    auto rows = pumping_run(s, 0.98, 1);
    auto e = apply_subprotocol(s, Subprotocol::P1, 0.98);
    EXPECT_NEAR(rows[0].fidelity, e.state.fidelity(), 1e-14);
    EXPECT_NEAR(rows[0].success_prob, e.success_prob, 1e-14);
}

TEST(pumping, werner_saturates_below_one) {
    auto g = share(make_chain(4));
    auto rows = pumping_run(make_state(g, StateFamily::make_werner(0.8)), 1, 40);
    ASSERT_EQ(rows.size(), 40u);
    double f0 = make_state(g, StateFamily::make_werner(0.8)).fidelity();
    EXPECT_GT(rows.back().fidelity, f0);
    EXPECT_LT(rows.back().fidelity, 1 - 1e-3);
    EXPECT_NEAR(rows.back().fidelity, rows[rows.size() - 3].fidelity, 1e-9);
}

TEST(pumping, pure_input_stays_pure) {
    auto g = share(make_chain(4));
    for (auto &r : pumping_run(make_state(g, StateFamily::make_pure()), 1, 10))
        EXPECT_EQ(r.fidelity, 1);
}

TEST(pumping, noisy_creation_gains_nothing) {
    double f = create_chain(4, 0.99).fidelity;
    for (auto &r : pumping_run(4, 0.99, 20)) {
        EXPECT_FALSE(r.failed);
        EXPECT_LE(r.fidelity, f + 1e-12) << r.round;
    }
}
