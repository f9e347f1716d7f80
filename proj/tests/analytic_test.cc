#include "gpur/analytic.hpp"

#include <cstdint>

#include "gpur/purification.hpp"
#include "gtest/gtest.h"

using namespace gpur;

TEST(ghz_binary, critical_values) {
    EXPECT_EQ(ghz_p_crit(2), 0.5);
    EXPECT_NEAR(ghz_p_crit(3), 0.70711, 1e-5);
    for (int n = 2; n <= 20; n++)
        EXPECT_NEAR(ghz_binary(0.5, 0.9, n).p_crit, std::pow(0.5, 1.0 / (n - 1)), 1e-12);
    EXPECT_THROW(ghz_p_crit(1), std::invalid_argument);
}

TEST(ghz_binary, noiseless_step) {
    auto r = ghz_binary(0.6, 1, 5);
    EXPECT_NEAR(r.x_next_fidelity, 0.64 / 0.68, 1e-15);
    EXPECT_NEAR(r.x_next_fidelity, 0.94117, 1e-5);
    ASSERT_TRUE(r.x_max);
    EXPECT_NEAR(*r.x_max, 1, 1e-15);
}

TEST(ghz_binary, majority_term_is_amplified) {
    for (int n : {2, 3, 6}) {
        EXPECT_NEAR(ghz_binary(0, 1, n).x_next_fidelity, 0.5, 1e-15);
        for (double x = 0.01; x < 1; x += 0.01)
            EXPECT_GT(ghz_binary(x, 1, n).x_next_fidelity, x + (1 - x) / 2);
    }
}

TEST(ghz_binary, no_fixed_point_below_threshold) {
    EXPECT_FALSE(ghz_binary(0.9, 0.7, 3).x_max);
    auto r = ghz_binary(0.9, 0.95, 3);
    ASSERT_TRUE(r.x_max);
    double pn = 0.95 * 0.95;
    // x_max is the fixed point of x -> noisy step (in the x parametrisation)
    double x = *r.x_max, xs = x * pn;
    double hi = (1 + xs) / 2, lo = (1 - xs) / 2;
    double next = hi * hi / (hi * hi + lo * lo);
    EXPECT_NEAR(2 * next - 1, x, 1e-12);
}

TEST(closed_cluster, noiseless_limit) {
    for (int m : {3, 5, 11}) {
        auto c = closed_cluster(1, m);
        EXPECT_NEAR(c.a, 1 - std::pow(0.5, m), 1e-15);
        EXPECT_NEAR(c.c, 1 - std::pow(0.5, m), 1e-15);
        EXPECT_TRUE(c.purifiable);
        EXPECT_LE(c.x_minus, 0);
        EXPECT_GE(c.x_plus, 1 - 1e-12);
    }
}

TEST(closed_cluster, fully_noisy) {
    for (int m : {3, 7}) {
        auto c = closed_cluster(0.5, m);
        EXPECT_NEAR(c.a, std::pow(0.5, m), 1e-15);
        EXPECT_LE(c.delta, 0);
        EXPECT_FALSE(c.purifiable);
    }
}

TEST(closed_cluster, argument_checks) {
    EXPECT_THROW(closed_cluster(0.9, 4), std::invalid_argument);
    EXPECT_THROW(closed_cluster(0.9, 1), std::invalid_argument);
    EXPECT_THROW(closed_cluster(1.1, 3), std::invalid_argument);
    EXPECT_THROW(closed_cluster_qcrit(6), std::invalid_argument);
}

TEST(closed_cluster, binomial_identity) {
    for (int m = 1; m <= 25; m += 2) {
        std::uint64_t s = 0;
        for (int k = 0; k <= (m - 1) / 2; k++)
            s += std::uint64_t(binomial(m, k));
        EXPECT_EQ(s, std::uint64_t{1} << (m - 1));
    }
    EXPECT_NEAR(binomial(80, 40) / 1.0750720873282e23, 1, 1e-9);
}

TEST(closed_cluster, gamma_closed_form) {
    for (int m : {3, 5, 9, 15})
        for (double q : {0.6, 0.75, 0.9, 0.99})
            for (double x : {0.0, 0.1, 0.5, 0.9}) {
                auto c = closed_cluster(q, m);
                EXPECT_NEAR(cluster_gamma_direct(q, m, x), x * x * c.c + c.b, 1e-12);
            }
}

// The gain-neutral points bound the window; check against the label-level simulation of a
// bit-flip-noisy P1 step on a closed chain.
TEST(closed_cluster, boundaries_are_gain_neutral) {
    for (int m : {3, 5}) {
        auto g = share(make_chain(2 * m, true));
        for (double q : {0.85, 0.9, 0.95}) {
            auto c = closed_cluster(q, m);
            ASSERT_TRUE(c.purifiable);
            std::vector<NoiseChannel> noise;
            for (int j = 0; j < g->size(); j++)
                if (!g->is_a(j))
                    noise.push_back({NoiseChannel::bitflip, 2 * q - 1, j});
            auto gain = [&](double x) {
                auto s = make_state(g, StateFamily::make_binary(x + (1 - x) * std::pow(0.5, m)));
                return apply_subprotocol(s, Subprotocol::P1, noise).state.fidelity() - s.fidelity();
            };
            for (double x : {c.x_minus, c.x_plus})
                if (x > 0 && x < 1)
                    EXPECT_NEAR(gain(x), 0, 1e-6) << m << " " << q << " " << x;
            double lo = std::max(c.x_minus, 0.0), hi = std::min(c.x_plus, 1.0);
            EXPECT_GT(gain(0.5 * (lo + hi)), 0);
            if (c.x_plus < 0.99)
                EXPECT_LT(gain(std::min(1.0, c.x_plus + 0.01)), 0);
        }
    }
}

TEST(closed_cluster, interval_at_q09) {
    for (int m = 3; m <= 49; m += 2) {
        auto c = closed_cluster(0.9, m);
        int n = 2 * m;
        EXPECT_LE(c.x_minus, std::pow(2.0, -0.33 * n)) << m;
        EXPECT_GE(c.x_plus, std::pow(2.0, -0.009 * n)) << m;
    }
}

TEST(closed_cluster, qcrit_brackets_the_window) {
    for (int m = 3; m <= 49; m += 2) {
        double q = closed_cluster_qcrit(m);
        EXPECT_GT(q, 0.5);
        EXPECT_LT(q, 1);
        EXPECT_TRUE(closed_cluster(q + 1e-3, m).purifiable) << m;
        EXPECT_FALSE(closed_cluster(q - 1e-3, m).purifiable) << m;
    }
}
