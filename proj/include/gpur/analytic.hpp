#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace gpur {

// ---- GHZ under bit flips on the leaves ----

struct GhzBinary {
    double x_next_fidelity;
    std::optional<double> x_max;  // empty when 2 p^(N-1) < 1
    double p_crit;
};

inline double ghz_p_crit(int n) {
    if (n < 2)
        throw std::invalid_argument("GHZ threshold needs N >= 2");
    return std::pow(0.5, 1.0 / (n - 1));
}

inline GhzBinary ghz_binary(double x, double p, int n) {
    if (!(x >= 0 && x <= 1) || !(p >= 0 && p <= 1))
        throw std::invalid_argument("x and p must lie in [0,1]");
    double pn = std::pow(p, n - 1);
    double xs = x * pn;
    double hi = xs + (1 - xs) / 2, lo = (1 - xs) / 2;
    GhzBinary r{hi * hi / (hi * hi + lo * lo), std::nullopt, ghz_p_crit(n)};
    if (2 * pn >= 1)
        r.x_max = std::sqrt(2 * pn - 1) / pn;
    return r;
}

// ---- closed chain of N = 2M vertices, bit flips on the B side ----

inline double binomial(int m, int k) {
    if (k < 0 || k > m)
        return 0;
    if (m <= 60) {
        std::uint64_t r = 1;
        k = std::min(k, m - k);
        for (int i = 1; i <= k; i++)
            r = r * std::uint64_t(m - k + i) / std::uint64_t(i);
        return double(r);
    }
    return std::exp(std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0));
}

struct ClosedCluster {
    double a, b, c, delta;
    double x_minus, x_plus;
    bool purifiable;
};

inline void check_cluster_args(double q, int m) {
    if (m < 3 || m % 2 == 0)
        throw std::invalid_argument("closed-cluster model needs odd M >= 3, got " + std::to_string(m));
    if (!(q >= 0 && q <= 1))
        throw std::invalid_argument("q must lie in [0,1]");
}

inline ClosedCluster closed_cluster(double q, int m) {
    check_cluster_args(q, m);
    double b = std::pow(0.5, m);
    double a = std::pow(q, m) + std::pow(1 - q, m) - b;
    // sum_k C(M,k) q^2k (1-q)^(2M-2k) = (q^2 + (1-q)^2)^M, finite at q = 1
    double c = std::pow(q * q + (1 - q) * (1 - q), m) - b + std::pow(2 * q * (1 - q), m);
    double lin = a * a - b * c;
    double delta = lin * lin + 4 * c * (1 - b) * (2 * a * b - b * (1 - b));
    ClosedCluster r{a, b, c, delta, NAN, NAN, false};
    if (delta > 0) {
        // gain iff C(1-B) x^2 - (A^2 - BC) x - (2AB - B(1-B)) <= 0
        double s = std::sqrt(delta);
        r.x_minus = (lin - s) / (2 * c * (1 - b));
        r.x_plus = (lin + s) / (2 * c * (1 - b));
        r.purifiable = r.x_plus > 0 && r.x_minus <= 1;
    }
    return r;
}

// Coefficients after the B-side bit flips, indexed by k = 0..(M-1)/2; k = M is the flat part.
inline double cluster_lambda_prime(double q, int m, double x, int k) {
    double flat = (1 - x) * std::pow(0.5, m);
    if (k == m)
        return flat;
    return x * (std::pow(q, k) * std::pow(1 - q, m - k) + std::pow(q, m - k) * std::pow(1 - q, k)) + flat;
}

inline double cluster_gamma_direct(double q, int m, double x) {
    check_cluster_args(q, m);
    double g = 0;
    for (int k = 0; k <= (m - 1) / 2; k++) {
        double l = cluster_lambda_prime(q, m, x, k);
        g += binomial(m, k) * l * l;
    }
    double l = cluster_lambda_prime(q, m, x, m);
    return g + std::pow(2.0, m - 1) * l * l;
}

// Smallest q in (1/2, 1) where the discriminant turns positive.
inline double closed_cluster_qcrit(int m, double tol = 1e-12) {
    check_cluster_args(0.75, m);
    auto d = [&](double q) { return closed_cluster(q, m).delta; };
    double lo = 0.5, hi = -1;
    for (int i = 1; i <= 500; i++) {
        double q = 0.5 + i * 1e-3;
        if (d(q) > 0) {
            hi = q;
            break;
        }
        lo = q;
    }
    if (hi < 0)
        throw std::runtime_error("no sign change of the discriminant in (0.5, 1) for M=" + std::to_string(m));
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (d(mid) > 0 ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace gpur
