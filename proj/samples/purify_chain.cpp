// Purify a noisy 5-qubit chain with imperfect gates and print the fidelity after each step.

#include <cstdio>

#include "gpur/purification.hpp"
#include "gpur/threshold.hpp"

int main() {
    using namespace gpur;
    auto g = share(make_chain(5));
    auto start = make_state(g, StateFamily::make_channel_noise(0.95));
    double p = 0.99;

    auto tr = run_sequence(start, Strategy::make_alternate(Subprotocol::P1), p);
    std::printf("start  F=%.6f\n", tr.initial_fidelity);
    for (auto &r : tr.rows)
        std::printf("%-3d %s F=%.6f  kept=%.4f  copies/out=%.1f\n", r.step, to_string(r.which), r.fidelity,
                    r.success_prob, r.cumulative_cost);
    std::printf("outcome: %s\n", to_string(tr.outcome));

    auto fm = find_fmax(g, p);
    if (fm.f_max)
        std::printf("reachable fidelity at p=%.2f: %.6f\n", p, *fm.f_max);
}
