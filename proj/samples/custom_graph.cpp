// Load a graph from an edge list, check which states the protocol can still purify, and
// compare with the hashing yield.

#include <cstdio>
#include <sstream>

#include "gpur/threshold.hpp"

int main() {
    using namespace gpur;
    // a 6-cycle with a chord between opposite vertices
    std::istringstream src(R"(# hexagon with chord
n 6
1 2
2 3
3 4
4 5
5 6
6 1
1 4
)");
    auto g = share(parse_edge_list(src, "hexagon+chord"));
    std::printf("%s: %d vertices, |A|=%d |B|=%d\n", g->name().c_str(), g->size(), g->a_count(), g->b_count());

    auto rec = find_threshold(g, ScanKind::x_min);
    std::printf("Werner threshold x_min=%.5f (F_min=%.5f)\n", rec.threshold.value, rec.f_min);
    for (double x : {0.5, 0.7, 0.8, 0.9}) {
        auto s = make_state(g, StateFamily::make_werner(x));
        std::printf("x=%.2f  F=%.4f  hashing yield=%.4f\n", x, s.fidelity(), hashing_yield(s));
    }
}
