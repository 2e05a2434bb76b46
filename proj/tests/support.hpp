// Shared helpers for the unit tests: brute-force oracles that do not go
// through the library code under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "skewflow/graph.hpp"
#include "skewflow/random.hpp"
#include "skewflow/sequence.hpp"
#include "skewflow/signal.hpp"

namespace testing {

using namespace skewflow;

// reach[u][v]: v reachable from u by a path with at least one edge.
inline std::vector<std::vector<bool>> reachability(const DirectedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) r[u][v] = g.has_edge(u, v);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (r[i][k] && r[k][j]) r[i][j] = true;
    return r;
}

// Measure of {s in [lo, hi) : f(s) != g(s)} computed from the union of both
// signals' breakpoints, sampling each piece at its midpoint.
inline double mismatch_measure(const SwitchingSignal& f, const SwitchingSignal& g, double lo, double hi) {
    std::vector<double> cuts{lo, hi};
    for (const auto* s : {&f, &g}) {
        const double h = s->step();
        const double first = std::ceil((lo - s->offset()) / h) - 1;
        for (double k = first; s->offset() + k * h < hi; k += 1.0) {
            const double b = s->offset() + k * h;
            if (b > lo && b < hi) cuts.push_back(b);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        if (f.value_at(mid) != g.value_at(mid)) total += cuts[i + 1] - cuts[i];
    }
    return total;
}

// Weighted mismatch sum with each cell's measure taken from the breakpoint
// oracle, over |i| <= radius.
inline double delta_oracle(const SwitchingSignal& f, const SwitchingSignal& g, int radius) {
    const double h = f.step();
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i)
        sum += mismatch_measure(f, g, i * h, (i + 1) * h) / h * std::pow(4.0, -std::abs(i));
    return sum;
}

} // namespace testing
