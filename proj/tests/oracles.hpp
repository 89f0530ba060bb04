// Independent oracles used by the tests. These deliberately avoid the
// library's own implementation paths: the census oracle is a plain BFS over
// an adjacency-matrix view, the isoperimetry oracle iterates subsets with a
// binary counter and recomputes each boundary from scratch, and the survival
// oracle is a separate bisection on the raw fixed-point equation.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "percolab/bitmask.hpp"
#include "percolab/graph.hpp"
#include "percolab/rng.hpp"

namespace oracles {

using percolab::BitMask;
using percolab::Graph;
using percolab::Vertex;
using percolab::VertexPair;

// BFS census over the masked subgraph, canonicalized the same way the
// library promises: component ids by decreasing size, ties by smallest
// contained vertex.
inline percolab::ComponentCensus bfs_census(const Graph& g, const BitMask* mask) {
    const Vertex n = g.vertex_count();
    std::vector<std::vector<Vertex>> adj(n);
    for (percolab::EdgeIndex i = 0; i < g.edge_count(); ++i) {
        if (mask && !mask->test(i)) continue;
        const auto e = g.edge(i);
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<std::uint32_t> label(n, UINT32_MAX);
    std::uint32_t next = 0;
    for (Vertex s = 0; s < n; ++s) {
        if (label[s] != UINT32_MAX) continue;
        std::queue<Vertex> q;
        q.push(s);
        label[s] = next;
        while (!q.empty()) {
            const Vertex v = q.front();
            q.pop();
            for (Vertex u : adj[v])
                if (label[u] == UINT32_MAX) {
                    label[u] = next;
                    q.push(u);
                }
        }
        ++next;
    }
    return percolab::census_from_labels(label);
}

// Exact isoperimetric minimum over sizes in [lo, hi] by binary-counter subset
// iteration (n <= 20), recomputing every boundary from the edge list. Returns
// (boundary, size, members of the lexicographically smallest minimizer).
struct IsoOracleResult {
    std::uint64_t boundary = 0;
    std::uint64_t size = 0;
    std::vector<Vertex> witness;
};

inline IsoOracleResult iso_oracle(const Graph& g, std::uint32_t lo, std::uint32_t hi) {
    const Vertex n = g.vertex_count();
    IsoOracleResult best;
    bool have = false;
    std::vector<std::vector<Vertex>> minimizers;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const unsigned size = static_cast<unsigned>(__builtin_popcountll(mask));
        if (size < lo || size > hi) continue;
        std::uint64_t boundary = 0;
        for (percolab::EdgeIndex i = 0; i < g.edge_count(); ++i) {
            const auto e = g.edge(i);
            const bool iu = mask & (std::uint64_t{1} << e.u);
            const bool iv = mask & (std::uint64_t{1} << e.v);
            boundary += iu != iv;
        }
        std::vector<Vertex> members;
        for (Vertex v = 0; v < n; ++v)
            if (mask & (std::uint64_t{1} << v)) members.push_back(v);
        if (!have || boundary * best.size < best.boundary * size) {
            best = {boundary, size, members};
            minimizers.assign(1, members);
            have = true;
        } else if (boundary * best.size == best.boundary * size) {
            minimizers.push_back(members);
            if (std::lexicographical_compare(members.begin(), members.end(),
                                             best.witness.begin(), best.witness.end()))
                best = {boundary, size, members};
        }
    }
    return best;
}

// Root of y = 1 - exp(-(1+eps)y) in (0,1), plain formulation on [1e-9, 1].
inline double survival_oracle(double eps, int iterations = 200) {
    double lo = 1e-9, hi = 1.0;
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double g = mid - 1.0 + std::exp(-(1.0 + eps) * mid);
        if (g < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Seeded Erdos-Renyi-style test graph with edge probability num/den.
inline Graph random_graph(Vertex n, std::uint32_t num, std::uint32_t den,
                          std::uint64_t seed) {
    percolab::SplitMix rng(percolab::stream_key(seed, "test-graph"));
    std::vector<VertexPair> pairs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.below(den) < num) pairs.push_back({u, v});
    return Graph::build(n, std::move(pairs));
}

inline BitMask random_mask(std::uint64_t bits, std::uint32_t num, std::uint32_t den,
                           std::uint64_t seed) {
    percolab::SplitMix rng(percolab::stream_key(seed, "test-mask"));
    BitMask mask(bits);
    for (std::uint64_t i = 0; i < bits; ++i)
        if (rng.below(den) < num) mask.set(i, true);
    return mask;
}

inline std::vector<Vertex> shuffled_order(Vertex n, std::uint64_t seed) {
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    percolab::SplitMix rng(percolab::stream_key(seed, "test-order"));
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
    return order;
}

}  // namespace oracles
