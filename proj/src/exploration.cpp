#include "percolab/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace percolab {

BfsTrace bfs_explore(const Graph& g, const std::function<bool(EdgeIndex)>& coin,
                     std::span<const Vertex> sigma) {
    const Vertex n = g.vertex_count();
    if (sigma.size() != n) fail(Errc::InvalidPermutation, "order has wrong length");
    std::vector<std::uint32_t> pos(n, UINT32_MAX);
    for (std::uint32_t i = 0; i < n; ++i) {
        const Vertex v = sigma[i];
        if (v >= n || pos[v] != UINT32_MAX)
            fail(Errc::InvalidPermutation, "order is not a permutation of the vertices");
        pos[v] = i;
    }

    BfsTrace trace;
    trace.order.assign(sigma.begin(), sigma.end());
    std::vector<std::uint8_t> visited(n, 0);
    std::vector<std::uint32_t> label(n, 0);  // seed index per vertex
    std::deque<Vertex> queue;
    std::uint64_t time = 0;
    std::uint32_t next_seed = 0;  // position in sigma of the next unexplored vertex
    std::uint32_t comp = 0;
    std::vector<Vertex> candidates;

    while (true) {
        if (queue.empty()) {
            while (next_seed < n && visited[sigma[next_seed]]) ++next_seed;
            if (next_seed == n) break;
            const Vertex seed = sigma[next_seed];
            visited[seed] = 1;
            label[seed] = comp;
            trace.component_starts.push_back(time);
            queue.push_back(seed);
            ++comp;
            continue;
        }
        const Vertex v = queue.front();
        queue.pop_front();
        candidates.clear();
        for (Vertex u : g.neighbors(v))
            if (!visited[u]) candidates.push_back(u);
        std::sort(candidates.begin(), candidates.end(),
                  [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
        for (Vertex u : candidates) {
            const EdgeIndex e = *g.edge_index(v, u);
            const bool kept = coin(e);
            trace.queries.push_back({++time, e, kept});
            if (kept) {
                visited[u] = 1;
                label[u] = label[v];
                queue.push_back(u);
                trace.forest_edges.push_back(e);
            }
        }
    }
    trace.census = census_from_labels(label);
    return trace;
}

BfsTrace bfs_explore(const Graph& g, const BitMask& mask, std::span<const Vertex> sigma) {
    if (mask.bit_count() != g.edge_count())
        fail(Errc::MaskLengthMismatch, "mask length does not match edge count");
    return bfs_explore(g, [&mask](EdgeIndex e) { return mask.test(e); }, sigma);
}

SetCensus census_sets(const Graph& g, const PercolationSample& sample, double delta) {
    const auto d_opt = g.regular_degree();
    if (!d_opt || *d_opt < 2)
        fail(Errc::NotRegular, "set census requires a regular graph of degree >= 2");
    if (!(delta > 0.0 && delta < 1.0))
        fail(Errc::InvalidParams, "delta must lie in (0,1)");
    const double d = static_cast<double>(*d_opt);

    SetCensus out;
    out.delta = delta;
    const double ln_d = std::log(d);
    out.small_threshold = static_cast<std::uint64_t>(std::floor(ln_d * ln_d));
    out.large_threshold = static_cast<std::uint64_t>(std::floor(delta * d));
    out.heavy_threshold = static_cast<std::uint64_t>(std::floor(std::pow(delta, 5) * d));
    out.census = components(g, &sample.keep);

    const Vertex n = g.vertex_count();
    out.v_small = VertexSet(n);
    out.v_large = VertexSet(n);
    out.w_large = VertexSet(n);
    std::vector<std::uint64_t> comp_size(n);
    for (Vertex v = 0; v < n; ++v) {
        comp_size[v] = out.census.sizes[out.census.component_id[v]];
        if (comp_size[v] <= out.small_threshold) out.v_small.add(v);
        if (comp_size[v] >= out.large_threshold) out.v_large.add(v);
    }
    for (Vertex v = 0; v < n; ++v) {
        std::uint64_t heavy = 0;
        for (Vertex u : g.neighbors(v)) heavy += out.v_large.contains(u);
        if (heavy >= out.heavy_threshold) out.w_large.add(v);
    }
    return out;
}

ComponentMetrics component_metrics(const ComponentCensus& census,
                                   std::span<const SizeBand> bands) {
    ComponentMetrics m;
    m.l1 = census.l1();
    m.l2 = census.l2();
    m.component_count = census.count();
    m.band_mass.assign(bands.size(), 0);
    for (const std::uint32_t size : census.sizes)
        for (std::size_t b = 0; b < bands.size(); ++b)
            if (size >= bands[b].lo && size <= bands[b].hi) m.band_mass[b] += size;
    return m;
}

}  // namespace percolab
