#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/percolation.hpp"

namespace percolab {

struct BfsQuery {
    std::uint64_t time = 0;  // 1-based query index
    EdgeIndex edge = 0;
    bool kept = false;
};

struct BfsTrace {
    std::vector<Vertex> order;                    // the vertex order sigma
    std::vector<BfsQuery> queries;                // each edge queried at most once
    std::vector<EdgeIndex> forest_edges;          // accepted edges, a spanning forest
    std::vector<std::uint64_t> component_starts;  // query count when each seed entered Q
    ComponentCensus census;
};

// Queue-based exploration with deferred decisions: the coin for an edge is
// read only at the moment the edge is queried. Head of queue queries its
// still-unexplored neighbors in sigma order; accepted targets join the back
// of the queue; when the queue empties the next sigma-vertex seeds a new
// component. The resulting census equals components() on the same coins.
BfsTrace bfs_explore(const Graph& g, const std::function<bool(EdgeIndex)>& coin,
                     std::span<const Vertex> sigma);

BfsTrace bfs_explore(const Graph& g, const BitMask& mask, std::span<const Vertex> sigma);

// Vertex classification of a percolated regular graph by component size:
//   V_S  components of size <= floor(ln^2 d)
//   V_L  components of size >= floor(delta d)
//   W_L  vertices with >= floor(delta^5 d) host-graph neighbors in V_L
// Thresholds use natural log and floor; comparisons are non-strict.
struct SetCensus {
    double delta = 0.0;
    std::uint64_t small_threshold = 0;
    std::uint64_t large_threshold = 0;
    std::uint64_t heavy_threshold = 0;
    VertexSet v_small;
    VertexSet v_large;
    VertexSet w_large;
    ComponentCensus census;
};

SetCensus census_sets(const Graph& g, const PercolationSample& sample, double delta);

struct SizeBand {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;  // inclusive
};

struct ComponentMetrics {
    std::uint32_t l1 = 0;
    std::uint32_t l2 = 0;
    std::uint32_t component_count = 0;
    std::vector<std::uint64_t> band_mass;  // vertices in components with size in band
};

ComponentMetrics component_metrics(const ComponentCensus& census,
                                   std::span<const SizeBand> bands);

}  // namespace percolab
