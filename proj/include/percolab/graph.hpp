#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "percolab/bitmask.hpp"
#include "percolab/error.hpp"

namespace percolab {

using Vertex = std::uint32_t;
using EdgeIndex = std::uint64_t;

struct VertexPair {
    Vertex u = 0;
    Vertex v = 0;
    bool operator==(const VertexPair&) const = default;
};

// Immutable simple graph. Edges are stored as pairs (u, v) with u < v in
// lexicographic order; the canonical index of an edge is its position in that
// order, and every percolation mask and coin stream is keyed off it.
class Graph {
public:
    Graph() = default;

    // Validates, normalises to u < v, and sorts if necessary.
    static Graph build(Vertex n, std::vector<VertexPair> pairs);

    Vertex vertex_count() const { return n_; }
    EdgeIndex edge_count() const { return eu_.size(); }

    VertexPair edge(EdgeIndex i) const { return {eu_[i], ev_[i]}; }
    std::span<const Vertex> edge_sources() const { return eu_; }
    std::span<const Vertex> edge_targets() const { return ev_; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + adj_off_[v], adj_.data() + adj_off_[v + 1]};
    }
    Vertex degree(Vertex v) const {
        return static_cast<Vertex>(adj_off_[v + 1] - adj_off_[v]);
    }

    // Degree if the graph is regular (n >= 1), otherwise nullopt.
    std::optional<Vertex> regular_degree() const;

    std::optional<EdgeIndex> edge_index(Vertex u, Vertex v) const;

    // Canonical edge-list text format: "n m" header, then m lines "u v".
    static Graph read_edge_list(std::istream& in);
    static Graph read_edge_list_file(const std::filesystem::path& path);
    void write_edge_list(std::ostream& out) const;
    void write_edge_list_file(const std::filesystem::path& path) const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && eu_ == other.eu_ && ev_ == other.ev_;
    }

private:
    void build_adjacency();

    Vertex n_ = 0;
    std::vector<Vertex> eu_, ev_;          // canonical edge list
    std::vector<std::uint64_t> adj_off_;   // CSR offsets, size n+1
    std::vector<Vertex> adj_;              // sorted neighbor lists
    std::vector<std::uint64_t> row_off_;   // first edge index with given source
};

// Subset of the vertices of a fixed universe [0, n).
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(Vertex universe) : in_(universe, 0) {}
    VertexSet(Vertex universe, std::initializer_list<Vertex> members);
    static VertexSet from_members(Vertex universe, std::span<const Vertex> members);

    Vertex universe() const { return static_cast<Vertex>(in_.size()); }
    std::uint32_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(Vertex v) const { return in_[v] != 0; }

    void add(Vertex v) {
        if (v >= in_.size()) fail(Errc::VertexOutOfRange, "vertex " + std::to_string(v));
        if (!in_[v]) {
            in_[v] = 1;
            ++count_;
        }
    }
    void remove(Vertex v) {
        if (v < in_.size() && in_[v]) {
            in_[v] = 0;
            --count_;
        }
    }

    VertexSet complement() const;
    std::vector<Vertex> members() const;

    bool operator==(const VertexSet&) const = default;

private:
    std::vector<std::uint8_t> in_;
    std::uint32_t count_ = 0;
};

// Connected-component census. Component ids are canonical: components are
// numbered by decreasing size, ties broken by the smallest contained vertex.
struct ComponentCensus {
    std::vector<std::uint32_t> component_id;  // per vertex
    std::vector<std::uint32_t> sizes;         // descending

    std::uint32_t count() const { return static_cast<std::uint32_t>(sizes.size()); }
    std::uint32_t l1() const { return sizes.empty() ? 0 : sizes[0]; }
    std::uint32_t l2() const { return sizes.size() < 2 ? 0 : sizes[1]; }

    bool operator==(const ComponentCensus&) const = default;
};

// Number of edges with exactly one endpoint in s.
std::uint64_t edge_boundary(const Graph& g, const VertexSet& s);

// Number of edges with one endpoint in a and the other in b (disjoint).
std::uint64_t cut_edges(const Graph& g, const VertexSet& a, const VertexSet& b);

// Census of g, or of the masked subgraph on all n vertices. Union-find based;
// must agree with any BFS census.
ComponentCensus components(const Graph& g, const BitMask* mask = nullptr);

// Canonical census from an arbitrary per-vertex labelling.
ComponentCensus census_from_labels(std::span<const std::uint32_t> labels);

}  // namespace percolab
