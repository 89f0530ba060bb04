#include "percolab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace percolab {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::SelfLoop: return "SelfLoop";
        case Errc::DuplicateEdge: return "DuplicateEdge";
        case Errc::VertexOutOfRange: return "VertexOutOfRange";
        case Errc::SetsNotDisjoint: return "SetsNotDisjoint";
        case Errc::MaskLengthMismatch: return "MaskLengthMismatch";
        case Errc::FormatError: return "FormatError";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::ParityViolation: return "ParityViolation";
        case Errc::DivisibilityViolation: return "DivisibilityViolation";
        case Errc::RepairFailed: return "RepairFailed";
        case Errc::InvalidProbability: return "InvalidProbability";
        case Errc::GraphMismatch: return "GraphMismatch";
        case Errc::DuplicateRound: return "DuplicateRound";
        case Errc::InvalidPermutation: return "InvalidPermutation";
        case Errc::NotRegular: return "NotRegular";
        case Errc::NotConnected: return "NotConnected";
        case Errc::NonPositiveEpsilon: return "NonPositiveEpsilon";
        case Errc::SubcriticalMean: return "SubcriticalMean";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::GuaranteeViolated: return "GuaranteeViolated";
        case Errc::UnknownMetric: return "UnknownMetric";
        case Errc::UnknownPredicate: return "UnknownPredicate";
        case Errc::OutputUnwritable: return "OutputUnwritable";
    }
    return "Error";
}

namespace {

std::string pair_str(Vertex u, Vertex v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

Graph Graph::build(Vertex n, std::vector<VertexPair> pairs) {
    for (auto& e : pairs) {
        if (e.u >= n || e.v >= n)
            fail(Errc::VertexOutOfRange, "edge " + pair_str(e.u, e.v) + " with n=" +
                                             std::to_string(n));
        if (e.u == e.v) fail(Errc::SelfLoop, "edge " + pair_str(e.u, e.v));
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    const auto lex = [](const VertexPair& a, const VertexPair& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    };
    if (!std::is_sorted(pairs.begin(), pairs.end(), lex))
        std::sort(pairs.begin(), pairs.end(), lex);
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i] == pairs[i - 1])
            fail(Errc::DuplicateEdge, "edge " + pair_str(pairs[i].u, pairs[i].v));

    Graph g;
    g.n_ = n;
    g.eu_.resize(pairs.size());
    g.ev_.resize(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        g.eu_[i] = pairs[i].u;
        g.ev_[i] = pairs[i].v;
    }
    pairs.clear();
    pairs.shrink_to_fit();
    g.build_adjacency();
    return g;
}

void Graph::build_adjacency() {
    const std::size_t m = eu_.size();
    adj_off_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
        ++adj_off_[eu_[i] + 1];
        ++adj_off_[ev_[i] + 1];
    }
    std::partial_sum(adj_off_.begin(), adj_off_.end(), adj_off_.begin());
    adj_.resize(2 * m);
    std::vector<std::uint64_t> cursor(adj_off_.begin(), adj_off_.end() - 1);
    // Lexicographic edge order makes each neighbor list come out sorted.
    for (std::size_t i = 0; i < m; ++i) {
        adj_[cursor[eu_[i]]++] = ev_[i];
        adj_[cursor[ev_[i]]++] = eu_[i];
    }
    row_off_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (std::size_t i = 0; i < m; ++i) ++row_off_[eu_[i] + 1];
    std::partial_sum(row_off_.begin(), row_off_.end(), row_off_.begin());
}

std::optional<Vertex> Graph::regular_degree() const {
    if (n_ == 0) return std::nullopt;
    const Vertex d = degree(0);
    for (Vertex v = 1; v < n_; ++v)
        if (degree(v) != d) return std::nullopt;
    return d;
}

std::optional<EdgeIndex> Graph::edge_index(Vertex u, Vertex v) const {
    if (u == v || u >= n_ || v >= n_) return std::nullopt;
    if (u > v) std::swap(u, v);
    const auto first = ev_.begin() + static_cast<std::ptrdiff_t>(row_off_[u]);
    const auto last = ev_.begin() + static_cast<std::ptrdiff_t>(row_off_[u + 1]);
    const auto it = std::lower_bound(first, last, v);
    if (it == last || *it != v) return std::nullopt;
    return static_cast<EdgeIndex>(it - ev_.begin());
}

Graph Graph::read_edge_list(std::istream& in) {
    std::uint64_t n = 0, m = 0;
    if (!(in >> n >> m)) fail(Errc::FormatError, "expected header \"n m\"");
    if (n > 0xFFFFFFFFull) fail(Errc::FormatError, "vertex count too large");
    std::vector<VertexPair> pairs;
    pairs.reserve(m);
    std::uint64_t pu = 0, pv = 0;
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint64_t u = 0, v = 0;
        if (!(in >> u >> v))
            fail(Errc::FormatError, "expected edge on line " + std::to_string(i + 2));
        const std::string where = " on line " + std::to_string(i + 2);
        if (u >= n || v >= n)
            fail(Errc::FormatError, "vertex out of range" + where);
        if (u == v) fail(Errc::FormatError, "self-loop" + where);
        if (u > v) fail(Errc::FormatError, "edge not normalized (u<v required)" + where);
        if (i > 0 && (u < pu || (u == pu && v <= pv)))
            fail(Errc::FormatError, "edges not in canonical sorted order" + where);
        pu = u;
        pv = v;
        pairs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    return build(static_cast<Vertex>(n), std::move(pairs));
}

Graph Graph::read_edge_list_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::FormatError, "cannot open " + path.string());
    return read_edge_list(in);
}

void Graph::write_edge_list(std::ostream& out) const {
    out << n_ << ' ' << eu_.size() << '\n';
    for (std::size_t i = 0; i < eu_.size(); ++i)
        out << eu_[i] << ' ' << ev_[i] << '\n';
}

void Graph::write_edge_list_file(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) fail(Errc::OutputUnwritable, "cannot open " + path.string());
    write_edge_list(out);
    out.flush();
    if (!out) fail(Errc::OutputUnwritable, "write failed for " + path.string());
}

VertexSet::VertexSet(Vertex universe, std::initializer_list<Vertex> members)
    : in_(universe, 0) {
    for (Vertex v : members) add(v);
}

VertexSet VertexSet::from_members(Vertex universe, std::span<const Vertex> members) {
    VertexSet s(universe);
    for (Vertex v : members) s.add(v);
    return s;
}

VertexSet VertexSet::complement() const {
    VertexSet s(universe());
    for (Vertex v = 0; v < universe(); ++v)
        if (!contains(v)) s.add(v);
    return s;
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    out.reserve(count_);
    for (Vertex v = 0; v < universe(); ++v)
        if (in_[v]) out.push_back(v);
    return out;
}

std::uint64_t edge_boundary(const Graph& g, const VertexSet& s) {
    if (s.universe() != g.vertex_count())
        fail(Errc::VertexOutOfRange, "set universe does not match graph");
    const auto us = g.edge_sources();
    const auto vs = g.edge_targets();
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < us.size(); ++i)
        count += s.contains(us[i]) != s.contains(vs[i]);
    return count;
}

std::uint64_t cut_edges(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.universe() != g.vertex_count() || b.universe() != g.vertex_count())
        fail(Errc::VertexOutOfRange, "set universe does not match graph");
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (a.contains(v) && b.contains(v))
            fail(Errc::SetsNotDisjoint, "vertex " + std::to_string(v) + " in both sets");
    const auto us = g.edge_sources();
    const auto vs = g.edge_targets();
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < us.size(); ++i) {
        const Vertex u = us[i], v = vs[i];
        count += (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u));
    }
    return count;
}

namespace {

class Dsu {
public:
    explicit Dsu(std::uint32_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];  // path halving
            x = parent_[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

}  // namespace

ComponentCensus census_from_labels(std::span<const std::uint32_t> labels) {
    const std::uint32_t n = static_cast<std::uint32_t>(labels.size());
    // First pass in vertex order: the first vertex seen with a label is the
    // smallest member of its component.
    std::vector<std::uint32_t> order(n, UINT32_MAX);  // label -> dense id
    struct Comp {
        std::uint32_t min_vertex;
        std::uint32_t size;
        std::uint32_t id;
    };
    std::vector<Comp> comps;
    std::vector<std::uint32_t> dense(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t lab = labels[v];
        if (order[lab] == UINT32_MAX) {
            order[lab] = static_cast<std::uint32_t>(comps.size());
            comps.push_back({v, 0, 0});
        }
        dense[v] = order[lab];
        ++comps[order[lab]].size;
    }
    std::vector<std::uint32_t> perm(comps.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (comps[a].size != comps[b].size) return comps[a].size > comps[b].size;
        return comps[a].min_vertex < comps[b].min_vertex;
    });
    ComponentCensus census;
    census.sizes.resize(comps.size());
    for (std::uint32_t rank = 0; rank < perm.size(); ++rank) {
        comps[perm[rank]].id = rank;
        census.sizes[rank] = comps[perm[rank]].size;
    }
    census.component_id.resize(n);
    for (std::uint32_t v = 0; v < n; ++v)
        census.component_id[v] = comps[dense[v]].id;
    return census;
}

ComponentCensus components(const Graph& g, const BitMask* mask) {
    const std::uint32_t n = g.vertex_count();
    if (mask && mask->bit_count() != g.edge_count())
        fail(Errc::MaskLengthMismatch,
             "mask has " + std::to_string(mask->bit_count()) + " bits, graph has " +
                 std::to_string(g.edge_count()) + " edges");
    Dsu dsu(n);
    const auto us = g.edge_sources();
    const auto vs = g.edge_targets();
    if (mask) {
        mask->for_each_set([&](std::uint64_t i) { dsu.unite(us[i], vs[i]); });
    } else {
        for (std::size_t i = 0; i < us.size(); ++i) dsu.unite(us[i], vs[i]);
    }
    std::vector<std::uint32_t> labels(n);
    for (std::uint32_t v = 0; v < n; ++v) labels[v] = dsu.find(v);
    return census_from_labels(labels);
}

}  // namespace percolab
