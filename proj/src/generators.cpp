#include "percolab/generators.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "percolab/rng.hpp"

namespace percolab {

Model model_from_name(const std::string& name) {
    if (name == "complete") return Model::Complete;
    if (name == "bipartite") return Model::Bipartite;
    if (name == "hypercube") return Model::Hypercube;
    if (name == "random-regular") return Model::RandomRegular;
    if (name == "gadget-A" || name == "gadget-a") return Model::GadgetA;
    if (name == "gadget-B" || name == "gadget-b") return Model::GadgetB;
    fail(Errc::InvalidParams, "unknown model \"" + name + "\"");
}

const char* model_name(Model m) {
    switch (m) {
        case Model::Complete: return "complete";
        case Model::Bipartite: return "bipartite";
        case Model::Hypercube: return "hypercube";
        case Model::RandomRegular: return "random-regular";
        case Model::GadgetA: return "gadget-A";
        case Model::GadgetB: return "gadget-B";
    }
    return "?";
}

Graph gen_complete(Vertex n) {
    if (n < 1) fail(Errc::InvalidParams, "complete graph needs n >= 1");
    std::vector<VertexPair> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
    return Graph::build(n, std::move(pairs));
}

Graph gen_bipartite(Vertex a, Vertex b) {
    if (a < 1 || b < 1) fail(Errc::InvalidParams, "bipartite graph needs a,b >= 1");
    std::vector<VertexPair> pairs;
    pairs.reserve(static_cast<std::size_t>(a) * b);
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = 0; v < b; ++v) pairs.push_back({u, static_cast<Vertex>(a + v)});
    return Graph::build(a + b, std::move(pairs));
}

Graph gen_hypercube(std::uint32_t dim) {
    if (dim < 1 || dim > 26) fail(Errc::InvalidParams, "hypercube dimension must be in [1,26]");
    const Vertex n = Vertex{1} << dim;
    std::vector<VertexPair> pairs;
    pairs.reserve(static_cast<std::size_t>(dim) << (dim - 1));
    for (Vertex u = 0; u < n; ++u)
        for (std::uint32_t bit = 0; bit < dim; ++bit)
            if (!(u & (Vertex{1} << bit))) pairs.push_back({u, u | (Vertex{1} << bit)});
    return Graph::build(n, std::move(pairs));
}

namespace {

std::uint64_t pair_key(Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Seeded stub pairing with 2-edge-switch repair. `allowed` adds a structural
// constraint on edges (used to forbid intra-class edges); a pairing that
// violates it counts as a defect just like a loop or a multi-edge.
std::vector<VertexPair> configuration_model(
    Vertex n, std::uint32_t d, SplitMix& rng,
    const std::function<bool(Vertex, Vertex)>& allowed) {
    std::vector<Vertex> stubs(static_cast<std::size_t>(n) * d);
    for (std::size_t i = 0; i < stubs.size(); ++i)
        stubs[i] = static_cast<Vertex>(i / d);
    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng.below(i)]);

    const std::size_t m = stubs.size() / 2;
    std::vector<VertexPair> edges(m);
    std::unordered_map<std::uint64_t, std::uint32_t> count;
    count.reserve(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        edges[i] = {stubs[2 * i], stubs[2 * i + 1]};
        ++count[pair_key(edges[i].u, edges[i].v)];
    }
    const auto defective = [&](const VertexPair& e) {
        return e.u == e.v || count[pair_key(e.u, e.v)] > 1 || !allowed(e.u, e.v);
    };

    std::uint64_t budget = 100ull * n;
    std::vector<std::size_t> bad;
    while (true) {
        bad.clear();
        for (std::size_t i = 0; i < m; ++i)
            if (defective(edges[i])) bad.push_back(i);
        if (bad.empty()) break;
        for (std::size_t i : bad) {
            while (defective(edges[i])) {
                if (budget == 0)
                    fail(Errc::RepairFailed, "switch budget exhausted with defects left");
                --budget;
                const std::size_t j = rng.below(m);
                const bool crossed = rng.next() & 1;
                if (j == i) continue;
                const VertexPair a = edges[i], b = edges[j];
                const VertexPair f1 = crossed ? VertexPair{a.u, b.v} : VertexPair{a.u, b.u};
                const VertexPair f2 = crossed ? VertexPair{a.v, b.u} : VertexPair{a.v, b.v};
                if (f1.u == f1.v || f2.u == f2.v) continue;
                if (!allowed(f1.u, f1.v) || !allowed(f2.u, f2.v)) continue;
                const std::uint64_t k1 = pair_key(f1.u, f1.v);
                const std::uint64_t k2 = pair_key(f2.u, f2.v);
                if (k1 == k2) continue;
                --count[pair_key(a.u, a.v)];
                --count[pair_key(b.u, b.v)];
                if (count[k1] > 0 || count[k2] > 0) {
                    ++count[pair_key(a.u, a.v)];
                    ++count[pair_key(b.u, b.v)];
                    continue;
                }
                ++count[k1];
                ++count[k2];
                edges[i] = f1;
                edges[j] = f2;
            }
        }
    }
    return edges;
}

const auto kAnyEdge = [](Vertex, Vertex) { return true; };

}  // namespace

Graph gen_random_regular(Vertex n, std::uint32_t d, std::uint64_t seed) {
    if (d >= n) fail(Errc::InvalidParams, "need d < n");
    if ((static_cast<std::uint64_t>(n) * d) % 2 != 0)
        fail(Errc::ParityViolation, "n*d must be even");
    SplitMix rng(stream_key(seed, "random-regular"));
    auto pairs = configuration_model(n, d, rng, kAnyEdge);
    return Graph::build(n, std::move(pairs));
}

GenResult gen_gadget_a(std::uint32_t d1, std::uint32_t d, std::uint64_t n,
                       std::uint64_t seed) {
    if (d1 % 2 || d % 2 || n % 2) fail(Errc::ParityViolation, "d1, d, n must be even");
    if (n % (d + 2) != 0) fail(Errc::DivisibilityViolation, "d+2 must divide n");
    if (d1 >= d) fail(Errc::InvalidParams, "need d1 < d");
    if ((d - d1) / 2 > (d + 1) / 2)
        fail(Errc::InvalidParams, "matching does not fit in the clique");
    const Vertex h = static_cast<Vertex>(n / (d + 2));
    if (d1 >= h) fail(Errc::InvalidParams, "core graph needs d1 < n/(d+2)");

    SplitMix rng(stream_key(seed, "gadget-a"));
    auto pairs = configuration_model(h, d1, rng, kAnyEdge);

    const std::uint32_t matched = d - d1;  // vertices covered by the deleted matching
    pairs.reserve(pairs.size() + static_cast<std::size_t>(h) *
                                     ((static_cast<std::size_t>(d) * (d + 1)) / 2 -
                                      matched / 2 + matched));
    GenResult result;
    for (Vertex v = 0; v < h; ++v) {
        const Vertex base = h + v * (d + 1);
        for (std::uint32_t i = 0; i < d + 1; ++i)
            for (std::uint32_t j = i + 1; j < d + 1; ++j) {
                const bool matching_pair = j == i + 1 && i % 2 == 0 && j < matched;
                if (!matching_pair) pairs.push_back({base + i, base + j});
            }
        for (std::uint32_t i = 0; i < matched; ++i) pairs.push_back({v, base + i});
    }
    result.graph = Graph::build(static_cast<Vertex>(n), std::move(pairs));
    result.structured_sets.reserve(h);
    for (Vertex v = 0; v < h; ++v) {
        VertexSet s(static_cast<Vertex>(n));
        s.add(v);
        const Vertex base = h + v * (d + 1);
        for (std::uint32_t i = 0; i < d + 1; ++i) s.add(base + i);
        result.structured_sets.push_back(std::move(s));
    }
    return result;
}

GenResult gen_gadget_b(std::uint32_t c, std::uint32_t d, std::uint64_t n,
                       std::uint64_t seed) {
    if (c < 1) fail(Errc::InvalidParams, "need C >= 1");
    const std::uint32_t c1 = 3 * c;
    if (d <= c1) fail(Errc::InvalidParams, "need d1 = d - 3C >= 1");
    const std::uint32_t d1 = d - c1;
    if (n % (d1 + 1) != 0) fail(Errc::DivisibilityViolation, "d1+1 must divide n");
    const std::uint64_t t = n / (d1 + 1);
    if (t < c1 + 1) fail(Errc::InvalidParams, "need at least 3C+1 classes");
    if ((n * c1) % 2 != 0) fail(Errc::ParityViolation, "n*C1 must be even");

    const Vertex nn = static_cast<Vertex>(n);
    std::vector<std::uint32_t> class_of(nn);
    for (Vertex v = 0; v < nn; ++v) class_of[v] = v / (d1 + 1);

    SplitMix rng(stream_key(seed, "gadget-b"));
    auto pairs = configuration_model(
        nn, c1, rng, [&](Vertex u, Vertex v) { return class_of[u] != class_of[v]; });

    pairs.reserve(pairs.size() +
                  t * (static_cast<std::size_t>(d1) * (d1 + 1)) / 2);
    for (std::uint64_t j = 0; j < t; ++j) {
        const Vertex base = static_cast<Vertex>(j * (d1 + 1));
        for (std::uint32_t a = 0; a <= d1; ++a)
            for (std::uint32_t b = a + 1; b <= d1; ++b)
                pairs.push_back({base + a, base + b});
    }

    GenResult result;
    result.graph = Graph::build(nn, std::move(pairs));
    result.structured_sets.reserve(t);
    for (std::uint64_t j = 0; j < t; ++j) {
        VertexSet s(nn);
        const Vertex base = static_cast<Vertex>(j * (d1 + 1));
        for (std::uint32_t a = 0; a <= d1; ++a) s.add(base + a);
        result.structured_sets.push_back(std::move(s));
    }
    result.class_of = std::move(class_of);
    return result;
}

namespace {

std::int64_t require_param(const GeneratorSpec& spec, const std::string& key) {
    const auto it = spec.params.find(key);
    if (it == spec.params.end())
        fail(Errc::InvalidParams, std::string(model_name(spec.model)) +
                                      " requires parameter \"" + key + "\"");
    if (it->second < 0)
        fail(Errc::InvalidParams, "parameter \"" + key + "\" must be nonnegative");
    return it->second;
}

}  // namespace

GenResult generate(const GeneratorSpec& spec) {
    GenResult result;
    switch (spec.model) {
        case Model::Complete:
            result.graph = gen_complete(static_cast<Vertex>(require_param(spec, "n")));
            break;
        case Model::Bipartite:
            result.graph = gen_bipartite(static_cast<Vertex>(require_param(spec, "a")),
                                         static_cast<Vertex>(require_param(spec, "b")));
            break;
        case Model::Hypercube:
            result.graph =
                gen_hypercube(static_cast<std::uint32_t>(require_param(spec, "d")));
            break;
        case Model::RandomRegular:
            result.graph = gen_random_regular(
                static_cast<Vertex>(require_param(spec, "n")),
                static_cast<std::uint32_t>(require_param(spec, "d")), spec.seed);
            break;
        case Model::GadgetA:
            result = gen_gadget_a(static_cast<std::uint32_t>(require_param(spec, "d1")),
                                  static_cast<std::uint32_t>(require_param(spec, "d")),
                                  static_cast<std::uint64_t>(require_param(spec, "n")),
                                  spec.seed);
            break;
        case Model::GadgetB:
            result = gen_gadget_b(static_cast<std::uint32_t>(require_param(spec, "C")),
                                  static_cast<std::uint32_t>(require_param(spec, "d")),
                                  static_cast<std::uint64_t>(require_param(spec, "n")),
                                  spec.seed);
            break;
    }
    return result;
}

}  // namespace percolab
