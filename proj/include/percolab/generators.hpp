#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

enum class Model { Complete, Bipartite, Hypercube, RandomRegular, GadgetA, GadgetB };

Model model_from_name(const std::string& name);
const char* model_name(Model m);

struct GeneratorSpec {
    Model model = Model::Complete;
    std::map<std::string, std::int64_t> params;
    std::uint64_t seed = 0;
};

struct GenResult {
    Graph graph;
    // Gadget structure useful to downstream consumers: the {v} + attached
    // clique sets for gadget-A, the clique classes A_j for gadget-B.
    std::vector<VertexSet> structured_sets;
    // Present for gadget-B: class id per vertex.
    std::optional<std::vector<std::uint32_t>> class_of;
};

Graph gen_complete(Vertex n);
Graph gen_bipartite(Vertex a, Vertex b);
Graph gen_hypercube(std::uint32_t dim);

// Configuration model with exact regularity: pair d*n seeded stubs, then
// resolve loops and multi-edges by random 2-edge switches (budget 100*n).
Graph gen_random_regular(Vertex n, std::uint32_t d, std::uint64_t seed);

// d-regular graph with small isoperimetric constant: a random d1-regular core
// on n/(d+2) vertices, each core vertex carrying a (d+1)-clique with a
// matching of size (d-d1)/2 deleted and the core vertex joined to all d-d1
// matched vertices.
GenResult gen_gadget_a(std::uint32_t d1, std::uint32_t d, std::uint64_t n,
                       std::uint64_t seed);

// d-regular graph whose percolated subgraph grows large second components:
// a C1-regular (C1 = 3C) graph with no edges inside t = n/(d1+1) fixed
// classes of size d1+1 (forbidden during stub pairing), plus all intra-class
// edges so every class induces a clique.
GenResult gen_gadget_b(std::uint32_t c, std::uint32_t d, std::uint64_t n,
                       std::uint64_t seed);

GenResult generate(const GeneratorSpec& spec);

}  // namespace percolab
