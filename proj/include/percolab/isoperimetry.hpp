#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

enum class IsoMethod { Exact, SpectralLower, SampledUpper };

const char* iso_method_name(IsoMethod m);

struct IsoResult {
    double value = 0.0;
    IsoMethod method = IsoMethod::Exact;
    std::uint32_t range_lo = 0;
    std::uint32_t range_hi = 0;
    // Reduced fraction boundary/size for exact and sampled results.
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    std::optional<VertexSet> witness;
    double lambda2 = 0.0;  // spectral method only
};

// Exact min of boundary(S)/|S| over subsets with |S| in [lo, hi], with the
// lexicographically smallest minimizing witness. hi = 0 means floor(n/2).
// Throws BudgetExceeded when the subset count exceeds the budget.
IsoResult iso_exact(const Graph& g, std::uint32_t lo = 1, std::uint32_t hi = 0,
                    std::uint64_t budget = 100'000'000);

// Cheeger-type bound (d - lambda2)/2 <= i(G) for connected d-regular graphs,
// where lambda2 is the largest adjacency eigenvalue orthogonal to the
// all-ones vector, found by shifted power iteration with deflation.
IsoResult iso_spectral_lower(const Graph& g, double tol = 1e-8,
                             std::uint64_t seed = 0x5eed);

// Upper bound from sampled candidate sets (BFS balls and random subsets of
// size <= n/2) plus any caller-supplied structured candidates.
IsoResult iso_sampled_upper(const Graph& g, std::uint64_t budget, std::uint64_t seed,
                            std::span<const VertexSet> structured = {});

// Iterated removal of poorly expanding small sets: while some B with
// |B| <= floor(c3 k), c3 = c1(1-c2)/2, has boundary < c1 c2 d |B| in the
// current graph, remove the lexicographically smallest such B. When the
// caller has verified i_k(G) >= c1 d (and max degree <= d), the total removal
// is guaranteed to stay <= k; precondition_verified turns a violation of that
// guarantee into an error.
struct CoreExtractionResult {
    VertexSet surviving;
    std::vector<VertexSet> removed;
    std::uint64_t removed_total = 0;
    std::uint32_t k = 0;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    std::uint32_t d = 0;
};

CoreExtractionResult expansion_core(const Graph& g, std::uint32_t k, double c1,
                                    double c2, std::uint32_t d,
                                    bool precondition_verified = false,
                                    std::uint64_t budget = 100'000'000);

}  // namespace percolab
