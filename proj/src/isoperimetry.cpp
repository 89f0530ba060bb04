#include "percolab/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "percolab/rng.hpp"

namespace percolab {

const char* iso_method_name(IsoMethod m) {
    switch (m) {
        case IsoMethod::Exact: return "exact";
        case IsoMethod::SpectralLower: return "spectral-lower";
        case IsoMethod::SampledUpper: return "sampled-upper";
    }
    return "?";
}

namespace {

// list-lexicographic order on subsets encoded as bitmasks. The holder of the
// lowest differing vertex comes first, except when the other set has no
// member past that vertex (then it is a proper prefix and comes first).
bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t diff = a ^ b;
    if (diff == 0) return false;
    const std::uint64_t low = diff & ~(diff - 1);
    const std::uint64_t above = ~(low | (low - 1));
    if (a & low) return (b & above) != 0;
    return (a & above) == 0;
}

struct Best {
    std::uint64_t num = 0;
    std::uint64_t den = 0;  // den == 0 means unset
    std::vector<Vertex> witness;

    // true if (boundary, size) is a new minimum (ties break to lex-smaller)
    bool better(std::uint64_t boundary, std::uint64_t size) const {
        if (den == 0) return true;
        const unsigned __int128 lhs =
            static_cast<unsigned __int128>(boundary) * den;
        const unsigned __int128 rhs = static_cast<unsigned __int128>(num) * size;
        return lhs < rhs;
    }
    bool ties(std::uint64_t boundary, std::uint64_t size) const {
        if (den == 0) return false;
        return static_cast<unsigned __int128>(boundary) * den ==
               static_cast<unsigned __int128>(num) * size;
    }
};

std::vector<Vertex> mask_members(std::uint64_t mask) {
    std::vector<Vertex> out;
    while (mask) {
        out.push_back(static_cast<Vertex>(__builtin_ctzll(mask)));
        mask &= mask - 1;
    }
    return out;
}

IsoResult finish_exact(const Graph& g, const Best& best, std::uint32_t lo,
                       std::uint32_t hi, IsoMethod method) {
    IsoResult r;
    r.method = method;
    r.range_lo = lo;
    r.range_hi = hi;
    const std::uint64_t size = best.witness.size();
    const std::uint64_t gcd = best.num == 0 ? size : std::gcd(best.num, size);
    r.num = best.num / gcd;
    r.den = size / gcd;
    r.value = static_cast<double>(best.num) / static_cast<double>(size);
    r.witness = VertexSet::from_members(g.vertex_count(), best.witness);
    return r;
}

// Gray-code sweep over all subsets; the boundary updates in O(1) per step.
Best exact_gray(const Graph& g, std::uint32_t lo, std::uint32_t hi) {
    const std::uint32_t n = g.vertex_count();
    std::vector<std::uint64_t> adjbits(n, 0);
    for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
        const auto e = g.edge(i);
        adjbits[e.u] |= std::uint64_t{1} << e.v;
        adjbits[e.v] |= std::uint64_t{1} << e.u;
    }
    Best best;
    std::uint64_t best_mask = 0;
    std::uint64_t mask = 0;
    std::int64_t boundary = 0;
    std::uint32_t size = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        const unsigned b = static_cast<unsigned>(__builtin_ctzll(idx));
        const std::uint64_t bit = std::uint64_t{1} << b;
        const std::int64_t deg = g.degree(static_cast<Vertex>(b));
        if (mask & bit) {
            mask ^= bit;
            boundary += -deg + 2 * __builtin_popcountll(adjbits[b] & mask);
            --size;
        } else {
            boundary += deg - 2 * __builtin_popcountll(adjbits[b] & mask);
            mask ^= bit;
            ++size;
        }
        if (size < lo || size > hi) continue;
        const std::uint64_t bd = static_cast<std::uint64_t>(boundary);
        if (best.better(bd, size)) {
            best.num = bd;
            best.den = size;
            best_mask = mask;
        } else if (best.ties(bd, size) && mask_lex_less(mask, best_mask)) {
            best.num = bd;
            best.den = size;
            best_mask = mask;
        }
    }
    best.witness = mask_members(best_mask);
    return best;
}

// Per-size combination sweep for restricted ranges on larger graphs.
Best exact_combinations(const Graph& g, std::uint32_t lo, std::uint32_t hi) {
    const std::uint32_t n = g.vertex_count();
    Best best;
    std::vector<std::uint8_t> in_set(n, 0);
    std::vector<Vertex> c;
    for (std::uint32_t s = lo; s <= hi && s <= n; ++s) {
        c.resize(s);
        std::iota(c.begin(), c.end(), 0u);
        while (true) {
            std::uint64_t boundary = 0;
            for (Vertex v : c) in_set[v] = 1;
            for (Vertex v : c)
                for (Vertex u : g.neighbors(v)) boundary += !in_set[u];
            for (Vertex v : c) in_set[v] = 0;
            if (best.better(boundary, s)) {
                best.num = boundary;
                best.den = s;
                best.witness.assign(c.begin(), c.end());
            } else if (best.ties(boundary, s) &&
                       std::lexicographical_compare(c.begin(), c.end(),
                                                    best.witness.begin(),
                                                    best.witness.end())) {
                best.num = boundary;
                best.den = s;
                best.witness.assign(c.begin(), c.end());
            }
            // next combination
            std::int32_t i = static_cast<std::int32_t>(s) - 1;
            while (i >= 0 && c[i] == n - s + i) --i;
            if (i < 0) break;
            ++c[i];
            for (std::uint32_t j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
        }
    }
    return best;
}

std::uint64_t binomial_saturated(std::uint32_t n, std::uint32_t k, std::uint64_t cap) {
    if (k > n) return 0;
    unsigned __int128 r = 1;
    for (std::uint32_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(r);
}

}  // namespace

IsoResult iso_exact(const Graph& g, std::uint32_t lo, std::uint32_t hi,
                    std::uint64_t budget) {
    const std::uint32_t n = g.vertex_count();
    if (hi == 0) hi = n / 2;
    if (lo < 1 || hi < lo || hi > n)
        fail(Errc::InvalidParams, "empty or invalid size range [" + std::to_string(lo) +
                                      "," + std::to_string(hi) + "]");
    if (n <= 26 && ((std::uint64_t{1} << n) - 1) <= budget)
        return finish_exact(g, exact_gray(g, lo, hi), lo, hi, IsoMethod::Exact);
    std::uint64_t cost = 0;
    for (std::uint32_t s = lo; s <= hi && s <= n; ++s) {
        cost += binomial_saturated(n, s, budget);
        if (cost > budget)
            fail(Errc::BudgetExceeded,
                 "subset count exceeds budget of " + std::to_string(budget));
    }
    return finish_exact(g, exact_combinations(g, lo, hi), lo, hi, IsoMethod::Exact);
}

IsoResult iso_spectral_lower(const Graph& g, double tol, std::uint64_t seed) {
    const auto d_opt = g.regular_degree();
    if (!d_opt) fail(Errc::NotRegular, "spectral bound requires a regular graph");
    const std::uint32_t n = g.vertex_count();
    if (n < 2) fail(Errc::InvalidParams, "need at least two vertices");
    if (components(g).count() != 1) fail(Errc::NotConnected, "graph is not connected");
    const double d = static_cast<double>(*d_opt);

    std::vector<double> x(n), y(n);
    SplitMix rng(stream_key(seed, "spectral"));
    for (auto& xi : x) xi = rng.next_double() - 0.5;

    const auto deflate = [n](std::vector<double>& v) {
        double mean = 0;
        for (double a : v) mean += a;
        mean /= n;
        for (double& a : v) a -= mean;
    };
    const auto norm = [](const std::vector<double>& v) {
        double s = 0;
        for (double a : v) s += a * a;
        return std::sqrt(s);
    };
    deflate(x);
    double nx = norm(x);
    if (nx == 0.0) {
        x[0] = 1.0;
        deflate(x);
        nx = norm(x);
    }
    for (double& a : x) a /= nx;

    // Power iteration on A + dI (nonnegative spectrum), deflating the uniform
    // vector every step; converges to d + lambda2 on the orthogonal subspace.
    double mu = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    int stable = 0;
    bool converged = false;
    int iter = 0;
    for (; iter < 100000; ++iter) {
        for (std::uint32_t v = 0; v < n; ++v) {
            double s = d * x[v];
            for (Vertex u : g.neighbors(v)) s += x[u];
            y[v] = s;
        }
        deflate(y);
        mu = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
        const double ny = norm(y);
        if (ny < 1e-12) {  // the shifted operator annihilates this subspace
            mu = 0.0;
            converged = true;
            break;
        }
        for (std::uint32_t v = 0; v < n; ++v) x[v] = y[v] / ny;
        if (std::abs(mu - prev) < tol) {
            if (++stable >= 10) {
                converged = true;
                break;
            }
        } else {
            stable = 0;
        }
        prev = mu;
    }
    if (!converged) fail(Errc::NoConvergence, "power iteration did not settle");

    IsoResult r;
    r.method = IsoMethod::SpectralLower;
    r.lambda2 = mu - d;
    // |lambda2| rather than the signed value: never stronger than the
    // Alon-Milman bound, so still a valid lower bound for i(G)
    r.value = (d - std::abs(r.lambda2)) / 2.0;
    r.range_lo = 1;
    r.range_hi = n / 2;
    return r;
}

IsoResult iso_sampled_upper(const Graph& g, std::uint64_t budget, std::uint64_t seed,
                            std::span<const VertexSet> structured) {
    const std::uint32_t n = g.vertex_count();
    if (n < 2) fail(Errc::InvalidParams, "need at least two vertices");
    if (budget < 1) fail(Errc::InvalidParams, "budget must be at least 1");
    const std::uint32_t half = n / 2;

    Best best;
    std::vector<std::uint8_t> member(n, 0);
    const auto consider = [&](const std::vector<Vertex>& set) {
        if (set.empty() || set.size() > half) return;
        for (Vertex v : set) member[v] = 1;
        std::uint64_t boundary = 0;
        for (Vertex v : set)
            for (Vertex u : g.neighbors(v)) boundary += !member[u];
        for (Vertex v : set) member[v] = 0;
        if (best.better(boundary, set.size())) {
            best.num = boundary;
            best.den = set.size();
            best.witness = set;
        }
    };

    for (const VertexSet& s : structured) {
        if (s.universe() != n) fail(Errc::VertexOutOfRange, "structured set universe mismatch");
        consider(s.members());
    }

    SplitMix rng(stream_key(seed, "iso-sample"));
    std::vector<Vertex> pool(n);
    std::iota(pool.begin(), pool.end(), 0u);
    std::vector<std::uint32_t> seen(n, 0);
    std::uint32_t epoch = 0;
    std::deque<Vertex> queue;
    std::vector<Vertex> set;

    for (std::uint64_t trial = 0; trial < budget; ++trial) {
        set.clear();
        const std::uint32_t target = 1 + static_cast<std::uint32_t>(rng.below(half));
        if (trial % 2 == 0) {
            // BFS ball around a random root
            const Vertex root = static_cast<Vertex>(rng.below(n));
            ++epoch;
            queue.clear();
            queue.push_back(root);
            seen[root] = epoch;
            while (!queue.empty() && set.size() < target) {
                const Vertex v = queue.front();
                queue.pop_front();
                set.push_back(v);
                for (Vertex u : g.neighbors(v))
                    if (seen[u] != epoch) {
                        seen[u] = epoch;
                        queue.push_back(u);
                    }
            }
        } else {
            for (std::uint32_t i = 0; i < target; ++i) {
                const std::size_t j = i + rng.below(n - i);
                std::swap(pool[i], pool[j]);
                set.push_back(pool[i]);
            }
        }
        consider(set);
    }

    IsoResult r;
    r.method = IsoMethod::SampledUpper;
    r.range_lo = 1;
    r.range_hi = half;
    const std::uint64_t size = best.witness.size();
    const std::uint64_t gcd = best.num == 0 ? size : std::gcd(best.num, size);
    r.num = best.num / gcd;
    r.den = size / gcd;
    r.value = static_cast<double>(best.num) / static_cast<double>(size);
    std::sort(best.witness.begin(), best.witness.end());
    r.witness = VertexSet::from_members(n, best.witness);
    return r;
}

CoreExtractionResult expansion_core(const Graph& g, std::uint32_t k, double c1,
                                    double c2, std::uint32_t d,
                                    bool precondition_verified, std::uint64_t budget) {
    if (!(c1 > 0.0 && c1 <= 1.0) || !(c2 > 0.0 && c2 <= 1.0))
        fail(Errc::InvalidParams, "c1 and c2 must lie in (0,1]");
    if (!(c1 * static_cast<double>(d) < static_cast<double>(k)))
        fail(Errc::InvalidParams, "need c1*d < k");
    const std::uint32_t n = g.vertex_count();

    CoreExtractionResult result;
    result.k = k;
    result.c1 = c1;
    result.c2 = c2;
    result.c3 = c1 * (1.0 - c2) / 2.0;
    result.d = d;
    const std::uint32_t smax =
        static_cast<std::uint32_t>(std::floor(result.c3 * static_cast<double>(k)));
    const double rate = c1 * c2 * static_cast<double>(d);

    std::vector<std::uint8_t> alive(n, 1);
    std::vector<std::uint32_t> deg_alive(n);
    for (Vertex v = 0; v < n; ++v) deg_alive[v] = g.degree(v);

    std::uint64_t evaluated = 0;
    std::vector<std::uint8_t> in_b(n, 0);
    std::vector<Vertex> chosen;
    std::vector<Vertex> alive_list;

    // lexicographically smallest B with |B| <= smax and boundary < rate*|B|,
    // searched by extending prefixes in ascending vertex order
    const std::function<bool(std::size_t, std::int64_t)> search =
        [&](std::size_t from, std::int64_t boundary) -> bool {
        for (std::size_t idx = from; idx < alive_list.size(); ++idx) {
            const Vertex v = alive_list[idx];
            std::int64_t internal = 0;
            for (Vertex u : g.neighbors(v)) internal += in_b[u];
            const std::int64_t nb =
                boundary + static_cast<std::int64_t>(deg_alive[v]) - 2 * internal;
            chosen.push_back(v);
            in_b[v] = 1;
            if (++evaluated > budget) fail(Errc::BudgetExceeded, "subset search budget");
            if (static_cast<double>(nb) < rate * static_cast<double>(chosen.size()))
                return true;
            if (chosen.size() < smax && search(idx + 1, nb)) return true;
            in_b[v] = 0;
            chosen.pop_back();
        }
        return false;
    };

    if (smax >= 1) {
        while (true) {
            alive_list.clear();
            for (Vertex v = 0; v < n; ++v)
                if (alive[v]) alive_list.push_back(v);
            if (alive_list.empty()) break;
            chosen.clear();
            if (!search(0, 0)) break;
            VertexSet removed(n);
            for (Vertex v : chosen) {
                removed.add(v);
                alive[v] = 0;
                in_b[v] = 0;
            }
            for (Vertex v : chosen)
                for (Vertex u : g.neighbors(v))
                    if (alive[u]) --deg_alive[u];
            result.removed_total += chosen.size();
            result.removed.push_back(std::move(removed));
        }
    }

    if (precondition_verified && result.removed_total > k)
        fail(Errc::GuaranteeViolated,
             "removed " + std::to_string(result.removed_total) +
                 " vertices, more than k = " + std::to_string(k));

    result.surviving = VertexSet(n);
    for (Vertex v = 0; v < n; ++v)
        if (alive[v]) result.surviving.add(v);
    return result;
}

}  // namespace percolab
