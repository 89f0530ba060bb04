// Acceptance battery: twelve end-to-end criteria with pinned tolerances.
// Each criterion prints one PASS/FAIL line; the exit code is the number of
// failing criteria. Run a single criterion with --only N.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "percolab/exploration.hpp"
#include "percolab/generators.hpp"
#include "percolab/harness.hpp"
#include "percolab/isoperimetry.hpp"
#include "percolab/percolation.hpp"
#include "percolab/theory.hpp"

using namespace percolab;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool pass;
    std::string detail;
};

std::string fmt(double v, int digits = 6) {
    std::ostringstream ss;
    ss.precision(digits);
    ss << v;
    return ss.str();
}

// ---- criterion 1: survival fixed point -----------------------------------

Check criterion1() {
    for (const double eps : {0.01, 0.1, 0.2, 0.5, 1.0}) {
        const double mine = poisson_survival(eps, 1e-13).value;
        const double oracle = oracles::survival_oracle(eps);
        if (std::abs(mine - oracle) > 1e-12)
            return {false, "solver disagrees with oracle at eps=" + fmt(eps)};
    }
    const double y1 = poisson_survival(1.0).value;
    if (std::abs(y1 - 0.796812) > 1e-6)
        return {false, "y(1) = " + fmt(y1, 9)};
    const double ratio = poisson_survival(0.01).value / 0.01;
    if (ratio < 1.9 || ratio > 2.0)
        return {false, "y(0.01)/0.01 = " + fmt(ratio)};
    return {true, "oracle match <= 1e-12 on the epsilon grid; y(1) = " + fmt(y1, 9) +
                      "; y(0.01)/0.01 = " + fmt(ratio, 4)};
}

// ---- criterion 2: series/survival duality ---------------------------------

Check criterion2() {
    double worst = 0.0;
    for (const double c : {1.1, 1.5, 2.0, 3.0}) {
        const double gap =
            std::abs(series_F(c).value + poisson_survival(c - 1.0).value - 1.0);
        worst = std::max(worst, gap);
    }
    if (worst > 1e-9) return {false, "identity gap " + fmt(worst, 3)};
    return {true, "max |F(c) + y(c-1) - 1| = " + fmt(worst, 3) + " <= 1e-9"};
}

// ---- criterion 3: exposure schedule ---------------------------------------

Check criterion3() {
    SplitMix rng(333);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double p = rng.next_double() * 0.99 + 0.005;
        const double d = 2.0 + rng.next_double() * 200.0;
        const double delta = rng.next_double() * d * (1 - std::sqrt(1 - p)) * 0.999;
        const ExposureSchedule s = split_probability(p, delta, d);
        worst = std::max(worst,
                         std::abs((1 - s.p1) * (1 - s.p2) * (1 - s.p3) - (1 - p)));
    }
    if (worst > 1e-12) return {false, "identity gap " + fmt(worst, 3)};

    // union of the three rounds vs one exposure, on 10^6 edges
    std::vector<VertexPair> pairs;
    pairs.reserve(1000000);
    for (Vertex v = 0; v + 1 < 1000001; ++v)
        pairs.push_back({v, static_cast<Vertex>(v + 1)});
    const Graph g = Graph::build(1000001, std::move(pairs));
    const double p = 0.024;
    const ExposureSchedule s = split_probability(p, 0.004, 50.0);
    const PercolationSample u = union_rounds(
        std::vector{percolate(g, s.p1, 77, Round::Round1),
                    percolate(g, s.p2, 77, Round::Round2),
                    percolate(g, s.p3, 77, Round::Round3)});
    const double m = static_cast<double>(g.edge_count());
    const double dev = std::abs(static_cast<double>(u.kept_count()) - m * p);
    const double sigma = std::sqrt(m * p * (1 - p));
    if (dev > 3 * sigma)
        return {false, "union keep count off by " + fmt(dev / sigma, 3) + " sigma"};
    return {true, "max identity gap " + fmt(worst, 3) + "; union keep rate within " +
                      fmt(dev / sigma, 2) + " sigma of p"};
}

// ---- criterion 4: census oracle equivalence --------------------------------

Check criterion4() {
    std::uint64_t graphs = 0, censuses = 0;
    // every labeled graph on up to 6 vertices
    for (Vertex n = 1; n <= 6; ++n) {
        std::vector<VertexPair> all;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
        const std::uint64_t total = std::uint64_t{1} << all.size();
        for (std::uint64_t bits = 0; bits < total; ++bits) {
            std::vector<VertexPair> pairs;
            for (std::size_t e = 0; e < all.size(); ++e)
                if (bits & (std::uint64_t{1} << e)) pairs.push_back(all[e]);
            const Graph g = Graph::build(n, pairs);
            ++graphs;
            const auto sigma = (bits % 8 == 0) ? oracles::shuffled_order(n, bits)
                                               : oracles::shuffled_order(n, 0);
            const BitMask full(g.edge_count(), true);
            const BitMask partial = oracles::random_mask(g.edge_count(), 2, 3, bits);
            for (const BitMask* mask : {&full, &partial}) {
                const BfsTrace trace = bfs_explore(g, *mask, sigma);
                if (!(trace.census == components(g, mask)))
                    return {false, "census mismatch on graph " + std::to_string(bits) +
                                       " with n=" + std::to_string(n)};
                ++censuses;
            }
        }
    }
    // 500 random masked graphs on up to 10 vertices
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const Graph g = oracles::random_graph(5 + seed % 6, 1 + seed % 3, 4, seed);
        const BitMask mask = oracles::random_mask(g.edge_count(), 1 + seed % 2, 3, seed);
        const auto sigma = oracles::shuffled_order(g.vertex_count(), seed);
        const BfsTrace trace = bfs_explore(g, mask, sigma);
        if (!(trace.census == components(g, &mask)))
            return {false, "census mismatch on random instance " + std::to_string(seed)};
        ++censuses;
    }
    return {true, std::to_string(graphs) + " exhaustive graphs and 500 random instances, " +
                      std::to_string(censuses) + " census comparisons all equal"};
}

// ---- criteria 5-9: experiment batteries ------------------------------------

Check report_verdicts(const ExperimentSummary& s) {
    std::string detail;
    bool pass = true;
    for (const Verdict& v : s.verdicts) {
        if (!detail.empty()) detail += "; ";
        detail += v.name + (v.pass ? " ok (" : " FAILED (") + v.detail + ")";
        pass = pass && v.pass;
    }
    return {pass, detail};
}

Check criterion5() {
    ExperimentConfig cfg;
    cfg.generator.model = Model::RandomRegular;
    cfg.generator.params = {{"n", 50000}, {"d", 50}};
    cfg.generator.seed = 101;
    cfg.generator_seed_explicit = true;
    cfg.p = 0.024;
    cfg.census = false;
    cfg.trials = 20;
    cfg.base_seed = 5000;
    PredicateSpec band;
    band.name = "giant-band";
    band.kind = "giant-band";
    band.center = CenterKind::BinomialGw;  // binomial_gw_survival(50, 0.024)
    band.tolerance = 0.02;
    cfg.predicates.push_back(band);
    PredicateSpec second;
    second.name = "second-small";
    second.kind = "second-small";
    second.bound = {50.0, BoundSpec::Term::LogN};
    second.min_fraction = 0.95;  // 19 of 20
    cfg.predicates.push_back(second);
    return report_verdicts(run_experiment(cfg, 2));
}

Check criterion6() {
    ExperimentConfig cfg;
    cfg.generator.model = Model::RandomRegular;
    cfg.generator.params = {{"n", 50000}, {"d", 50}};
    cfg.generator.seed = 101;
    cfg.generator_seed_explicit = true;
    cfg.p = 0.8 / 50.0;
    cfg.census = false;
    cfg.trials = 20;
    cfg.base_seed = 6000;
    PredicateSpec small;
    small.name = "all-small";
    small.kind = "all-small";
    small.bound = {30.0, BoundSpec::Term::LogN};
    small.min_fraction = 0.95;
    cfg.predicates.push_back(small);
    return report_verdicts(run_experiment(cfg, 2));
}

Check criterion7() {
    ExperimentConfig cfg;
    cfg.generator.model = Model::Complete;
    cfg.generator.params = {{"n", 10000}};
    cfg.p = 1.2 / 7500.0;  // sets of size <= 2500 expand by >= 7500
    cfg.census = false;
    cfg.trials = 20;
    cfg.base_seed = 7000;
    PredicateSpec giant;
    giant.name = "giant-at-least";
    giant.kind = "giant-at-least";
    giant.bound.coeff = 1250.0;  // k/2
    giant.min_fraction = 1.0;    // 20 of 20
    cfg.predicates.push_back(giant);
    return report_verdicts(run_experiment(cfg, 2));
}

Check criterion8() {
    const std::uint64_t seed = 808;
    const GenResult res = gen_gadget_a(4, 60, 24800, seed);
    if (res.graph.vertex_count() != 24800)
        return {false, "vertex count " + std::to_string(res.graph.vertex_count())};
    if (res.graph.regular_degree() != 60)
        return {false, "construction is not 60-regular"};
    const IsoResult upper =
        iso_sampled_upper(res.graph, 50, 1, res.structured_sets);
    const double weak_cut = 4.0 / 62.0;
    if (upper.value > weak_cut + 1e-12)
        return {false, "sampled upper bound " + fmt(upper.value) + " misses the weak cut"};

    ExperimentConfig cfg;
    cfg.generator.model = Model::GadgetA;
    cfg.generator.params = {{"d1", 4}, {"d", 60}, {"n", 24800}};
    cfg.generator.seed = seed;
    cfg.generator_seed_explicit = true;
    cfg.p = 1.0 / (std::exp(2.0) * 4.0);  // p*d1 = e^-2, effective C about 2.03
    cfg.census = false;
    cfg.trials = 20;
    cfg.base_seed = 8000;
    PredicateSpec small;
    small.name = "all-small";
    small.kind = "all-small";
    small.bound = {3.0, BoundSpec::Term::DLogN};
    small.min_fraction = 0.95;
    cfg.predicates.push_back(small);
    Check c = report_verdicts(run_experiment(cfg, 2));
    c.detail = "d-regularity and n exact; sampled upper " + fmt(upper.value, 4) +
               " <= " + fmt(weak_cut, 4) + "; " + c.detail;
    return c;
}

Check criterion9() {
    ExperimentConfig cfg;
    cfg.generator.model = Model::GadgetB;
    cfg.generator.params = {{"C", 1}, {"d", 100}, {"n", 19600}};
    cfg.generator.seed = 909;
    cfg.generator_seed_explicit = true;
    cfg.p = 0.012;
    cfg.census = false;
    cfg.trials = 50;
    cfg.base_seed = 9000;
    cfg.big_component_bound = 20.0;  // epsilon * d with epsilon = 0.2
    PredicateSpec isolated;
    isolated.name = "isolated-classes";
    isolated.kind = "count-band";
    isolated.metric = "isolated_classes";
    isolated.lo = 3.5;
    isolated.hi = 8.5;  // expectation t(1-p)^(C1(d1+1)) is about 5.75
    cfg.predicates.push_back(isolated);
    PredicateSpec two_big;
    two_big.name = "two-big-components";
    two_big.kind = "giant-at-least";
    two_big.metric = "n_big_components";
    two_big.bound.coeff = 2.0;
    two_big.min_fraction = 0.6;
    cfg.predicates.push_back(two_big);
    return report_verdicts(run_experiment(cfg, 2));
}

// ---- criterion 10: isoperimetry exactness and ordering ---------------------

Check criterion10() {
    const IsoResult q3 = iso_exact(gen_hypercube(3));
    if (q3.value != 1.0) return {false, "i(Q^3) = " + fmt(q3.value)};
    const IsoResult k4 = iso_exact(gen_complete(4));
    if (k4.value != 2.0) return {false, "i(K_4) = " + fmt(k4.value)};
    const Graph bridge =
        Graph::build(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
    const IsoResult tri = iso_exact(bridge);
    if (!(tri.num == 1 && tri.den == 3))
        return {false, "two-triangles value " + fmt(tri.value)};

    std::vector<Graph> corpus;
    corpus.push_back(gen_hypercube(2));
    corpus.push_back(gen_hypercube(3));
    for (Vertex n = 4; n <= 10; ++n) corpus.push_back(gen_complete(n));
    for (std::uint64_t seed = 0; corpus.size() < 30 && seed < 200; ++seed) {
        const Vertex n = 8 + 2 * (seed % 5);
        const std::uint32_t d = 3 + seed % 3;
        if ((static_cast<std::uint64_t>(n) * d) % 2) continue;
        Graph g = gen_random_regular(n, d, seed);
        if (components(g).count() != 1) continue;
        corpus.push_back(std::move(g));
    }
    if (corpus.size() < 30) return {false, "could not assemble a 30-graph corpus"};
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Graph& g = corpus[i];
        const double lower = iso_spectral_lower(g).value;
        const double exact = iso_exact(g).value;
        const double upper = iso_sampled_upper(g, 150, 4242).value;
        if (!(lower <= exact + 1e-6 && exact <= upper + 1e-12))
            return {false, "ordering violated on corpus graph " + std::to_string(i) +
                               ": " + fmt(lower) + " / " + fmt(exact) + " / " +
                               fmt(upper)};
    }
    return {true, "i(Q^3)=1, i(K_4)=2, bridge=1/3; spectral <= exact <= sampled on " +
                      std::to_string(corpus.size()) + " graphs"};
}

// ---- criterion 11: expansion-core post-verification -------------------------

Check criterion11() {
    const std::uint32_t k = 5;
    const double c1 = 0.5, c2 = 0.2;
    std::uint32_t verified = 0, passed = 0;
    std::uint64_t seed = 0;
    while (verified < 100 && seed < 4000) {
        const std::uint64_t s = seed++;
        const std::uint32_t d = (s % 2 == 0) ? 8 : 6;
        Graph g;
        try {
            g = gen_random_regular(10, d, s);
        } catch (const Error&) {
            continue;
        }
        // exhaustively verified precondition: every k-set expands at c1*d
        const IsoResult ik = iso_exact(g, k, k);
        if (ik.value < c1 * static_cast<double>(d)) continue;
        ++verified;
        const CoreExtractionResult core = expansion_core(g, k, c1, c2, d, true);
        const std::uint32_t smax =
            static_cast<std::uint32_t>(std::floor(core.c3 * k));
        if (core.removed_total > k) return {false, "removal guarantee violated"};
        // exhaustive check of the restricted constant on the survivors
        const auto keep = core.surviving.members();
        std::vector<std::uint32_t> remap(10, UINT32_MAX);
        for (std::uint32_t i = 0; i < keep.size(); ++i) remap[keep[i]] = i;
        std::vector<VertexPair> pairs;
        for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
            const auto edge = g.edge(e);
            if (remap[edge.u] != UINT32_MAX && remap[edge.v] != UINT32_MAX)
                pairs.push_back({remap[edge.u], remap[edge.v]});
        }
        const Graph sub = Graph::build(static_cast<Vertex>(keep.size()), pairs);
        if (sub.vertex_count() == 0 || smax == 0) {
            ++passed;
            continue;
        }
        const IsoResult post =
            iso_exact(sub, 1, std::min<std::uint32_t>(smax, sub.vertex_count()));
        if (post.value >= c1 * c2 * static_cast<double>(d) - 1e-9) ++passed;
    }
    if (verified < 100)
        return {false, "only " + std::to_string(verified) + " verified instances found"};
    if (passed != 100)
        return {false, std::to_string(passed) + "/100 instances passed the check"};
    return {true, "100/100 verified instances: restricted constant holds and removal <= k"};
}

// ---- criterion 12: thread-count determinism ---------------------------------

Check criterion12() {
    ExperimentConfig cfg;
    cfg.generator.model = Model::RandomRegular;
    cfg.generator.params = {{"n", 2000}, {"d", 10}};
    cfg.generator.seed = 1212;
    cfg.generator_seed_explicit = true;
    cfg.epsilon = 0.2;  // delta defaults on, so the census fields are exercised
    cfg.trials = 16;
    cfg.base_seed = 1200;
    cfg.big_component_bound = 15.0;
    const fs::path dir = fs::temp_directory_path();
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    for (const std::string& format : {std::string("json-lines"), std::string("csv")}) {
        const fs::path p1 = dir / ("percolab_acc12_t1." + format);
        const fs::path p8 = dir / ("percolab_acc12_t8." + format);
        write_report(run_experiment(cfg, 1), format, p1);
        write_report(run_experiment(cfg, 8), format, p8);
        const bool same = slurp(p1) == slurp(p8);
        fs::remove(p1);
        fs::remove(p8);
        if (!same) return {false, format + " reports differ between 1 and 8 threads"};
    }
    return {true, "json-lines and csv reports byte-identical at 1 and 8 threads"};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);

    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"survival fixed point vs oracle", criterion1},
        {"series/survival duality", criterion2},
        {"three-round exposure schedule", criterion3},
        {"BFS vs union-find census equivalence", criterion4},
        {"supercritical giant band and second component", criterion5},
        {"subcritical smallness", criterion6},
        {"restricted-expansion giant (k/2)", criterion7},
        {"construction A: all components small", criterion8},
        {"construction B: large second components", criterion9},
        {"isoperimetry exactness and ordering", criterion10},
        {"expansion-core post-verification", criterion11},
        {"thread-count determinism", criterion12},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only != 0 && only != id) continue;
        const auto start = std::chrono::steady_clock::now();
        Check result{false, "exception"};
        try {
            result = criteria[i].second();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::cout << (result.pass ? "[PASS]" : "[FAIL]") << " criterion " << id << " ("
                  << criteria[i].first << ", " << fmt(secs, 3) << "s): " << result.detail
                  << std::endl;
        failures += result.pass ? 0 : 1;
    }
    return failures;
}
