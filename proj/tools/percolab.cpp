// percolab command line: graph generation, percolation sampling, component
// and vertex-set censuses, survival-probability numerics, isoperimetric
// bounds, and declarative experiment batteries.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "percolab/exploration.hpp"
#include "percolab/generators.hpp"
#include "percolab/harness.hpp"
#include "percolab/isoperimetry.hpp"
#include "percolab/percolation.hpp"
#include "percolab/theory.hpp"

using namespace percolab;
using ojson = nlohmann::ordered_json;

namespace {

template <typename T, typename Parse>
std::map<std::string, T> parse_kv(const std::string& text, Parse parse) {
    std::map<std::string, T> params;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            fail(Errc::InvalidParams, "expected k=v, got \"" + item + "\"");
        params[item.substr(0, eq)] = parse(item.substr(eq + 1));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return params;
}

std::map<std::string, std::int64_t> parse_params(const std::string& text) {
    return parse_kv<std::int64_t>(text, [](const std::string& s) { return std::stoll(s); });
}

std::map<std::string, double> parse_params_double(const std::string& text) {
    return parse_kv<double>(text, [](const std::string& s) { return std::stod(s); });
}

int cmd_gen(const std::string& model, const std::string& params_text,
            std::uint64_t seed, const std::string& out_path,
            const std::string& classes_path) {
    GeneratorSpec spec;
    spec.model = model_from_name(model);
    spec.params = parse_params(params_text);
    spec.seed = seed;
    const GenResult result = generate(spec);
    result.graph.write_edge_list_file(out_path);
    if (!classes_path.empty()) {
        std::ofstream out(classes_path);
        if (!out) fail(Errc::OutputUnwritable, "cannot open " + classes_path);
        for (const VertexSet& s : result.structured_sets) {
            bool first = true;
            for (Vertex v : s.members()) {
                if (!first) out << ' ';
                out << v;
                first = false;
            }
            out << '\n';
        }
    }
    std::cerr << model << ": n=" << result.graph.vertex_count()
              << " m=" << result.graph.edge_count() << " -> " << out_path << '\n';
    return 0;
}

int cmd_perc(const std::string& in_path, double p, std::uint64_t seed,
             const std::string& round_name, const std::string& out_path) {
    const Graph g = Graph::read_edge_list_file(in_path);
    Round round = Round::Single;
    for (Round r : {Round::Single, Round::Round1, Round::Round2, Round::Round3})
        if (round_label(r) == round_name) round = r;
    const PercolationSample sample = percolate(g, p, seed, round);
    write_mask_file(out_path, sample.keep);
    std::cerr << "kept " << sample.kept_count() << " of " << g.edge_count()
              << " edges -> " << out_path << '\n';
    return 0;
}

int cmd_census(const std::string& in_path, const std::string& mask_path,
               double delta) {
    const Graph g = Graph::read_edge_list_file(in_path);
    PercolationSample sample;
    sample.graph = &g;
    sample.keep = read_mask_file(mask_path);
    if (sample.keep.bit_count() != g.edge_count())
        fail(Errc::MaskLengthMismatch, "mask does not match graph");
    const SetCensus sets = census_sets(g, sample, delta);
    const SizeBand band{sets.small_threshold, sets.large_threshold};
    const ComponentMetrics m = component_metrics(sets.census, {&band, 1});
    ojson j;
    j["L1"] = m.l1;
    j["L2"] = m.l2;
    j["n_components"] = m.component_count;
    j["vs"] = sets.v_small.size();
    j["vl"] = sets.v_large.size();
    j["wl"] = sets.w_large.size();
    j["band_mass"] = band.lo <= band.hi ? m.band_mass[0] : 0;
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_survival(double eps, const std::string& binomial, const std::string& series) {
    std::cout << std::fixed << std::setprecision(15);
    if (!binomial.empty()) {
        const auto params = parse_params_double(binomial);
        const auto d = params.find("d");
        const auto p = params.find("p");
        if (d == params.end() || p == params.end())
            fail(Errc::InvalidParams, "--binomial needs d=...,p=...");
        const SolveResult r =
            binomial_gw_survival(static_cast<std::uint32_t>(d->second), p->second);
        std::cout << r.value << ' ' << r.residual << '\n';
    } else if (!series.empty()) {
        const auto params = parse_params_double(series);
        const auto c = params.find("c");
        if (c == params.end()) fail(Errc::InvalidParams, "--series needs c=...");
        const SeriesResult r = series_F(c->second);
        std::cout << r.value << ' ' << r.tail_bound << '\n';
    } else {
        const SolveResult r = poisson_survival(eps);
        std::cout << r.value << ' ' << r.residual << '\n';
    }
    return 0;
}

int cmd_iso(const std::string& in_path, const std::string& method,
            const std::string& range, std::uint64_t budget, std::uint64_t seed) {
    const Graph g = Graph::read_edge_list_file(in_path);
    IsoResult r;
    std::uint32_t lo = 1, hi = 0;
    if (!range.empty()) {
        const std::size_t dots = range.find("..");
        if (dots == std::string::npos)
            fail(Errc::InvalidParams, "--range expects a..b");
        lo = static_cast<std::uint32_t>(std::stoul(range.substr(0, dots)));
        hi = static_cast<std::uint32_t>(std::stoul(range.substr(dots + 2)));
    }
    if (method == "exact")
        r = iso_exact(g, lo, hi);
    else if (method == "spectral")
        r = iso_spectral_lower(g);
    else if (method == "sampled")
        r = iso_sampled_upper(g, budget, seed);
    else
        fail(Errc::InvalidParams, "method must be exact, spectral, or sampled");
    ojson j;
    j["value"] = r.value;
    j["method"] = iso_method_name(r.method);
    j["range"] = {r.range_lo, r.range_hi};
    if (r.method != IsoMethod::SpectralLower) {
        j["num"] = r.num;
        j["den"] = r.den;
    } else {
        j["lambda2"] = r.lambda2;
    }
    if (r.witness) j["witness"] = r.witness->members();
    std::cout << j.dump() << '\n';
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_override,
                   unsigned threads) {
    ExperimentConfig cfg = parse_config_file(config_path);
    if (!out_override.empty()) cfg.output_path = out_override;
    if (const char* env = std::getenv("PERCOLAB_THREADS"))
        threads = static_cast<unsigned>(std::stoul(env));
    const ExperimentSummary summary = run_experiment(cfg, threads);
    if (!cfg.output_path.empty())
        write_report(summary, cfg.format, cfg.output_path);
    for (const Verdict& v : summary.verdicts)
        std::cerr << (v.pass ? "[pass] " : "[FAIL] ") << v.name << ": " << v.detail
                  << '\n';
    return all_predicates_pass(summary) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"percolation laboratory"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a host graph");
    std::string gen_model, gen_params, gen_out, gen_classes;
    std::uint64_t gen_seed = 0;
    gen->add_option("--model", gen_model)->required();
    gen->add_option("--params", gen_params)->required();
    gen->add_option("--seed", gen_seed);
    gen->add_option("--out", gen_out)->required();
    gen->add_option("--emit-classes", gen_classes);

    auto* perc = app.add_subcommand("perc", "sample a percolation mask");
    std::string perc_in, perc_out, perc_round = "single";
    double perc_p = 0.0;
    std::uint64_t perc_seed = 0;
    perc->add_option("--in", perc_in)->required();
    perc->add_option("--p", perc_p)->required();
    perc->add_option("--seed", perc_seed);
    perc->add_option("--round", perc_round);
    perc->add_option("--out", perc_out)->required();

    auto* census = app.add_subcommand("census", "component and vertex-set census");
    std::string census_in, census_mask;
    double census_delta = 0.0;
    bool census_json = false;
    census->add_option("--in", census_in)->required();
    census->add_option("--mask", census_mask)->required();
    census->add_option("--delta", census_delta)->required();
    census->add_flag("--json", census_json);

    auto* survival = app.add_subcommand("survival", "survival probabilities and F(c)");
    double survival_eps = 0.0;
    std::string survival_binomial, survival_series;
    survival->add_option("--eps", survival_eps);
    survival->add_option("--binomial", survival_binomial);
    survival->add_option("--series", survival_series);

    auto* iso = app.add_subcommand("iso", "isoperimetric bounds");
    std::string iso_in, iso_method, iso_range;
    std::uint64_t iso_budget = 1000, iso_seed = 0;
    iso->add_option("--in", iso_in)->required();
    iso->add_option("--method", iso_method)->required();
    iso->add_option("--range", iso_range);
    iso->add_option("--budget", iso_budget);
    iso->add_option("--seed", iso_seed);

    auto* experiment = app.add_subcommand("experiment", "run a trial battery");
    std::string exp_config, exp_out;
    unsigned exp_threads = 0;
    experiment->add_option("--config", exp_config)->required();
    experiment->add_option("--out", exp_out);
    experiment->add_option("--threads", exp_threads);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen(gen_model, gen_params, gen_seed, gen_out, gen_classes);
        if (perc->parsed())
            return cmd_perc(perc_in, perc_p, perc_seed, perc_round, perc_out);
        if (census->parsed()) return cmd_census(census_in, census_mask, census_delta);
        if (survival->parsed())
            return cmd_survival(survival_eps, survival_binomial, survival_series);
        if (iso->parsed()) return cmd_iso(iso_in, iso_method, iso_range, iso_budget, iso_seed);
        if (experiment->parsed()) return cmd_experiment(exp_config, exp_out, exp_threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
