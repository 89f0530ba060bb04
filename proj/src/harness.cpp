#include "percolab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "percolab/exploration.hpp"
#include "percolab/percolation.hpp"
#include "percolab/theory.hpp"

namespace percolab {

using json = nlohmann::ordered_json;

double BoundSpec::resolve(std::uint64_t n, std::uint32_t d) const {
    switch (term) {
        case Term::Const: return coeff;
        case Term::LogN: return coeff * std::log(static_cast<double>(n));
        case Term::DLogN:
            return coeff * static_cast<double>(d) * std::log(static_cast<double>(n));
    }
    return coeff;
}

namespace {

BoundSpec parse_bound(const json& j) {
    BoundSpec b;
    if (j.is_number()) {
        b.coeff = j.get<double>();
        b.term = BoundSpec::Term::Const;
        return b;
    }
    if (j.is_object() && j.contains("coeff") && j.contains("term")) {
        b.coeff = j.at("coeff").get<double>();
        const std::string term = j.at("term").get<std::string>();
        if (term == "const")
            b.term = BoundSpec::Term::Const;
        else if (term == "log_n")
            b.term = BoundSpec::Term::LogN;
        else if (term == "d_log_n")
            b.term = BoundSpec::Term::DLogN;
        else
            fail(Errc::FormatError, "unknown bound term \"" + term + "\"");
        return b;
    }
    fail(Errc::FormatError, "bound must be a number or {coeff, term}");
}

PredicateSpec parse_predicate(const json& j) {
    PredicateSpec p;
    p.kind = j.at("kind").get<std::string>();
    p.name = j.value("name", p.kind);
    p.metric = j.value("metric", std::string{});
    if (j.contains("bound")) p.bound = parse_bound(j.at("bound"));
    if (j.contains("min_fraction")) p.min_fraction = j.at("min_fraction").get<double>();
    if (j.contains("tolerance")) p.tolerance = j.at("tolerance").get<double>();
    if (j.contains("lo")) p.lo = j.at("lo").get<double>();
    if (j.contains("hi")) p.hi = j.at("hi").get<double>();
    if (j.contains("center")) {
        const json& c = j.at("center");
        if (c.is_number()) {
            p.center = CenterKind::Value;
            p.center_value = c.get<double>();
        } else if (c.is_string() && c.get<std::string>() == "poisson") {
            p.center = CenterKind::Poisson;
        } else if (c.is_string() && c.get<std::string>() == "gw") {
            p.center = CenterKind::BinomialGw;
        } else {
            fail(Errc::FormatError, "center must be a number, \"poisson\", or \"gw\"");
        }
    }
    return p;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        fail(Errc::FormatError, std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        const json& gen = j.at("generator");
        cfg.generator.model = model_from_name(gen.at("model").get<std::string>());
        for (const auto& [key, value] : gen.at("params").items())
            cfg.generator.params[key] = value.get<std::int64_t>();
        if (gen.contains("seed")) {
            cfg.generator.seed = gen.at("seed").get<std::uint64_t>();
            cfg.generator_seed_explicit = true;
        }
        const json& prob = j.at("probability");
        if (prob.contains("p")) cfg.p = prob.at("p").get<double>();
        if (prob.contains("epsilon")) cfg.epsilon = prob.at("epsilon").get<double>();
        if (!cfg.p && !cfg.epsilon)
            fail(Errc::FormatError, "probability needs \"p\" or \"epsilon\"");
        if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
        cfg.census = j.value("census", true);
        cfg.trials = j.at("trials").get<std::uint32_t>();
        if (cfg.trials < 1) fail(Errc::InvalidParams, "trials must be at least 1");
        cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
        if (j.contains("big_component_bound"))
            cfg.big_component_bound = j.at("big_component_bound").get<double>();
        cfg.regenerate_graph = j.value("regenerate_graph", false);
        if (j.contains("predicates"))
            for (const json& p : j.at("predicates"))
                cfg.predicates.push_back(parse_predicate(p));
        cfg.output_path = j.value("output_path", std::string{});
        cfg.format = j.value("format", std::string("json-lines"));
        if (cfg.format != "json-lines" && cfg.format != "csv")
            fail(Errc::FormatError, "format must be json-lines or csv");
    } catch (const json::exception& e) {
        fail(Errc::FormatError, std::string("bad config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::FormatError, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

MetricAggregate aggregate_values(const std::vector<double>& values) {
    MetricAggregate a;
    if (values.empty()) return a;
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.stddev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    a.min = sorted.front();
    a.max = sorted.back();
    // nearest-rank quantiles
    const auto rank = [&](double q) {
        const std::size_t r = static_cast<std::size_t>(
            std::ceil(q * static_cast<double>(sorted.size())));
        return sorted[r == 0 ? 0 : r - 1];
    };
    a.q25 = rank(0.25);
    a.q50 = rank(0.50);
    a.q75 = rank(0.75);
    return a;
}

namespace {

struct HostSetup {
    GenResult gen;
    double p = 0.0;
    std::optional<double> delta;
    std::uint32_t d = 0;  // 0 when irregular
};

HostSetup make_host(const ExperimentConfig& cfg, std::uint64_t seed) {
    HostSetup host;
    GeneratorSpec spec = cfg.generator;
    spec.seed = cfg.generator_seed_explicit ? cfg.generator.seed : seed;
    host.gen = generate(spec);
    const auto dopt = host.gen.graph.regular_degree();
    host.d = dopt.value_or(0);
    if (cfg.p) {
        host.p = *cfg.p;
    } else {
        if (!dopt)
            fail(Errc::NotRegular, "epsilon-based probability needs a regular host");
        host.p = (1.0 + *cfg.epsilon) / static_cast<double>(*dopt);
    }
    if (!(host.p >= 0.0 && host.p <= 1.0))
        fail(Errc::InvalidProbability, "resolved p = " + std::to_string(host.p));
    if (cfg.delta)
        host.delta = *cfg.delta;
    else if (cfg.epsilon)
        host.delta = (*cfg.epsilon) * (*cfg.epsilon) / 10.0;
    return host;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const HostSetup& host,
                      std::uint32_t trial) {
    const auto t0 = std::chrono::steady_clock::now();
    const Graph& g = host.gen.graph;
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = cfg.base_seed + trial;
    const PercolationSample sample = percolate(g, host.p, rec.seed, Round::Single);
    rec.kept_edges = sample.kept_count();

    const bool census_on = cfg.census && host.delta && host.d >= 2;
    if (census_on) {
        const SetCensus sets = census_sets(g, sample, *host.delta);
        rec.vs = sets.v_small.size();
        rec.vl = sets.v_large.size();
        rec.wl = sets.w_large.size();
        const SizeBand band{sets.small_threshold, sets.large_threshold};
        const ComponentMetrics m = component_metrics(sets.census, {&band, 1});
        rec.l1 = m.l1;
        rec.l2 = m.l2;
        rec.n_components = m.component_count;
        rec.band_mass = band.lo <= band.hi ? static_cast<std::int64_t>(m.band_mass[0])
                                           : std::int64_t{0};
        if (cfg.big_component_bound) {
            std::int64_t big = 0;
            for (const std::uint32_t s : sets.census.sizes)
                big += static_cast<double>(s) >= *cfg.big_component_bound;
            rec.n_big_components = big;
        }
    } else {
        const ComponentCensus census = components(g, &sample.keep);
        rec.l1 = census.l1();
        rec.l2 = census.l2();
        rec.n_components = census.count();
        if (cfg.big_component_bound) {
            std::int64_t big = 0;
            for (const std::uint32_t s : census.sizes)
                big += static_cast<double>(s) >= *cfg.big_component_bound;
            rec.n_big_components = big;
        }
    }
    if (host.gen.class_of) {
        // a class is isolated when no kept edge leaves it
        const auto& class_of = *host.gen.class_of;
        const std::uint32_t t = host.gen.structured_sets.size();
        std::vector<std::uint8_t> touched(t, 0);
        const auto us = g.edge_sources();
        const auto vs = g.edge_targets();
        sample.keep.for_each_set([&](std::uint64_t i) {
            const std::uint32_t cu = class_of[us[i]];
            const std::uint32_t cv = class_of[vs[i]];
            if (cu != cv) {
                touched[cu] = 1;
                touched[cv] = 1;
            }
        });
        std::int64_t isolated = 0;
        for (std::uint32_t j = 0; j < t; ++j) isolated += !touched[j];
        rec.isolated_classes = isolated;
    }
    rec.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rec;
}

void append_metric(std::vector<std::pair<std::string, MetricAggregate>>& out,
                   const std::string& name, const std::vector<double>& values) {
    out.emplace_back(name, aggregate_values(values));
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& config, unsigned threads) {
    ExperimentSummary summary;
    summary.trials = config.trials;
    summary.base_seed = config.base_seed;

    std::vector<TrialRecord> records(config.trials);
    if (config.regenerate_graph) {
        // the host itself is resampled per trial
        for (std::uint32_t i = 0; i < config.trials; ++i) {
            const HostSetup host = make_host(config, config.base_seed + i);
            records[i] = run_trial(config, host, i);
            if (i == 0) {
                summary.n = host.gen.graph.vertex_count();
                summary.m = host.gen.graph.edge_count();
                summary.d = host.d;
                summary.p = host.p;
                summary.delta = host.delta;
                summary.census_enabled = config.census && host.delta && host.d >= 2;
                summary.classes_enabled = host.gen.class_of.has_value();
            }
        }
    } else {
        const HostSetup host = make_host(config, config.base_seed);
        summary.n = host.gen.graph.vertex_count();
        summary.m = host.gen.graph.edge_count();
        summary.d = host.d;
        summary.p = host.p;
        summary.delta = host.delta;
        summary.census_enabled = config.census && host.delta && host.d >= 2;
        summary.classes_enabled = host.gen.class_of.has_value();
        unsigned nthreads = threads == 0 ? std::thread::hardware_concurrency() : threads;
        nthreads = std::max(1u, std::min<unsigned>(nthreads, config.trials));
        if (nthreads == 1) {
            for (std::uint32_t i = 0; i < config.trials; ++i)
                records[i] = run_trial(config, host, i);
        } else {
            std::atomic<std::uint32_t> next{0};
            std::vector<std::thread> pool;
            pool.reserve(nthreads);
            for (unsigned t = 0; t < nthreads; ++t)
                pool.emplace_back([&] {
                    while (true) {
                        const std::uint32_t i = next.fetch_add(1);
                        if (i >= config.trials) return;
                        records[i] = run_trial(config, host, i);
                    }
                });
            for (auto& th : pool) th.join();
        }
    }
    summary.big_enabled = config.big_component_bound.has_value();
    summary.records = std::move(records);

    const auto collect = [&](auto getter) {
        std::vector<double> v;
        v.reserve(summary.records.size());
        for (const TrialRecord& r : summary.records)
            v.push_back(static_cast<double>(getter(r)));
        return v;
    };
    append_metric(summary.aggregates, "l1", collect([](const TrialRecord& r) { return r.l1; }));
    append_metric(summary.aggregates, "l2", collect([](const TrialRecord& r) { return r.l2; }));
    {
        std::vector<double> frac;
        frac.reserve(summary.records.size());
        for (const TrialRecord& r : summary.records)
            frac.push_back(static_cast<double>(r.l1) / static_cast<double>(summary.n));
        append_metric(summary.aggregates, "l1_frac", frac);
    }
    append_metric(summary.aggregates, "n_components",
                  collect([](const TrialRecord& r) { return r.n_components; }));
    append_metric(summary.aggregates, "kept_edges",
                  collect([](const TrialRecord& r) { return r.kept_edges; }));
    if (summary.census_enabled) {
        append_metric(summary.aggregates, "band_mass",
                      collect([](const TrialRecord& r) { return r.band_mass; }));
        append_metric(summary.aggregates, "vs", collect([](const TrialRecord& r) { return r.vs; }));
        append_metric(summary.aggregates, "vl", collect([](const TrialRecord& r) { return r.vl; }));
        append_metric(summary.aggregates, "wl", collect([](const TrialRecord& r) { return r.wl; }));
    }
    if (summary.big_enabled)
        append_metric(summary.aggregates, "n_big_components",
                      collect([](const TrialRecord& r) { return r.n_big_components; }));
    if (summary.classes_enabled)
        append_metric(summary.aggregates, "isolated_classes",
                      collect([](const TrialRecord& r) { return r.isolated_classes; }));

    summary.verdicts = evaluate_predicates(summary, config.predicates);
    return summary;
}

namespace {

double metric_value(const ExperimentSummary& summary, const TrialRecord& r,
                    const std::string& metric) {
    if (metric == "l1") return r.l1;
    if (metric == "l2") return r.l2;
    if (metric == "l1_frac")
        return static_cast<double>(r.l1) / static_cast<double>(summary.n);
    if (metric == "n_components") return r.n_components;
    if (metric == "kept_edges") return static_cast<double>(r.kept_edges);
    if (metric == "band_mass" && summary.census_enabled)
        return static_cast<double>(r.band_mass);
    if (metric == "vs" && summary.census_enabled) return static_cast<double>(r.vs);
    if (metric == "vl" && summary.census_enabled) return static_cast<double>(r.vl);
    if (metric == "wl" && summary.census_enabled) return static_cast<double>(r.wl);
    if (metric == "n_big_components" && summary.big_enabled)
        return static_cast<double>(r.n_big_components);
    if (metric == "isolated_classes" && summary.classes_enabled)
        return static_cast<double>(r.isolated_classes);
    fail(Errc::UnknownMetric, "metric \"" + metric + "\" not available");
}

std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::vector<Verdict> evaluate_predicates(const ExperimentSummary& summary,
                                         const std::vector<PredicateSpec>& predicates) {
    std::vector<Verdict> verdicts;
    for (const PredicateSpec& p : predicates) {
        Verdict v;
        v.name = p.name;
        const auto fraction_meeting = [&](const std::string& metric, auto cmp) {
            std::uint32_t hits = 0;
            for (const TrialRecord& r : summary.records)
                hits += cmp(metric_value(summary, r, metric));
            return static_cast<double>(hits) / static_cast<double>(summary.records.size());
        };
        if (p.kind == "giant-band") {
            double center = p.center_value;
            if (p.center == CenterKind::Poisson)
                center = poisson_survival(summary.p * summary.d - 1.0).value;
            else if (p.center == CenterKind::BinomialGw)
                center = binomial_gw_survival(summary.d, summary.p).value;
            double sum = 0.0;
            for (const TrialRecord& r : summary.records)
                sum += metric_value(summary, r, p.metric.empty() ? "l1_frac" : p.metric);
            v.measured = sum / static_cast<double>(summary.records.size());
            v.pass = std::abs(v.measured - center) <= p.tolerance;
            v.detail = "mean " + fmt(v.measured) + " vs " + fmt(center) + " +- " +
                       fmt(p.tolerance);
        } else if (p.kind == "second-small" || p.kind == "all-small") {
            const std::string metric =
                !p.metric.empty() ? p.metric : (p.kind == "second-small" ? "l2" : "l1");
            const double bound = p.bound.resolve(summary.n, summary.d);
            v.measured = fraction_meeting(metric, [&](double x) { return x <= bound; });
            v.pass = v.measured >= p.min_fraction;
            v.detail = metric + " <= " + fmt(bound) + " in fraction " + fmt(v.measured) +
                       " of trials (need " + fmt(p.min_fraction) + ")";
        } else if (p.kind == "giant-at-least") {
            const std::string metric = p.metric.empty() ? "l1" : p.metric;
            const double bound = p.bound.resolve(summary.n, summary.d);
            v.measured = fraction_meeting(metric, [&](double x) { return x >= bound; });
            v.pass = v.measured >= p.min_fraction;
            v.detail = metric + " >= " + fmt(bound) + " in fraction " + fmt(v.measured) +
                       " of trials (need " + fmt(p.min_fraction) + ")";
        } else if (p.kind == "count-band") {
            if (p.metric.empty()) fail(Errc::UnknownMetric, "count-band needs a metric");
            double sum = 0.0;
            for (const TrialRecord& r : summary.records)
                sum += metric_value(summary, r, p.metric);
            v.measured = sum / static_cast<double>(summary.records.size());
            v.pass = v.measured >= p.lo && v.measured <= p.hi;
            v.detail = "mean " + p.metric + " = " + fmt(v.measured) + " in [" +
                       fmt(p.lo) + "," + fmt(p.hi) + "]";
        } else {
            fail(Errc::UnknownPredicate, "kind \"" + p.kind + "\"");
        }
        verdicts.push_back(std::move(v));
    }
    return verdicts;
}

bool all_predicates_pass(const ExperimentSummary& summary) {
    for (const Verdict& v : summary.verdicts)
        if (!v.pass) return false;
    return true;
}

namespace {

json record_json(const ExperimentSummary& s, const TrialRecord& r) {
    json j;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["l1"] = r.l1;
    j["l2"] = r.l2;
    j["n_components"] = r.n_components;
    j["kept_edges"] = r.kept_edges;
    if (s.census_enabled) {
        j["band_mass"] = r.band_mass;
        j["vs"] = r.vs;
        j["vl"] = r.vl;
        j["wl"] = r.wl;
    } else {
        j["band_mass"] = nullptr;
        j["vs"] = nullptr;
        j["vl"] = nullptr;
        j["wl"] = nullptr;
    }
    if (s.big_enabled)
        j["n_big_components"] = r.n_big_components;
    else
        j["n_big_components"] = nullptr;
    if (s.classes_enabled)
        j["isolated_classes"] = r.isolated_classes;
    else
        j["isolated_classes"] = nullptr;
    return j;
}

}  // namespace

void write_report(const ExperimentSummary& summary, const std::string& format,
                  const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::OutputUnwritable, "cannot open " + path.string());
    if (format == "json-lines") {
        for (const TrialRecord& r : summary.records)
            out << record_json(summary, r).dump() << '\n';
        json agg;
        agg["aggregate"] = true;
        agg["trials"] = summary.trials;
        agg["n"] = summary.n;
        agg["m"] = summary.m;
        agg["d"] = summary.d;
        agg["p"] = summary.p;
        agg["base_seed"] = summary.base_seed;
        json metrics;
        for (const auto& [name, a] : summary.aggregates) {
            json m;
            m["mean"] = a.mean;
            m["stddev"] = a.stddev;
            m["min"] = a.min;
            m["max"] = a.max;
            m["q25"] = a.q25;
            m["q50"] = a.q50;
            m["q75"] = a.q75;
            metrics[name] = m;
        }
        agg["metrics"] = metrics;
        json verdicts = json::array();
        for (const Verdict& v : summary.verdicts) {
            json jv;
            jv["name"] = v.name;
            jv["pass"] = v.pass;
            jv["measured"] = v.measured;
            jv["detail"] = v.detail;
            verdicts.push_back(jv);
        }
        agg["verdicts"] = verdicts;
        out << agg.dump() << '\n';
    } else if (format == "csv") {
        out << "trial,seed,l1,l2,n_components,kept_edges,band_mass,vs,vl,wl,"
               "n_big_components,isolated_classes\n";
        for (const TrialRecord& r : summary.records) {
            out << r.trial << ',' << r.seed << ',' << r.l1 << ',' << r.l2 << ','
                << r.n_components << ',' << r.kept_edges << ',';
            if (summary.census_enabled)
                out << r.band_mass << ',' << r.vs << ',' << r.vl << ',' << r.wl << ',';
            else
                out << ",,,,";
            if (summary.big_enabled) out << r.n_big_components;
            out << ',';
            if (summary.classes_enabled) out << r.isolated_classes;
            out << '\n';
        }
    } else {
        fail(Errc::FormatError, "unknown report format \"" + format + "\"");
    }
    out.flush();
    if (!out) fail(Errc::OutputUnwritable, "write failed for " + path.string());
}

}  // namespace percolab
