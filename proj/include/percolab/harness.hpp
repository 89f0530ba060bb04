#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "percolab/generators.hpp"
#include "percolab/graph.hpp"

namespace percolab {

// How a predicate's reference value is obtained.
enum class CenterKind { Value, Poisson, BinomialGw };

struct BoundSpec {
    double coeff = 0.0;
    enum class Term { Const, LogN, DLogN } term = Term::Const;

    double resolve(std::uint64_t n, std::uint32_t d) const;
};

struct PredicateSpec {
    std::string name;
    std::string kind;    // giant-band | second-small | all-small | giant-at-least | count-band
    std::string metric;  // empty = kind default
    BoundSpec bound;
    double min_fraction = 0.95;
    double tolerance = 0.0;            // giant-band
    CenterKind center = CenterKind::Value;
    double center_value = 0.0;
    double lo = 0.0, hi = 0.0;         // count-band
};

struct ExperimentConfig {
    GeneratorSpec generator;
    bool generator_seed_explicit = false;  // otherwise host seed = base_seed
    std::optional<double> p;
    std::optional<double> epsilon;     // p = (1+epsilon)/d
    std::optional<double> delta;       // enables the set census; default eps^2/10
    bool census = true;                // only effective when delta resolvable
    std::uint32_t trials = 1;
    std::uint64_t base_seed = 0;
    std::optional<double> big_component_bound;  // enables n_big_components
    bool regenerate_graph = false;     // fresh host per trial (seed base_seed+i)
    std::vector<PredicateSpec> predicates;
    std::string output_path;
    std::string format = "json-lines";  // json-lines | csv
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

struct TrialRecord {
    std::uint32_t trial = 0;
    std::uint64_t seed = 0;
    std::uint32_t l1 = 0;
    std::uint32_t l2 = 0;
    std::uint32_t n_components = 0;
    std::uint64_t kept_edges = 0;
    // -1 when the corresponding feature is disabled.
    std::int64_t band_mass = -1;
    std::int64_t vs = -1, vl = -1, wl = -1;
    std::int64_t n_big_components = -1;
    std::int64_t isolated_classes = -1;
    double runtime_ms = 0.0;  // in-memory only; never serialized
};

struct MetricAggregate {
    double mean = 0.0, stddev = 0.0;
    double min = 0.0, max = 0.0;
    double q25 = 0.0, q50 = 0.0, q75 = 0.0;
};

MetricAggregate aggregate_values(const std::vector<double>& values);

struct Verdict {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    std::string detail;
};

struct ExperimentSummary {
    std::uint64_t n = 0, m = 0;
    std::uint32_t d = 0;  // regular degree of the host, 0 if irregular
    double p = 0.0;
    std::optional<double> delta;
    std::uint32_t trials = 0;
    std::uint64_t base_seed = 0;
    bool census_enabled = false;
    bool big_enabled = false;
    bool classes_enabled = false;
    std::vector<TrialRecord> records;
    std::vector<std::pair<std::string, MetricAggregate>> aggregates;
    std::vector<Verdict> verdicts;
};

// Generates the host once (per-trial when regenerate_graph), runs independent
// percolations with per-trial seed base_seed + i, aggregates, and evaluates
// the config's predicates. Deterministic for a fixed config at any thread
// count. threads = 0 means hardware concurrency.
ExperimentSummary run_experiment(const ExperimentConfig& config, unsigned threads = 0);

std::vector<Verdict> evaluate_predicates(const ExperimentSummary& summary,
                                         const std::vector<PredicateSpec>& predicates);

// json-lines: one object per trial plus a trailing aggregate object
// ("aggregate": true). csv: header plus one row per trial.
void write_report(const ExperimentSummary& summary, const std::string& format,
                  const std::filesystem::path& path);

bool all_predicates_pass(const ExperimentSummary& summary);

}  // namespace percolab
