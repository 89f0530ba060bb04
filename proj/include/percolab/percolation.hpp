#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>

#include "percolab/bitmask.hpp"
#include "percolab/graph.hpp"

namespace percolab {

enum class Round { Single, Round1, Round2, Round3, Union };

std::string_view round_label(Round r);

// Keep/drop mask over a graph's canonical edge indices. The mask for edge i
// is a pure function of (seed, round label, i), so samples are reproducible
// under any evaluation order.
struct PercolationSample {
    const Graph* graph = nullptr;
    BitMask keep;
    double p = 0.0;
    std::uint64_t seed = 0;
    Round round = Round::Single;

    std::uint64_t kept_count() const { return keep.popcount(); }
};

PercolationSample percolate(const Graph& g, double p, std::uint64_t seed,
                            Round round = Round::Single);

// Elementwise OR of masks over the same graph with distinct round labels.
PercolationSample union_rounds(std::span<const PercolationSample> samples);

// Three-round exposure p = 1 - (1-p1)(1-p2)(1-p3) with p2 = p3 = delta/d.
struct ExposureSchedule {
    double p = 0.0;
    double delta = 0.0;
    double d = 0.0;
    double p1 = 0.0, p2 = 0.0, p3 = 0.0;

    double rho1() const { return p1; }
    double rho2() const { return 1.0 - (1.0 - p1) * (1.0 - p2); }
    double rho3() const { return p; }
};

ExposureSchedule split_probability(double p, double delta, double d);

// Schedule for p = (1+epsilon)/d with the default delta = epsilon^2/10.
// Also asserts the round-probability lower bounds p1 >= (1+eps-2*delta)/d and
// rho2 >= (1+eps-delta)/d.
ExposureSchedule schedule_for_epsilon(double epsilon, double d);

// Mask file: 8-byte little-endian edge count, then ceil(m/8) bytes of
// bit-packed keep indicators, LSB-first.
void write_mask_file(const std::filesystem::path& path, const BitMask& mask);
BitMask read_mask_file(const std::filesystem::path& path);

}  // namespace percolab
