#include "percolab/percolation.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "percolab/kernels.hpp"
#include "percolab/rng.hpp"

namespace percolab {

std::string_view round_label(Round r) {
    switch (r) {
        case Round::Single: return "single";
        case Round::Round1: return "round1";
        case Round::Round2: return "round2";
        case Round::Round3: return "round3";
        case Round::Union: return "union";
    }
    return "single";
}

namespace {

// keep bit i  <=>  u_i < p  where u_i = (stream_value >> 11) * 2^-53.
// Both sides are exact, so the comparison reduces to an integer threshold.
std::uint64_t threshold_for(double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return std::uint64_t{1} << 53;
    return static_cast<std::uint64_t>(std::ceil(p * 9007199254740992.0));
}

}  // namespace

PercolationSample percolate(const Graph& g, double p, std::uint64_t seed, Round round) {
    if (!(p >= 0.0 && p <= 1.0))
        fail(Errc::InvalidProbability, "p = " + std::to_string(p));
    PercolationSample sample;
    sample.graph = &g;
    sample.p = p;
    sample.seed = seed;
    sample.round = round;
    sample.keep = BitMask(g.edge_count());
    const std::uint64_t key = stream_key(seed, round_label(round));
    kernels::fill_threshold_mask(key, threshold_for(p), g.edge_count(),
                                 sample.keep.words().data());
    return sample;
}

PercolationSample union_rounds(std::span<const PercolationSample> samples) {
    if (samples.empty()) fail(Errc::InvalidParams, "no samples to union");
    const Graph* g = samples[0].graph;
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].graph != g)
            fail(Errc::GraphMismatch, "samples reference different graphs");
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i].round == samples[j].round)
                fail(Errc::DuplicateRound,
                     std::string(round_label(samples[i].round)) + " appears twice");
    PercolationSample out;
    out.graph = g;
    out.seed = samples[0].seed;
    out.round = Round::Union;
    out.keep = samples[0].keep;
    double miss = 1.0 - samples[0].p;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        out.keep.or_with(samples[i].keep);
        miss *= 1.0 - samples[i].p;
    }
    out.p = 1.0 - miss;
    return out;
}

ExposureSchedule split_probability(double p, double delta, double d) {
    if (!(p >= 0.0 && p <= 1.0)) fail(Errc::InvalidProbability, "p = " + std::to_string(p));
    if (!(delta >= 0.0)) fail(Errc::InvalidParams, "delta must be nonnegative");
    if (!(d > 0.0)) fail(Errc::InvalidParams, "d must be positive");
    const double q = delta / d;
    if (!(q >= 0.0 && q < 1.0))
        fail(Errc::InvalidParams, "delta/d = " + std::to_string(q) + " outside [0,1)");
    ExposureSchedule s;
    s.p = p;
    s.delta = delta;
    s.d = d;
    s.p2 = s.p3 = q;
    s.p1 = 1.0 - (1.0 - p) / ((1.0 - q) * (1.0 - q));
    if (!(s.p1 >= 0.0 && s.p1 <= 1.0))
        fail(Errc::InvalidProbability,
             "round-1 probability " + std::to_string(s.p1) + " outside [0,1]");
    const double product = (1.0 - s.p1) * (1.0 - s.p2) * (1.0 - s.p3);
    if (std::abs(product - (1.0 - p)) > 1e-12)
        fail(Errc::InvalidProbability, "schedule identity violated");
    return s;
}

ExposureSchedule schedule_for_epsilon(double epsilon, double d) {
    if (!(epsilon > 0.0)) fail(Errc::NonPositiveEpsilon, "epsilon = " + std::to_string(epsilon));
    const double delta = epsilon * epsilon / 10.0;
    const double p = (1.0 + epsilon) / d;
    ExposureSchedule s = split_probability(p, delta, d);
    if (s.p1 < (1.0 + epsilon - 2.0 * delta) / d - 1e-12)
        fail(Errc::InvalidProbability, "round-1 probability below its lower bound");
    if (s.rho2() < (1.0 + epsilon - delta) / d - 1e-12)
        fail(Errc::InvalidProbability, "round-2 cumulative probability below its lower bound");
    return s;
}

void write_mask_file(const std::filesystem::path& path, const BitMask& mask) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::OutputUnwritable, "cannot open " + path.string());
    std::uint8_t header[8];
    const std::uint64_t m = mask.bit_count();
    for (int i = 0; i < 8; ++i) header[i] = static_cast<std::uint8_t>(m >> (8 * i));
    out.write(reinterpret_cast<const char*>(header), 8);
    const std::uint64_t nbytes = (m + 7) / 8;
    std::vector<std::uint8_t> bytes(nbytes, 0);
    const auto words = mask.words();
    for (std::uint64_t b = 0; b < nbytes; ++b)
        bytes[b] = static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8)));
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(nbytes));
    out.flush();
    if (!out) fail(Errc::OutputUnwritable, "write failed for " + path.string());
}

BitMask read_mask_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::FormatError, "cannot open " + path.string());
    std::uint8_t header[8];
    if (!in.read(reinterpret_cast<char*>(header), 8))
        fail(Errc::FormatError, "mask file too short: " + path.string());
    std::uint64_t m = 0;
    for (int i = 0; i < 8; ++i) m |= static_cast<std::uint64_t>(header[i]) << (8 * i);
    const std::uint64_t nbytes = (m + 7) / 8;
    std::vector<std::uint8_t> bytes(nbytes);
    if (!in.read(reinterpret_cast<char*>(bytes.data()),
                 static_cast<std::streamsize>(nbytes)))
        fail(Errc::FormatError, "mask file truncated: " + path.string());
    BitMask mask(m);
    auto words = mask.words();
    for (std::uint64_t b = 0; b < nbytes; ++b)
        words[b / 8] |= static_cast<std::uint64_t>(bytes[b]) << (8 * (b % 8));
    if (m % 64 != 0 && !words.empty()) {
        // reject stray bits past the declared count
        const std::uint64_t tail = words.back() >> (m % 64);
        if (tail != 0) fail(Errc::FormatError, "mask has bits past declared count");
    }
    return mask;
}

}  // namespace percolab
