#pragma once

#include <cstddef>
#include <cstdint>

namespace percolab::kernels {

// Data-parallel inner loops used by percolation sampling. Each kernel has a
// scalar reference implementation and an AVX2 variant; the variants are
// bit-for-bit equivalent (all integer arithmetic) and the active one is
// selected at runtime. PERCOLAB_ISA=scalar|avx2 overrides detection.

enum class Isa { Scalar, Avx2 };

Isa active();
void force(Isa isa);  // test hook; throws InvalidParams if unsupported
const char* isa_name(Isa isa);
bool avx2_supported();

// out gets `count` bits, LSB-first within 64-bit words; tail bits are zero.
// Bit i = ((stream_value(key, i) >> 11) < threshold).
void fill_threshold_mask(std::uint64_t key, std::uint64_t threshold,
                         std::uint64_t count, std::uint64_t* out);

void or_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
              std::size_t nwords);

std::uint64_t popcount_words(const std::uint64_t* words, std::size_t nwords);

namespace detail {

void fill_threshold_mask_scalar(std::uint64_t key, std::uint64_t threshold,
                                std::uint64_t count, std::uint64_t* out);
void or_words_scalar(const std::uint64_t* a, const std::uint64_t* b,
                     std::uint64_t* out, std::size_t nwords);
std::uint64_t popcount_words_scalar(const std::uint64_t* words, std::size_t nwords);

void fill_threshold_mask_avx2(std::uint64_t key, std::uint64_t threshold,
                              std::uint64_t count, std::uint64_t* out);
void or_words_avx2(const std::uint64_t* a, const std::uint64_t* b,
                   std::uint64_t* out, std::size_t nwords);
std::uint64_t popcount_words_avx2(const std::uint64_t* words, std::size_t nwords);

}  // namespace detail

}  // namespace percolab::kernels
