#include "percolab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "percolab/error.hpp"
#include "kernels_common.hpp"

namespace percolab::kernels {

namespace detail {

void fill_threshold_mask_scalar(std::uint64_t key, std::uint64_t threshold,
                                std::uint64_t count, std::uint64_t* out) {
    const std::uint64_t nwords = (count + 63) / 64;
    for (std::uint64_t w = 0; w < nwords; ++w) {
        const std::uint64_t base = w * 64;
        const unsigned nbits = static_cast<unsigned>(count - base < 64 ? count - base : 64);
        out[w] = threshold_word(key, threshold, base, nbits);
    }
}

void or_words_scalar(const std::uint64_t* a, const std::uint64_t* b,
                     std::uint64_t* out, std::size_t nwords) {
    for (std::size_t i = 0; i < nwords; ++i) out[i] = a[i] | b[i];
}

std::uint64_t popcount_words_scalar(const std::uint64_t* words, std::size_t nwords) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < nwords; ++i)
        total += static_cast<std::uint64_t>(__builtin_popcountll(words[i]));
    return total;
}

}  // namespace detail

bool avx2_supported() {
#if defined(PERCOLAB_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

namespace {

std::atomic<int> g_isa{-1};

Isa detect() {
    if (const char* env = std::getenv("PERCOLAB_ISA")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Isa::Avx2;
    }
    return avx2_supported() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

Isa active() {
    int v = g_isa.load(std::memory_order_relaxed);
    if (v < 0) {
        v = static_cast<int>(detect());
        g_isa.store(v, std::memory_order_relaxed);
    }
    return static_cast<Isa>(v);
}

void force(Isa isa) {
    if (isa == Isa::Avx2 && !avx2_supported())
        fail(Errc::InvalidParams, "avx2 not available on this machine");
    g_isa.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void fill_threshold_mask(std::uint64_t key, std::uint64_t threshold,
                         std::uint64_t count, std::uint64_t* out) {
#if defined(PERCOLAB_HAVE_AVX2)
    if (active() == Isa::Avx2) {
        detail::fill_threshold_mask_avx2(key, threshold, count, out);
        return;
    }
#endif
    detail::fill_threshold_mask_scalar(key, threshold, count, out);
}

void or_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out,
              std::size_t nwords) {
#if defined(PERCOLAB_HAVE_AVX2)
    if (active() == Isa::Avx2) {
        detail::or_words_avx2(a, b, out, nwords);
        return;
    }
#endif
    detail::or_words_scalar(a, b, out, nwords);
}

std::uint64_t popcount_words(const std::uint64_t* words, std::size_t nwords) {
#if defined(PERCOLAB_HAVE_AVX2)
    if (active() == Isa::Avx2) return detail::popcount_words_avx2(words, nwords);
#endif
    return detail::popcount_words_scalar(words, nwords);
}

}  // namespace percolab::kernels
