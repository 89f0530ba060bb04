// AVX2 variants. All-integer arithmetic, bit-identical to the scalar
// reference; the tail of a partial word falls back to the shared scalar
// helper so outputs match exactly.

#include <immintrin.h>

#include "percolab/kernels.hpp"
#include "kernels_common.hpp"

namespace percolab::kernels::detail {

namespace {

// Low 64 bits of a*b per lane (AVX2 has no 64x64 multiply).
inline __m256i mul64(__m256i a, __m256i b) {
    const __m256i lo = _mm256_mul_epu32(a, b);
    const __m256i a_hi = _mm256_srli_epi64(a, 32);
    const __m256i b_hi = _mm256_srli_epi64(b, 32);
    const __m256i cross =
        _mm256_add_epi64(_mm256_mul_epu32(a_hi, b), _mm256_mul_epu32(a, b_hi));
    return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix4(__m256i z) {
    const __m256i m1 = _mm256_set1_epi64x(static_cast<long long>(0xBF58476D1CE4E5B9ull));
    const __m256i m2 = _mm256_set1_epi64x(static_cast<long long>(0x94D049BB133111EBull));
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
    z = mul64(z, m1);
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
    z = mul64(z, m2);
    return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

}  // namespace

void fill_threshold_mask_avx2(std::uint64_t key, std::uint64_t threshold,
                              std::uint64_t count, std::uint64_t* out) {
    const std::uint64_t full_words = count / 64;
    const __m256i thr = _mm256_set1_epi64x(static_cast<long long>(threshold));
    const __m256i step = _mm256_set1_epi64x(static_cast<long long>(4 * kGolden));
    // counter i contributes key + (i+1)*kGolden before mixing
    __m256i ctr = _mm256_setr_epi64x(static_cast<long long>(key + 1 * kGolden),
                                     static_cast<long long>(key + 2 * kGolden),
                                     static_cast<long long>(key + 3 * kGolden),
                                     static_cast<long long>(key + 4 * kGolden));
    for (std::uint64_t w = 0; w < full_words; ++w) {
        std::uint64_t bits = 0;
        for (int grp = 0; grp < 16; ++grp) {
            const __m256i h = mix4(ctr);
            ctr = _mm256_add_epi64(ctr, step);
            const __m256i v = _mm256_srli_epi64(h, 11);
            // both sides < 2^53, so the signed compare is safe
            const __m256i lt = _mm256_cmpgt_epi64(thr, v);
            const unsigned m = static_cast<unsigned>(
                _mm256_movemask_pd(_mm256_castsi256_pd(lt)));
            bits |= static_cast<std::uint64_t>(m) << (4 * grp);
        }
        out[w] = bits;
    }
    if (count % 64)
        out[full_words] = threshold_word(key, threshold, full_words * 64,
                                         static_cast<unsigned>(count % 64));
}

void or_words_avx2(const std::uint64_t* a, const std::uint64_t* b,
                   std::uint64_t* out, std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_or_si256(va, vb));
    }
    for (; i < nwords; ++i) out[i] = a[i] | b[i];
}

std::uint64_t popcount_words_avx2(const std::uint64_t* words, std::size_t nwords) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_nibble = _mm256_set1_epi8(0x0f);
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
        const __m256i lo = _mm256_and_si256(v, low_nibble);
        const __m256i hi = _mm256_and_si256(_mm256_srli_epi32(v, 4), low_nibble);
        const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                            _mm256_shuffle_epi8(lut, hi));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < nwords; ++i)
        total += static_cast<std::uint64_t>(__builtin_popcountll(words[i]));
    return total;
}

}  // namespace percolab::kernels::detail
