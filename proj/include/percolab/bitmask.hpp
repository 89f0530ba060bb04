#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "percolab/error.hpp"
#include "percolab/kernels.hpp"

namespace percolab {

// Fixed-length bit vector, LSB-first within 64-bit words. Bits past
// bit_count() are kept zero.
class BitMask {
public:
    BitMask() = default;

    explicit BitMask(std::uint64_t bits, bool value = false)
        : bits_(bits), words_((bits + 63) / 64, value ? ~std::uint64_t{0} : 0) {
        clear_tail();
    }

    std::uint64_t bit_count() const { return bits_; }
    std::size_t word_count() const { return words_.size(); }

    bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void set(std::uint64_t i, bool value) {
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= bit;
        else
            words_[i >> 6] &= ~bit;
    }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    std::uint64_t popcount() const {
        return kernels::popcount_words(words_.data(), words_.size());
    }

    void or_with(const BitMask& other) {
        if (other.bits_ != bits_) fail(Errc::MaskLengthMismatch, "bit counts differ");
        kernels::or_words(words_.data(), other.words_.data(), words_.data(), words_.size());
    }

    // Calls fn(i) for every set bit, ascending.
    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                const int b = __builtin_ctzll(word);
                fn(static_cast<std::uint64_t>(w) * 64 + b);
                word &= word - 1;
            }
        }
    }

    bool operator==(const BitMask& other) const = default;

private:
    void clear_tail() {
        if (bits_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
    }

    std::uint64_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace percolab
