#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "anfaes/errors.hpp"

namespace anfaes {

/// Largest arity a TruthTable accepts. 2^24 output bits is already 2 MiB
/// packed; anything near the 128-bit AES block is out of reach anyway.
inline constexpr unsigned kMaxTruthTableArity = 24;

/// Output column of an n-variable Boolean function.
///
/// Row k holds f(x_1, ..., x_n) where x_1 is the most significant bit of k,
/// so the rows follow the usual 00..0, 00..1, ..., 11..1 listing. Bits are
/// packed 64 per word, row k at bit (k % 64) of word (k / 64).
class TruthTable {
public:
    explicit TruthTable(unsigned arity) : arity_(check_arity(arity)), words_(word_count(arity), 0) {}

    /// Parses a '0'/'1' string whose length is a power of two (2^n, n >= 1).
    static TruthTable from_string(std::string_view bits) {
        if (bits.size() < 2 || !std::has_single_bit(bits.size()))
            throw parse_error("truth table length " + std::to_string(bits.size()) +
                              " is not a power of two >= 2");
        const auto arity = static_cast<unsigned>(std::countr_zero(bits.size()));
        if (arity > kMaxTruthTableArity)
            throw parse_error("truth table arity " + std::to_string(arity) + " exceeds " +
                              std::to_string(kMaxTruthTableArity));
        TruthTable tt(arity);
        for (std::size_t k = 0; k < bits.size(); ++k) {
            const char c = bits[k];
            if (c != '0' && c != '1')
                throw parse_error(std::string("illegal truth table character '") + c + "' at offset " +
                                  std::to_string(k));
            if (c == '1') tt.set(k, true);
        }
        return tt;
    }

    unsigned arity() const noexcept { return arity_; }
    std::uint64_t size() const noexcept { return std::uint64_t{1} << arity_; }

    bool get(std::uint64_t row) const {
        check_row(row);
        return (words_[row >> 6] >> (row & 63)) & 1u;
    }

    void set(std::uint64_t row, bool value) {
        check_row(row);
        const std::uint64_t bit = std::uint64_t{1} << (row & 63);
        if (value)
            words_[row >> 6] |= bit;
        else
            words_[row >> 6] &= ~bit;
    }

    std::string to_string() const {
        std::string out(size(), '0');
        for (std::uint64_t k = 0; k < size(); ++k)
            if (get(k)) out[k] = '1';
        return out;
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }
    std::vector<std::uint64_t>& words() noexcept { return words_; }

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
    static unsigned check_arity(unsigned arity) {
        if (arity < 1 || arity > kMaxTruthTableArity)
            throw contract_error("truth table arity must be in [1, " + std::to_string(kMaxTruthTableArity) +
                                 "], got " + std::to_string(arity));
        return arity;
    }

    static std::size_t word_count(unsigned arity) {
        return arity >= 6 ? std::size_t{1} << (arity - 6) : 1;
    }

    void check_row(std::uint64_t row) const {
        if (row >= size())
            throw contract_error("truth table row " + std::to_string(row) + " out of range for arity " +
                                 std::to_string(arity_));
    }

    unsigned arity_;
    std::vector<std::uint64_t> words_;
};

namespace detail {

// Bits whose row index has bit j clear, for j < 6.
inline constexpr std::uint64_t kLowHalfMask[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
    0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL,
};

} // namespace detail

/// Binary Moebius transform: out[u] = XOR of in[v] over all v whose set
/// bits are a subset of u's. The map is an involution and turns a truth
/// table into its ANF coefficient table (and back).
///
/// Iterative butterfly, one pass per variable: in-word shifts for the six
/// low row bits, whole-word XORs above that.
inline TruthTable mobius_transform(const TruthTable& tt) {
    TruthTable out = tt;
    auto& w = out.words();
    const unsigned n = tt.arity();
    for (unsigned j = 0; j < std::min(n, 6u); ++j) {
        const unsigned stride = 1u << j;
        for (auto& word : w) word ^= (word & detail::kLowHalfMask[j]) << stride;
    }
    for (unsigned j = 6; j < n; ++j) {
        const std::size_t stride = std::size_t{1} << (j - 6);
        for (std::size_t base = 0; base < w.size(); base += 2 * stride)
            for (std::size_t i = base; i < base + stride; ++i) w[i + stride] ^= w[i];
    }
    if (n < 6) w[0] &= (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
    return out;
}

/// Number of rows where f = 1.
inline std::uint64_t weight(const TruthTable& tt) {
    std::uint64_t total = 0;
    for (auto word : tt.words()) total += static_cast<std::uint64_t>(std::popcount(word));
    return total;
}

/// Row indices where f = 1, ascending.
inline std::vector<std::uint64_t> support(const TruthTable& tt) {
    std::vector<std::uint64_t> rows;
    for (std::uint64_t k = 0; k < tt.size(); ++k)
        if (tt.get(k)) rows.push_back(k);
    return rows;
}

inline bool is_balanced(const TruthTable& tt) { return weight(tt) == tt.size() / 2; }

/// Row k as the input tuple (x_1, ..., x_n).
inline std::vector<std::uint8_t> row_inputs(std::uint64_t row, unsigned arity) {
    std::vector<std::uint8_t> x(arity);
    for (unsigned i = 0; i < arity; ++i) x[i] = (row >> (arity - 1 - i)) & 1u;
    return x;
}

} // namespace anfaes
