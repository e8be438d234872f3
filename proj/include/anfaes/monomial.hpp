#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "anfaes/errors.hpp"

namespace anfaes {

/// A product of distinct variables, stored as a fixed-capacity bit mask.
/// The empty mask is the constant monomial 1.
///
/// Variable i lives at bit (63 - i % 64) of word i / 64, so comparing the
/// word arrays lexicographically orders monomials as big-endian integers
/// with variable 0 as the most significant digit.
template <std::size_t MaxVars>
class Monomial {
    static_assert(MaxVars > 0);

public:
    static constexpr std::size_t kCapacity = MaxVars;
    static constexpr std::size_t kWords = (MaxVars + 63) / 64;

    constexpr Monomial() = default;

    Monomial(std::initializer_list<std::size_t> vars) {
        for (auto v : vars) set(v);
    }

    static Monomial from_vars(const std::vector<std::size_t>& vars) {
        Monomial m;
        for (auto v : vars) m.set(v);
        return m;
    }

    void set(std::size_t var) {
        check(var);
        words_[var >> 6] |= bit(var);
    }

    void reset(std::size_t var) {
        check(var);
        words_[var >> 6] &= ~bit(var);
    }

    bool test(std::size_t var) const {
        check(var);
        return (words_[var >> 6] & bit(var)) != 0;
    }

    bool is_constant() const noexcept {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    std::size_t degree() const noexcept {
        std::size_t d = 0;
        for (auto w : words_) d += static_cast<std::size_t>(std::popcount(w));
        return d;
    }

    /// One past the highest variable index present, 0 for the constant.
    std::size_t span_end() const noexcept {
        for (std::size_t k = kWords; k-- > 0;)
            if (words_[k] != 0) return k * 64 + 64 - static_cast<std::size_t>(std::countr_zero(words_[k]));
        return 0;
    }

    /// Variable indices, ascending.
    std::vector<std::size_t> vars() const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < kWords; ++k) {
            std::uint64_t w = words_[k];
            while (w != 0) {
                const auto lead = static_cast<std::size_t>(std::countl_zero(w));
                out.push_back(k * 64 + lead);
                w &= ~(std::uint64_t{1} << (63 - lead));
            }
        }
        return out;
    }

    bool subset_of(const Monomial& other) const noexcept {
        for (std::size_t k = 0; k < kWords; ++k)
            if ((words_[k] & ~other.words_[k]) != 0) return false;
        return true;
    }

    /// Product of two monomials (x * x = x, so this is set union).
    friend Monomial operator*(const Monomial& a, const Monomial& b) noexcept {
        Monomial r;
        for (std::size_t k = 0; k < kWords; ++k) r.words_[k] = a.words_[k] | b.words_[k];
        return r;
    }

    const std::array<std::uint64_t, kWords>& words() const noexcept { return words_; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    static constexpr std::uint64_t bit(std::size_t var) noexcept {
        return std::uint64_t{1} << (63 - (var & 63));
    }

    static void check(std::size_t var) {
        if (var >= MaxVars)
            throw contract_error("variable index " + std::to_string(var) + " exceeds monomial capacity " +
                                 std::to_string(MaxVars));
    }

    std::array<std::uint64_t, kWords> words_{};
};

struct MonomialHash {
    template <std::size_t N>
    std::size_t operator()(const Monomial<N>& m) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : m.words()) {
            std::uint64_t z = w + h + 0x9e3779b97f4a7c15ULL;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            h = z ^ (z >> 31);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace anfaes
