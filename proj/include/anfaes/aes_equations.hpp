#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "anfaes/aes_reference.hpp"
#include "anfaes/anf.hpp"
#include "anfaes/boolfn.hpp"
#include "anfaes/parallel.hpp"
#include "anfaes/truth_table.hpp"

/// Per-bit ANF equations for the AES-128 sub-functions. Every builder
/// returns 128 equations (32 for a key word); equation i gives output bit
/// b_i in terms of the variables of the input segment(s).
namespace anfaes::aes {

using Equations = std::vector<Anf256>;

/// A fresh space holding one 128-variable segment named "state".
inline VarSpace state_space() {
    VarSpace s;
    s.add("state", kBlockBits);
    return s;
}

/// Space for an AddRoundKey stage: "state" at 0..127, "key" at 128..255.
inline VarSpace state_key_space() {
    VarSpace s;
    s.add("state", kBlockBits);
    s.add("key", kBlockBits);
    return s;
}

/// Output bit j (0 = most significant) of an 8-bit table, as a truth
/// table over the input byte's bits x_1 (MSB) .. x_8 (LSB).
inline TruthTable coordinate_truth_table(const std::array<std::uint8_t, 256>& table, unsigned bit) {
    TruthTable tt(8);
    for (std::uint64_t x = 0; x < 256; ++x) tt.set(x, (table[x] >> (7 - bit)) & 1u);
    return tt;
}

/// The eight coordinate ANFs of an 8-bit table over an 8-variable space,
/// variable 0 being the input MSB.
inline Equations coordinate_anfs(const std::array<std::uint8_t, 256>& table) {
    Equations out;
    out.reserve(8);
    for (unsigned bit = 0; bit < 8; ++bit) out.push_back(anf_from_truth_table<256>(coordinate_truth_table(table, bit)));
    return out;
}

inline const Equations& sbox_coordinate_anfs() {
    static const Equations anfs = coordinate_anfs(kSbox);
    return anfs;
}

inline const Equations& inv_sbox_coordinate_anfs() {
    static const Equations anfs = coordinate_anfs(kInvSbox);
    return anfs;
}

namespace detail {

inline void require_width(const Segment& s, std::size_t width) {
    if (s.length != width)
        throw contract_error("segment '" + s.name + "' has width " + std::to_string(s.length) + ", expected " +
                             std::to_string(width));
}

inline void require_inside(const VarSpace& space, const Segment& s) {
    if (s.end() > space.width())
        throw contract_error("segment '" + s.name + "' lies outside the variable space");
}

inline Equations bytewise(const VarSpace& space, const Segment& layer, const Equations& coords) {
    require_width(layer, kBlockBits);
    require_inside(space, layer);
    Equations out;
    out.reserve(kBlockBits);
    for (std::size_t byte = 0; byte < 16; ++byte) {
        std::vector<std::size_t> map(8);
        for (std::size_t k = 0; k < 8; ++k) map[k] = layer.start + 8 * byte + k;
        for (std::size_t bit = 0; bit < 8; ++bit) out.push_back(rename<256>(coords[bit], map, space.width()));
    }
    return out;
}

inline Equations permutation(const VarSpace& space, const Segment& layer, const std::array<std::size_t, 128>& src) {
    require_width(layer, kBlockBits);
    require_inside(space, layer);
    Equations out;
    out.reserve(kBlockBits);
    for (std::size_t i = 0; i < kBlockBits; ++i) out.push_back(Anf256::variable(space.width(), layer.start + src[i]));
    return out;
}

/// Bit-level linear map of "multiply by c" on one byte: result[j] lists
/// the input bit offsets (0 = MSB) that XOR into output bit j.
inline std::array<std::vector<std::size_t>, 8> constant_multiplier_bits(std::uint8_t c) {
    std::array<std::vector<std::size_t>, 8> rows;
    for (std::size_t p = 0; p < 8; ++p) {
        const auto image = gf_mul(c, static_cast<std::uint8_t>(0x80u >> p));
        for (std::size_t j = 0; j < 8; ++j)
            if ((image >> (7 - j)) & 1u) rows[j].push_back(p);
    }
    return rows;
}

inline Equations column_mix(const VarSpace& space, const Segment& layer, const std::array<std::uint8_t, 4>& row) {
    require_width(layer, kBlockBits);
    require_inside(space, layer);
    std::array<std::array<std::vector<std::size_t>, 8>, 4> mul;
    for (std::size_t k = 0; k < 4; ++k) mul[k] = constant_multiplier_bits(row[k]);
    Equations out;
    out.reserve(kBlockBits);
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t j = 0; j < 8; ++j) {
                Anf256 eq(space.width());
                for (std::size_t k = 0; k < 4; ++k)
                    for (auto p : mul[(k + 4 - r) % 4][j])
                        eq.toggle_unchecked(Monomial<256>{layer.start + 8 * (4 * c + k) + p});
                out.push_back(std::move(eq));
            }
    return out;
}

inline std::array<std::size_t, 128> bit_permutation(const std::array<std::size_t, 16>& byte_src) {
    std::array<std::size_t, 128> src{};
    for (std::size_t i = 0; i < 128; ++i) src[i] = 8 * byte_src[i / 8] + i % 8;
    return src;
}

} // namespace detail

/// pi such that ShiftRows output bit i is input bit pi[i].
inline const std::array<std::size_t, 128>& shiftrows_permutation() {
    static const auto pi = detail::bit_permutation(kShiftRowsSource);
    return pi;
}

inline const std::array<std::size_t, 128>& inv_shiftrows_permutation() {
    static const auto pi = detail::bit_permutation(kInvShiftRowsSource);
    return pi;
}

inline Equations subbytes_equations(const VarSpace& space, const Segment& layer) {
    return detail::bytewise(space, layer, sbox_coordinate_anfs());
}

inline Equations inv_subbytes_equations(const VarSpace& space, const Segment& layer) {
    return detail::bytewise(space, layer, inv_sbox_coordinate_anfs());
}

inline Equations shiftrows_equations(const VarSpace& space, const Segment& layer) {
    return detail::permutation(space, layer, shiftrows_permutation());
}

inline Equations inv_shiftrows_equations(const VarSpace& space, const Segment& layer) {
    return detail::permutation(space, layer, inv_shiftrows_permutation());
}

inline Equations mixcolumns_equations(const VarSpace& space, const Segment& layer) {
    return detail::column_mix(space, layer, kMixRow);
}

inline Equations inv_mixcolumns_equations(const VarSpace& space, const Segment& layer) {
    return detail::column_mix(space, layer, kInvMixRow);
}

inline Equations addroundkey_equations(const VarSpace& space, const Segment& state, const Segment& key) {
    detail::require_width(state, kBlockBits);
    detail::require_width(key, kBlockBits);
    detail::require_inside(space, state);
    detail::require_inside(space, key);
    Equations out;
    out.reserve(kBlockBits);
    for (std::size_t i = 0; i < kBlockBits; ++i)
        out.push_back(Anf256::from_terms(space.width(), {Monomial<256>{state[i]}, Monomial<256>{key[i]}}));
    return out;
}

// Overloads over the default single-layer spaces.
inline Equations subbytes_equations() {
    const auto s = state_space();
    return subbytes_equations(s, s.segment("state"));
}
inline Equations inv_subbytes_equations() {
    const auto s = state_space();
    return inv_subbytes_equations(s, s.segment("state"));
}
inline Equations shiftrows_equations() {
    const auto s = state_space();
    return shiftrows_equations(s, s.segment("state"));
}
inline Equations inv_shiftrows_equations() {
    const auto s = state_space();
    return inv_shiftrows_equations(s, s.segment("state"));
}
inline Equations mixcolumns_equations() {
    const auto s = state_space();
    return mixcolumns_equations(s, s.segment("state"));
}
inline Equations inv_mixcolumns_equations() {
    const auto s = state_space();
    return inv_mixcolumns_equations(s, s.segment("state"));
}
inline Equations addroundkey_equations() {
    const auto s = state_key_space();
    return addroundkey_equations(s, s.segment("state"), s.segment("key"));
}

/// outer o inner: equation i of outer with each of its variables replaced
/// by the matching inner equation.
inline Equations compose(const Equations& outer, const Equations& inner, const AlgebraLimits& limits = {}) {
    Equations out(outer.size());
    anfaes::detail::parallel_for(outer.size(), [&](std::size_t i) { out[i] = substitute(outer[i], inner, limits); });
    return out;
}

/// MixColumns o ShiftRows o SubBytes over one 128-variable state layer.
inline Equations round_equations() {
    return compose(mixcolumns_equations(), compose(shiftrows_equations(), subbytes_equations()));
}

/// ShiftRows o SubBytes (the last encryption round has no MixColumns).
inline Equations final_round_equations() { return compose(shiftrows_equations(), subbytes_equations()); }

/// InvSubBytes o InvShiftRows.
inline Equations inv_round_equations() { return compose(inv_subbytes_equations(), inv_shiftrows_equations()); }

/// 32 equations for key-schedule word `num` (0..43). Words 0-3 are the
/// cipher-key variables themselves; later words are expressed over the 128
/// variables of the previous round key (word 4(i-1) + n at 32n .. 32n+31).
inline Equations key_expansion_word_anf(std::size_t num) {
    if (num > 43) throw contract_error("key word index " + std::to_string(num) + " outside 0..43");
    constexpr std::size_t width = kBlockBits;
    auto identity_word = [&](std::size_t n) {
        Equations w;
        for (std::size_t j = 0; j < 32; ++j) w.push_back(Anf256::variable(width, 32 * n + j));
        return w;
    };
    if (num < 4) return identity_word(num);

    if (num % 4 == 0) {
        // SubWord(RotWord(w3)) ^ Rcon ^ w0 over the previous round key.
        const auto& coords = sbox_coordinate_anfs();
        const std::uint8_t rcon = kRcon[num / 4 - 1];
        Equations w;
        for (std::size_t byte = 0; byte < 4; ++byte) {
            const std::size_t src_byte = 12 + (byte + 1) % 4;
            std::vector<std::size_t> map(8);
            for (std::size_t k = 0; k < 8; ++k) map[k] = 8 * src_byte + k;
            for (std::size_t bit = 0; bit < 8; ++bit) {
                auto eq = rename<256>(coords[bit], map, width);
                if (byte == 0 && ((rcon >> (7 - bit)) & 1u)) eq.toggle(Monomial<256>{});
                eq.toggle(Monomial<256>{8 * byte + bit});
                w.push_back(std::move(eq));
            }
        }
        return w;
    }
    auto w = key_expansion_word_anf(num - 1);
    const auto prev = identity_word(num % 4);
    for (std::size_t j = 0; j < 32; ++j) w[j] ^= prev[j];
    return w;
}

/// 128 equations for round key `round` (1..10) over the previous round key.
inline Equations round_key_equations(std::size_t round) {
    if (round < 1 || round > static_cast<std::size_t>(kRounds))
        throw contract_error("round key index " + std::to_string(round) + " outside 1..10");
    Equations out;
    out.reserve(kBlockBits);
    for (std::size_t n = 0; n < 4; ++n) {
        auto w = key_expansion_word_anf(4 * round + n);
        for (auto& eq : w) out.push_back(std::move(eq));
    }
    return out;
}

/// Assignment mask with block bits at 0..127 and (optionally) key bits at
/// 128..255.
inline Monomial<256> block_assignment(const Block& state) {
    Monomial<256> ones;
    for (std::size_t i = 0; i < kBlockBits; ++i)
        if (get_bit(state, i)) ones.set(i);
    return ones;
}

inline Monomial<256> block_assignment(const Block& state, const Block& key) {
    Monomial<256> ones = block_assignment(state);
    for (std::size_t i = 0; i < kBlockBits; ++i)
        if (get_bit(key, i)) ones.set(kBlockBits + i);
    return ones;
}

/// Evaluates 128 equations at an assignment and packs the results.
inline Block evaluate_block(const Equations& eqs, const Monomial<256>& ones) {
    if (eqs.size() != kBlockBits) throw contract_error("expected 128 equations, got " + std::to_string(eqs.size()));
    Block out{};
    for (std::size_t i = 0; i < kBlockBits; ++i) set_bit(out, i, evaluate(eqs[i], ones));
    return out;
}

inline Block evaluate_block(const Equations& eqs, const Block& state) {
    return evaluate_block(eqs, block_assignment(state));
}

} // namespace anfaes::aes
