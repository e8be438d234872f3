#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anfaes/errors.hpp"

namespace anfaes::aes {

/// 128-bit block in FIPS 197 byte order. Bit b_i is bit (7 - i % 8) of
/// byte i / 8, i.e. b_0 is the most significant bit of the first byte.
using Block = std::array<std::uint8_t, 16>;

inline constexpr std::size_t kBlockBits = 128;
inline constexpr int kRounds = 10;

inline constexpr std::array<std::uint8_t, 256> kSbox = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
};

inline constexpr std::array<std::uint8_t, 256> kInvSbox = [] {
    std::array<std::uint8_t, 256> inv{};
    for (std::size_t x = 0; x < 256; ++x) inv[kSbox[x]] = static_cast<std::uint8_t>(x);
    return inv;
}();

inline constexpr std::array<std::uint8_t, 10> kRcon = {0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1b, 0x36};

/// Multiplication by 02 modulo x^8 + x^4 + x^3 + x + 1.
constexpr std::uint8_t xtime(std::uint8_t a) noexcept {
    return static_cast<std::uint8_t>((a << 1) ^ ((a & 0x80) ? 0x1b : 0x00));
}

constexpr std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) noexcept {
    std::uint8_t r = 0;
    while (b != 0) {
        if (b & 1) r ^= a;
        a = xtime(a);
        b >>= 1;
    }
    return r;
}

inline constexpr std::array<std::uint8_t, 4> kMixRow = {0x02, 0x03, 0x01, 0x01};
inline constexpr std::array<std::uint8_t, 4> kInvMixRow = {0x0e, 0x0b, 0x0d, 0x09};

/// Source byte of each ShiftRows output byte (state is column-major).
inline constexpr std::array<std::size_t, 16> kShiftRowsSource = [] {
    std::array<std::size_t, 16> src{};
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t r = 0; r < 4; ++r) src[4 * c + r] = 4 * ((c + r) % 4) + r;
    return src;
}();

inline constexpr std::array<std::size_t, 16> kInvShiftRowsSource = [] {
    std::array<std::size_t, 16> src{};
    for (std::size_t i = 0; i < 16; ++i) src[kShiftRowsSource[i]] = i;
    return src;
}();

inline bool get_bit(const Block& b, std::size_t i) { return (b[i / 8] >> (7 - i % 8)) & 1u; }

inline void set_bit(Block& b, std::size_t i, bool v) {
    const auto mask = static_cast<std::uint8_t>(1u << (7 - i % 8));
    b[i / 8] = static_cast<std::uint8_t>(v ? (b[i / 8] | mask) : (b[i / 8] & ~mask));
}

inline std::string to_hex(const Block& b) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(32);
    for (auto byte : b) {
        out += kDigits[byte >> 4];
        out += kDigits[byte & 0x0f];
    }
    return out;
}

/// Parses exactly 32 hex digits (either case).
inline Block block_from_hex(std::string_view hex) {
    if (hex.size() != 32) throw parse_error("expected 32 hex characters, got " + std::to_string(hex.size()));
    auto nibble = [&](char c) -> std::uint8_t {
        if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
        throw parse_error(std::string("illegal hex character '") + c + "'");
    };
    Block b{};
    for (std::size_t i = 0; i < 16; ++i)
        b[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
    return b;
}

inline Block sub_bytes(Block s) {
    for (auto& byte : s) byte = kSbox[byte];
    return s;
}

inline Block inv_sub_bytes(Block s) {
    for (auto& byte : s) byte = kInvSbox[byte];
    return s;
}

inline Block shift_rows(const Block& s) {
    Block out{};
    for (std::size_t i = 0; i < 16; ++i) out[i] = s[kShiftRowsSource[i]];
    return out;
}

inline Block inv_shift_rows(const Block& s) {
    Block out{};
    for (std::size_t i = 0; i < 16; ++i) out[i] = s[kInvShiftRowsSource[i]];
    return out;
}

namespace detail {

inline Block mix(const Block& s, const std::array<std::uint8_t, 4>& row) {
    Block out{};
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t r = 0; r < 4; ++r) {
            std::uint8_t acc = 0;
            for (std::size_t k = 0; k < 4; ++k) acc ^= gf_mul(row[(k + 4 - r) % 4], s[4 * c + k]);
            out[4 * c + r] = acc;
        }
    return out;
}

} // namespace detail

inline Block mix_columns(const Block& s) { return detail::mix(s, kMixRow); }
inline Block inv_mix_columns(const Block& s) { return detail::mix(s, kInvMixRow); }

inline Block add_round_key(Block s, const Block& k) {
    for (std::size_t i = 0; i < 16; ++i) s[i] ^= k[i];
    return s;
}

/// Round keys 0..10; round key 0 is the cipher key.
using RoundKeySchedule = std::array<Block, kRounds + 1>;

/// The 44 key-schedule words, each as 4 bytes.
inline std::array<std::array<std::uint8_t, 4>, 44> expand_key_words(const Block& key) {
    std::array<std::array<std::uint8_t, 4>, 44> w{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) w[i][j] = key[4 * i + j];
    for (std::size_t i = 4; i < 44; ++i) {
        auto t = w[i - 1];
        if (i % 4 == 0) {
            t = {kSbox[t[1]], kSbox[t[2]], kSbox[t[3]], kSbox[t[0]]};
            t[0] ^= kRcon[i / 4 - 1];
        }
        for (std::size_t j = 0; j < 4; ++j) w[i][j] = static_cast<std::uint8_t>(t[j] ^ w[i - 4][j]);
    }
    return w;
}

inline RoundKeySchedule reference_key_schedule(const Block& key) {
    const auto w = expand_key_words(key);
    RoundKeySchedule rk{};
    for (std::size_t r = 0; r <= kRounds; ++r)
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) rk[r][4 * i + j] = w[4 * r + i][j];
    return rk;
}

/// (trace label, state after that step) pairs, labelled the way the
/// equation-system stages are.
using Trace = std::vector<std::pair<std::string, Block>>;

/// Byte-level encryption recording the state after every step that forms
/// a stage of the layered equation system.
inline Trace reference_encrypt_trace(const Block& plain, const Block& key) {
    const auto rk = reference_key_schedule(key);
    Trace trace;
    Block s = add_round_key(plain, rk[0]);
    trace.emplace_back("addRoundKey0", s);
    for (int r = 0; r < kRounds; ++r) {
        s = shift_rows(sub_bytes(s));
        if (r + 1 < kRounds) s = mix_columns(s);
        trace.emplace_back("Round" + std::to_string(r), s);
        s = add_round_key(s, rk[r + 1]);
        trace.emplace_back("addRoundKey" + std::to_string(r + 1), s);
    }
    return trace;
}

/// Byte-level decryption in the layout InvSubBytes/InvShiftRows, then
/// AddRoundKey, then a separate InvMixColumns step.
inline Trace reference_decrypt_trace(const Block& cipher, const Block& key) {
    const auto rk = reference_key_schedule(key);
    Trace trace;
    Block s = add_round_key(cipher, rk[kRounds]);
    trace.emplace_back("addRoundKey" + std::to_string(kRounds), s);
    for (int r = kRounds - 1; r >= 0; --r) {
        s = inv_sub_bytes(inv_shift_rows(s));
        trace.emplace_back("Round" + std::to_string(r), s);
        s = add_round_key(s, rk[static_cast<std::size_t>(r)]);
        trace.emplace_back("addRoundKey" + std::to_string(r), s);
        if (r > 0) {
            s = inv_mix_columns(s);
            trace.emplace_back("invMixColumns" + std::to_string(r), s);
        }
    }
    return trace;
}

inline Block reference_encrypt(const Block& plain, const Block& key) {
    return reference_encrypt_trace(plain, key).back().second;
}

inline Block reference_decrypt(const Block& cipher, const Block& key) {
    return reference_decrypt_trace(cipher, key).back().second;
}

} // namespace anfaes::aes
