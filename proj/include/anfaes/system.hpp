#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "anfaes/aes_equations.hpp"
#include "anfaes/aes_reference.hpp"

namespace anfaes {

enum class Direction { Encrypt, Decrypt };

inline std::string_view to_string(Direction d) { return d == Direction::Encrypt ? "enc" : "dec"; }

inline Direction direction_from_string(std::string_view s) {
    if (s == "enc") return Direction::Encrypt;
    if (s == "dec") return Direction::Decrypt;
    throw parse_error("unknown direction '" + std::string(s) + "' (expected enc or dec)");
}

enum class StageKind { AddRoundKey, Round, FinalRound, InvRound, InvMixColumns };

/// One layer of a system: 128 equations from the stage's input variables
/// (state at 0..127, then the round key at 128..255 for AddRoundKey) to
/// the fresh variables of the next layer.
struct Stage {
    StageKind kind = StageKind::Round;
    int round = 0;
    aes::Equations equations;

    std::size_t state_width() const noexcept { return aes::kBlockBits; }
    std::size_t key_width() const noexcept { return kind == StageKind::AddRoundKey ? aes::kBlockBits : 0; }
    std::size_t input_width() const noexcept { return state_width() + key_width(); }

    VarSpace input_space() const {
        return kind == StageKind::AddRoundKey ? aes::state_key_space() : aes::state_space();
    }

    /// Label used in evaluation traces ("addRoundKey3", "Round3", "invMixColumns3").
    std::string name() const {
        const auto r = std::to_string(round);
        switch (kind) {
        case StageKind::AddRoundKey: return "addRoundKey" + r;
        case StageKind::InvMixColumns: return "invMixColumns" + r;
        default: return "Round" + r;
        }
    }

    /// Label printed while generating files.
    std::string progress_label(Direction d) const {
        const auto r = std::to_string(round);
        switch (kind) {
        case StageKind::AddRoundKey: return "AddRoundKey" + r;
        case StageKind::InvMixColumns: return "InvMixColumns " + r;
        case StageKind::InvRound: return "Round " + r;
        default: return d == Direction::Decrypt ? "Round " + r : "Round" + r;
        }
    }

    /// Throws contract_error unless the stage has 128 equations over its
    /// declared input width.
    void validate() const {
        if (equations.size() != aes::kBlockBits)
            throw contract_error("stage " + name() + " has " + std::to_string(equations.size()) + " equations");
        for (std::size_t i = 0; i < equations.size(); ++i) {
            if (equations[i].width() != input_width() || equations[i].span_end() > input_width())
                throw contract_error("stage " + name() + " equation " + std::to_string(i) +
                                     " references variables outside its input segments");
        }
    }

    friend bool operator==(const Stage&, const Stage&) = default;
};

/// Variable counts for a system. The `layer_*` figures count one fresh
/// 128-variable state layer per round and one fresh key layer per derived
/// round key; the structural figures also count the input block and the
/// cipher key.
struct VariableAccounting {
    std::size_t layer_state = 0;
    std::size_t layer_key = 0;
    std::size_t structural_state_segments = 0;
    std::size_t structural_key_segments = 0;

    std::size_t layer_total() const noexcept { return layer_state + layer_key; }
    std::size_t structural_total() const noexcept {
        return (structural_state_segments + structural_key_segments) * aes::kBlockBits;
    }
};

struct EquationSystem {
    Direction direction = Direction::Encrypt;
    std::vector<Stage> stages;

    VariableAccounting accounting() const {
        VariableAccounting acc;
        std::size_t rounds = 0;
        std::size_t keys = 0;
        for (const auto& s : stages) {
            if (s.kind == StageKind::AddRoundKey)
                ++keys;
            else if (s.kind != StageKind::InvMixColumns)
                ++rounds;
        }
        acc.layer_state = rounds * aes::kBlockBits;
        acc.layer_key = (keys == 0 ? 0 : keys - 1) * aes::kBlockBits;
        acc.structural_state_segments = rounds + 1;
        acc.structural_key_segments = keys;
        return acc;
    }

    friend bool operator==(const EquationSystem&, const EquationSystem&) = default;
};

/// AddRoundKey0, Round0 .. Round8, AddRoundKey9, Round9 (no MixColumns),
/// AddRoundKey10.
inline EquationSystem build_encryption_system() {
    const auto ark = aes::addroundkey_equations();
    const auto round = aes::round_equations();
    const auto last = aes::final_round_equations();
    EquationSystem sys{Direction::Encrypt, {}};
    sys.stages.push_back({StageKind::AddRoundKey, 0, ark});
    for (int r = 0; r < aes::kRounds; ++r) {
        if (r + 1 < aes::kRounds)
            sys.stages.push_back({StageKind::Round, r, round});
        else
            sys.stages.push_back({StageKind::FinalRound, r, last});
        sys.stages.push_back({StageKind::AddRoundKey, r + 1, ark});
    }
    return sys;
}

/// AddRoundKey10, then for r = 9..0: InvSubBytes o InvShiftRows, AddRoundKey r
/// and (r > 0) a standalone InvMixColumns.
inline EquationSystem build_decryption_system() {
    const auto ark = aes::addroundkey_equations();
    const auto inv_round = aes::inv_round_equations();
    const auto imc = aes::inv_mixcolumns_equations();
    EquationSystem sys{Direction::Decrypt, {}};
    sys.stages.push_back({StageKind::AddRoundKey, aes::kRounds, ark});
    for (int r = aes::kRounds - 1; r >= 0; --r) {
        sys.stages.push_back({StageKind::InvRound, r, inv_round});
        sys.stages.push_back({StageKind::AddRoundKey, r, ark});
        if (r > 0) sys.stages.push_back({StageKind::InvMixColumns, r, imc});
    }
    return sys;
}

inline EquationSystem build_system(Direction d) {
    return d == Direction::Encrypt ? build_encryption_system() : build_decryption_system();
}

struct Evaluation {
    aes::Block output{};
    aes::Trace trace;
};

/// Folds `input` through every stage, binding AddRoundKey stages to the
/// concrete round keys derived from `key`.
inline Evaluation evaluate_system(const EquationSystem& sys, const aes::Block& input, const aes::Block& key) {
    const auto schedule = aes::reference_key_schedule(key);
    Evaluation result;
    aes::Block state = input;
    for (const auto& stage : sys.stages) {
        if (stage.kind == StageKind::AddRoundKey) {
            if (stage.round < 0 || stage.round > aes::kRounds)
                throw contract_error("round key index " + std::to_string(stage.round) + " out of range");
            state = aes::evaluate_block(stage.equations,
                                        aes::block_assignment(state, schedule[static_cast<std::size_t>(stage.round)]));
        } else {
            state = aes::evaluate_block(stage.equations, aes::block_assignment(state));
        }
        result.trace.emplace_back(stage.name(), state);
    }
    result.output = state;
    return result;
}

/// The byte-level oracle's trace for the same stage layout.
inline aes::Trace reference_trace(Direction d, const aes::Block& input, const aes::Block& key) {
    return d == Direction::Encrypt ? aes::reference_encrypt_trace(input, key) : aes::reference_decrypt_trace(input, key);
}

} // namespace anfaes
