#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anfaes/boolfn.hpp"
#include "anfaes/serial.hpp"
#include "anfaes/system.hpp"
#include "anfaes/truth_table.hpp"

/// Command-line front end. Each command writes its report to `out`,
/// diagnostics to `err`, and returns the process exit code.
namespace anfaes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

namespace fs = std::filesystem;

inline int generate(Direction mode, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
    try {
        out << (mode == Direction::Encrypt ? "## Ciphering process\n" : "## Deciphering process\n");
        const auto sys = build_system(mode);
        out << "## Create directory " << serial::system_directory(out_dir, mode).string() << '\n';
        serial::write_system(sys, out_dir, [&](const Stage& s) { out << "## " << s.progress_label(mode) << '\n'; });
        out << "## Files generated\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

inline int verify(Direction mode, const aes::Block& block, const aes::Block& key, const fs::path& files,
                  std::ostream& out, std::ostream& err) {
    EquationSystem sys;
    try {
        sys = serial::read_system(serial::locate_system(files, mode));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    if (sys.direction != mode) {
        err << "error: " << files.string() << " holds a " << to_string(sys.direction) << " system, expected "
            << to_string(mode) << '\n';
        return kExitUsage;
    }

    out << (mode == Direction::Encrypt ? "## Clear block " : "## Cipher block ") << aes::to_hex(block) << '\n';
    out << "## Key block " << aes::to_hex(key) << '\n';
    const auto result = evaluate_system(sys, block, key);
    for (const auto& [name, state] : result.trace) out << "## " << name << '\n' << aes::to_hex(state) << '\n';

    const auto expected = reference_trace(mode, block, key);
    const auto oracle = expected.back().second;
    out << aes::to_hex(oracle) << " (FIPS result)\n";

    if (result.output == oracle && result.trace == expected) return kExitOk;
    for (std::size_t i = 0; i < std::min(result.trace.size(), expected.size()); ++i) {
        if (result.trace[i] != expected[i]) {
            err << "mismatch at stage " << result.trace[i].first << ": files give "
                << aes::to_hex(result.trace[i].second) << ", reference gives " << aes::to_hex(expected[i].second)
                << '\n';
            return kExitMismatch;
        }
    }
    err << "mismatch: system has " << result.trace.size() << " stages, reference has " << expected.size() << '\n';
    return kExitMismatch;
}

/// Prints the ANF of a '0'/'1' truth table, variables named x1..xn.
inline int anf(const std::string& bits, std::ostream& out, std::ostream& err) {
    try {
        const auto tt = TruthTable::from_string(bits);
        out << to_string(anf_from_truth_table(tt), 1) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

inline int stats(const fs::path& files, std::ostream& out, std::ostream& err) {
    EquationSystem sys;
    try {
        auto root = files;
        if (!fs::exists(root / serial::kManifestName)) {
            const bool enc = fs::exists(serial::system_directory(files, Direction::Encrypt) / serial::kManifestName);
            const bool dec = fs::exists(serial::system_directory(files, Direction::Decrypt) / serial::kManifestName);
            if (enc == dec)
                throw parse_error(enc ? "both enc and dec systems present; name one directly" : "no system found",
                                  files.string());
            root = serial::system_directory(files, enc ? Direction::Encrypt : Direction::Decrypt);
        }
        sys = serial::read_system(root);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    out << "system " << to_string(sys.direction) << ": " << sys.stages.size() << " stages\n";
    for (std::size_t i = 0; i < sys.stages.size(); ++i) {
        const auto& stage = sys.stages[i];
        std::size_t total = 0;
        std::size_t min_terms = SIZE_MAX;
        std::size_t max_terms = 0;
        int max_degree = -1;
        std::map<std::size_t, std::size_t> histogram;
        for (const auto& eq : stage.equations) {
            total += eq.size();
            min_terms = std::min(min_terms, eq.size());
            max_terms = std::max(max_terms, eq.size());
            max_degree = std::max(max_degree, eq.degree());
            for (const auto& m : eq.terms()) ++histogram[m.degree()];
        }
        out << "stage " << i << ' ' << stage.name() << " terms=" << total << " min_terms=" << min_terms
            << " max_terms=" << max_terms << " max_degree=" << max_degree << " degrees:";
        for (const auto& [d, n] : histogram) out << ' ' << d << ':' << n;
        out << '\n';
    }
    const auto acc = sys.accounting();
    out << "variables: state " << acc.layer_state << " + key " << acc.layer_key << " = " << acc.layer_total() << '\n';
    out << "segments: state " << acc.structural_state_segments << "x128 + key " << acc.structural_key_segments
        << "x128 = " << acc.structural_total() << '\n';
    return kExitOk;
}

/// Parses argv and dispatches to a command.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"ANF equation systems for AES-128"};
    app.require_subcommand(1);

    const auto modes = CLI::IsMember({"enc", "dec"});
    auto hex32 = CLI::Validator(
        [](std::string& s) -> std::string {
            if (s.size() != 32 || s.find_first_not_of("0123456789abcdef") != std::string::npos)
                return "expected 32 lowercase hex characters";
            return {};
        },
        "HEX32");

    std::string mode_name, out_dir, files, block, key, bits;

    auto* gen = app.add_subcommand("generate", "Write the equation system files");
    gen->add_option("--mode", mode_name, "enc or dec")->required()->check(modes);
    gen->add_option("--out", out_dir, "Output directory")->required();

    auto* ver = app.add_subcommand("verify", "Evaluate a written system and compare with the reference cipher");
    ver->add_option("--mode", mode_name, "enc or dec")->required()->check(modes);
    ver->add_option("--block", block, "Input block")->required()->check(hex32);
    ver->add_option("--key", key, "Cipher key")->required()->check(hex32);
    ver->add_option("--files", files, "System directory")->required();

    auto* anf_cmd = app.add_subcommand("anf", "Print the ANF of a truth table");
    anf_cmd->add_option("bits", bits, "Truth table as a 0/1 string")->required();

    auto* st = app.add_subcommand("stats", "Summarize a written system");
    st->add_option("--files", files, "System directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    const auto mode = mode_name.empty() ? Direction::Encrypt : direction_from_string(mode_name);
    if (gen->parsed()) return generate(mode, out_dir, out, err);
    if (ver->parsed()) return verify(mode, aes::block_from_hex(block), aes::block_from_hex(key), files, out, err);
    if (anf_cmd->parsed()) return anf(bits, out, err);
    return stats(files, out, err);
}

} // namespace anfaes::cli
