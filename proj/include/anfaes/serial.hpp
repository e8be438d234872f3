#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "anfaes/anf.hpp"
#include "anfaes/parallel.hpp"
#include "anfaes/system.hpp"

/// One-file-per-bit monomial format.
///
/// Each line of a `.eq` file is one monomial: a constant flag ('1' only for
/// the constant monomial, whose mask is all zeros) followed by a mask of
/// `width` '0'/'1' characters, variable 0 leftmost. Lines are XORed
/// together; writers emit them in ascending big-endian mask order, each
/// terminated by '\n'.
namespace anfaes::serial {

namespace fs = std::filesystem;

inline constexpr std::string_view kManifestName = "manifest.txt";
inline constexpr std::string_view kEndMarkerName = "END";

template <std::size_t N>
std::string format_equation(const Anf<N>& eq) {
    const std::size_t width = eq.width();
    std::string out;
    out.reserve(eq.size() * (width + 2));
    for (const auto& m : eq.sorted_terms()) {
        out += m.is_constant() ? '1' : '0';
        const auto start = out.size();
        out.append(width, '0');
        for (auto v : m.vars()) out[start + v] = '1';
        out += '\n';
    }
    return out;
}

template <std::size_t N>
void write_equation(std::ostream& os, const Anf<N>& eq) {
    os << format_equation(eq);
}

/// Parses one equation over `width` variables. `source` names the input in
/// error messages.
template <std::size_t N = 256>
Anf<N> read_equation(std::istream& is, std::size_t width, const std::string& source = "<stream>") {
    Anf<N> eq(width);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.size() != width + 1)
            throw parse_error("line length " + std::to_string(line.size()) + ", expected " +
                                  std::to_string(width + 1),
                              source, lineno);
        Monomial<N> m;
        for (std::size_t j = 0; j < line.size(); ++j) {
            const char c = line[j];
            if (c != '0' && c != '1')
                throw parse_error(std::string("illegal character '") + c + "' at column " + std::to_string(j + 1),
                                  source, lineno);
            if (j > 0 && c == '1') m.set(j - 1);
        }
        if ((line[0] == '1') != m.is_constant())
            throw parse_error(line[0] == '1' ? "constant line with a non-zero mask"
                                             : "non-constant line with an all-zero mask",
                              source, lineno);
        eq.toggle_unchecked(m);
    }
    return eq;
}

struct ManifestEntry {
    std::size_t index = 0;
    std::string name;
    std::string directory;
    std::size_t state_width = 0;
    std::size_t key_width = 0;
};

struct Manifest {
    fs::path root;
    Direction direction = Direction::Encrypt;
    std::vector<ManifestEntry> stages;
};

inline std::string bit_file_name(std::size_t bit) {
    std::string digits = std::to_string(bit);
    return "bit_" + std::string(3 - std::min<std::size_t>(3, digits.size()), '0') + digits + ".eq";
}

inline std::string stage_directory_name(std::size_t index, const Stage& stage) {
    std::string idx = std::to_string(index);
    if (idx.size() < 2) idx.insert(0, "0");
    return idx + "_" + stage.name();
}

inline fs::path system_directory(const fs::path& parent, Direction d) {
    return parent / ("AES_files_" + std::string(to_string(d)));
}

namespace detail {

inline void write_file(const fs::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open for writing", path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw io_error("write failed", path);
}

inline std::string manifest_text(const Manifest& m) {
    std::ostringstream os;
    os << "# anfaes equation system\n"
       << "# bit_###.eq lines: <constant><mask>; mask column j is variable j,\n"
       << "# state variables 0..state_width-1 first, then key variables\n"
       << "direction " << to_string(m.direction) << '\n'
       << "stages " << m.stages.size() << '\n';
    for (const auto& s : m.stages)
        os << "stage " << s.index << ' ' << s.name << " state_width=" << s.state_width
           << " key_width=" << s.key_width << '\n';
    return os.str();
}

/// Kind and round of a stage from its trace name.
inline Stage stage_from_name(const std::string& name, Direction d, const std::string& source, std::size_t line) {
    auto round_of = [&](std::string_view prefix) -> int {
        const auto digits = name.substr(prefix.size());
        if (digits.empty() || digits.size() > 2 || digits.find_first_not_of("0123456789") != std::string::npos)
            throw parse_error("bad stage name '" + name + "'", source, line);
        const int r = std::stoi(digits);
        if (r > aes::kRounds) throw parse_error("round out of range in '" + name + "'", source, line);
        return r;
    };
    Stage s;
    if (name.starts_with("addRoundKey")) {
        s.kind = StageKind::AddRoundKey;
        s.round = round_of("addRoundKey");
    } else if (name.starts_with("invMixColumns")) {
        s.kind = StageKind::InvMixColumns;
        s.round = round_of("invMixColumns");
    } else if (name.starts_with("Round")) {
        s.round = round_of("Round");
        if (d == Direction::Decrypt)
            s.kind = StageKind::InvRound;
        else
            s.kind = s.round == aes::kRounds - 1 ? StageKind::FinalRound : StageKind::Round;
    } else {
        throw parse_error("unknown stage name '" + name + "'", source, line);
    }
    return s;
}

inline std::size_t parse_width_field(const std::string& token, std::string_view key, const std::string& source,
                                     std::size_t line) {
    const std::string prefix = std::string(key) + "=";
    if (!token.starts_with(prefix)) throw parse_error("expected " + prefix + "<width>", source, line);
    const auto digits = token.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error("bad width in '" + token + "'", source, line);
    return static_cast<std::size_t>(std::stoul(digits));
}

} // namespace detail

/// Reads `<root>/manifest.txt`.
inline Manifest read_manifest(const fs::path& root) {
    const auto path = root / kManifestName;
    std::ifstream in(path);
    if (!in) throw parse_error("missing manifest", path.string());
    Manifest m;
    m.root = root;
    bool have_direction = false;
    std::size_t expected = 0;
    bool have_count = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.front() == '#') continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "direction") {
            std::string d;
            ls >> d;
            try {
                m.direction = direction_from_string(d);
            } catch (const parse_error& e) {
                throw parse_error(e.what(), path.string(), lineno);
            }
            have_direction = true;
        } else if (word == "stages") {
            if (!(ls >> expected)) throw parse_error("bad stage count", path.string(), lineno);
            have_count = true;
        } else if (word == "stage") {
            ManifestEntry e;
            std::string sw, kw, extra;
            if (!(ls >> e.index >> e.name >> sw >> kw) || (ls >> extra))
                throw parse_error("malformed stage line", path.string(), lineno);
            if (e.index != m.stages.size()) throw parse_error("stage index out of order", path.string(), lineno);
            e.state_width = detail::parse_width_field(sw, "state_width", path.string(), lineno);
            e.key_width = detail::parse_width_field(kw, "key_width", path.string(), lineno);
            m.stages.push_back(std::move(e));
        } else {
            throw parse_error("unknown manifest entry '" + word + "'", path.string(), lineno);
        }
    }
    if (!have_direction) throw parse_error("manifest has no direction line", path.string());
    if (!have_count || expected != m.stages.size())
        throw parse_error("manifest stage count does not match its stage lines", path.string());
    return m;
}

/// Writes `sys` under `<parent>/AES_files_<enc|dec>/`: one directory per
/// stage holding bit_000.eq .. bit_127.eq, then the END marker, then the
/// manifest. An existing output directory is replaced only if it already
/// holds a manifest or END marker. `on_stage` runs after each stage is on disk.
inline Manifest write_system(const EquationSystem& sys, const fs::path& parent,
                             const std::function<void(const Stage&)>& on_stage = {}) {
    const auto root = system_directory(parent, sys.direction);
    std::error_code ec;
    if (fs::exists(root, ec)) {
        if (!fs::exists(root / kManifestName) && !fs::exists(root / kEndMarkerName) && !fs::is_empty(root, ec))
            throw io_error("refusing to overwrite a directory that is not an equation system", root);
        fs::remove_all(root, ec);
        if (ec) throw io_error("cannot clear existing output (" + ec.message() + ")", root);
    }
    fs::create_directories(root, ec);
    if (ec) throw io_error("cannot create directory (" + ec.message() + ")", root);

    Manifest manifest{root, sys.direction, {}};
    for (std::size_t i = 0; i < sys.stages.size(); ++i) {
        const auto& stage = sys.stages[i];
        stage.validate();
        const auto dir_name = stage_directory_name(i, stage);
        const auto dir = root / dir_name;
        fs::create_directories(dir, ec);
        if (ec) throw io_error("cannot create directory (" + ec.message() + ")", dir);
        anfaes::detail::parallel_for(stage.equations.size(), [&](std::size_t bit) {
            detail::write_file(dir / bit_file_name(bit), format_equation(stage.equations[bit]));
        });
        manifest.stages.push_back({i, stage.name(), dir_name, stage.state_width(), stage.key_width()});
        if (on_stage) on_stage(stage);
    }
    detail::write_file(root / kEndMarkerName, "");
    detail::write_file(root / kManifestName, detail::manifest_text(manifest));
    return manifest;
}

/// Inverse of write_system. `root` is the AES_files_<dir> directory.
inline EquationSystem read_system(const fs::path& root) {
    const auto manifest = read_manifest(root);
    const auto manifest_path = (root / kManifestName).string();
    EquationSystem sys{manifest.direction, {}};
    for (const auto& entry : manifest.stages) {
        Stage stage = detail::stage_from_name(entry.name, manifest.direction, manifest_path, 0);
        if (entry.state_width != stage.state_width() || entry.key_width != stage.key_width())
            throw parse_error("stage " + entry.name + " declares widths inconsistent with its kind", manifest_path);
        const auto dir = root / stage_directory_name(entry.index, stage);
        stage.equations.resize(aes::kBlockBits);
        const auto width = stage.input_width();
        anfaes::detail::parallel_for(aes::kBlockBits, [&](std::size_t bit) {
            const auto path = dir / bit_file_name(bit);
            std::ifstream in(path, std::ios::binary);
            if (!in) throw parse_error("missing equation file", path.string());
            stage.equations[bit] = read_equation<256>(in, width, path.string());
        });
        sys.stages.push_back(std::move(stage));
    }
    return sys;
}

/// Accepts either an AES_files_<dir> directory or its parent.
inline fs::path locate_system(const fs::path& dir, Direction d) {
    if (fs::exists(dir / kManifestName)) return dir;
    return system_directory(dir, d);
}

} // namespace anfaes::serial
