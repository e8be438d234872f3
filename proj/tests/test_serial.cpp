#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "anfaes/serial.hpp"
#include "published_values.hpp"
#include "test_util.hpp"

using namespace anfaes;
namespace fs = std::filesystem;
using anfaes::testing::mon;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("anfaes_serial_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Anf256 parse(const std::string& text, std::size_t width) {
    std::istringstream in(text);
    return serial::read_equation<256>(in, width, "mem.eq");
}

std::string parse_error_text(const std::string& text, std::size_t width) {
    try {
        parse(text, width);
    } catch (const parse_error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(Equation, BitFileExampleRoundTrips) {
    Anf256 eq(16);
    for (const auto& vars : anfaes::testing::kBitFileExampleTerms) {
        Monomial<256> m;
        for (auto v : vars) m.set(v);
        eq.toggle(m);
    }
    EXPECT_EQ(serial::format_equation(eq), anfaes::testing::kBitFileExample);
    const auto back = parse(anfaes::testing::kBitFileExample, 16);
    EXPECT_EQ(back, eq);
    EXPECT_EQ(serial::format_equation(back), anfaes::testing::kBitFileExample);
}

TEST(Equation, MajorityFile) {
    const auto maj = Anf256::from_terms(3, {mon<256>({1, 2}), mon<256>({0, 2}), mon<256>({0, 1})});
    EXPECT_EQ(serial::format_equation(maj), "0011\n0101\n0110\n");
}

TEST(Equation, ZeroIsEmptyFile) {
    EXPECT_EQ(serial::format_equation(Anf256::zero(128)), "");
    EXPECT_TRUE(parse("", 128).is_zero());
}

TEST(Equation, ShiftRowsBit8) {
    const auto eq = aes::shiftrows_equations()[8];
    std::string expected(129, '0');
    expected[1 + 40] = '1';
    EXPECT_EQ(serial::format_equation(eq), expected + "\n");
}

TEST(Equation, DuplicateLinesCancel) {
    EXPECT_TRUE(parse("0110\n0110\n", 3).is_zero());
    EXPECT_EQ(parse("1000\n0100\n1000\n", 3), Anf256::variable(3, 0));
}

TEST(Equation, RandomRoundTrips) {
    std::mt19937_64 rng(301);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = anfaes::testing::random_anf<256>(256, 8, rng);
        const auto moved = shift<256>(a, static_cast<std::ptrdiff_t>(rng() % 248), 256);
        EXPECT_EQ(parse(serial::format_equation(moved), 256), moved);
    }
}

TEST(Equation, ErrorsNameSourceAndLine) {
    EXPECT_EQ(parse_error_text("0110\n011\n", 3), "mem.eq:2: line length 3, expected 4");
    EXPECT_NE(parse_error_text("0110\n0x10\n", 3).find("mem.eq:2: illegal character 'x'"), std::string::npos);
    EXPECT_NE(parse_error_text("1010\n", 3).find("mem.eq:1: constant line"), std::string::npos);
    EXPECT_NE(parse_error_text("0000\n", 3).find("mem.eq:1: non-constant line"), std::string::npos);
}

TEST(Naming, FilesAndDirectories) {
    EXPECT_EQ(serial::bit_file_name(0), "bit_000.eq");
    EXPECT_EQ(serial::bit_file_name(127), "bit_127.eq");
    EXPECT_EQ(serial::stage_directory_name(3, Stage{StageKind::AddRoundKey, 1, {}}), "03_addRoundKey1");
    EXPECT_EQ(serial::system_directory("out", Direction::Decrypt), fs::path("out") / "AES_files_dec");
}

TEST(Manifest, MissingOrMalformed) {
    TempDir tmp;
    try {
        serial::read_system(tmp.path);
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_NE(std::string(e.what()).find("manifest.txt"), std::string::npos);
    }
    {
        std::ofstream out(tmp.path / "manifest.txt");
        out << "direction enc\nstages 1\nstage 0 Round0 state_width=128\n";
    }
    try {
        serial::read_manifest(tmp.path);
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_NE(std::string(e.what()).find("manifest.txt:3: malformed stage line"), std::string::npos);
    }
}

TEST(WriteSystem, RefusesForeignDirectory) {
    TempDir tmp;
    const auto root = serial::system_directory(tmp.path, Direction::Decrypt);
    fs::create_directories(root);
    std::ofstream(root / "notes.txt") << "keep me\n";
    EquationSystem sys{Direction::Decrypt, {}};
    EXPECT_THROW(serial::write_system(sys, tmp.path), io_error);
    EXPECT_TRUE(fs::exists(root / "notes.txt"));
}

TEST(WriteSystem, MissingEquationFileIsReported) {
    TempDir tmp;
    EquationSystem sys{Direction::Encrypt, {{StageKind::AddRoundKey, 0, aes::addroundkey_equations()}}};
    const auto m = serial::write_system(sys, tmp.path);
    fs::remove(m.root / "00_addRoundKey0" / "bit_042.eq");
    try {
        serial::read_system(m.root);
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_NE(std::string(e.what()).find("bit_042.eq"), std::string::npos);
    }
}

class FullSystems : public ::testing::TestWithParam<Direction> {};

TEST_P(FullSystems, ReadInvertsWrite) {
    TempDir tmp;
    const auto sys = build_system(GetParam());
    std::vector<std::string> seen;
    const auto manifest = serial::write_system(sys, tmp.path, [&](const Stage& s) { seen.push_back(s.name()); });
    EXPECT_EQ(seen.size(), sys.stages.size());
    EXPECT_TRUE(fs::exists(manifest.root / "END"));

    const auto back = serial::read_system(manifest.root);
    EXPECT_EQ(back.direction, sys.direction);
    ASSERT_EQ(back.stages.size(), sys.stages.size());
    for (std::size_t i = 0; i < sys.stages.size(); ++i) ASSERT_EQ(back.stages[i], sys.stages[i]) << i;

    // lines strictly increasing in canonical order, so no duplicates
    const auto text = slurp(manifest.root / serial::stage_directory_name(1, sys.stages[1]) / "bit_000.eq");
    std::istringstream in(text);
    std::string prev, line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        if (count++ > 0) {
            ASSERT_LT(prev.substr(1), line.substr(1));
        }
        prev = line;
    }
    EXPECT_EQ(count, sys.stages[1].equations[0].size());
}

INSTANTIATE_TEST_SUITE_P(BothDirections, FullSystems, ::testing::Values(Direction::Encrypt, Direction::Decrypt),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(WriteSystem, Deterministic) {
    TempDir a, b;
    const auto sys = build_system(Direction::Decrypt);
    const auto ma = serial::write_system(sys, a.path);
    const auto mb = serial::write_system(sys, b.path);
    std::size_t files = 0;
    for (const auto& entry : fs::recursive_directory_iterator(ma.root)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), ma.root);
        ASSERT_EQ(slurp(entry.path()), slurp(mb.root / rel)) << rel;
        ++files;
    }
    EXPECT_EQ(files, 30u * 128u + 2u);
    // rewriting over an existing system replaces it
    EXPECT_NO_THROW(serial::write_system(sys, a.path));
}
