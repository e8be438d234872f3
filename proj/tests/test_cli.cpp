#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "anfaes/cli.hpp"
#include "published_values.hpp"

using namespace anfaes;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "anfaes");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

// One decryption system on disk, shared by the tests below.
class CliDec : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        std::random_device rd;
        dir_ = new fs::path(fs::temp_directory_path() / ("anfaes_cli_" + std::to_string(rd())));
        generated_ = new Result(run({"generate", "--mode", "dec", "--out", dir_->string()}));
    }
    static void TearDownTestSuite() {
        std::error_code ec;
        fs::remove_all(*dir_, ec);
        delete dir_;
        delete generated_;
    }
    static const fs::path& dir() { return *dir_; }
    static const Result& generated() { return *generated_; }

private:
    static inline fs::path* dir_ = nullptr;
    static inline Result* generated_ = nullptr;
};

} // namespace

TEST_F(CliDec, GenerateListing) {
    ASSERT_EQ(generated().code, 0) << generated().err;
    const auto got = lines(generated().out);
    std::vector<std::string> expected = {"## Deciphering process",
                                         "## Create directory " + (dir() / "AES_files_dec").string()};
    for (const auto& label : anfaes::testing::kDecryptionProgress) expected.push_back("## " + label);
    expected.push_back("## Files generated");
    EXPECT_EQ(got, expected);
}

TEST_F(CliDec, VerifyPrintsTrace) {
    const auto r = run({"verify", "--mode", "dec", "--block", anfaes::testing::kFipsCipher, "--key",
                        anfaes::testing::kFipsKey, "--files", dir().string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto got = lines(r.out);
    ASSERT_EQ(got.size(), 2u + 2 * 30 + 1);
    EXPECT_EQ(got[0], std::string("## Cipher block ") + anfaes::testing::kFipsCipher);
    EXPECT_EQ(got[1], std::string("## Key block ") + anfaes::testing::kFipsKey);
    for (const auto& [name, hex] : anfaes::testing::kDecryptionTracePublished) {
        const auto it = std::find(got.begin(), got.end(), "## " + name);
        ASSERT_NE(it, got.end()) << name;
        EXPECT_EQ(*(it + 1), hex) << name;
    }
    EXPECT_EQ(got.back(), std::string(anfaes::testing::kFipsPlain) + " (FIPS result)");
}

TEST_F(CliDec, StatsReport) {
    const auto r = run({"stats", "--files", dir().string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto got = lines(r.out);
    ASSERT_EQ(got.size(), 1u + 30 + 2);
    EXPECT_EQ(got[0], "system dec: 30 stages");
    EXPECT_EQ(got[1], "stage 0 addRoundKey10 terms=256 min_terms=2 max_terms=2 max_degree=1 degrees: 1:256");
    EXPECT_NE(got[2].find("stage 1 Round9 "), std::string::npos);
    EXPECT_NE(got[2].find(" max_degree=7 "), std::string::npos);
    EXPECT_EQ(got[got.size() - 2], "variables: state 1280 + key 1280 = 2560");
    EXPECT_EQ(got.back(), "segments: state 11x128 + key 11x128 = 2816");
}

TEST_F(CliDec, WrongModeForFiles) {
    const auto r = run({"verify", "--mode", "enc", "--block", anfaes::testing::kFipsPlain, "--key",
                        anfaes::testing::kFipsKey, "--files", (dir() / "AES_files_dec").string()});
    EXPECT_EQ(r.code, 2);
}

// Moves the x3 term of invMixColumns9(b_0) to x4.
TEST_F(CliDec, FlippedMaskBitIsAMismatch) {
    const auto file = dir() / "AES_files_dec" / "03_invMixColumns9" / "bit_000.eq";
    std::string text;
    {
        std::ifstream in(file);
        std::getline(in, text, '\0');
    }
    std::string x3(129, '0');
    x3[1 + 3] = '1';
    const auto at = text.find(x3 + "\n");
    ASSERT_NE(at, std::string::npos);
    text[at + 1 + 3] = '0';
    text[at + 1 + 4] = '1';
    std::ofstream(file, std::ios::trunc) << text;
    const auto r = run({"verify", "--mode", "dec", "--block", anfaes::testing::kFipsCipher, "--key",
                        anfaes::testing::kFipsKey, "--files", dir().string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("invMixColumns9"), std::string::npos) << r.err;
}

TEST(Cli, AnfCommand) {
    auto r = run({"anf", "00010111"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "x2x3 + x1x3 + x1x2\n");
    r = run({"anf", "0110"});
    EXPECT_EQ(r.out, "x2 + x1\n");
    r = run({"anf", "0000"});
    EXPECT_EQ(r.out, "0\n");
    r = run({"anf", "1111"});
    EXPECT_EQ(r.out, "1\n");
    r = run({"anf", "011"});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"generate", "--mode", "both", "--out", "x"}).code, 2);
    EXPECT_EQ(run({"generate", "--mode", "enc"}).code, 2);
    EXPECT_EQ(run({"verify", "--mode", "enc", "--block", "00112233", "--key", anfaes::testing::kFipsKey, "--files",
                   "x"})
                  .code,
              2);
    EXPECT_EQ(run({"verify", "--mode", "enc", "--block", "00112233445566778899AABBCCDDEEFF", "--key",
                   anfaes::testing::kFipsKey, "--files", "x"})
                  .code,
              2);
    EXPECT_EQ(run({"stats", "--files", "/nonexistent/anfaes"}).code, 2);
    const auto help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("generate"), std::string::npos);
}
