#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace anfaes {

/// Raised when a caller breaks an operation's precondition (bad index,
/// mismatched variable spaces, non-injective renaming, ...).
class contract_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when a multiply or substitute would grow an ANF beyond the
/// configured term ceiling.
class term_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
public:
    io_error(const std::string& what, const std::filesystem::path& path)
        : std::runtime_error(what + ": " + path.string()), path_(path) {}

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

/// Malformed textual input. `line` is 1-based, 0 when not applicable.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::string source = {}, std::size_t line = 0)
        : std::runtime_error(format(what, source, line)), source_(std::move(source)), line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& what, const std::string& source, std::size_t line) {
        if (source.empty()) return what;
        std::string msg = source;
        if (line != 0) msg += ":" + std::to_string(line);
        return msg + ": " + what;
    }

    std::string source_;
    std::size_t line_;
};

} // namespace anfaes
