#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anfaes/aes_reference.hpp"
#include "anfaes/anf.hpp"
#include "anfaes/truth_table.hpp"

namespace anfaes::testing {

template <std::size_t N>
Monomial<N> mon(std::initializer_list<std::size_t> vars) {
    Monomial<N> m;
    for (auto v : vars) m.set(v);
    return m;
}

/// TM(u) = XOR of f(v) over v <= u, by direct double loop.
inline TruthTable naive_mobius(const TruthTable& tt) {
    TruthTable out(tt.arity());
    for (std::uint64_t u = 0; u < tt.size(); ++u) {
        bool acc = false;
        for (std::uint64_t v = 0; v < tt.size(); ++v)
            if ((v & ~u) == 0) acc ^= tt.get(v);
        out.set(u, acc);
    }
    return out;
}

inline TruthTable random_table(unsigned n, std::mt19937_64& rng) {
    TruthTable tt(n);
    for (std::uint64_t k = 0; k < tt.size(); ++k) tt.set(k, rng() & 1u);
    return tt;
}

/// Random ANF over `width` variables: each monomial over the first `vars`
/// variables is present with probability 1/2.
template <std::size_t N>
Anf<N> random_anf(std::size_t width, unsigned vars, std::mt19937_64& rng) {
    Anf<N> a(width);
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << vars); ++u) {
        if (!(rng() & 1u)) continue;
        Monomial<N> m;
        for (unsigned i = 0; i < vars; ++i)
            if ((u >> i) & 1u) m.set(i);
        a.toggle(m);
    }
    return a;
}

/// Tabulates an ANF over its first `n` variables (x_1 = variable 0 = MSB of the row).
template <std::size_t N>
TruthTable tabulate(const Anf<N>& a, unsigned n) {
    TruthTable tt(n);
    for (std::uint64_t k = 0; k < tt.size(); ++k) {
        std::vector<std::uint8_t> x(a.width(), 0);
        for (unsigned i = 0; i < n; ++i) x[i] = (k >> (n - 1 - i)) & 1u;
        tt.set(k, evaluate(a, x));
    }
    return tt;
}

inline aes::Block random_block(std::mt19937_64& rng) {
    aes::Block b{};
    for (auto& byte : b) byte = static_cast<std::uint8_t>(rng());
    return b;
}

/// Monomials listed one per line in tests/data: variable indices separated
/// by spaces, "const" for the constant term, '#' comments.
inline std::vector<Monomial<256>> load_monomials(const std::string& name) {
    std::ifstream in(std::string(ANFAES_TEST_DATA) + "/" + name);
    if (!in) throw std::runtime_error("missing test data " + name);
    std::vector<Monomial<256>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        Monomial<256> m;
        if (line != "const") {
            std::istringstream ls(line);
            std::size_t v;
            while (ls >> v) m.set(v);
        }
        out.push_back(m);
    }
    return out;
}

} // namespace anfaes::testing
