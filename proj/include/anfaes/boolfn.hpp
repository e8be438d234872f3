#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>

#include "anfaes/anf.hpp"
#include "anfaes/truth_table.hpp"

namespace anfaes {

/// ANF of the function tabulated by `tt`. Variable i of the result is the
/// table's x_{i+1}, i.e. row bit (n - 1 - i).
template <std::size_t N = 64>
Anf<N> anf_from_truth_table(const TruthTable& tt) {
    static_assert(N >= kMaxTruthTableArity);
    const unsigned n = tt.arity();
    const TruthTable coeffs = mobius_transform(tt);
    Anf<N> out(n);
    const auto& words = coeffs.words();
    for (std::size_t k = 0; k < words.size(); ++k) {
        std::uint64_t w = words[k];
        while (w != 0) {
            const std::uint64_t u = k * 64 + static_cast<std::uint64_t>(std::countr_zero(w));
            w &= w - 1;
            Monomial<N> m;
            for (unsigned i = 0; i < n; ++i)
                if ((u >> (n - 1 - i)) & 1u) m.set(i);
            out.toggle_unchecked(m);
        }
    }
    return out;
}

/// Truth table of `anf` over `arity` variables; inverse of
/// anf_from_truth_table.
template <std::size_t N>
TruthTable truth_table_from_anf(const Anf<N>& anf, unsigned arity) {
    if (anf.span_end() > arity)
        throw contract_error("ANF uses variable " + std::to_string(anf.span_end() - 1) +
                             " beyond arity " + std::to_string(arity));
    TruthTable coeffs(arity);
    for (const auto& m : anf.terms()) {
        std::uint64_t u = 0;
        for (auto v : m.vars()) u |= std::uint64_t{1} << (arity - 1 - v);
        coeffs.set(u, true);
    }
    return mobius_transform(coeffs);
}

} // namespace anfaes
