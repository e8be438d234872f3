#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "anfaes/errors.hpp"
#include "anfaes/monomial.hpp"

namespace anfaes {

/// A named run of variable indices inside a VarSpace.
struct Segment {
    std::string name;
    std::size_t start = 0;
    std::size_t length = 0;

    std::size_t end() const noexcept { return start + length; }
    std::size_t operator[](std::size_t i) const {
        if (i >= length)
            throw contract_error("offset " + std::to_string(i) + " outside segment '" + name + "' of length " +
                                 std::to_string(length));
        return start + i;
    }

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Contiguous, disjoint named segments covering [0, width).
class VarSpace {
public:
    VarSpace() = default;

    /// Appends a segment at the current end of the space.
    const Segment& add(std::string name, std::size_t length) {
        if (find(name)) throw contract_error("duplicate segment name '" + name + "'");
        segments_.push_back(Segment{std::move(name), width_, length});
        width_ += length;
        return segments_.back();
    }

    std::size_t width() const noexcept { return width_; }
    const std::vector<Segment>& segments() const noexcept { return segments_; }

    const Segment* find(std::string_view name) const noexcept {
        for (const auto& s : segments_)
            if (s.name == name) return &s;
        return nullptr;
    }

    const Segment& segment(std::string_view name) const {
        if (const auto* s = find(name)) return *s;
        throw contract_error("no segment named '" + std::string(name) + "'");
    }

    friend bool operator==(const VarSpace&, const VarSpace&) = default;

private:
    std::size_t width_ = 0;
    std::vector<Segment> segments_;
};

/// Ceiling on intermediate and final term counts for multiply/substitute.
struct AlgebraLimits {
    std::size_t max_terms = std::size_t{1} << 22;
};

/// Algebraic normal form: an XOR of distinct monomials over a variable
/// space of `width` variables (width <= MaxVars). Empty = the zero function.
///
/// Terms are kept in a hash set; `sorted_terms()` gives the canonical
/// big-endian order used for printing and serialization.
template <std::size_t MaxVars>
class Anf {
public:
    using monomial_type = Monomial<MaxVars>;
    using term_set = std::unordered_set<monomial_type, MonomialHash>;

    explicit Anf(std::size_t width = MaxVars) : width_(width) {
        if (width > MaxVars)
            throw contract_error("variable space width " + std::to_string(width) + " exceeds capacity " +
                                 std::to_string(MaxVars));
    }

    static Anf zero(std::size_t width) { return Anf(width); }

    static Anf one(std::size_t width) {
        Anf a(width);
        a.terms_.insert(monomial_type{});
        return a;
    }

    static Anf variable(std::size_t width, std::size_t var) {
        Anf a(width);
        a.toggle(monomial_type{var});
        return a;
    }

    static Anf from_terms(std::size_t width, std::initializer_list<monomial_type> terms) {
        Anf a(width);
        for (const auto& m : terms) a.toggle(m);
        return a;
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    const term_set& terms() const noexcept { return terms_; }

    bool contains(const monomial_type& m) const { return terms_.contains(m); }

    /// XORs a single monomial in (adding a present term removes it).
    void toggle(const monomial_type& m) {
        if (m.span_end() > width_)
            throw contract_error("monomial uses variable " + std::to_string(m.span_end() - 1) +
                                 " outside space of width " + std::to_string(width_));
        if (auto it = terms_.find(m); it != terms_.end())
            terms_.erase(it);
        else
            terms_.insert(m);
    }

    std::vector<monomial_type> sorted_terms() const {
        std::vector<monomial_type> out(terms_.begin(), terms_.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Largest monomial degree; -1 for the zero function.
    int degree() const noexcept {
        int d = -1;
        for (const auto& m : terms_) d = std::max(d, static_cast<int>(m.degree()));
        return d;
    }

    /// One past the highest variable index used.
    std::size_t span_end() const noexcept {
        std::size_t e = 0;
        for (const auto& m : terms_) e = std::max(e, m.span_end());
        return e;
    }

    Anf& operator^=(const Anf& other) {
        require_same_space(other);
        for (const auto& m : other.terms_) toggle_unchecked(m);
        return *this;
    }

    friend Anf operator^(Anf a, const Anf& b) {
        a ^= b;
        return a;
    }

    friend Anf operator*(const Anf& a, const Anf& b) { return multiply(a, b, AlgebraLimits{}); }

    friend bool operator==(const Anf& a, const Anf& b) { return a.width_ == b.width_ && a.terms_ == b.terms_; }

    void require_same_space(const Anf& other) const {
        if (width_ != other.width_)
            throw contract_error("ANF variable spaces differ (width " + std::to_string(width_) + " vs " +
                                 std::to_string(other.width_) + ")");
    }

    void toggle_unchecked(const monomial_type& m) {
        if (auto [it, inserted] = terms_.insert(m); !inserted) terms_.erase(it);
    }

    void reserve(std::size_t n) { terms_.reserve(n); }

private:
    std::size_t width_;
    term_set terms_;
};

using Anf256 = Anf<256>;

namespace detail {

inline void check_limit(std::size_t n, const AlgebraLimits& limits, const char* op) {
    if (n > limits.max_terms)
        throw term_limit_error(std::string(op) + " exceeded term ceiling of " + std::to_string(limits.max_terms) +
                               " terms");
}

} // namespace detail

/// Product over GF(2)[x]/(x_i^2 - x_i): pairwise monomial unions, with
/// duplicate products cancelling.
template <std::size_t N>
Anf<N> multiply(const Anf<N>& a, const Anf<N>& b, const AlgebraLimits& limits = {}) {
    a.require_same_space(b);
    Anf<N> out(a.width());
    if (a.is_zero() || b.is_zero()) return out;
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    for (const auto& s : small.terms()) {
        for (const auto& t : large.terms()) out.toggle_unchecked(s * t);
        detail::check_limit(out.size(), limits, "multiply");
    }
    return out;
}

/// Composition: every variable i of f is replaced by bindings[i]. All
/// bindings must share one target space; the result lives in that space.
template <std::size_t N, std::size_t M>
Anf<M> substitute(const Anf<N>& f, std::span<const Anf<M>> bindings, const AlgebraLimits& limits = {}) {
    if (f.span_end() > bindings.size())
        throw contract_error("substitute: variable " + std::to_string(f.span_end() - 1) + " is unbound");
    std::optional<std::size_t> target;
    for (const auto& m : f.terms())
        for (auto v : m.vars()) {
            if (!target) target = bindings[v].width();
            if (bindings[v].width() != *target) throw contract_error("substitute: bindings use different spaces");
        }
    if (!target) target = bindings.empty() ? M : bindings.front().width();

    Anf<M> out(*target);
    for (const auto& m : f.terms()) {
        Anf<M> product = Anf<M>::one(*target);
        for (auto v : m.vars()) {
            product = multiply(product, bindings[v], limits);
            if (product.is_zero()) break;
        }
        for (const auto& t : product.terms()) out.toggle_unchecked(t);
        detail::check_limit(out.size(), limits, "substitute");
    }
    return out;
}

template <std::size_t N, std::size_t M>
Anf<M> substitute(const Anf<N>& f, const std::vector<Anf<M>>& bindings, const AlgebraLimits& limits = {}) {
    return substitute(f, std::span<const Anf<M>>(bindings), limits);
}

/// Relocates f into a space of `target_width` variables by mapping variable
/// i to map[i]. The map must be injective on the variables f uses.
template <std::size_t M, std::size_t N>
Anf<M> rename(const Anf<N>& f, std::span<const std::size_t> map, std::size_t target_width) {
    if (f.span_end() > map.size())
        throw contract_error("rename: variable " + std::to_string(f.span_end() - 1) + " has no image");
    std::vector<bool> used(target_width, false);
    std::vector<bool> seen(map.size(), false);
    for (const auto& m : f.terms())
        for (auto v : m.vars()) {
            if (seen[v]) continue;
            seen[v] = true;
            const auto image = map[v];
            if (image >= target_width)
                throw contract_error("rename: image " + std::to_string(image) + " outside target space");
            if (used[image]) throw contract_error("rename: map is not injective at image " + std::to_string(image));
            used[image] = true;
        }
    Anf<M> out(target_width);
    for (const auto& m : f.terms()) {
        Monomial<M> r;
        for (auto v : m.vars()) r.set(map[v]);
        out.toggle_unchecked(r);
    }
    return out;
}

template <std::size_t M, std::size_t N>
Anf<M> rename(const Anf<N>& f, const std::vector<std::size_t>& map, std::size_t target_width) {
    return rename<M>(f, std::span<const std::size_t>(map), target_width);
}

/// Shifts every variable index by `offset` (which may be negative).
template <std::size_t M, std::size_t N>
Anf<M> shift(const Anf<N>& f, std::ptrdiff_t offset, std::size_t target_width) {
    Anf<M> out(target_width);
    for (const auto& m : f.terms()) {
        Monomial<M> r;
        for (auto v : m.vars()) {
            const auto moved = static_cast<std::ptrdiff_t>(v) + offset;
            if (moved < 0 || static_cast<std::size_t>(moved) >= target_width)
                throw contract_error("shift: variable " + std::to_string(v) + " moves outside target space");
            r.set(static_cast<std::size_t>(moved));
        }
        out.toggle_unchecked(r);
    }
    return out;
}

/// Value of f at a point given as the set of variables equal to 1.
template <std::size_t N>
bool evaluate(const Anf<N>& f, const Monomial<N>& ones) noexcept {
    bool acc = false;
    for (const auto& m : f.terms()) acc ^= m.subset_of(ones);
    return acc;
}

/// Value of f at `assignment`, where assignment[i] is the value of x_i.
template <std::size_t N>
bool evaluate(const Anf<N>& f, std::span<const std::uint8_t> assignment) {
    if (f.span_end() > assignment.size())
        throw contract_error("evaluate: no value for variable " + std::to_string(assignment.size()));
    Monomial<N> ones;
    for (std::size_t i = 0; i < assignment.size() && i < N; ++i)
        if (assignment[i] != 0) ones.set(i);
    return evaluate(f, ones);
}

template <std::size_t N>
bool evaluate(const Anf<N>& f, const std::vector<std::uint8_t>& assignment) {
    return evaluate(f, std::span<const std::uint8_t>(assignment));
}

template <std::size_t N>
int algebraic_degree(const Anf<N>& f) noexcept {
    return f.degree();
}

/// Renders "x1x2 + x3 + 1"-style text in canonical order; `base` is the
/// printed index of variable 0.
template <std::size_t N>
std::string to_string(const Anf<N>& f, std::size_t base = 0) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& m : f.sorted_terms()) {
        if (!out.empty()) out += " + ";
        if (m.is_constant()) {
            out += "1";
            continue;
        }
        for (auto v : m.vars()) out += "x" + std::to_string(v + base);
    }
    return out;
}

} // namespace anfaes
