#pragma once
// Computable groups: group operations routed through an admissible indexing.
//
// Built-ins: Z^d (d = 1,2,3) and the discrete Heisenberg group H3 = UT(3,Z).
// Z is indexed by n -> 2|n| + [n >= 0], so 0,-1,1,-2,2,... get 1,2,3,4,5,...
// Z^d folds the coordinate indices with an iterated Cantor pairing shifted to
// {1,2,...}; H3 reuses the Z^3 indexing on its (a,b,c) coordinates. Every
// built-in indexing is a bijection onto {1,2,...}, so "the first k elements"
// are literally the decodes of 1..k.

#include <array>
#include <cmath>
#include <concepts>
#include <string_view>
#include <vector>

#include "finite_set.hpp"

namespace brudno {

template <class G>
concept ComputableGroup = ComputableSpace<G> &&
    requires(const typename G::Element& a, const typename G::Element& b) {
        { G::identity() } -> std::convertible_to<typename G::Element>;
        { G::multiply(a, b) } -> std::convertible_to<typename G::Element>;
        { G::inverse(a) } -> std::convertible_to<typename G::Element>;
        { G::name() } -> std::convertible_to<std::string_view>;
    };

// --- the Z indexing and the pairing it is folded with ----------------------

inline u64 z_index(i64 n) {
    u64 a = n < 0 ? ~static_cast<u64>(n) + 1 : static_cast<u64>(n);
    if (a > (UINT64_MAX - 1) / 2) throw std::overflow_error("z_index overflow");
    return 2 * a + (n >= 0 ? 1 : 0);
}

inline i64 z_value(u64 i) {
    if (i == 0) throw validation_error("0 is not in the image of the Z indexing");
    return (i & 1) ? static_cast<i64>((i - 1) / 2) : -static_cast<i64>(i / 2);
}

// Cantor pairing, a bijection N0 x N0 -> N0.
inline u64 cantor_pair(u64 x, u64 y) {
    unsigned __int128 s = static_cast<unsigned __int128>(x) + y;
    unsigned __int128 v = s * (s + 1) / 2 + y;
    if (v > UINT64_MAX) throw std::overflow_error("pairing overflow");
    return static_cast<u64>(v);
}

inline std::pair<u64, u64> cantor_unpair(u64 z) {
    u64 w = static_cast<u64>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
    while (static_cast<unsigned __int128>(w + 1) * (w + 2) / 2 <= z) ++w;
    while (static_cast<unsigned __int128>(w) * (w + 1) / 2 > z) --w;
    u64 t = w * (w + 1) / 2;
    u64 y = z - t;
    return {w - y, y};
}

// Same bijection shifted to {1,2,...} x {1,2,...} -> {1,2,...}.
inline u64 pair_positive(u64 a, u64 b) { return cantor_pair(a - 1, b - 1) + 1; }

inline std::pair<u64, u64> unpair_positive(u64 i) {
    auto [x, y] = cantor_unpair(i - 1);
    return {x + 1, y + 1};
}

// --- Z^d --------------------------------------------------------------------

template <int D>
struct Zd {
    static_assert(D >= 1 && D <= 3, "only Z, Z^2, Z^3 are built in");
    using Element = std::array<i64, D>;
    static constexpr int arity = D;

    static std::string_view name() {
        if constexpr (D == 1) return "Z";
        else if constexpr (D == 2) return "Z2";
        else return "Z3";
    }

    static Element identity() { return Element{}; }

    static Element multiply(const Element& a, const Element& b) {
        Element r;
        for (int i = 0; i < D; ++i) r[i] = checked_add(a[i], b[i]);
        return r;
    }

    static Element inverse(const Element& a) {
        Element r;
        for (int i = 0; i < D; ++i) r[i] = checked_neg(a[i]);
        return r;
    }

    static u64 index(const Element& a) {
        u64 i = z_index(a[0]);
        for (int d = 1; d < D; ++d) i = pair_positive(i, z_index(a[d]));
        return i;
    }

    static bool in_index_image(u64 i) { return i >= 1; }

    static Element element_at(u64 i) {
        if (i == 0) throw validation_error("index 0 is not in the image");
        Element a;
        for (int d = D - 1; d >= 1; --d) {
            auto [rest, last] = unpair_positive(i);
            a[d] = z_value(last);
            i = rest;
        }
        a[0] = z_value(i);
        return a;
    }

    static Element from_coords(const std::vector<i64>& c) {
        if (c.size() != D) throw validation_error("coordinate tuple has wrong arity");
        Element a;
        for (int i = 0; i < D; ++i) a[i] = c[i];
        return a;
    }

    static std::vector<i64> to_coords(const Element& a) {
        return std::vector<i64>(a.begin(), a.end());
    }
};

using Z  = Zd<1>;
using Z2 = Zd<2>;
using Z3 = Zd<3>;

// --- the discrete Heisenberg group UT(3,Z) ----------------------------------

struct H3Element {
    i64 a = 0, b = 0, c = 0; // matrix entries (1,2), (2,3), (1,3)
    friend bool operator==(const H3Element&, const H3Element&) = default;
};

struct Heisenberg {
    using Element = H3Element;
    static constexpr int arity = 3;

    static std::string_view name() { return "H3"; }

    static Element identity() { return {}; }

    // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
    static Element multiply(const Element& x, const Element& y) {
        return {checked_add(x.a, y.a), checked_add(x.b, y.b),
                checked_add(checked_add(x.c, y.c), checked_mul(x.a, y.b))};
    }

    static Element inverse(const Element& x) {
        return {checked_neg(x.a), checked_neg(x.b), checked_add(checked_mul(x.a, x.b), checked_neg(x.c))};
    }

    static u64 index(const Element& x) { return Z3::index({x.a, x.b, x.c}); }
    static bool in_index_image(u64 i) { return i >= 1; }

    static Element element_at(u64 i) {
        auto v = Z3::element_at(i);
        return {v[0], v[1], v[2]};
    }

    static Element from_coords(const std::vector<i64>& c) {
        if (c.size() != 3) throw validation_error("H3 element needs 3 coordinates");
        return {c[0], c[1], c[2]};
    }

    static std::vector<i64> to_coords(const Element& x) { return {x.a, x.b, x.c}; }
};

// --- generic helpers ---------------------------------------------------------

// The k elements with smallest indices, ascending.
template <ComputableGroup G>
FiniteSet<G> first_k_elements(u64 k) {
    std::vector<typename G::Element> out;
    out.reserve(k);
    u64 scanned = 0;
    for (u64 i = 1; out.size() < k; ++i) {
        if (++scanned > 1000 * k + 1000) throw budget_exceeded("index scan for first_k_elements");
        if (G::in_index_image(i)) out.push_back(G::element_at(i));
    }
    return FiniteSet<G>::from_elements(std::move(out));
}

template <ComputableGroup G>
FiniteSet<G> translate_right(const FiniteSet<G>& set, const typename G::Element& g) {
    std::vector<typename G::Element> out;
    out.reserve(set.size());
    for (const auto& e : set) out.push_back(G::multiply(e, g));
    return FiniteSet<G>::from_elements(std::move(out));
}

template <ComputableGroup G>
FiniteSet<G> translate_left(const typename G::Element& g, const FiniteSet<G>& set) {
    std::vector<typename G::Element> out;
    out.reserve(set.size());
    for (const auto& e : set) out.push_back(G::multiply(g, e));
    return FiniteSet<G>::from_elements(std::move(out));
}

template <ComputableGroup G>
bool is_identity(const typename G::Element& g) {
    return G::index(g) == G::index(G::identity());
}

} // namespace brudno
