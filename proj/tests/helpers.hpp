#pragma once
// Test-only oracles and generators. Everything here is deliberately
// independent of the library code paths it checks: inverses by exhaustive
// index search, boundaries from the literal definition, languages by
// filtering all assignments.

#include <random>

#include <brudno/brudno.hpp>
#include <brudno/extension.hpp>

namespace brudno::testing {

// Inverse by searching the indexing, as the admissibility argument does.
template <ComputableGroup G>
typename G::Element inverse_by_search(const typename G::Element& g, u64 cap = 2'000'000) {
    for (u64 i = 1; i <= cap; ++i) {
        if (!G::in_index_image(i)) continue;
        auto h = G::element_at(i);
        if (is_identity<G>(G::multiply(g, h))) return h;
    }
    throw std::runtime_error("inverse search cap reached");
}

// Boundary from the definition: g in K^{-1}F with some k g escaping F.
template <ComputableGroup G>
FiniteSet<G> boundary_oracle(const FiniteSet<G>& k_set, const FiniteSet<G>& f_set) {
    std::vector<typename G::Element> pre;
    for (const auto& k : k_set) {
        auto k_inv = G::inverse(k);
        for (const auto& f : f_set) pre.push_back(G::multiply(k_inv, f));
    }
    auto candidates = FiniteSet<G>::from_elements(std::move(pre));
    std::vector<typename G::Element> out;
    for (const auto& g : candidates) {
        bool escapes = false;
        for (const auto& k : k_set)
            if (!f_set.contains(G::multiply(k, g))) { escapes = true; break; }
        if (escapes) out.push_back(g);
    }
    return FiniteSet<G>::from_elements(std::move(out));
}

// All assignments on F filtered by the local admissibility predicate.
template <ComputableGroup G>
u64 count_language_oracle(const ShiftSpec<G>& spec, const FiniteSet<G>& f_set) {
    u64 count = 0;
    std::vector<u32> letters(f_set.size(), 1);
    for (;;) {
        if (locally_admissible(spec, f_set, letters)) ++count;
        std::size_t pos = 0;
        while (pos < letters.size() && letters[pos] == spec.alphabet) letters[pos++] = 1;
        if (pos == letters.size()) break;
        ++letters[pos];
    }
    return count;
}

inline u64 fibonacci(u32 n) {
    u64 a = 0, b = 1;
    for (u32 i = 0; i < n; ++i) {
        u64 c = a + b;
        a = b;
        b = c;
    }
    return a;
}

// Closed-form hat length: 2 floor(log2(floor(log2 n)+1)) + floor(log2 n) + 5
// for n >= 1, written with explicit bit lengths so it covers n = 0 too.
inline u64 hat_length_oracle(u64 n) {
    auto blen = [](u64 v) -> u64 { return v == 0 ? 1 : static_cast<u64>(std::bit_width(v)); };
    return 2 * blen(blen(n)) + 2 + blen(n);
}

// Z monotiling with tiles {off, ..., off+n-1} and centers nZ - off; used to
// exercise normalization on tiles that miss the identity.
struct ShiftedZMonotiling {
    using Group = Z;
    i64 offset = 5;

    u64 tile_cells(u32 n) const { return n; }
    FiniteSet<Z> tile(u32 n) const {
        std::vector<Z::Element> cells;
        for (i64 v = 0; v < static_cast<i64>(n); ++v) cells.push_back({offset + v});
        return FiniteSet<Z>::from_elements(std::move(cells));
    }
    bool center_contains(u32 n, const Z::Element& g) const {
        return mod_floor(g[0] + offset, n) == 0;
    }
    Z::Element center_at(u32 n, u64 i) const {
        return {checked_mul(z_value(i), static_cast<i64>(n)) - offset};
    }
};

// Decode, folding the decoder's loud too-big-to-build signal into "no
// output": corrupted headers may name tiles far past the cell budget.
template <MonotilingFor T>
std::optional<Pattern<typename T::Group>> decode_or_reject(const BitString& bits, const T& tiling,
                                                           u32 alphabet) {
    try {
        return decompress(bits, tiling, alphabet);
    } catch (const budget_exceeded&) {
        return std::nullopt;
    }
}

template <ComputableGroup G>
FiniteSet<G> random_subset(std::mt19937_64& rng, u64 index_range, std::size_t max_size,
                           bool force_identity) {
    std::uniform_int_distribution<u64> pick(1, index_range);
    std::uniform_int_distribution<std::size_t> size_dist(1, max_size);
    std::vector<typename G::Element> out;
    if (force_identity) out.push_back(G::identity());
    std::size_t target = size_dist(rng);
    while (out.size() < target) out.push_back(G::element_at(pick(rng)));
    return FiniteSet<G>::from_elements(std::move(out));
}

} // namespace brudno::testing
