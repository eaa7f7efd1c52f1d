#pragma once
// Computable spaces and their finite subsets.
//
// A computable space is a set with an injective indexing into the naturals
// whose image is decidable; elements are recovered from indices on the image.
// Finite subsets are kept sorted by index, which is the induced ordering the
// rest of the library relies on (dictionary order of words, placement order
// of tile cells, "first element" tie-breaking).
//
// Two notions of a sequence of sets are kept distinct in the type surface:
// a SetSequence only decides membership per (n, x), while a
// CanonicalSetSequence also produces the full member list of the n-th set.
// Tiles of a monotiling are canonical; center sets are only decidable.

#include <algorithm>
#include <concepts>
#include <vector>

#include "common.hpp"

namespace brudno {

template <class S>
concept ComputableSpace = requires(const typename S::Element& x, u64 i) {
    typename S::Element;
    { S::index(x) } -> std::same_as<u64>;
    { S::in_index_image(i) } -> std::same_as<bool>;
    { S::element_at(i) } -> std::convertible_to<typename S::Element>;
};

// Finite subset of a computable space, ordered by index, no duplicates.
template <ComputableSpace S>
class FiniteSet {
public:
    using Element = typename S::Element;

private:
    std::vector<Element> elems_;
    std::vector<u64> idx_;

public:
    FiniteSet() = default;

    static FiniteSet from_elements(std::vector<Element> elems) {
        std::vector<std::pair<u64, Element>> keyed;
        keyed.reserve(elems.size());
        for (auto& e : elems) keyed.emplace_back(S::index(e), std::move(e));
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        FiniteSet out;
        out.elems_.reserve(keyed.size());
        out.idx_.reserve(keyed.size());
        for (auto& [i, e] : keyed) {
            if (!out.idx_.empty() && out.idx_.back() == i) continue;
            out.idx_.push_back(i);
            out.elems_.push_back(std::move(e));
        }
        return out;
    }

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const Element& operator[](std::size_t pos) const { return elems_[pos]; }
    const std::vector<Element>& elements() const { return elems_; }
    const std::vector<u64>& indices() const { return idx_; }

    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    bool contains_index(u64 i) const {
        return std::binary_search(idx_.begin(), idx_.end(), i);
    }
    bool contains(const Element& e) const { return contains_index(S::index(e)); }

    // Position of e in index order (0-based); e must be a member.
    std::size_t position_of(const Element& e) const {
        u64 i = S::index(e);
        auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
        return static_cast<std::size_t>(it - idx_.begin());
    }

    friend bool operator==(const FiniteSet& a, const FiniteSet& b) { return a.idx_ == b.idx_; }
};

template <ComputableSpace S>
FiniteSet<S> set_union(const FiniteSet<S>& a, const FiniteSet<S>& b) {
    std::vector<typename S::Element> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return FiniteSet<S>::from_elements(std::move(out));
}

template <ComputableSpace S>
FiniteSet<S> set_intersection(const FiniteSet<S>& a, const FiniteSet<S>& b) {
    std::vector<typename S::Element> out;
    for (const auto& e : a)
        if (b.contains(e)) out.push_back(e);
    return FiniteSet<S>::from_elements(std::move(out));
}

template <ComputableSpace S>
FiniteSet<S> set_difference(const FiniteSet<S>& a, const FiniteSet<S>& b) {
    std::vector<typename S::Element> out;
    for (const auto& e : a)
        if (!b.contains(e)) out.push_back(e);
    return FiniteSet<S>::from_elements(std::move(out));
}

// --- canonical indices of finite sets of naturals -------------------------

// c(A) = sum of 2^x over members; only sets with members < 64 fit in u64.
inline u64 canonical_index(const std::vector<u64>& members) {
    u64 c = 0;
    for (u64 x : members) {
        if (x >= 64) throw std::overflow_error("canonical index exceeds 64-bit range");
        c |= (1ull << x);
    }
    return c;
}

inline std::vector<u64> from_canonical_index(u64 c) {
    std::vector<u64> members;
    for (u64 x = 0; x < 64; ++x)
        if (c & (1ull << x)) members.push_back(x);
    return members;
}

// Order-preserving bijection A -> {1..|A|} as the list of (member, rank).
inline std::vector<std::pair<u64, u64>> increasing_bijection(std::vector<u64> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    std::vector<std::pair<u64, u64>> out;
    out.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) out.emplace_back(members[i], i + 1);
    return out;
}

// --- set-sequence concepts -------------------------------------------------

// Decidable membership per (n, x): a computable sequence of subsets.
template <class Q, class S>
concept SetSequence = ComputableSpace<S> &&
    requires(const Q& q, u32 n, const typename S::Element& x) {
        { q.contains(n, x) } -> std::same_as<bool>;
    };

// Additionally produces the full member list of the n-th (finite) set.
template <class Q, class S>
concept CanonicalSetSequence = SetSequence<Q, S> &&
    requires(const Q& q, u32 n) {
        { q.members(n) } -> std::convertible_to<FiniteSet<S>>;
    };

} // namespace brudno
