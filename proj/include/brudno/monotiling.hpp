#pragma once
// Folner monotilings and the K-boundary / K-interior calculus.
//
// A monotiling slice at index n is a finite tile F_n together with a set of
// centers Z_n such that the right translates { F_n z : z in Z_n } partition
// the group. A tiling object provides
//   tile(n)            the full member list of F_n (canonically computable),
//   center_contains    a membership decision for Z_n (computable sequence),
//   center_at          an enumerator phi with Z_n = { phi(n,1), phi(n,2), ... }.
//
// Boundary conventions: bd_K F = K^{-1}F  intersect  K^{-1}(complement F) and
// Int_K F = { g : Kg inside F }. The complement is never materialized; for
// g in K^{-1}F, membership in the boundary is equivalent to "some kg escapes F".

#include <optional>
#include <unordered_set>
#include <vector>

#include "groups.hpp"

namespace brudno {

template <class T>
concept MonotilingFor = ComputableGroup<typename T::Group> &&
    requires(const T& t, u32 n, u64 i, const typename T::Group::Element& g) {
        { t.tile(n) } -> std::convertible_to<FiniteSet<typename T::Group>>;
        { t.tile_cells(n) } -> std::same_as<u64>; // |F_n| without materializing it
        { t.center_contains(n, g) } -> std::same_as<bool>;
        { t.center_at(n, i) } -> std::convertible_to<typename T::Group::Element>;
    };

namespace detail {
// n^p, saturating at UINT64_MAX; tile sizes only need exact values when small.
inline u64 saturating_pow(u64 n, int p) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < p; ++i) {
        acc *= n;
        if (acc > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<u64>(acc);
}
} // namespace detail

// --- boundary / interior ----------------------------------------------------

template <ComputableGroup G>
struct BoundaryReport {
    FiniteSet<G> boundary;  // K^{-1}F intersect K^{-1}F^c
    FiniteSet<G> interior;  // { g : Kg inside F }
    u64 boundary_size = 0;
    u64 set_size = 0; // |F|
    double ratio() const { return set_size ? static_cast<double>(boundary_size) / static_cast<double>(set_size) : 0.0; }
};

// { g : Kg inside F }; candidates live in K^{-1}F.
template <ComputableGroup G>
FiniteSet<G> k_interior(const FiniteSet<G>& k_set, const FiniteSet<G>& f_set) {
    std::vector<typename G::Element> candidates;
    candidates.reserve(k_set.size() * f_set.size());
    for (const auto& k : k_set) {
        auto k_inv = G::inverse(k);
        for (const auto& f : f_set) candidates.push_back(G::multiply(k_inv, f));
    }
    auto pre = FiniteSet<G>::from_elements(std::move(candidates));
    std::vector<typename G::Element> interior;
    for (const auto& g : pre) {
        bool inside = true;
        for (const auto& k : k_set) {
            if (!f_set.contains(G::multiply(k, g))) { inside = false; break; }
        }
        if (inside) interior.push_back(g);
    }
    return FiniteSet<G>::from_elements(std::move(interior));
}

template <ComputableGroup G>
BoundaryReport<G> k_boundary(const FiniteSet<G>& k_set, const FiniteSet<G>& f_set) {
    if (k_set.empty()) throw validation_error("K must be nonempty");
    std::vector<typename G::Element> candidates;
    candidates.reserve(k_set.size() * f_set.size());
    for (const auto& k : k_set) {
        auto k_inv = G::inverse(k);
        for (const auto& f : f_set) candidates.push_back(G::multiply(k_inv, f));
    }
    auto pre = FiniteSet<G>::from_elements(std::move(candidates)); // K^{-1}F
    std::vector<typename G::Element> boundary, interior;
    for (const auto& g : pre) {
        bool inside = true;
        for (const auto& k : k_set) {
            if (!f_set.contains(G::multiply(k, g))) { inside = false; break; }
        }
        (inside ? interior : boundary).push_back(g);
    }
    BoundaryReport<G> rep;
    rep.boundary = FiniteSet<G>::from_elements(std::move(boundary));
    rep.interior = FiniteSet<G>::from_elements(std::move(interior));
    rep.boundary_size = rep.boundary.size();
    rep.set_size = f_set.size();
    return rep;
}

// --- built-in tilings ---------------------------------------------------------

// Z^d with tiles [0,n)^d and centers nZ^d.
template <int D>
struct ZdMonotiling {
    using Group = Zd<D>;
    using Element = typename Group::Element;

    u64 tile_cells(u32 n) const { return detail::saturating_pow(n, D); }

    FiniteSet<Group> tile(u32 n) const {
        if (n == 0) throw validation_error("tile index must be >= 1");
        std::vector<Element> cells;
        u64 total = tile_cells(n);
        cells.reserve(total);
        Element cur{};
        for (u64 j = 0; j < total; ++j) {
            u64 rest = j;
            for (int i = D - 1; i >= 0; --i) {
                cur[i] = static_cast<i64>(rest % n);
                rest /= n;
            }
            cells.push_back(cur);
        }
        return FiniteSet<Group>::from_elements(std::move(cells));
    }

    bool center_contains(u32 n, const Element& g) const {
        for (int i = 0; i < D; ++i)
            if (mod_floor(g[i], n) != 0) return false;
        return true;
    }

    Element center_at(u32 n, u64 i) const {
        auto base = Group::element_at(i);
        Element z;
        for (int d = 0; d < D; ++d) z[d] = checked_mul(base[d], static_cast<i64>(n));
        return z;
    }
};

// H3 with tiles { (a,b,c) : a,b in [0,n), c in [0,n^2) } and centers
// { (n a', n b', n^2 c') }. A translate (a,b,c)(na',nb',n^2 c') has third
// coordinate c + n^2 c' + a n b', so every group element factors uniquely.
struct H3Monotiling {
    using Group = Heisenberg;
    using Element = H3Element;

    u64 tile_cells(u32 n) const { return detail::saturating_pow(n, 4); }

    FiniteSet<Group> tile(u32 n) const {
        if (n == 0) throw validation_error("tile index must be >= 1");
        std::vector<Element> cells;
        u64 nn = static_cast<u64>(n);
        cells.reserve(tile_cells(n));
        for (i64 a = 0; a < static_cast<i64>(nn); ++a)
            for (i64 b = 0; b < static_cast<i64>(nn); ++b)
                for (i64 c = 0; c < static_cast<i64>(nn * nn); ++c)
                    cells.push_back({a, b, c});
        return FiniteSet<Group>::from_elements(std::move(cells));
    }

    bool center_contains(u32 n, const Element& g) const {
        i64 n2 = static_cast<i64>(n) * static_cast<i64>(n);
        return mod_floor(g.a, n) == 0 && mod_floor(g.b, n) == 0 && mod_floor(g.c, n2) == 0;
    }

    Element center_at(u32 n, u64 i) const {
        auto v = Z3::element_at(i);
        i64 n2 = checked_mul(static_cast<i64>(n), static_cast<i64>(n));
        return {checked_mul(v[0], static_cast<i64>(n)), checked_mul(v[1], static_cast<i64>(n)),
                checked_mul(v[2], n2)};
    }
};

// --- generic operations -------------------------------------------------------

// Center decision by enumeration: run phi(n,1), phi(n,2), ... and stop at the
// first translate of F_n that contains g; g is a center exactly when the
// witnessing tile element is the identity. Terminates because the translates
// cover the group; the budget guards miscoded providers.
template <MonotilingFor T>
bool decide_center(const T& tiling, u32 n, const typename T::Group::Element& g,
                   const Budgets& budgets = {}) {
    using G = typename T::Group;
    auto f_set = tiling.tile(n);
    for (u64 i = 1; i <= budgets.center_scan; ++i) {
        auto z = tiling.center_at(n, i);
        auto h = G::multiply(g, G::inverse(z));
        if (f_set.contains(h)) return is_identity<G>(h);
    }
    throw budget_exceeded("center enumeration did not reach the queried element");
}

// Least n with |F_n delta g F_n| / |F_n| < 1/(2i) for every g among the
// first i group elements. Integer arithmetic: 2i * |symdiff| < |F_n|.
template <MonotilingFor T>
u32 invariance_index(const T& tiling, u32 i, const Budgets& budgets = {}) {
    using G = typename T::Group;
    auto k_set = first_k_elements<G>(i);
    for (u32 n = 1; n <= budgets.search_cap; ++n) {
        auto f_set = tiling.tile(n);
        bool ok = true;
        for (const auto& g : k_set) {
            u64 hits = 0;
            for (const auto& f : f_set)
                if (f_set.contains(G::multiply(g, f))) ++hits;
            u64 symdiff = 2 * (f_set.size() - hits);
            if (2ull * i * symdiff >= f_set.size()) { ok = false; break; }
        }
        if (ok) return n;
    }
    throw budget_exceeded("invariance index search cap reached; tile provider may not be Folner");
}

// |F_n delta gF_n| / |F_n| for one translate, for diagnostics and tests.
template <MonotilingFor T>
double folner_ratio(const T& tiling, u32 n, const typename T::Group::Element& g) {
    using G = typename T::Group;
    auto f_set = tiling.tile(n);
    u64 hits = 0;
    for (const auto& f : f_set)
        if (f_set.contains(G::multiply(g, f))) ++hits;
    return static_cast<double>(2 * (f_set.size() - hits)) / static_cast<double>(f_set.size());
}

// --- normalization -------------------------------------------------------------

// Tiles are right-translated by the inverse of their first element (so the
// identity lies in every tile) and reindexed through the subsequence
// n_i = least n with |F_n| >= i * (floor(log2 n) + 1), which makes
// |F_{n_i}| / log n_i grow without bound.
template <MonotilingFor T>
class NormalizedMonotiling {
public:
    using Group = typename T::Group;
    using Element = typename Group::Element;

private:
    T base_;
    Budgets budgets_;

    u32 subsequence(u32 i) const {
        for (u32 n = 1; n <= budgets_.search_cap; ++n) {
            u64 need = static_cast<u64>(i) * binary_length_of(n);
            if (base_.tile(n).size() >= need) return n;
        }
        throw budget_exceeded("normalization subsequence search");
    }

    static u64 binary_length_of(u32 n) {
        u64 len = 0;
        while (n) { ++len; n >>= 1; }
        return len ? len : 1;
    }

public:
    explicit NormalizedMonotiling(T base, Budgets budgets = {})
        : base_(std::move(base)), budgets_(budgets) {}

    u32 base_index(u32 i) const { return subsequence(i); }

    // r_{n_i}: the member of F_{n_i} with the smallest index.
    Element shift(u32 i) const {
        auto f_set = base_.tile(subsequence(i));
        return f_set[0];
    }

    u64 tile_cells(u32 i) const { return base_.tile_cells(subsequence(i)); }

    FiniteSet<Group> tile(u32 i) const {
        u32 n = subsequence(i);
        auto f_set = base_.tile(n);
        return translate_right<Group>(f_set, Group::inverse(f_set[0]));
    }

    bool center_contains(u32 i, const Element& g) const {
        u32 n = subsequence(i);
        auto r = base_.tile(n)[0];
        return base_.center_contains(n, Group::multiply(Group::inverse(r), g));
    }

    Element center_at(u32 i, u64 j) const {
        u32 n = subsequence(i);
        auto r = base_.tile(n)[0];
        return Group::multiply(r, base_.center_at(n, j));
    }
};

template <MonotilingFor T>
NormalizedMonotiling<T> normalize(T tiling, Budgets budgets = {}) {
    return NormalizedMonotiling<T>(std::move(tiling), budgets);
}

// --- density diagnostics ---------------------------------------------------------

struct DensityReport {
    u64 interior_center_count = 0; // |Int_{F_k}(F_n) intersect Z_k|
    u64 window_center_count = 0;   // |F_n intersect Z_k|
    u64 tile_cells = 0;            // |F_n|
    u64 base_cells = 0;            // |F_k|
    double interior_center_ratio() const { return static_cast<double>(interior_center_count) / static_cast<double>(tile_cells); }
    double window_center_ratio() const { return static_cast<double>(window_center_count) / static_cast<double>(tile_cells); }
    double target() const { return 1.0 / static_cast<double>(base_cells); }
};

template <MonotilingFor T>
DensityReport density_report(const T& tiling, u32 k, u32 n) {
    auto f_k = tiling.tile(k);
    auto f_n = tiling.tile(n);
    auto interior = k_interior<typename T::Group>(f_k, f_n);
    DensityReport rep;
    rep.tile_cells = f_n.size();
    rep.base_cells = f_k.size();
    for (const auto& g : interior)
        if (tiling.center_contains(k, g)) ++rep.interior_center_count;
    for (const auto& g : f_n)
        if (tiling.center_contains(k, g)) ++rep.window_center_count;
    return rep;
}

// --- finite-window tiling check ----------------------------------------------------

struct TilingCheck {
    u64 tile_size = 0;
    bool disjoint = true; // no window cell lies in two tile translates
    bool covers = true;   // every window cell lies in some tile translate
    bool passed() const { return disjoint && covers; }
};

// Exact partition check restricted to a window: cell w lies in translate
// F_n z exactly when z = f^{-1} w for some f in F_n, so counting centers in
// the fiber { f^{-1} w : f in F_n } detects both gaps and overlaps at w.
template <MonotilingFor T>
TilingCheck check_tiling_window(const T& tiling, u32 n,
                                const FiniteSet<typename T::Group>& window) {
    using G = typename T::Group;
    auto f_set = tiling.tile(n);
    std::vector<typename G::Element> f_inv;
    f_inv.reserve(f_set.size());
    for (const auto& f : f_set) f_inv.push_back(G::inverse(f));
    TilingCheck check;
    check.tile_size = f_set.size();
    for (const auto& w : window) {
        u32 count = 0;
        for (const auto& fi : f_inv) {
            if (tiling.center_contains(n, G::multiply(fi, w))) {
                if (++count > 1) break;
            }
        }
        if (count == 0) check.covers = false;
        if (count > 1) check.disjoint = false;
        if (!check.covers && !check.disjoint) break;
    }
    return check;
}

// Cross-check of the enumerator against the membership decision: every
// enumerated phi(n,i) must be a center, and every center in the probe window
// must show up within the enumeration budget.
template <MonotilingFor T>
bool check_center_enumerator(const T& tiling, u32 n,
                             const FiniteSet<typename T::Group>& probe, u64 enum_budget) {
    using G = typename T::Group;
    std::unordered_set<u64> seen;
    for (u64 i = 1; i <= enum_budget; ++i) {
        auto z = tiling.center_at(n, i);
        if (!tiling.center_contains(n, z)) return false;
        seen.insert(G::index(z));
    }
    for (const auto& g : probe) {
        if (tiling.center_contains(n, g) && !seen.count(G::index(g))) return false;
    }
    return true;
}

} // namespace brudno
