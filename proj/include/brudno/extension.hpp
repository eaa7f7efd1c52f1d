#pragma once
// Group extensions of Folner monotilings.
//
// Given an exact sequence 1 -> E -> F -> G -> 1 of computable groups with
// computable normal Folner monotilings on E and G, a monotiling on F is
// assembled from a coset section over a G-tile and a sufficiently invariant
// E-tile, following Weiss' construction:
//
//   K_l  = first l elements of F
//   Q_l  = first I_l elements of G, where I_l >= l dominates the indices of psi(K_l)
//   m*_l = max(invariance index of the G-tiling at I_l, 2l)
//   T_l  = section of psi^{-1}(G_{m*}) (first member of each coset, e on eE)
//   T_l° = section over Int_{Q_l}(G_{m*})
//   P_l  = { rho(x,t) : x in K_l, t in T_l° } where x t = lambda(x,t) rho(x,t),
//          lambda in T_l, rho in E (the twist set)
//   k*_l = max(invariance index of the E-tiling at J_l, m*_l), J_l dominating
//          the E-indices of P_l
//   F_l  = T_l E_{k*}, with centers { phi_E(k*, i) theta(m*, j) } where theta
//          lifts G-centers through the section.
//
// The resulting tile satisfies |F_l delta g F_l| / |F_l| <= 1/l on K_l.

#include <map>
#include <memory>
#include <mutex>

#include "monotiling.hpp"

namespace brudno {

// Exact sequence with computable structure maps. section_lift(x) must return
// the index-minimal element of the fiber psi^{-1}(x); the generic scan
// coset_section_contains below validates that choice on small inputs.
template <class S>
concept ExactSequenceFor =
    ComputableGroup<typename S::Kernel> && ComputableGroup<typename S::Total> &&
    ComputableGroup<typename S::Quotient> &&
    requires(const typename S::Kernel::Element& e, const typename S::Total::Element& f,
             const typename S::Quotient::Element& g) {
        { S::embed(e) } -> std::convertible_to<typename S::Total::Element>;
        { S::project(f) } -> std::convertible_to<typename S::Quotient::Element>;
        { S::in_kernel(f) } -> std::same_as<bool>;
        { S::kernel_value(f) } -> std::convertible_to<typename S::Kernel::Element>;
        { S::section_lift(g) } -> std::convertible_to<typename S::Total::Element>;
    };

// 1 -> Z -> H3 -> Z^2 -> 1 with the center Z = {(0,0,c)} as kernel.
// Fibers are {(u,v,c) : c in Z}; the pairing index is strictly increasing in
// the index of c, so the index-minimal fiber member is (u,v,0).
struct H3Sequence {
    using Kernel = Z;
    using Total = Heisenberg;
    using Quotient = Z2;

    static H3Element embed(const Z::Element& e) { return {0, 0, e[0]}; }
    static Z2::Element project(const H3Element& f) { return {f.a, f.b}; }
    static bool in_kernel(const H3Element& f) { return f.a == 0 && f.b == 0; }
    static Z::Element kernel_value(const H3Element& f) { return {f.c}; }
    static H3Element section_lift(const Z2::Element& g) { return {g[0], g[1], 0}; }
};

// Literal coset-section indicator: f belongs to the section of T exactly when
// f lies in T and either f is the identity or no T-member with a smaller
// index has the same image under psi. Scans indices 1..index(f)-1, so it is
// only usable for elements of modest index; the built-in sequences provide a
// closed-form section_lift instead and the two are cross-checked in tests.
template <class Seq, class Pred>
    requires ExactSequenceFor<Seq>
bool coset_section_contains(const typename Seq::Total::Element& f, const Pred& t_contains,
                            const Budgets& budgets = {}) {
    using F = typename Seq::Total;
    using G = typename Seq::Quotient;
    if (!t_contains(f)) return false;
    if (is_identity<F>(f)) return true;
    u64 bound = F::index(f);
    if (bound > budgets.center_scan) throw budget_exceeded("coset section scan");
    auto target = G::index(Seq::project(f));
    for (u64 i = 1; i < bound; ++i) {
        if (!F::in_index_image(i)) continue;
        auto l = F::element_at(i);
        if (t_contains(l) && G::index(Seq::project(l)) == target) return false;
    }
    return true;
}

// Section of the full preimage psi^{-1}(base): one lift per coset.
template <class Seq>
    requires ExactSequenceFor<Seq>
FiniteSet<typename Seq::Total> section_of_preimage(const FiniteSet<typename Seq::Quotient>& base) {
    std::vector<typename Seq::Total::Element> out;
    out.reserve(base.size());
    for (const auto& x : base) out.push_back(Seq::section_lift(x));
    return FiniteSet<typename Seq::Total>::from_elements(std::move(out));
}

template <class Seq>
    requires ExactSequenceFor<Seq>
struct ExtensionSlice {
    using E = typename Seq::Kernel;
    using F = typename Seq::Total;
    using G = typename Seq::Quotient;

    u32 l = 0;
    FiniteSet<F> k_set;                    // K_l
    u64 quotient_reach = 0;                // I_l
    FiniteSet<G> q_set;                    // Q_l
    u32 m_star = 0;
    FiniteSet<G> g_tile, g_interior;       // G_{m*}, Int_{Q_l}(G_{m*})
    FiniteSet<F> section, section_interior; // T_l, T_l°
    FiniteSet<E> twist;                    // P_l
    u64 kernel_reach = 0;                  // J_l
    u32 k_star = 0;
    FiniteSet<E> e_tile, e_interior;       // E_{k*}, { s : P_l s inside E_{k*} }
    FiniteSet<F> tile;                     // F_l = T_l E_{k*}
};

// The twist set P_l together with the checks that every factorization lands
// where the construction promises: lambda in T_l and rho in the kernel.
template <class Seq>
    requires ExactSequenceFor<Seq>
FiniteSet<typename Seq::Kernel> twist_set(const FiniteSet<typename Seq::Total>& k_set,
                                          const FiniteSet<typename Seq::Total>& section_interior,
                                          const FiniteSet<typename Seq::Total>& section,
                                          const FiniteSet<typename Seq::Quotient>& g_tile) {
    using E = typename Seq::Kernel;
    using F = typename Seq::Total;
    std::vector<typename E::Element> out;
    for (const auto& x : k_set) {
        for (const auto& t : section_interior) {
            auto ft = F::multiply(x, t);
            auto q = Seq::project(ft);
            if (!g_tile.contains(q))
                throw factorization_error("translate left the quotient tile");
            auto lambda = Seq::section_lift(q);
            if (!section.contains(lambda))
                throw factorization_error("lambda factor is not in the section");
            auto rho = F::multiply(F::inverse(lambda), ft);
            if (!Seq::in_kernel(rho))
                throw factorization_error("rho factor is not in the kernel");
            out.push_back(Seq::kernel_value(rho));
        }
    }
    return FiniteSet<E>::from_elements(std::move(out));
}

template <class Seq, MonotilingFor TE, MonotilingFor TG>
    requires ExactSequenceFor<Seq>
ExtensionSlice<Seq> build_extension_slice(const TE& tiling_e, const TG& tiling_g, u32 l,
                                          const Budgets& budgets = {}) {
    using E = typename Seq::Kernel;
    using F = typename Seq::Total;
    using G = typename Seq::Quotient;
    static_assert(std::is_same_v<typename TE::Group, E> && std::is_same_v<typename TG::Group, G>);
    if (l == 0) throw validation_error("extension parameter l must be >= 1");

    ExtensionSlice<Seq> s;
    s.l = l;
    s.k_set = first_k_elements<F>(l);

    s.quotient_reach = l;
    for (const auto& x : s.k_set)
        s.quotient_reach = std::max(s.quotient_reach, G::index(Seq::project(x)));
    s.q_set = first_k_elements<G>(s.quotient_reach);

    u32 m_inv = invariance_index(tiling_g, static_cast<u32>(s.quotient_reach), budgets);
    s.m_star = std::max(m_inv, 2 * l);
    s.g_tile = tiling_g.tile(s.m_star);
    s.g_interior = k_interior<G>(s.q_set, s.g_tile);

    s.section = section_of_preimage<Seq>(s.g_tile);
    s.section_interior = section_of_preimage<Seq>(s.g_interior);

    s.twist = twist_set<Seq>(s.k_set, s.section_interior, s.section, s.g_tile);
    s.kernel_reach = 1;
    for (const auto& p : s.twist) s.kernel_reach = std::max(s.kernel_reach, E::index(p));

    u32 k_inv = invariance_index(tiling_e, static_cast<u32>(s.kernel_reach), budgets);
    s.k_star = std::max(k_inv, s.m_star);
    s.e_tile = tiling_e.tile(s.k_star);
    s.e_interior = k_interior<E>(s.twist, s.e_tile);

    if (s.section.size() * s.e_tile.size() > budgets.max_tile_cells)
        throw budget_exceeded("extension tile exceeds the cell budget");
    std::vector<typename F::Element> cells;
    cells.reserve(s.section.size() * s.e_tile.size());
    for (const auto& t : s.section)
        for (const auto& e : s.e_tile) cells.push_back(F::multiply(t, Seq::embed(e)));
    s.tile = FiniteSet<F>::from_elements(std::move(cells));
    return s;
}

// Monotiling built from an exact sequence. Slices are cached per l; the
// center set is { embed(q) * lift(z) : q an E-center at k*, z a G-center at m* }
// and membership is decided by peeling those two factors off.
template <class Seq, MonotilingFor TE, MonotilingFor TG>
    requires ExactSequenceFor<Seq>
class ExtensionMonotiling {
public:
    using Group = typename Seq::Total;
    using Element = typename Group::Element;

private:
    TE tiling_e_;
    TG tiling_g_;
    Budgets budgets_;
    struct Cache {
        std::mutex mutex;
        std::map<u32, ExtensionSlice<Seq>> slices;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

public:
    ExtensionMonotiling(TE tiling_e, TG tiling_g, Budgets budgets = {})
        : tiling_e_(std::move(tiling_e)), tiling_g_(std::move(tiling_g)), budgets_(budgets) {}

    const ExtensionSlice<Seq>& slice(u32 l) const {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->slices.find(l);
        if (it == cache_->slices.end())
            it = cache_->slices.emplace(l, build_extension_slice<Seq>(tiling_e_, tiling_g_, l, budgets_)).first;
        return it->second;
    }

    FiniteSet<Group> tile(u32 l) const { return slice(l).tile; }
    u64 tile_cells(u32 l) const { return slice(l).tile.size(); }

    bool center_contains(u32 l, const Element& g) const {
        const auto& s = slice(l);
        auto x = Seq::project(g);
        if (!tiling_g_.center_contains(s.m_star, x)) return false;
        auto t = Seq::section_lift(x);
        auto u = Group::multiply(g, Group::inverse(t));
        if (!Seq::in_kernel(u)) return false;
        return tiling_e_.center_contains(s.k_star, Seq::kernel_value(u));
    }

    Element center_at(u32 l, u64 i) const {
        const auto& s = slice(l);
        auto [i1, i2] = unpair_positive(i);
        auto e_center = tiling_e_.center_at(s.k_star, i1);
        auto g_center = tiling_g_.center_at(s.m_star, i2);
        return Group::multiply(Seq::embed(e_center), Seq::section_lift(g_center));
    }

    // Single-slice adapter that skips the cache lookup; the view is valid as
    // long as the parent tiling is alive. Useful for window checks, which
    // call the center decision once per (window cell, tile cell) pair.
    class SliceView {
        const ExtensionMonotiling* parent_;
        const ExtensionSlice<Seq>* slice_;

    public:
        using Group = typename Seq::Total;
        SliceView(const ExtensionMonotiling* parent, const ExtensionSlice<Seq>* s)
            : parent_(parent), slice_(s) {}

        FiniteSet<Group> tile(u32) const { return slice_->tile; }
        u64 tile_cells(u32) const { return slice_->tile.size(); }
        bool center_contains(u32, const Element& g) const {
            auto x = Seq::project(g);
            if (!parent_->quotient_tiling().center_contains(slice_->m_star, x)) return false;
            auto t = Seq::section_lift(x);
            auto u = Group::multiply(g, Group::inverse(t));
            if (!Seq::in_kernel(u)) return false;
            return parent_->kernel_tiling().center_contains(slice_->k_star, Seq::kernel_value(u));
        }
        Element center_at(u32, u64 i) const { return parent_->center_at(slice_->l, i); }
    };

    SliceView slice_view(u32 l) const { return SliceView(this, &slice(l)); }

    const TE& kernel_tiling() const { return tiling_e_; }
    const TG& quotient_tiling() const { return tiling_g_; }
};

using H3ExtensionMonotiling = ExtensionMonotiling<H3Sequence, ZdMonotiling<1>, ZdMonotiling<2>>;

inline H3ExtensionMonotiling h3_extension_monotiling(Budgets budgets = {}) {
    return H3ExtensionMonotiling(ZdMonotiling<1>{}, ZdMonotiling<2>{}, budgets);
}

} // namespace brudno
