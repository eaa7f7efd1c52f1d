#pragma once
// Subshifts of finite type over a computable group.
//
// A shift spec is an alphabet {1..k} plus finitely many forbidden patterns.
// The group acts by (g.w)(x) = w(xg); a forbidden pattern p occurs in w at g
// when w(xg) = p(x) for every x in its support. language(F) enumerates the
// locally admissible patterns on a finite set F: assignments containing no
// fully visible forbidden translate. For the bundled specs local and global
// admissibility agree (filling with letter 1 always extends a locally
// admissible pattern), which the zero_fill_safe flag declares.

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "monotiling.hpp"

namespace brudno {

template <ComputableGroup G>
struct Pattern {
    FiniteSet<G> support;
    std::vector<u32> letters; // aligned with the index order of the support

    friend bool operator==(const Pattern& a, const Pattern& b) {
        return a.support == b.support && a.letters == b.letters;
    }
};

// Builds a pattern from parallel (cell, letter) lists given in any order;
// letters stay attached to their cells while the support is index-sorted.
template <ComputableGroup G>
Pattern<G> make_pattern(const std::vector<typename G::Element>& cells,
                        const std::vector<u32>& letters) {
    if (cells.size() != letters.size())
        throw validation_error("pattern support and letters differ in length");
    Pattern<G> p;
    p.support = FiniteSet<G>::from_elements(cells);
    if (p.support.size() != cells.size())
        throw validation_error("pattern support has repeated cells");
    p.letters.assign(p.support.size(), 0);
    for (std::size_t j = 0; j < cells.size(); ++j)
        p.letters[p.support.position_of(cells[j])] = letters[j];
    return p;
}

// Restriction of a pattern to a subset of its support (presheaf map).
template <ComputableGroup G>
Pattern<G> restrict_pattern(const Pattern<G>& p, const FiniteSet<G>& subset) {
    Pattern<G> out;
    out.support = subset;
    out.letters.reserve(subset.size());
    for (const auto& x : subset) {
        if (!p.support.contains(x)) throw validation_error("restriction target is not a subset");
        out.letters.push_back(p.letters[p.support.position_of(x)]);
    }
    return out;
}

template <ComputableGroup G>
struct ShiftSpec {
    u32 alphabet = 1;
    bool zero_fill_safe = true;
    std::vector<Pattern<G>> forbidden;

    static ShiftSpec full_shift(u32 k) { return {k, true, {}}; }
};

// Golden-mean shift over Z: no two adjacent cells both carry letter 2.
inline ShiftSpec<Z> golden_mean_spec() {
    return {2, true, {make_pattern<Z>({{0}, {1}}, {2, 2})}};
}

// Hard squares over Z^2: letter 2 never occupies two adjacent sites.
inline ShiftSpec<Z2> hard_squares_spec() {
    return {2, true,
            {make_pattern<Z2>({{0, 0}, {1, 0}}, {2, 2}),
             make_pattern<Z2>({{0, 0}, {0, 1}}, {2, 2})}};
}

// --- configurations and the action -------------------------------------------

enum class SamplerKind { constant, periodic, uniform_random, greedy_admissible };

inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Total configuration with a finite description. Acting by g accumulates a
// right factor in the evaluation point: (g.w)(x) = w(xg).
template <ComputableGroup G>
class Configuration {
public:
    using Element = typename G::Element;

private:
    SamplerKind kind_ = SamplerKind::constant;
    u32 alphabet_ = 1;
    u32 constant_letter_ = 1;
    i64 period_ = 1;
    u64 seed_ = 0;
    u32 default_letter_ = 1;
    std::shared_ptr<const std::unordered_map<u64, u32>> window_values_;
    Element translate_ = G::identity();

    u32 base_at(const Element& x) const {
        switch (kind_) {
            case SamplerKind::constant:
                return constant_letter_;
            case SamplerKind::periodic: {
                i64 sum = 0;
                for (i64 c : G::to_coords(x)) sum = checked_add(sum, c);
                return 1 + static_cast<u32>(mod_floor(sum, period_) % alphabet_);
            }
            case SamplerKind::uniform_random:
                return 1 + static_cast<u32>(splitmix64(G::index(x) ^ (seed_ * 0x9e3779b97f4a7c15ull)) % alphabet_);
            case SamplerKind::greedy_admissible: {
                auto it = window_values_->find(G::index(x));
                return it == window_values_->end() ? default_letter_ : it->second;
            }
        }
        return default_letter_;
    }

public:
    Configuration() = default;

    static Configuration constant(u32 alphabet, u32 letter) {
        Configuration w;
        w.kind_ = SamplerKind::constant;
        w.alphabet_ = alphabet;
        if (letter < 1 || letter > alphabet) throw validation_error("constant letter outside alphabet");
        w.constant_letter_ = letter;
        return w;
    }

    static Configuration periodic(u32 alphabet, i64 period) {
        if (period < 1) throw validation_error("period must be >= 1");
        Configuration w;
        w.kind_ = SamplerKind::periodic;
        w.alphabet_ = alphabet;
        w.period_ = period;
        return w;
    }

    static Configuration uniform_random(u32 alphabet, u64 seed) {
        Configuration w;
        w.kind_ = SamplerKind::uniform_random;
        w.alphabet_ = alphabet;
        w.seed_ = seed;
        return w;
    }

    static Configuration from_window(u32 alphabet, std::unordered_map<u64, u32> values,
                                     u32 default_letter = 1) {
        Configuration w;
        w.kind_ = SamplerKind::greedy_admissible;
        w.alphabet_ = alphabet;
        w.default_letter_ = default_letter;
        w.window_values_ = std::make_shared<const std::unordered_map<u64, u32>>(std::move(values));
        return w;
    }

    u32 at(const Element& x) const { return base_at(G::multiply(x, translate_)); }

    Configuration translated(const Element& g) const {
        Configuration w = *this;
        w.translate_ = G::multiply(g, translate_);
        return w;
    }
};

template <ComputableGroup G>
Configuration<G> act(const typename G::Element& g, const Configuration<G>& w) {
    return w.translated(g);
}

// --- forbidden-pattern instances and enumeration -------------------------------

// All translates of forbidden patterns whose support lies inside F, rewritten
// as positions into F's index order. An instance fires when its last position
// is assigned, so the backtracking search prunes as early as possible.
template <ComputableGroup G>
struct InstanceTable {
    struct Instance {
        std::vector<u32> positions;
        std::vector<u32> letters;
    };
    std::vector<std::vector<Instance>> by_last_position;

    static InstanceTable build(const ShiftSpec<G>& spec, const FiniteSet<G>& f_set) {
        InstanceTable table;
        table.by_last_position.resize(f_set.size());
        for (const auto& p : spec.forbidden) {
            if (p.support.empty()) throw validation_error("forbidden pattern with empty support");
            std::unordered_set<u64> seen;
            for (const auto& x : p.support) {
                auto x_inv = G::inverse(x);
                for (const auto& f : f_set) {
                    auto g = G::multiply(x_inv, f);
                    if (!seen.insert(G::index(g)).second) continue;
                    bool inside = true;
                    std::vector<u32> positions;
                    positions.reserve(p.support.size());
                    for (const auto& y : p.support) {
                        auto cell = G::multiply(y, g);
                        if (!f_set.contains(cell)) { inside = false; break; }
                        positions.push_back(static_cast<u32>(f_set.position_of(cell)));
                    }
                    if (!inside) continue;
                    Instance inst{std::move(positions), p.letters};
                    u32 last = 0;
                    for (u32 pos : inst.positions) last = std::max(last, pos);
                    table.by_last_position[last].push_back(std::move(inst));
                }
            }
        }
        return table;
    }
};

// Is a full letter assignment on F locally admissible?
template <ComputableGroup G>
bool locally_admissible(const ShiftSpec<G>& spec, const FiniteSet<G>& f_set,
                        const std::vector<u32>& letters) {
    auto table = InstanceTable<G>::build(spec, f_set);
    for (const auto& bucket : table.by_last_position)
        for (const auto& inst : bucket) {
            bool match = true;
            for (std::size_t j = 0; j < inst.positions.size(); ++j)
                if (letters[inst.positions[j]] != inst.letters[j]) { match = false; break; }
            if (match) return false;
        }
    return true;
}

// Depth-first enumeration of locally admissible assignments in dictionary
// order; the visitor sees letters aligned with F's index order.
template <ComputableGroup G, class Visitor>
u64 for_each_language_word(const ShiftSpec<G>& spec, const FiniteSet<G>& f_set,
                           const Visitor& visit, const Budgets& budgets = {}) {
    if (spec.alphabet < 1) throw validation_error("alphabet size must be >= 1");
    auto table = InstanceTable<G>::build(spec, f_set);
    std::vector<u32> letters(f_set.size(), 0);
    u64 nodes = 0, count = 0;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == f_set.size()) {
            ++count;
            visit(static_cast<const std::vector<u32>&>(letters));
            return;
        }
        for (u32 a = 1; a <= spec.alphabet; ++a) {
            if (++nodes > budgets.enumeration_nodes)
                throw budget_exceeded("pattern enumeration node budget");
            letters[pos] = a;
            bool pruned = false;
            for (const auto& inst : table.by_last_position[pos]) {
                bool match = true;
                for (std::size_t j = 0; j < inst.positions.size(); ++j)
                    if (letters[inst.positions[j]] != inst.letters[j]) { match = false; break; }
                if (match) { pruned = true; break; }
            }
            if (!pruned) self(self, pos + 1);
        }
        letters[pos] = 0;
    };
    rec(rec, 0);
    return count;
}

template <ComputableGroup G>
u64 count_language(const ShiftSpec<G>& spec, const FiniteSet<G>& f_set,
                   const Budgets& budgets = {}) {
    return for_each_language_word(spec, f_set, [](const std::vector<u32>&) {}, budgets);
}

template <ComputableGroup G>
std::vector<Pattern<G>> language(const ShiftSpec<G>& spec, const FiniteSet<G>& f_set,
                                 const Budgets& budgets = {}) {
    std::vector<Pattern<G>> out;
    for_each_language_word(spec, f_set,
                           [&](const std::vector<u32>& letters) {
                               out.push_back(Pattern<G>{f_set, letters});
                           },
                           budgets);
    return out;
}

// --- transfer-matrix counting for nearest-neighbor specs over Z ------------------

// True when every forbidden support normalizes (by translation) to {0,1}.
inline bool is_nearest_neighbor_1d(const ShiftSpec<Z>& spec) {
    for (const auto& p : spec.forbidden) {
        if (p.support.size() != 2) return false;
        i64 a = p.support[0][0], b = p.support[1][0];
        if (b - a != 1 && a - b != 1) return false;
    }
    return true;
}

// k x k adjacency matrix: entry (a,b) is 0 exactly when the word (a,b) on two
// consecutive cells is forbidden.
inline std::vector<std::vector<u64>> transfer_matrix(const ShiftSpec<Z>& spec) {
    u32 k = spec.alphabet;
    std::vector<std::vector<u64>> m(k, std::vector<u64>(k, 1));
    for (const auto& p : spec.forbidden) {
        i64 a = p.support[0][0], b = p.support[1][0];
        u32 first, second;
        if (b - a == 1) { first = p.letters[0]; second = p.letters[1]; }
        else { first = p.letters[1]; second = p.letters[0]; }
        m[first - 1][second - 1] = 0;
    }
    return m;
}

// Exact count of locally admissible words of length n, or nullopt on overflow.
inline std::optional<u64> count_words_1d_exact(const ShiftSpec<Z>& spec, u64 n) {
    if (!is_nearest_neighbor_1d(spec)) throw validation_error("spec is not nearest-neighbor over Z");
    if (n == 0) return 1;
    auto m = transfer_matrix(spec);
    u32 k = spec.alphabet;
    std::vector<u64> v(k, 1);
    for (u64 step = 1; step < n; ++step) {
        std::vector<u64> next(k, 0);
        for (u32 a = 0; a < k; ++a) {
            if (v[a] == 0) continue;
            for (u32 b = 0; b < k; ++b) {
                if (!m[a][b]) continue;
                u64 r;
                if (__builtin_add_overflow(next[b], v[a], &r)) return std::nullopt;
                next[b] = r;
            }
        }
        v = std::move(next);
    }
    u64 total = 0;
    for (u64 x : v)
        if (__builtin_add_overflow(total, x, &total)) return std::nullopt;
    return total;
}

inline u64 count_words_1d(const ShiftSpec<Z>& spec, u64 n) {
    auto c = count_words_1d_exact(spec, n);
    if (!c) throw std::overflow_error("transfer-matrix count exceeds 64 bits");
    return *c;
}

// log2 of the count via scaled vector iteration; exact for the full shift on
// power-of-two alphabets and accurate to double precision otherwise.
inline double log2_count_words_1d(const ShiftSpec<Z>& spec, u64 n) {
    if (!is_nearest_neighbor_1d(spec)) throw validation_error("spec is not nearest-neighbor over Z");
    if (n == 0) return 0.0;
    auto m = transfer_matrix(spec);
    u32 k = spec.alphabet;
    std::vector<double> v(k, 1.0);
    double log2_scale = 0.0;
    for (u64 step = 1; step < n; ++step) {
        std::vector<double> next(k, 0.0);
        for (u32 a = 0; a < k; ++a)
            for (u32 b = 0; b < k; ++b)
                if (m[a][b]) next[b] += v[a];
        double top = 0.0;
        for (double x : next) top = std::max(top, x);
        if (top <= 0.0) return -HUGE_VAL; // empty language from some length on
        for (double& x : next) x /= top;
        log2_scale += std::log2(top);
        v = std::move(next);
    }
    double total = 0.0;
    for (double x : v) total += x;
    return log2_scale + std::log2(total);
}

// --- samplers -----------------------------------------------------------------

// Greedy admissible fill of a window in index order: each cell takes the
// first letter (in a seed-shuffled order) that completes no forbidden
// instance among the already assigned cells; cells outside the window default
// to letter 1.
template <ComputableGroup G>
Configuration<G> greedy_admissible_fill(const ShiftSpec<G>& spec, const FiniteSet<G>& window,
                                        u64 seed) {
    auto table = InstanceTable<G>::build(spec, window);
    std::vector<u32> letters(window.size(), 0);
    std::mt19937_64 rng(seed);
    std::vector<u32> order(spec.alphabet);
    for (std::size_t pos = 0; pos < window.size(); ++pos) {
        for (u32 a = 0; a < spec.alphabet; ++a) order[a] = a + 1;
        std::shuffle(order.begin(), order.end(), rng);
        bool placed = false;
        for (u32 candidate : order) {
            letters[pos] = candidate;
            bool violates = false;
            for (const auto& inst : table.by_last_position[pos]) {
                bool match = true;
                for (std::size_t j = 0; j < inst.positions.size(); ++j)
                    if (letters[inst.positions[j]] != inst.letters[j]) { match = false; break; }
                if (match) { violates = true; break; }
            }
            if (!violates) { placed = true; break; }
        }
        if (!placed) throw constraint_violation("greedy fill cannot satisfy the constraints");
    }
    std::unordered_map<u64, u32> values;
    values.reserve(window.size());
    for (std::size_t pos = 0; pos < window.size(); ++pos)
        values.emplace(G::index(window[pos]), letters[pos]);
    return Configuration<G>::from_window(spec.alphabet, std::move(values));
}

struct SamplerConfig {
    SamplerKind kind = SamplerKind::uniform_random;
    u64 seed = 1;
    u32 count = 8;     // how many configurations a sweep draws
    i64 period = 2;    // periodic sampler
    u32 letter = 1;    // constant sampler
};

template <ComputableGroup G>
Configuration<G> sample_configuration(const ShiftSpec<G>& spec, const SamplerConfig& cfg,
                                      const FiniteSet<G>& window, u64 seed_offset = 0) {
    switch (cfg.kind) {
        case SamplerKind::constant: {
            for (const auto& p : spec.forbidden)
                if (p.support.size() == 1 && p.letters[0] == cfg.letter)
                    throw constraint_violation("constant letter is forbidden by a single-cell pattern");
            return Configuration<G>::constant(spec.alphabet, cfg.letter);
        }
        case SamplerKind::periodic:
            return Configuration<G>::periodic(spec.alphabet, cfg.period);
        case SamplerKind::uniform_random:
            return Configuration<G>::uniform_random(spec.alphabet, cfg.seed + seed_offset);
        case SamplerKind::greedy_admissible:
            return greedy_admissible_fill(spec, window, cfg.seed + seed_offset);
    }
    throw validation_error("unknown sampler kind");
}

} // namespace brudno
