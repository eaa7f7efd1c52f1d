#pragma once
// Entropy estimation and the explicit tiling-dictionary codec.
//
// Programs have the shape
//
//   hat(k) hat(n) hat(N) hat(L) hat(l)  w_1 ... w_N  v  hat(i_1) ... hat(i_s)
//
// where k and n are tile indices, the w_i are N dictionary blocks of L bits
// (each a fixed-width word on F_k), v is an l-bit remainder and the i_j pick
// dictionary entries for the interior centers. The decoder rebuilds the
// geometry from (k, n) alone: s and l are never transmitted redundantly;
// s = |Int_{F_k}(F_n) meet Z_k| and l = |F_n \ Delta| * width must match or
// the program is rejected without output. Placement is translate-consistent:
// the cell x*g_j receives the letter of w_{i_j} at the position of x in the
// index order of F_k, which makes compress and decompress exact inverses.

#include <cmath>
#include <map>
#include <sstream>

#include "bits.hpp"
#include "subshift.hpp"

namespace brudno {

// --- tile geometry shared by both directions -----------------------------------

template <ComputableGroup G>
struct TileGeometry {
    FiniteSet<G> base;      // F_k
    FiniteSet<G> window;    // F_n
    FiniteSet<G> centers;   // I_{k,n} = Int_{F_k}(F_n) meet Z_k, index-ascending
    FiniteSet<G> covered;   // Delta_{k,n} = F_k * I_{k,n}
    FiniteSet<G> rest;      // F_n \ Delta_{k,n}
};

template <MonotilingFor T>
TileGeometry<typename T::Group> tile_geometry(const T& tiling, u32 k, u32 n) {
    using G = typename T::Group;
    TileGeometry<G> geo;
    geo.base = tiling.tile(k);
    geo.window = tiling.tile(n);
    auto interior = k_interior<G>(geo.base, geo.window);
    std::vector<typename G::Element> centers;
    for (const auto& g : interior)
        if (tiling.center_contains(k, g)) centers.push_back(g);
    geo.centers = FiniteSet<G>::from_elements(std::move(centers));
    std::vector<typename G::Element> covered;
    covered.reserve(geo.base.size() * geo.centers.size());
    for (const auto& z : geo.centers)
        for (const auto& x : geo.base) covered.push_back(G::multiply(x, z));
    geo.covered = FiniteSet<G>::from_elements(std::move(covered));
    geo.rest = set_difference(geo.window, geo.covered);
    return geo;
}

// --- programs -------------------------------------------------------------------

struct Program {
    u64 tile_index = 0;  // k
    u64 window_index = 0; // n
    u64 dictionary_size = 0; // N
    u64 block_bits = 0;  // L
    u64 remainder_bits = 0; // l
    std::vector<std::vector<u32>> dictionary; // N words of |F_k| letters
    std::vector<u32> remainder;               // letters on F_n \ Delta, index order
    std::vector<u64> indices;                 // s dictionary positions, 1-based

    BitString to_bits(u32 alphabet) const {
        BitString p;
        append_hat(p, tile_index);
        append_hat(p, window_index);
        append_hat(p, dictionary_size);
        append_hat(p, block_bits);
        append_hat(p, remainder_bits);
        for (const auto& w : dictionary) append_letter_block(p, w, alphabet);
        append_letter_block(p, remainder, alphabet);
        for (u64 i : indices) append_hat(p, i);
        return p;
    }

    // Closed-form bit length; to_bits().size() equals this by construction and
    // the tests recompute it from scratch.
    u64 bit_length() const {
        u64 total = hat_length(tile_index) + hat_length(window_index) +
                    hat_length(dictionary_size) + hat_length(block_bits) +
                    hat_length(remainder_bits);
        total += dictionary_size * block_bits + remainder_bits;
        for (u64 i : indices) total += hat_length(i);
        return total;
    }
};

enum class DictionaryMode { occurring, full_language };

// --- compression ------------------------------------------------------------------

// Encodes the restriction of `letter_at` to F_n. In occurring mode the
// dictionary holds exactly the distinct base-tile words seen at interior
// centers; in full_language mode it is the whole language of F_k in
// dictionary order, reproducing the counting bound at the price of size.
template <MonotilingFor T, class LetterAt>
Program compress_with(const LetterAt& letter_at, const ShiftSpec<typename T::Group>& spec,
                      const T& tiling, u32 k, u32 n, DictionaryMode mode,
                      const Budgets& budgets = {}) {
    using G = typename T::Group;
    auto geo = tile_geometry(tiling, k, n);
    u32 width = letter_width(spec.alphabet);

    Program prog;
    prog.tile_index = k;
    prog.window_index = n;
    prog.block_bits = static_cast<u64>(geo.base.size()) * width;
    prog.remainder_bits = static_cast<u64>(geo.rest.size()) * width;

    // words at interior centers, read through the action: word_j[p] = w(x_p * g_j)
    std::vector<std::vector<u32>> words;
    words.reserve(geo.centers.size());
    for (const auto& z : geo.centers) {
        std::vector<u32> w;
        w.reserve(geo.base.size());
        for (const auto& x : geo.base) w.push_back(letter_at(G::multiply(x, z)));
        words.push_back(std::move(w));
    }

    if (mode == DictionaryMode::occurring) {
        std::map<std::vector<u32>, u64> positions;
        for (const auto& w : words) positions.emplace(w, 0);
        u64 next = 1;
        for (auto& [word, pos] : positions) pos = next++;
        prog.dictionary.reserve(positions.size());
        for (const auto& [word, pos] : positions) prog.dictionary.push_back(word);
        prog.indices.reserve(words.size());
        for (const auto& w : words) prog.indices.push_back(positions.at(w));
    } else {
        std::map<std::vector<u32>, u64> positions;
        u64 next = 1;
        for_each_language_word(spec, geo.base,
                               [&](const std::vector<u32>& w) {
                                   prog.dictionary.push_back(w);
                                   positions.emplace(w, next++);
                               },
                               budgets);
        prog.indices.reserve(words.size());
        for (const auto& w : words) {
            auto it = positions.find(w);
            if (it == positions.end())
                throw validation_error("dictionary miss: an occurring word is not in the language");
            prog.indices.push_back(it->second);
        }
    }
    prog.dictionary_size = prog.dictionary.size();

    prog.remainder.reserve(geo.rest.size());
    for (const auto& x : geo.rest) prog.remainder.push_back(letter_at(x));
    return prog;
}

template <MonotilingFor T>
Program compress(const Configuration<typename T::Group>& w,
                 const ShiftSpec<typename T::Group>& spec, const T& tiling, u32 k, u32 n,
                 DictionaryMode mode = DictionaryMode::occurring, const Budgets& budgets = {}) {
    return compress_with([&](const typename T::Group::Element& x) { return w.at(x); }, spec,
                         tiling, k, n, mode, budgets);
}

template <MonotilingFor T>
Program compress_pattern(const Pattern<typename T::Group>& p,
                         const ShiftSpec<typename T::Group>& spec, const T& tiling, u32 k, u32 n,
                         DictionaryMode mode = DictionaryMode::occurring,
                         const Budgets& budgets = {}) {
    return compress_with(
        [&](const typename T::Group::Element& x) { return p.letters[p.support.position_of(x)]; },
        spec, tiling, k, n, mode, budgets);
}

// --- decompression ------------------------------------------------------------------

// Decodes a program to the pattern it denotes on F_n, or nothing if the
// stream is not a valid program: malformed prefix codes, header fields that
// contradict the tile geometry, out-of-range letters or indices, a short
// stream, or trailing bits all reject.
template <MonotilingFor T>
std::optional<Pattern<typename T::Group>> decompress(const BitString& bits, const T& tiling,
                                                     u32 alphabet, const Budgets& budgets = {}) {
    using G = typename T::Group;
    try {
        BitReader in(bits);
        u64 k = decode_hat(in);
        u64 n = decode_hat(in);
        u64 dict_size = decode_hat(in);
        u64 block_bits = decode_hat(in);
        u64 rem_bits = decode_hat(in);
        if (k == 0 || n == 0 || k > UINT32_MAX || n > UINT32_MAX) return std::nullopt;
        // guard before materializing anything: a corrupted header may name a
        // tile far beyond what this machine can build
        if (tiling.tile_cells(static_cast<u32>(k)) > budgets.max_tile_cells ||
            tiling.tile_cells(static_cast<u32>(n)) > budgets.max_tile_cells)
            throw budget_exceeded("decoder tile exceeds the cell budget");

        auto geo = tile_geometry(tiling, static_cast<u32>(k), static_cast<u32>(n));
        u32 width = letter_width(alphabet);
        if (block_bits != static_cast<u64>(geo.base.size()) * width) return std::nullopt;
        if (rem_bits != static_cast<u64>(geo.rest.size()) * width) return std::nullopt;

        std::vector<std::vector<u32>> dictionary;
        dictionary.reserve(dict_size);
        for (u64 i = 0; i < dict_size; ++i)
            dictionary.push_back(decode_letter_block(in, geo.base.size(), alphabet));
        std::vector<u32> remainder = decode_letter_block(in, geo.rest.size(), alphabet);
        std::vector<u64> indices;
        indices.reserve(geo.centers.size());
        for (std::size_t j = 0; j < geo.centers.size(); ++j) {
            u64 i = decode_hat(in);
            if (i == 0 || i > dict_size) return std::nullopt;
            indices.push_back(i);
        }
        if (!in.done()) return std::nullopt; // trailing bits: not a program

        Pattern<G> out;
        out.support = geo.window;
        out.letters.assign(geo.window.size(), 0);
        for (std::size_t j = 0; j < geo.centers.size(); ++j) {
            const auto& z = geo.centers[j];
            const auto& word = dictionary[indices[j] - 1];
            for (std::size_t p = 0; p < geo.base.size(); ++p) {
                auto cell = G::multiply(geo.base[p], z);
                out.letters[out.support.position_of(cell)] = word[p];
            }
        }
        for (std::size_t p = 0; p < geo.rest.size(); ++p)
            out.letters[out.support.position_of(geo.rest[p])] = remainder[p];
        return out;
    } catch (const codec_error&) {
        return std::nullopt;
    }
}

// --- entropy ---------------------------------------------------------------------

struct EntropyEstimate {
    double bits_per_cell = 0.0;
    double log2_count = 0.0;
    std::optional<u64> exact_count; // present when the count fits in 64 bits
    u64 cells = 0;
    bool via_enumeration = false;
    // Local admissibility can overcount when locally admissible patterns fail
    // to extend globally; specs not declared zero-fill-safe only give an
    // upper estimate, and outputs must say so.
    bool upper_estimate_only = false;
};

namespace detail {
// Z-interval tiles of nearest-neighbor specs admit the transfer-matrix route.
template <MonotilingFor T>
bool interval_tile(const T&, const FiniteSet<typename T::Group>&) { return false; }

inline bool interval_tile(const ZdMonotiling<1>&, const FiniteSet<Z>& f_set) {
    if (f_set.empty()) return false;
    i64 lo = f_set[0][0], hi = lo;
    for (const auto& e : f_set) { lo = std::min(lo, e[0]); hi = std::max(hi, e[0]); }
    return static_cast<u64>(hi - lo + 1) == f_set.size();
}

template <class G>
constexpr bool is_z_group = std::is_same_v<G, Z>;
} // namespace detail

// log2 |language(F_n)| / |F_n|. Enumerates when the node budget allows; for
// nearest-neighbor specs on Z-interval tiles it falls back to the exact
// transfer-matrix count, so e.g. the full shift reports 1.0 at every n.
template <MonotilingFor T>
EntropyEstimate entropy_estimate(const ShiftSpec<typename T::Group>& spec, const T& tiling,
                                 u32 n, const Budgets& budgets = {}) {
    auto f_set = tiling.tile(n);
    EntropyEstimate est;
    est.cells = f_set.size();
    est.upper_estimate_only = !spec.zero_fill_safe;
    if (est.cells == 0) throw validation_error("empty tile has no entropy estimate");
    try {
        u64 count = count_language(spec, f_set, budgets);
        est.exact_count = count;
        est.log2_count = std::log2(static_cast<double>(count));
        est.via_enumeration = true;
    } catch (const budget_exceeded&) {
        if constexpr (detail::is_z_group<typename T::Group>) {
            if (is_nearest_neighbor_1d(spec) && detail::interval_tile(tiling, f_set)) {
                est.exact_count = count_words_1d_exact(spec, est.cells);
                est.log2_count = log2_count_words_1d(spec, est.cells);
                est.via_enumeration = false;
            } else {
                throw;
            }
        } else {
            throw;
        }
    }
    est.bits_per_cell = est.log2_count / static_cast<double>(est.cells);
    return est;
}

// --- complexity reports and the convergence sweep -----------------------------------

struct ComplexityReport {
    u32 window_index = 0; // n
    u64 cells = 0;
    u32 best_k = 0;
    u64 program_bits = 0;
    double mean_bits = 0.0;                  // program_bits / |F_n|
    double entropy_bits = 0.0;               // estimate at the same n
    std::vector<std::pair<u32, u64>> per_k;  // (k, program bits) for the sweep
};

template <MonotilingFor T, class LetterAt>
ComplexityReport mean_complexity_with(const LetterAt& letter_at,
                                      const ShiftSpec<typename T::Group>& spec, const T& tiling,
                                      u32 n, const std::vector<u32>& k_sweep,
                                      DictionaryMode mode = DictionaryMode::occurring,
                                      const Budgets& budgets = {}) {
    if (k_sweep.empty()) throw validation_error("k sweep must be nonempty");
    ComplexityReport rep;
    rep.window_index = n;
    rep.cells = tiling.tile(n).size();
    for (u32 k : k_sweep) {
        auto prog = compress_with(letter_at, spec, tiling, k, n, mode, budgets);
        u64 bits = prog.bit_length();
        rep.per_k.emplace_back(k, bits);
        if (rep.best_k == 0 || bits < rep.program_bits) {
            rep.best_k = k;
            rep.program_bits = bits;
        }
    }
    rep.mean_bits = static_cast<double>(rep.program_bits) / static_cast<double>(rep.cells);
    return rep;
}

template <MonotilingFor T>
ComplexityReport mean_complexity(const Configuration<typename T::Group>& w,
                                 const ShiftSpec<typename T::Group>& spec, const T& tiling, u32 n,
                                 const std::vector<u32>& k_sweep,
                                 DictionaryMode mode = DictionaryMode::occurring,
                                 const Budgets& budgets = {}) {
    return mean_complexity_with([&](const typename T::Group::Element& x) { return w.at(x); },
                                spec, tiling, n, k_sweep, mode, budgets);
}

struct SweepRow {
    u32 n = 0;
    u64 cells = 0;
    std::string count_repr;   // exact decimal, or ~2^x when it does not fit
    double entropy_bits = 0.0;
    u32 best_k = 0;           // k chosen by the word attaining the max
    double max_mean_bits = 0.0;
    double gap = 0.0;         // max_mean_bits - entropy_bits
    bool sampled = false;     // true when the max runs over samples, not the language
    bool upper_estimate_only = false;
};

// One row per n: the entropy estimate next to the worst-case mean program
// length. The maximum is exact over the whole language when its size fits the
// exhaustive budget, and a sampled lower estimate of the max otherwise.
template <MonotilingFor T>
std::vector<SweepRow> brudno_sweep(const ShiftSpec<typename T::Group>& spec, const T& tiling,
                                   const std::vector<u32>& n_list, const std::vector<u32>& k_sweep,
                                   const SamplerConfig& sampler,
                                   DictionaryMode mode = DictionaryMode::occurring,
                                   const Budgets& budgets = {}) {
    std::vector<SweepRow> rows;
    rows.reserve(n_list.size());
    for (u32 n : n_list) {
        auto est = entropy_estimate(spec, tiling, n, budgets);
        SweepRow row;
        row.n = n;
        row.cells = est.cells;
        row.entropy_bits = est.bits_per_cell;
        row.upper_estimate_only = est.upper_estimate_only;
        if (est.exact_count) {
            row.count_repr = std::to_string(*est.exact_count);
        } else {
            std::ostringstream os;
            os.setf(std::ios::fixed);
            os.precision(1);
            os << "~2^" << est.log2_count;
            row.count_repr = os.str();
        }

        bool exhaustive = est.via_enumeration && est.exact_count &&
                          *est.exact_count <= budgets.exhaustive_words;
        auto f_set = tiling.tile(n);
        if (exhaustive) {
            for_each_language_word(spec, f_set,
                                   [&](const std::vector<u32>& letters) {
                                       auto rep = mean_complexity_with(
                                           [&](const typename T::Group::Element& x) {
                                               return letters[f_set.position_of(x)];
                                           },
                                           spec, tiling, n, k_sweep, mode, budgets);
                                       if (rep.mean_bits > row.max_mean_bits) {
                                           row.max_mean_bits = rep.mean_bits;
                                           row.best_k = rep.best_k;
                                       }
                                   },
                                   budgets);
            row.sampled = false;
        } else {
            for (u32 j = 0; j < sampler.count; ++j) {
                auto w = sample_configuration(spec, sampler, f_set, j);
                auto rep = mean_complexity(w, spec, tiling, n, k_sweep, mode, budgets);
                if (rep.mean_bits > row.max_mean_bits) {
                    row.max_mean_bits = rep.mean_bits;
                    row.best_k = rep.best_k;
                }
            }
            row.sampled = true;
        }
        row.gap = row.max_mean_bits - row.entropy_bits;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace brudno
