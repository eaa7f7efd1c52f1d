// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries a wall-clock budget that is asserted too.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <brudno/brudno.hpp>
#include <brudno/extension.hpp>

#include "helpers.hpp"

using namespace brudno;

namespace {

int failures_total = 0;
std::vector<std::string> current_failures;

void check(bool ok, const std::string& what) {
    if (!ok) current_failures.push_back(what);
}

template <class T>
void check_eq(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
        std::ostringstream os;
        os << what << " (got " << got << ", want " << want << ")";
        current_failures.push_back(os.str());
    }
}

void run_criterion(int number, const std::string& name, double seconds_budget,
                   const std::function<void()>& body) {
    current_failures.clear();
    auto start = std::chrono::steady_clock::now();
    try {
        body();
    } catch (const std::exception& e) {
        current_failures.push_back(std::string("exception: ") + e.what());
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= seconds_budget) {
        std::ostringstream os;
        os << "runtime " << elapsed << " s exceeds the " << seconds_budget << " s budget";
        current_failures.push_back(os.str());
    }
    std::cout.setf(std::ios::fixed);
    std::cout.precision(1);
    if (current_failures.empty()) {
        std::cout << "[PASS] " << number << ". " << name << " (" << elapsed << " s)\n";
    } else {
        ++failures_total;
        std::cout << "[FAIL] " << number << ". " << name << " (" << elapsed << " s)\n";
        for (const auto& f : current_failures) std::cout << "       - " << f << "\n";
    }
}

const ZdMonotiling<1> z_tiles;
const ZdMonotiling<2> z2_tiles;
const H3Monotiling h3_tiles;

// --- criterion 1: codec ------------------------------------------------------

void criterion_codec() {
    for (u64 n = 0; n <= 1'000'000; ++n) {
        auto enc = encode_hat(n);
        auto [value, rest] = decode_hat_stream(enc);
        if (value != n || !rest.empty()) {
            check(false, "hat round trip failed at n=" + std::to_string(n));
            return;
        }
        if (n >= 1) {
            u64 lg = static_cast<u64>(std::bit_width(n)) - 1;
            u64 lglg = static_cast<u64>(std::bit_width(lg + 1)) - 1;
            bool bounds = encode_binary(n).size() <= lg + 1 &&
                          encode_doubling(n).size() <= 2 * lg + 2 &&
                          enc.size() <= 2 * lglg + lg + 5;
            if (!bounds) {
                check(false, "length bound violated at n=" + std::to_string(n));
                return;
            }
        }
    }
    check_eq<std::size_t>(encode_hat(1).size(), 5, "hat(1) must be exactly 5 bits");
    check_eq<std::size_t>(encode_hat(5).size(), 9, "hat(5) must be exactly 9 bits");
    check_eq<std::string>(encode_hat(5).to_string(), "111101101", "hat(5) bit pattern");

    // prefix freedom over all pairs m, n <= 10^4: in sorted order, a prefix
    // pair forces an adjacent prefix pair, so adjacent checks cover all pairs
    std::vector<std::string> codes;
    codes.reserve(10'001);
    for (u64 n = 0; n <= 10'000; ++n) codes.push_back(encode_hat(n).to_string());
    std::sort(codes.begin(), codes.end());
    for (std::size_t i = 0; i + 1 < codes.size(); ++i)
        if (codes[i] == codes[i + 1].substr(0, codes[i].size())) {
            check(false, "prefix violation near sorted position " + std::to_string(i));
            return;
        }
}

// --- criterion 2: tilings -----------------------------------------------------

void criterion_tilings() {
    auto wz = first_k_elements<Z>(1000);
    for (u32 n = 1; n <= 64; ++n)
        check(check_tiling_window(z_tiles, n, wz).passed(), "Z window check at n=" + std::to_string(n));
    auto wz2 = first_k_elements<Z2>(1000);
    for (u32 n = 1; n <= 16; ++n)
        check(check_tiling_window(z2_tiles, n, wz2).passed(), "Z2 window check at n=" + std::to_string(n));
    auto wh = first_k_elements<Heisenberg>(1000);
    for (u32 n = 1; n <= 4; ++n)
        check(check_tiling_window(h3_tiles, n, wh).passed(), "H3 window check at n=" + std::to_string(n));

    auto ext = h3_extension_monotiling();
    for (u32 l = 1; l <= 3; ++l) {
        auto view = ext.slice_view(l);
        check(check_tiling_window(view, l, wh).passed(),
              "extension window check at l=" + std::to_string(l));
    }

    // interior characterization Int_K F = { g : Kg inside F } on 100 random draws
    std::mt19937_64 rng(2027);
    for (int trial = 0; trial < 50; ++trial) {
        auto k_set = testing::random_subset<Z>(rng, 30, 6, true);
        auto f_set = testing::random_subset<Z>(rng, 300, 40, false);
        auto rep = k_boundary<Z>(k_set, f_set);
        bool ok = rep.interior == k_interior<Z>(k_set, f_set) &&
                  rep.interior == set_difference(f_set, testing::boundary_oracle<Z>(k_set, f_set));
        check(ok, "interior characterization failed on a Z draw");
    }
    for (int trial = 0; trial < 50; ++trial) {
        auto k_set = testing::random_subset<Z2>(rng, 30, 6, true);
        auto f_set = testing::random_subset<Z2>(rng, 300, 40, false);
        auto rep = k_boundary<Z2>(k_set, f_set);
        bool ok = rep.interior == k_interior<Z2>(k_set, f_set) &&
                  rep.interior == set_difference(f_set, testing::boundary_oracle<Z2>(k_set, f_set));
        check(ok, "interior characterization failed on a Z2 draw");
    }
}

// --- criterion 3: density convergence ------------------------------------------

void criterion_density() {
    auto rep_z = density_report(z_tiles, 2, 100);
    check_eq<u64>(rep_z.interior_center_count, 50, "Z interior-center count at k=2, n=100");
    check_eq<u64>(rep_z.tile_cells, 100, "Z tile cells at n=100");
    check(rep_z.interior_center_ratio() == 0.5, "Z interior-center ratio must be exactly 0.5");

    auto rep_z2 = density_report(z2_tiles, 2, 32);
    double ratio = rep_z2.interior_center_ratio();
    check(std::abs(ratio - 0.25) <= 0.1 * 0.25,
          "Z2 interior-center ratio at n=32 must be within 10% of 0.25");
    check_eq<u64>(rep_z2.interior_center_count, 256, "Z2 interior-center count at k=2, n=32");
}

// --- criterion 4: invariance index ----------------------------------------------

void criterion_invariance_index() {
    check_eq<u32>(invariance_index(z_tiles, 3), 13, "invariance index of Z boxes at i=3");
}

// --- criterion 5: entropy ---------------------------------------------------------

void criterion_entropy() {
    auto full = ShiftSpec<Z>::full_shift(2);
    for (u32 n : {1u, 2u, 3u, 4u, 6u, 8u, 10u, 12u, 64u, 256u, 1024u}) {
        auto est = entropy_estimate(full, z_tiles, n);
        if (est.bits_per_cell != 1.0) {
            check(false, "full shift entropy must be exactly 1.0 at n=" + std::to_string(n));
            return;
        }
    }

    // golden mean against an independent Fibonacci oracle
    u64 fib_count = testing::fibonacci(22);
    check_eq<u64>(fib_count, 17711, "Fibonacci oracle value");
    auto est20 = entropy_estimate(golden_mean_spec(), z_tiles, 20);
    check(est20.exact_count && *est20.exact_count == fib_count, "golden mean count at n=20");
    check(std::abs(est20.bits_per_cell - std::log2(static_cast<double>(fib_count)) / 20.0) < 1e-6,
          "golden mean entropy estimate at n=20 within 1e-6 of the oracle");

    // hard squares against brute force over all 16 assignments of the 2x2 box
    auto hard = hard_squares_spec();
    u64 oracle = testing::count_language_oracle(hard, z2_tiles.tile(2));
    check_eq<u64>(oracle, 7, "hard-squares exhaustive oracle count");
    auto est_hs = entropy_estimate(hard, z2_tiles, 2);
    check(est_hs.exact_count && *est_hs.exact_count == 7, "hard-squares count at the 2x2 box");
    check(std::abs(est_hs.bits_per_cell - std::log2(7.0) / 4.0) < 1e-12,
          "hard-squares entropy must be log2(7)/4");
}

// --- criterion 6: compressor correctness --------------------------------------------

void criterion_compressor() {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<u64> dice(0, (1ull << 31));
    auto golden = golden_mean_spec();
    auto full2 = ShiftSpec<Z>::full_shift(2);
    auto full4 = ShiftSpec<Z>::full_shift(4);
    auto hard = hard_squares_spec();

    for (int trips = 0; trips < 200; ++trips) {
        int family = static_cast<int>(dice(rng) % 4);
        if (family == 3) {
            u32 k = 1 + static_cast<u32>(dice(rng) % 2);
            u32 n = k + static_cast<u32>(dice(rng) % 3);
            auto w = Configuration<Z2>::uniform_random(2, dice(rng));
            auto p = compress(w, hard, z2_tiles, k, n);
            check_eq<u64>(p.to_bits(2).size(), p.bit_length(), "length accounting (Z2)");
            auto back = decompress(p.to_bits(2), z2_tiles, 2);
            if (!back) { check(false, "Z2 round trip rejected"); return; }
            auto cells = z2_tiles.tile(n);
            for (std::size_t pos = 0; pos < cells.size(); ++pos)
                if (back->letters[pos] != w.at(cells[pos])) {
                    check(false, "Z2 round trip mismatch");
                    return;
                }
        } else {
            const auto& spec = family == 0 ? golden : (family == 1 ? full2 : full4);
            u32 alphabet = spec.alphabet;
            u32 k = 1 + static_cast<u32>(dice(rng) % 6);
            u32 n = 1 + static_cast<u32>(dice(rng) % 48);
            auto w = Configuration<Z>::uniform_random(alphabet, dice(rng));
            auto p = compress(w, spec, z_tiles, k, n);
            check_eq<u64>(p.to_bits(alphabet).size(), p.bit_length(), "length accounting (Z)");
            u64 oracle = testing::hat_length_oracle(p.tile_index) +
                         testing::hat_length_oracle(p.window_index) +
                         testing::hat_length_oracle(p.dictionary_size) +
                         testing::hat_length_oracle(p.block_bits) +
                         testing::hat_length_oracle(p.remainder_bits) +
                         p.dictionary_size * p.block_bits + p.remainder_bits;
            for (u64 i : p.indices) oracle += testing::hat_length_oracle(i);
            check_eq<u64>(p.bit_length(), oracle, "closed-form length sum");
            auto back = decompress(p.to_bits(alphabet), z_tiles, alphabet);
            if (!back) { check(false, "Z round trip rejected"); return; }
            auto cells = z_tiles.tile(n);
            for (std::size_t pos = 0; pos < cells.size(); ++pos)
                if (back->letters[pos] != w.at(cells[pos])) {
                    check(false, "Z round trip mismatch");
                    return;
                }
        }
    }

    // header corruptions: single-bit flips never yield a different pattern,
    // and consistency-breaking field rewrites always reject
    auto w = Configuration<Z>::uniform_random(2, 4242);
    auto p = compress(w, full2, z_tiles, 3, 12);
    auto bits = p.to_bits(2);
    auto reference = decompress(bits, z_tiles, 2);
    check(reference.has_value(), "reference program must decode");
    std::size_t header_bits = hat_length(p.tile_index) + hat_length(p.window_index) +
                              hat_length(p.dictionary_size) + hat_length(p.block_bits) +
                              hat_length(p.remainder_bits);
    for (std::size_t i = 0; i < header_bits; ++i) {
        BitString flipped;
        for (std::size_t j = 0; j < bits.size(); ++j)
            flipped.push_back(j == i ? !bits[j] : bits[j]);
        auto out = testing::decode_or_reject(flipped, z_tiles, 2);
        if (out && !(out->letters == reference->letters)) {
            check(false, "header bit flip " + std::to_string(i) + " produced a wrong pattern");
            return;
        }
    }
    for (int field = 0; field < 5; ++field) {
        auto broken = p;
        switch (field) {
            case 0: broken.tile_index += 1; break;       // geometry changes, L mismatches
            case 1: broken.window_index += 1; break;     // s and l mismatch
            case 2: broken.dictionary_size += 1; break;  // stream misaligns
            case 3: broken.block_bits += 1; break;       // L consistency breaks
            case 4: broken.remainder_bits += 1; break;   // l consistency breaks
        }
        check(!decompress(broken.to_bits(2), z_tiles, 2).has_value(),
              "header rewrite " + std::to_string(field) + " must reject");
    }

    // displayed length bound in full-language mode
    auto wg = greedy_admissible_fill(golden, z_tiles.tile(20), 99);
    auto pf = compress(wg, golden, z_tiles, 5, 20, DictionaryMode::full_language);
    auto geo = tile_geometry(z_tiles, 5, 20);
    u64 bound = testing::hat_length_oracle(pf.tile_index) + testing::hat_length_oracle(pf.window_index) +
                testing::hat_length_oracle(pf.dictionary_size) + testing::hat_length_oracle(pf.block_bits) +
                testing::hat_length_oracle(pf.remainder_bits) + pf.dictionary_size * pf.block_bits +
                geo.rest.size() * letter_width(2) +
                geo.centers.size() * testing::hat_length_oracle(pf.dictionary_size);
    check(pf.bit_length() <= bound, "full-language program within the displayed bound");
}

// --- criterion 7: counting lower bound ------------------------------------------------

void criterion_lower_side() {
    auto full = ShiftSpec<Z>::full_shift(2);
    auto rows = brudno_sweep(full, z_tiles, {8, 10, 12}, {2, 4, 8}, SamplerConfig{});
    for (const auto& row : rows) {
        check(!row.sampled, "lower side must be exhaustive at n=" + std::to_string(row.n));
        double max_program_bits = row.max_mean_bits * static_cast<double>(row.cells);
        check(max_program_bits >= static_cast<double>(row.n),
              "max program length below n bits at n=" + std::to_string(row.n));
        check(row.max_mean_bits >= row.entropy_bits - 1.0 / static_cast<double>(row.n),
              "max mean complexity below entropy - 1/n at n=" + std::to_string(row.n));
    }
}

// --- criterion 8: convergence trend ---------------------------------------------------

void criterion_upper_side() {
    auto full = ShiftSpec<Z>::full_shift(2);
    SamplerConfig sampler;
    sampler.kind = SamplerKind::uniform_random;
    sampler.seed = 7;
    sampler.count = 8;
    auto rows = brudno_sweep(full, z_tiles, {64, 256, 1024}, {4, 8, 16}, sampler);
    double prev_gap = 1e18;
    for (const auto& row : rows) {
        check(row.entropy_bits == 1.0, "entropy must be 1.0 at n=" + std::to_string(row.n));
        check(row.gap > 0.0, "gap must be positive at n=" + std::to_string(row.n));
        check(row.gap < prev_gap, "gap must strictly decrease at n=" + std::to_string(row.n));
        prev_gap = row.gap;
    }

    auto constant = Configuration<Z>::constant(2, 1);
    auto rep = mean_complexity(constant, full, z_tiles, 4096, {4, 8, 16, 32, 64});
    check(rep.mean_bits <= 0.2, "constant configuration above 0.2 bits/cell at n=4096");
    // formula oracle: header + one dictionary block + (4096/64) indices of hat(1)
    u64 expected = testing::hat_length_oracle(64) + testing::hat_length_oracle(4096) +
                   testing::hat_length_oracle(1) + testing::hat_length_oracle(128) +
                   testing::hat_length_oracle(0) + 128 + 64 * testing::hat_length_oracle(1);
    check_eq<u64>(rep.program_bits, expected, "constant-configuration program length formula");
}

// --- criterion 9: extension theorem ---------------------------------------------------

void criterion_extension() {
    auto ext = h3_extension_monotiling();
    const auto& s2 = ext.slice(2);
    for (const auto& g : s2.k_set) {
        double r = folner_ratio(ext, 2, g);
        check(r <= 0.5 + 1e-12, "extension tile at l=2 not 1/2-invariant");
    }
    for (u32 l = 1; l <= 3; ++l) {
        const auto& s = ext.slice(l);
        check(2ull * l * s.g_interior.size() >= (2ull * l - 1) * s.g_tile.size(),
              "quotient interior-mass inequality fails at l=" + std::to_string(l));
        check(2ull * l * s.e_interior.size() >= (2ull * l - 1) * s.e_tile.size(),
              "kernel interior-mass inequality fails at l=" + std::to_string(l));
    }
}

} // namespace

int main() {
    std::cout << "acceptance suite\n";
    run_criterion(1, "codec: round trips, prefix freedom, length bounds", 10.0, criterion_codec);
    run_criterion(2, "tilings: window partitions and interior characterization", 60.0,
                  criterion_tilings);
    run_criterion(3, "density convergence at fixed k", 60.0, criterion_density);
    run_criterion(4, "invariance index closed form", 60.0, criterion_invariance_index);
    run_criterion(5, "entropy estimates against oracles", 30.0, criterion_entropy);
    run_criterion(6, "compressor: round trips, rejects, length accounting", 120.0,
                  criterion_compressor);
    run_criterion(7, "counting lower bound (exhaustive)", 120.0, criterion_lower_side);
    run_criterion(8, "convergence trend and constant-word bound", 120.0, criterion_upper_side);
    run_criterion(9, "extension theorem bounds", 120.0, criterion_extension);
    if (failures_total == 0) {
        std::cout << "all criteria passed\n";
        return 0;
    }
    std::cout << failures_total << " criteria failed\n";
    return 1;
}
