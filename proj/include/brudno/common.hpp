#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace brudno {

using u8  = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Malformed bit stream: bad prefix code, exhausted input, trailing garbage.
struct codec_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured search or enumeration budget ran out before an answer was
// found. The CLI maps this to exit code 2 so callers can tell "raise the
// budget" apart from genuine input errors.
struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: unknown group name, schema violation, out-of-range letter.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested sample cannot satisfy the shift constraints on its window.
struct constraint_violation : validation_error {
    using validation_error::validation_error;
};

// The lambda/rho factorization inside the extension construction failed.
// This signals an incorrectly chosen section, not bad user input.
struct factorization_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

inline i64 checked_neg(i64 a) {
    if (a == INT64_MIN) throw std::overflow_error("integer overflow in negation");
    return -a;
}

// Floored remainder, always in [0, m) for m > 0.
inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

// Limits for every search that terminates in theory but not in bounded time.
struct Budgets {
    u64 enumeration_nodes = 4'000'000;   // pattern-language backtracking nodes
    u32 search_cap        = 1'000'000;   // invariance-index search bound
    u64 center_scan       = 10'000'000;  // center enumeration steps in decisions
    u64 exhaustive_words  = 65'536;      // max language size for exhaustive sweeps
    u64 max_tile_cells    = 50'000'000;  // refuse to materialize larger tiles
};

} // namespace brudno
