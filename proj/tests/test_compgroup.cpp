#include <doctest.h>

#include "helpers.hpp"

using namespace brudno;

TEST_CASE("Z indexing") {
    CHECK(z_index(0) == 1);
    CHECK(z_index(-1) == 2);
    CHECK(z_index(2) == 5);
    for (i64 n = -500; n <= 500; ++n) CHECK(z_value(z_index(n)) == n);
}

TEST_CASE("pairing is a bijection on positives") {
    for (u64 i = 1; i <= 5000; ++i) {
        auto [a, b] = unpair_positive(i);
        CHECK(a >= 1);
        CHECK(b >= 1);
        CHECK(pair_positive(a, b) == i);
    }
}

TEST_CASE("first elements of Z") {
    auto f3 = first_k_elements<Z>(3);
    REQUIRE(f3.size() == 3);
    CHECK(f3[0][0] == 0);
    CHECK(f3[1][0] == -1);
    CHECK(f3[2][0] == 1);
    auto f1 = first_k_elements<Z>(1);
    REQUIRE(f1.size() == 1);
    CHECK(f1[0][0] == 0);
}

TEST_CASE("Heisenberg multiplication") {
    H3Element a{1, 0, 0}, b{0, 1, 0};
    auto ab = Heisenberg::multiply(a, b);
    CHECK(ab == H3Element{1, 1, 1});
    auto ba = Heisenberg::multiply(b, a);
    CHECK(ba == H3Element{1, 1, 0}); // witnesses non-commutativity
    CHECK(Heisenberg::multiply(Heisenberg::identity(), a) == a);
    CHECK_THROWS_AS(Heisenberg::multiply({INT64_MAX, 1, 0}, {1, 1, 0}), std::overflow_error);
}

TEST_CASE("inverses") {
    CHECK(Z::inverse({5}) == Z::Element{-5});
    auto inv = Heisenberg::inverse({1, 1, 0});
    CHECK(inv == H3Element{-1, -1, 1});
    CHECK(Heisenberg::multiply({1, 1, 0}, inv) == Heisenberg::identity());
    CHECK(Heisenberg::inverse(Heisenberg::identity()) == Heisenberg::identity());
}

TEST_CASE("direct inverse matches the admissibility search") {
    auto check_group = [](auto tag) {
        using G = decltype(tag);
        for (const auto& g : first_k_elements<G>(50)) {
            auto direct = G::inverse(g);
            auto searched = testing::inverse_by_search<G>(g);
            CHECK(G::index(direct) == G::index(searched));
        }
    };
    check_group(Z{});
    check_group(Z2{});
    check_group(Heisenberg{});
}

TEST_CASE("group axioms on sampled elements") {
    auto check_group = [](auto tag) {
        using G = decltype(tag);
        auto elems = first_k_elements<G>(50);
        auto e = G::identity();
        for (std::size_t i = 0; i < elems.size(); i += 7)
            for (std::size_t j = 1; j < elems.size(); j += 11)
                for (std::size_t k = 2; k < elems.size(); k += 13) {
                    auto left = G::multiply(G::multiply(elems[i], elems[j]), elems[k]);
                    auto right = G::multiply(elems[i], G::multiply(elems[j], elems[k]));
                    CHECK(G::index(left) == G::index(right));
                }
        for (const auto& g : elems) {
            CHECK(G::index(G::multiply(e, g)) == G::index(g));
            CHECK(is_identity<G>(G::multiply(g, G::inverse(g))));
        }
    };
    check_group(Z{});
    check_group(Z2{});
    check_group(Z3{});
    check_group(Heisenberg{});
}

TEST_CASE("indexing is injective on an initial segment") {
    auto check_group = [](auto tag) {
        using G = decltype(tag);
        std::unordered_set<u64> seen;
        for (u64 i = 1; i <= 10'000; ++i) {
            auto g = G::element_at(i);
            CHECK(G::index(g) == i);
            CHECK(seen.insert(G::index(g)).second);
        }
    };
    check_group(Z{});
    check_group(Z3{});
    check_group(Heisenberg{});
}

TEST_CASE("coordinate projections are computable through the indexing") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<i64> coord(-2000, 2000);
    for (int trial = 0; trial < 300; ++trial) {
        Z2::Element v{coord(rng), coord(rng)};
        CHECK(Z2::element_at(Z2::index(v)) == v);
        Z3::Element w{coord(rng) % 100, coord(rng) % 100, coord(rng) % 100};
        CHECK(Z3::element_at(Z3::index(w)) == w);
        H3Element h{coord(rng) % 100, coord(rng) % 100, coord(rng) % 100};
        CHECK(Heisenberg::element_at(Heisenberg::index(h)) == h);
    }
}
