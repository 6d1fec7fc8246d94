#include <catch2/catch_amalgamated.hpp>

#include "qpwt/padic.hpp"
#include "qpwt/rng.hpp"

using namespace qpwt;

namespace {

// Brute-force modular inverse over the residues mod p^L (oracle for invert_mod).
std::int64_t brute_inverse(std::int64_t x, std::int64_t modulus) {
    std::int64_t r = ((x % modulus) + modulus) % modulus;
    for (std::int64_t y = 1; y < modulus; ++y)
        if (r * y % modulus == 1) return y;
    FAIL("no inverse found");
    return -1;
}

} // namespace

TEST_CASE("absolute value") {
    CHECK(PAdic::zero(5).abs() == 0.0);
    CHECK(PAdic::integer(5, 1).abs() == 1.0);
    CHECK(PAdic::scaled(2, 1, -1).abs() == 2.0);  // |1/2|_2 = 2
    CHECK(PAdic::integer(3, 18).abs() == Catch::Approx(1.0 / 9.0));
}

TEST_CASE("addition and multiplication stay normalized") {
    // 1 + 2 = 3 in Q_3: valuation 1, unit 1 (strict ultrametric drop)
    PAdic s = PAdic::integer(3, 1) + PAdic::integer(3, 2);
    CHECK(s.valuation() == 1);
    CHECK(s.unit() == 1);

    // 1/2 + 1/2 = 1 in Q_2
    PAdic h = PAdic::scaled(2, 1, -1);
    PAdic one = h + h;
    CHECK(one == PAdic::integer(2, 1));

    // 5 * (1/5) = 1 in Q_5, |xy| = |x||y|
    PAdic prod = PAdic::integer(5, 5) * PAdic::scaled(5, 1, -1);
    CHECK(prod == PAdic::integer(5, 1));
    CHECK(prod.abs() == PAdic::integer(5, 5).abs() * PAdic::scaled(5, 1, -1).abs());

    CHECK_THROWS_AS(PAdic::integer(2, 1) + PAdic::integer(3, 1), std::invalid_argument);
}

TEST_CASE("ultrametric inequality on random exact pairs") {
    for (long p : {2L, 3L, 5L}) {
        DeterministicRng rng(1000 + p);
        for (int t = 0; t < 10000; ++t) {
            PAdic x = random_padic(rng, p, -4, 4);
            PAdic y = random_padic(rng, p, -4, 4);
            PAdic s = x + y;
            if (s.is_zero()) continue;  // |0| = 0 <= max trivially
            REQUIRE(s.valuation() >= std::min(x.valuation(), y.valuation()));
            if (x.valuation() != y.valuation())
                REQUIRE(s.valuation() == std::min(x.valuation(), y.valuation()));
            // multiplicativity in exact exponents
            REQUIRE((x * y).valuation() == x.valuation() + y.valuation());
        }
    }
}

TEST_CASE("invert_mod") {
    CHECK(invert_mod(PAdic::integer(2, 1), 5) == PAdic::integer(2, 1));

    // 3 * 3 = 9 = 1 mod 8
    PAdic y = invert_mod(PAdic::integer(2, 3), 3);
    CHECK(y.unit() == brute_inverse(3, 8));
    CHECK(y.unit() == 3);

    // 2 * 13 = 26 = 1 mod 25
    PAdic z = invert_mod(PAdic::integer(5, 2), 2);
    CHECK(z.unit() == brute_inverse(2, 25));
    CHECK(z.unit() == 13);

    CHECK_THROWS_AS(invert_mod(PAdic::zero(3), 2), DegenerateInputError);

    for (long p : {2L, 3L, 5L}) {
        DeterministicRng rng(77 + p);
        for (int t = 0; t < 200; ++t) {
            PAdic x = random_padic(rng, p, -3, 3);
            long L = 1 + static_cast<long>(rng.uniform_int(5));
            PAdic inv = invert_mod(x, L);
            CHECK(inv.valuation() == -x.valuation());
            PAdic residual = x * inv - PAdic::integer(p, 1);
            // |x y - 1| <= p^-L as an exact p-adic statement
            CHECK((residual.is_zero() || residual.valuation() >= L));
        }
    }
}

TEST_CASE("fractional part") {
    CHECK(fractional_part(PAdic::integer(2, 6)).num == 0);  // val >= 0
    Rational f = fractional_part(PAdic::scaled(2, 3, -1));  // 3/2 -> 1/2
    CHECK(f.num == 1);
    CHECK(f.den == 2);
    Rational g = fractional_part(PAdic::scaled(3, 1, -2));  // 1/9 -> 1/9
    CHECK(g.num == 1);
    CHECK(g.den == 9);
    Rational h = fractional_part(PAdic::integer(3, -1) * PAdic::scaled(3, 1, -1));  // -1/3 -> 2/3
    CHECK(h.num == 2);
    CHECK(h.den == 3);
}

TEST_CASE("character") {
    CHECK(character(PAdic::integer(7, 7)) == Complex{1.0, 0.0});  // trivial on the integers
    CHECK(std::abs(character(PAdic::scaled(2, 1, -1)) - Complex{-1.0, 0.0}) < 1e-15);
    Complex third = character(PAdic::scaled(3, 1, -1));
    CHECK(std::abs(third - std::polar(1.0, 2.0 * std::numbers::pi / 3.0)) < 1e-15);

    for (long p : {2L, 3L, 5L}) {
        DeterministicRng rng(9 + p);
        for (int t = 0; t < 2000; ++t) {
            PAdic x = random_padic(rng, p, -4, 4);
            PAdic y = random_padic(rng, p, -4, 4);
            REQUIRE(std::abs(character(x + y) - character(x) * character(y)) < 1e-12);
        }
    }
}

TEST_CASE("coset enumeration") {
    auto z2 = enumerate_cosets(2, 0, 1);
    REQUIRE(z2.size() == 2);
    CHECK(representative(z2[0]) == PAdic::zero(2));
    CHECK(representative(z2[1]) == PAdic::integer(2, 1));

    // p=3, m=1, n=0 -> {0, 1/3, 2/3}
    auto thirds = enumerate_cosets(3, 1, 0);
    REQUIRE(thirds.size() == 3);
    CHECK(representative(thirds[1]) == PAdic::scaled(3, 1, -1));
    CHECK(representative(thirds[2]) == PAdic::scaled(3, 2, -1));

    // p=2, m=1, n=1 -> {0, 1/2, 1, 3/2}
    auto four = enumerate_cosets(2, 1, 1);
    REQUIRE(four.size() == 4);
    CHECK(representative(four[1]) == PAdic::scaled(2, 1, -1));
    CHECK(representative(four[2]) == PAdic::integer(2, 1));
    CHECK(representative(four[3]) == PAdic::scaled(2, 3, -1));

    CHECK_THROWS_AS(enumerate_cosets(2, -1, 0), std::invalid_argument);
}

TEST_CASE("coset indexing is a bijection at several grid shapes") {
    for (long p : {2L, 3L, 5L}) {
        for (auto [m, n] : std::vector<std::pair<long, long>>{{0, 2}, {2, 0}, {1, 1}, {-1, 2}, {2, -1}}) {
            std::int64_t total = checked_pow(p, m + n);
            for (std::int64_t k = 0; k < total; ++k) {
                PAdic x = representative(CosetIndex{p, m, n, k});
                auto back = coset_index_of(x, m, n);
                REQUIRE(back.has_value());
                REQUIRE(*back == k);
            }
            // measure: p^(m+n) cosets of measure p^-n cover a ball of measure p^m
            CHECK(total == checked_pow(p, m) * checked_pow(p, n));
        }
    }
}

TEST_CASE("points land in the right coset") {
    // 5 = 1 + 4 lies in the coset of 1 mod 4 Z_2
    auto idx = coset_index_of(PAdic::integer(2, 5), 0, 2);
    REQUIRE(idx.has_value());
    CHECK(*idx == 1);
    // |1/2| = 2 > 1: outside Z_2
    CHECK_FALSE(coset_index_of(PAdic::scaled(2, 1, -1), 0, 2).has_value());
    // negative representatives: -1 = 3 mod 4
    CHECK(*coset_index_of(PAdic::integer(2, -1), 0, 2) == 3);
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(PAdic::integer(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(PAdic::integer(1, 1), std::invalid_argument);
    CHECK(PAdic::scaled(3, 9, 0) == PAdic::scaled(3, 1, 2));  // normalization is unique
    CHECK(PAdic::scaled(3, -9, 0) == PAdic::scaled(3, -1, 2));
}
