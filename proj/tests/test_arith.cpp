#include <doctest.h>

#include <stdexcept>

#include <limits>
#include <random>

#include "abelkit/arith.hpp"

using namespace abelkit;

TEST_CASE("checked arithmetic refuses to wrap")
{
    int64_t big = std::numeric_limits<int64_t>::max();
    CHECK_THROWS_AS(checked_add(big, 1), std::overflow_error);
    CHECK_THROWS_AS(checked_mul(big / 2, 3), std::overflow_error);
    CHECK(checked_mul(1'000'000'007, 1'000'000'009) == 1'000'000'016'000'000'063LL);
}

TEST_CASE("factorize on small inputs")
{
    CHECK(factorize(1).empty());
    CHECK(factorize(12) == Factorization{{2, 2}, {3, 1}});
    CHECK(factorize(30) == Factorization{{2, 1}, {3, 1}, {5, 1}});
    CHECK(factorize(1024) == Factorization{{2, 10}});
}

TEST_CASE("factorize round-trips up to 1e5")
{
    for (int64_t n = 1; n <= 100000; n++) {
        int64_t prod = 1;
        int64_t prev = 0;
        for (const auto& [p, e] : factorize(n)) {
            CHECK(p > prev);
            prev = p;
            prod *= checked_pow(p, e);
        }
        REQUIRE(prod == n);
    }
}

TEST_CASE("factorize handles large semiprimes")
{
    int64_t p = 1'000'000'007, q = 1'000'000'009;
    CHECK(factorize(p * q) == Factorization{{p, 1}, {q, 1}});
    CHECK(is_prime(2'305'843'009'213'693'951LL)); // 2^61 - 1
}

TEST_CASE("tau and tau_tilde conventions")
{
    CHECK(tau(1) == 1);
    CHECK(tau(12) == 2);
    CHECK(tau(30) == 3);
    CHECK(tau_tilde(1) == 0);
    CHECK(tau_tilde(15) == 2);
    CHECK(tau_tilde(7) == 1);
    for (int64_t n = 2; n <= 10000; n++)
        CHECK(tau_tilde(n) == tau(n));
}

TEST_CASE("chi at odd primes is the Legendre symbol")
{
    CHECK(chi(3, 0) == 0);
    CHECK(chi(5, 2) == -1);
    CHECK(chi(5, 4) == 1);
    CHECK(chi(7, -1) == -1);
    // Multiplicativity for a, b coprime to p.
    std::mt19937_64 rng(7);
    const int64_t primes[] = {3, 5, 7, 11, 13, 101};
    for (int trial = 0; trial < 500; trial++) {
        int64_t p = primes[rng() % 6];
        int64_t a = 1 + rng() % 1000, b = 1 + rng() % 1000;
        if (a % p == 0 || b % p == 0)
            continue;
        CHECK(chi(p, a * b) == chi(p, a) * chi(p, b));
    }
}

TEST_CASE("chi at 2 follows the mod 8 rule")
{
    CHECK(chi(2, 0) == 0);
    CHECK(chi(2, 1) == 1);
    CHECK(chi(2, 5) == -1);
    CHECK(chi(2, 9) == 1);
    CHECK(chi(2, -3) == -1); // -3 = 5 mod 8
    CHECK(chi(2, -7) == 1);
    CHECK_THROWS_AS(chi(2, 3), std::domain_error);
    CHECK_THROWS_AS(chi(2, 2), std::domain_error);
}

TEST_CASE("bezout canonical representative")
{
    CHECK(bezout(1, 1) == std::pair<int64_t, int64_t>{0, 1});
    CHECK(bezout(2, 3) == std::pair<int64_t, int64_t>{2, -1});
    CHECK(bezout(3, 4) == std::pair<int64_t, int64_t>{3, -2});
    CHECK(bezout(5, 1) == std::pair<int64_t, int64_t>{0, 1});
    CHECK_THROWS_AS(bezout(4, 6), std::domain_error);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; trial++) {
        int64_t r = 1 + rng() % 5000, s = 1 + rng() % 5000;
        if (gcd64(r, s) != 1)
            continue;
        auto [a, b] = bezout(r, s);
        CHECK(a * r + b * s == 1);
        CHECK(a >= 0);
        CHECK(a < s);
    }
}

TEST_CASE("snf_2x2 on known matrices")
{
    auto s = snf_2x2({2, 0, 0, 2});
    CHECK(s.d1 == 2);
    CHECK(s.d2 == 2);
    CHECK(s.left == Mat2::identity());
    CHECK(s.right == Mat2::identity());

    s = snf_2x2({4, 2, 2, 4});
    CHECK(s.d1 == 2);
    CHECK(s.d2 == 6);

    s = snf_2x2({2, 1, 1, 8});
    CHECK(s.d1 == 1);
    CHECK(s.d2 == 15);

    CHECK_THROWS_AS(snf_2x2({1, 2, 2, 4}), std::domain_error);
}

TEST_CASE("snf_2x2 invariants on random matrices")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 3000; trial++) {
        Mat2 m{int64_t(rng() % 41) - 20, int64_t(rng() % 41) - 20,
               int64_t(rng() % 41) - 20, int64_t(rng() % 41) - 20};
        if (m.det() == 0)
            continue;
        auto s = snf_2x2(m);
        CHECK(s.left * m * s.right == Mat2{s.d1, 0, 0, s.d2});
        CHECK(s.d2 % s.d1 == 0);
        CHECK(s.d1 * s.d2 == std::abs(m.det()));
        int64_t g = gcd64(gcd64(m.a, m.b), gcd64(m.c, m.d));
        CHECK(s.d1 == g);
    }
}
