#include <doctest.h>

#include <stdexcept>

#include <random>

#include "abelkit/picard3.hpp"

using namespace abelkit;

TEST_CASE("sigma_set on the worked examples")
{
    auto s1 = sigma_set(1);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0] == SigmaEntry{1, 1, 0, 1});

    auto s6 = sigma_set(6);
    REQUIRE(s6.size() == 2);
    CHECK(s6[0].r == 1);
    CHECK(s6[0].s == 6);
    CHECK(s6[1].r == 2);
    CHECK(s6[1].s == 3);

    auto s12 = sigma_set(12);
    REQUIRE(s12.size() == 2); // (2,6) excluded, gcd 2
    CHECK(s12[0].r == 1);
    CHECK(s12[0].s == 12);
    CHECK(s12[1].r == 3);
    CHECK(s12[1].s == 4);
}

TEST_CASE("sigma_set size is 2^(tau - 1)")
{
    for (int64_t n = 1; n <= 2000; n++)
        CHECK(int64_t(sigma_set(n).size()) == checked_pow(2, tau(n) - 1));
}

TEST_CASE("embedding vectors on the worked examples")
{
    auto v = embedding_vectors(6, {2, 3, 2, -1});
    CHECK(v.e == NSVector3{2, 3, 1});
    CHECK(v.f == NSVector3{3, 8, 2});
    CHECK(v.l == NSVector3{-12, -24, -7});

    v = embedding_vectors(6, {1, 6, 1, 0});
    CHECK(v.e == NSVector3{1, 6, 1});
    CHECK(v.f == NSVector3{0, 1, 0});
    CHECK(v.l == NSVector3{0, -12, -1});

    v = embedding_vectors(1, {1, 1, 0, 1});
    CHECK(v.e == NSVector3{1, 1, 1});

    CHECK_THROWS_AS(embedding_vectors(6, {2, 3, 1, 1}), std::domain_error);
}

TEST_CASE("embedding vectors satisfy the Gram relations for N <= 500")
{
    // The relations are asserted inside embedding_vectors; spot-check one
    // pairing per entry here as an external witness.
    for (int64_t n = 1; n <= 500; n++) {
        for (const auto& sigma : sigma_set(n)) {
            auto v = embedding_vectors(n, sigma);
            CHECK(ns_pair(v.e, v.f, n) == 1);
            CHECK(ns_pair(v.l, v.l, n) == -2 * n);
        }
    }
}

TEST_CASE("multiplier invariants of the worked examples")
{
    CHECK(multiplier_invariant(6, {1, 6, 1, 0}) == 11);
    CHECK(multiplier_invariant(6, {2, 3, 2, -1}) == 5);
    CHECK(multiplier_invariant(1, {1, 1, 0, 1}) == 1);
}

TEST_CASE("multiplier does not depend on the Bezout choice")
{
    std::mt19937_64 rng(23);
    for (int64_t n = 1; n <= 500; n++) {
        for (auto sigma : sigma_set(n)) {
            int64_t base = multiplier_invariant(n, sigma);
            int64_t k = int64_t(rng() % 7) - 3;
            SigmaEntry shifted{sigma.r, sigma.s, sigma.a + k * sigma.s,
                               sigma.b - k * sigma.r};
            CHECK(multiplier_invariant(n, shifted) == base);
        }
    }
}

TEST_CASE("multiplier distinctness separates sigma entries")
{
    for (int64_t n = 1; n <= 2000; n++) {
        auto sigmas = sigma_set(n);
        for (size_t i = 0; i < sigmas.size(); i++) {
            int64_t mi = multiplier_invariant(n, sigmas[i]);
            CHECK(mod_floor(mi * mi, 4 * n) == 1);
            for (size_t j = i + 1; j < sigmas.size(); j++) {
                int64_t mj = multiplier_invariant(n, sigmas[j]);
                CHECK(mi != mj);
                CHECK(mod_floor(mi + mj, 2 * n) != 0);
            }
        }
    }
}

TEST_CASE("hall divisors")
{
    CHECK(hall_divisors(1) == std::vector<int64_t>{1});
    CHECK(hall_divisors(6) == std::vector<int64_t>{1, 2, 3, 6});
    CHECK(hall_divisors(12) == std::vector<int64_t>{1, 3, 4, 12});
    CHECK(hall_divisors(30).size() == 8);
}

TEST_CASE("atkin_lehner normal forms")
{
    CHECK(atkin_lehner(6, 6).w == Mat2{0, -1, 6, 0});
    CHECK(atkin_lehner(6, 1).w == Mat2::identity());
    CHECK(atkin_lehner(6, 2).w == Mat2{4, 1, 6, 2});
    CHECK_THROWS_AS(atkin_lehner(12, 2), std::domain_error); // 2 not a Hall divisor
    CHECK_THROWS_AS(atkin_lehner(12, 5), std::domain_error);
}

TEST_CASE("atkin_lehner involution and residues for N <= 100")
{
    for (int64_t n = 1; n <= 100; n++) {
        for (int64_t q : hall_divisors(n)) {
            // Construction re-checks W^2 in Q Gamma_0(N); verify the shape
            // here as well.
            ALMatrix w = atkin_lehner(n, q);
            CHECK(w.w.det() == q);
            CHECK(mod_floor(w.w.a, q) == 0);
            CHECK(mod_floor(w.w.d, q) == 0);
            CHECK(mod_floor(w.w.c, n) == 0);
            Mat2 sq = w.w * w.w;
            Mat2 gamma{sq.a / q, sq.b / q, sq.c / q, sq.d / q};
            CHECK((in_gamma0(gamma, n) || in_gamma0(-gamma, n)));
        }
    }
}

TEST_CASE("atkin_lehner composition law for N <= 100")
{
    // W_Q W_Q' = gcd(Q,Q') * gamma * W_Q'' with gamma in Gamma_0(N) and
    // Q'' = Q Q' / gcd(Q,Q')^2.
    for (int64_t n = 1; n <= 100; n++) {
        auto hall = hall_divisors(n);
        for (int64_t q1 : hall)
            for (int64_t q2 : hall) {
                int64_t g = std::gcd(q1, q2);
                int64_t q3 = q1 * q2 / (g * g);
                Mat2 prod = atkin_lehner(n, q1).w * atkin_lehner(n, q2).w;
                REQUIRE(prod.a % g == 0);
                REQUIRE(prod.b % g == 0);
                REQUIRE(prod.c % g == 0);
                REQUIRE(prod.d % g == 0);
                Mat2 m{prod.a / g, prod.b / g, prod.c / g, prod.d / g};
                // gamma = m * W_Q''^-1 must be integral and in Gamma_0(N).
                Mat2 adj = atkin_lehner(n, q3).w.adjugate();
                Mat2 num = m * adj;
                REQUIRE(num.a % q3 == 0);
                REQUIRE(num.b % q3 == 0);
                REQUIRE(num.c % q3 == 0);
                REQUIRE(num.d % q3 == 0);
                Mat2 gamma{num.a / q3, num.b / q3, num.c / q3, num.d / q3};
                CHECK((in_gamma0(gamma, n) || in_gamma0(-gamma, n)));
            }
    }
}

TEST_CASE("period points")
{
    std::complex<double> tau{0.3, 1.7};
    // sigma = (1, N) reproduces tau on the modular curve.
    for (int64_t n : {2, 6, 15}) {
        CHECK(gamma0_equiv(period_point(n, 1, n, tau), tau, n));
        CHECK(period_point(n, 1, n, tau).imag() > 0);
    }
    // N=6, sigma=(2,3): explicit value from the Bezout pair (2,-1).
    std::complex<double> rt = 2.0 * tau;
    std::complex<double> expect = (2.0 * rt + 1.0) / (3.0 * rt + 2.0);
    CHECK(std::abs(period_point(6, 2, 3, tau) - expect) < 1e-12);

    // tau = i is elliptic, so compare by a direct matrix check instead of
    // gamma0_equiv: (1 0; 2 1) maps i to the sigma = (1,2) period point.
    std::complex<double> ii{0, 1};
    CHECK(std::abs(period_point(2, 1, 2, ii) - moebius({1, 0, 2, 1}, ii)) < 1e-12);
    // SigmaEntry overload and its swap flag.
    SigmaEntry s23{2, 3, 2, -1};
    CHECK(period_point(6, s23, tau) == period_point(6, 2, 3, tau));
    CHECK(period_point(6, s23, tau, true) == period_point(6, 3, 2, tau));
    CHECK_THROWS_AS(period_point(6, 2, 3, {0.3, -1.0}), std::domain_error);
    CHECK_THROWS_AS(period_point(6, 4, 3, {0.3, 1.0}), std::domain_error);
}

TEST_CASE("gamma0_equiv on translations, parabolics and the Fricke map")
{
    std::complex<double> tau{0.3, 1.7};
    CHECK(gamma0_equiv(tau, tau + 1.0, 6));
    CHECK(gamma0_equiv(tau, tau / (6.0 * tau + 1.0), 6));
    CHECK_FALSE(gamma0_equiv(tau, -1.0 / tau, 6));
    CHECK(gamma0_equiv(tau, -1.0 / tau, 1));
    CHECK_THROWS_AS(gamma0_equiv({0.0, 1.0}, tau, 6), std::domain_error); // elliptic i
    CHECK_THROWS_AS(gamma0_equiv(tau, {0.3, -0.5}, 6), std::domain_error);
}

TEST_CASE("Atkin-Lehner orbit equals the period points of the sigma set")
{
    CHECK(al_orbit_check(2, {0.37, 1.41}));
    CHECK(al_orbit_check(6, {0.3, 1.7}));
    CHECK(al_orbit_check(15, {0.21, 1.33}));
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> re(-0.45, 0.45), im(1.0, 2.0);
    for (int64_t n = 2; n <= 30; n++)
        for (int trial = 0; trial < 2; trial++)
            CHECK(al_orbit_check(n, {re(rng), im(rng)}));
}
