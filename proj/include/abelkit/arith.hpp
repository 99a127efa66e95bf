#ifndef ABELKIT_ARITH_HPP
#define ABELKIT_ARITH_HPP

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace abelkit {

// All integer arithmetic in this library is checked: overflow past int64
// throws std::overflow_error instead of wrapping.
int64_t checked_add(int64_t x, int64_t y);
int64_t checked_sub(int64_t x, int64_t y);
int64_t checked_mul(int64_t x, int64_t y);

// Nonnegative gcd.
int64_t gcd64(int64_t x, int64_t y);

// p^e with overflow checking.
int64_t checked_pow(int64_t p, int e);

// x mod m normalized into [0, m), m > 0.
int64_t mod_floor(int64_t x, int64_t m);

// floor(x / y) for y > 0.
int64_t floor_div(int64_t x, int64_t y);

struct PrimePower {
    int64_t p;
    int e;
    bool operator==(const PrimePower&) const = default;
};

// Factors sorted ascending by p; factorize(1) is empty.
using Factorization = std::vector<PrimePower>;

bool is_prime(int64_t n);
Factorization factorize(int64_t n);

// Number of distinct prime divisors, with the convention tau(1) = 1.
int tau(int64_t n);

// tau_tilde(1) = 0, otherwise tau(n).
int tau_tilde(int64_t n);

// Legendre symbol for odd p, chi(p, 0) = 0.  For p = 2 defined on a = 0 or
// a = 1 mod 4: +1 when a = 1 mod 8, -1 when a = 5 mod 8.  Anything else at
// p = 2 is a domain error.
int chi(int64_t p, int64_t a);

// The unique (x, y) with x*r + y*s = 1 and 0 <= x < s; (0, 1) when s = 1.
// Requires r, s >= 1 coprime.
std::pair<int64_t, int64_t> bezout(int64_t r, int64_t s);

// 2x2 integer matrix (a b; c d).
struct Mat2 {
    int64_t a = 1, b = 0, c = 0, d = 1;

    static Mat2 identity() { return {}; }
    int64_t det() const;
    Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    // Adjugate: M * adj(M) = det(M) * I.
    Mat2 adjugate() const { return {d, -b, -c, a}; }
    // Inverse of a matrix with det = +-1.
    Mat2 unimodular_inverse() const;
    bool operator==(const Mat2&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Mat2& m);

struct Snf2 {
    int64_t d1 = 1, d2 = 1; // d1 | d2, both positive
    Mat2 left, right;       // left * M * right = diag(d1, d2), det = +-1 each
};

// Smith normal form of a nonsingular 2x2 integer matrix.
Snf2 snf_2x2(const Mat2& m);

} // namespace abelkit

#endif
