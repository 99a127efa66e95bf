#include "abelkit/arith.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace abelkit {

int64_t checked_add(int64_t x, int64_t y)
{
    int64_t r;
    if (__builtin_add_overflow(x, y, &r))
        throw std::overflow_error("integer overflow in add");
    return r;
}

int64_t checked_sub(int64_t x, int64_t y)
{
    int64_t r;
    if (__builtin_sub_overflow(x, y, &r))
        throw std::overflow_error("integer overflow in sub");
    return r;
}

int64_t checked_mul(int64_t x, int64_t y)
{
    int64_t r;
    if (__builtin_mul_overflow(x, y, &r))
        throw std::overflow_error("integer overflow in mul");
    return r;
}

int64_t gcd64(int64_t x, int64_t y)
{
    return std::gcd(x, y);
}

int64_t checked_pow(int64_t p, int e)
{
    int64_t r = 1;
    for (int i = 0; i < e; i++)
        r = checked_mul(r, p);
    return r;
}

int64_t mod_floor(int64_t x, int64_t m)
{
    int64_t r = x % m;
    return r < 0 ? r + m : r;
}

int64_t floor_div(int64_t x, int64_t y)
{
    int64_t q = x / y;
    if (x % y != 0 && x < 0)
        q--;
    return q;
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m)
{
    return static_cast<uint64_t>((__uint128_t)a * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m)
{
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime(int64_t n)
{
    if (n < 2)
        return false;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    // Deterministic Miller-Rabin for 64-bit with the standard witness set.
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        s++;
    }
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == (uint64_t)n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; i++) {
            x = mulmod_u64(x, x, n);
            if (x == (uint64_t)n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

namespace {

int64_t pollard_rho(int64_t n)
{
    if (n % 2 == 0)
        return 2;
    for (uint64_t c = 1;; c++) {
        uint64_t x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod_u64(x, x, n) + c) % n;
            y = (mulmod_u64(y, y, n) + c) % n;
            y = (mulmod_u64(y, y, n) + c) % n;
            d = std::gcd(x > y ? x - y : y - x, (uint64_t)n);
        }
        if (d != (uint64_t)n)
            return static_cast<int64_t>(d);
    }
}

void factor_into(int64_t n, std::vector<int64_t>& primes)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    int64_t d = pollard_rho(n);
    factor_into(d, primes);
    factor_into(n / d, primes);
}

} // namespace

Factorization factorize(int64_t n)
{
    if (n < 1)
        throw std::domain_error("factorize: n must be positive");
    std::vector<int64_t> primes;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    Factorization out;
    for (size_t i = 0; i < primes.size();) {
        size_t j = i;
        while (j < primes.size() && primes[j] == primes[i])
            j++;
        out.push_back({primes[i], static_cast<int>(j - i)});
        i = j;
    }
    return out;
}

int tau(int64_t n)
{
    if (n == 1)
        return 1;
    return static_cast<int>(factorize(n).size());
}

int tau_tilde(int64_t n)
{
    if (n == 1)
        return 0;
    return tau(n);
}

int chi(int64_t p, int64_t a)
{
    if (p == 2) {
        if (a == 0)
            return 0;
        if (mod_floor(a, 4) != 1)
            throw std::domain_error("chi: p = 2 requires a = 0 or a = 1 mod 4");
        return mod_floor(a, 8) == 1 ? 1 : -1;
    }
    int64_t r = mod_floor(a, p);
    if (r == 0)
        return 0;
    uint64_t s = powmod_u64(r, (p - 1) / 2, p);
    return s == 1 ? 1 : -1;
}

std::pair<int64_t, int64_t> bezout(int64_t r, int64_t s)
{
    if (r < 1 || s < 1 || std::gcd(r, s) != 1)
        throw std::domain_error("bezout: arguments must be positive and coprime");
    if (s == 1)
        return {0, 1};
    // Extended Euclid for x*r = 1 mod s, then normalize 0 <= x < s.
    int64_t x0 = 1, x1 = 0, a = r, b = s;
    while (b != 0) {
        int64_t q = a / b;
        a -= q * b;
        std::swap(a, b);
        x0 -= q * x1;
        std::swap(x0, x1);
    }
    int64_t x = mod_floor(x0, s);
    int64_t y = (1 - checked_mul(x, r)) / s;
    return {x, y};
}

int64_t Mat2::det() const
{
    return checked_sub(checked_mul(a, d), checked_mul(b, c));
}

Mat2 Mat2::operator*(const Mat2& o) const
{
    return {checked_add(checked_mul(a, o.a), checked_mul(b, o.c)),
            checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
            checked_add(checked_mul(c, o.a), checked_mul(d, o.c)),
            checked_add(checked_mul(c, o.b), checked_mul(d, o.d))};
}

Mat2 Mat2::unimodular_inverse() const
{
    int64_t dt = det();
    if (dt == 1)
        return adjugate();
    if (dt == -1)
        return -adjugate();
    throw std::domain_error("unimodular_inverse: det must be +-1");
}

std::ostream& operator<<(std::ostream& os, const Mat2& m)
{
    return os << "(" << m.a << " " << m.b << "; " << m.c << " " << m.d << ")";
}

namespace {

struct SnfWork {
    int64_t m[2][2];
    int64_t l[2][2] = {{1, 0}, {0, 1}};
    int64_t r[2][2] = {{1, 0}, {0, 1}};

    void row_sub(int i, int j, int64_t k) // row i -= k * row j
    {
        for (int t = 0; t < 2; t++) {
            m[i][t] = checked_sub(m[i][t], checked_mul(k, m[j][t]));
            l[i][t] = checked_sub(l[i][t], checked_mul(k, l[j][t]));
        }
    }
    void col_sub(int i, int j, int64_t k) // col i -= k * col j
    {
        for (int t = 0; t < 2; t++) {
            m[t][i] = checked_sub(m[t][i], checked_mul(k, m[t][j]));
            r[t][i] = checked_sub(r[t][i], checked_mul(k, r[t][j]));
        }
    }
    void swap_rows()
    {
        std::swap(m[0], m[1]);
        std::swap(l[0], l[1]);
    }
    void swap_cols()
    {
        std::swap(m[0][0], m[0][1]);
        std::swap(m[1][0], m[1][1]);
        std::swap(r[0][0], r[0][1]);
        std::swap(r[1][0], r[1][1]);
    }
    void negate_row(int i)
    {
        for (int t = 0; t < 2; t++) {
            m[i][t] = -m[i][t];
            l[i][t] = -l[i][t];
        }
    }
};

} // namespace

Snf2 snf_2x2(const Mat2& mat)
{
    if (mat.det() == 0)
        throw std::domain_error("snf_2x2: singular matrix");
    SnfWork w{{{mat.a, mat.b}, {mat.c, mat.d}}};

    for (;;) {
        if (w.m[0][0] == 0) {
            if (w.m[1][0] != 0)
                w.swap_rows();
            else
                w.swap_cols();
            continue;
        }
        // Clear below and to the right of the pivot.
        if (w.m[1][0] != 0) {
            int64_t q = w.m[1][0] / w.m[0][0];
            w.row_sub(1, 0, q);
            if (w.m[1][0] != 0) {
                w.swap_rows();
                continue;
            }
        }
        if (w.m[0][1] != 0) {
            int64_t q = w.m[0][1] / w.m[0][0];
            w.col_sub(1, 0, q);
            if (w.m[0][1] != 0) {
                w.swap_cols();
                continue;
            }
        }
        if (w.m[1][0] != 0 || w.m[0][1] != 0)
            continue;
        // Diagonal; enforce the divisibility d1 | d2.
        if (w.m[1][1] % w.m[0][0] != 0) {
            w.col_sub(0, 1, -1); // col0 += col1, reintroduces an off-diagonal
            continue;
        }
        break;
    }
    if (w.m[0][0] < 0)
        w.negate_row(0);
    if (w.m[1][1] < 0)
        w.negate_row(1);

    Snf2 out;
    out.d1 = w.m[0][0];
    out.d2 = w.m[1][1];
    out.left = {w.l[0][0], w.l[0][1], w.l[1][0], w.l[1][1]};
    out.right = {w.r[0][0], w.r[0][1], w.r[1][0], w.r[1][1]};
    // Postconditions are cheap to verify exactly.
    Mat2 check = out.left * mat * out.right;
    if (check.a != out.d1 || check.d != out.d2 || check.b != 0 || check.c != 0
        || out.d2 % out.d1 != 0 || std::abs(out.left.det()) != 1
        || std::abs(out.right.det()) != 1)
        throw std::logic_error("snf_2x2: postcondition failed");
    return out;
}

} // namespace abelkit
