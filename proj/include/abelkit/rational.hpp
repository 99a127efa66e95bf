#ifndef ABELKIT_RATIONAL_HPP
#define ABELKIT_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "abelkit/arith.hpp"

namespace abelkit {

// Exact rational with checked 64-bit arithmetic.  Always normalized:
// den > 0 and gcd(|num|, den) = 1.
struct Rat {
    int64_t num = 0;
    int64_t den = 1;

    Rat() = default;
    Rat(int64_t n) : num(n) {}
    Rat(int64_t n, int64_t d) : num(n), den(d)
    {
        if (den == 0)
            throw std::domain_error("Rat: zero denominator");
        normalize();
    }

    void normalize()
    {
        if (den < 0) {
            num = checked_sub(0, num);
            den = checked_sub(0, den);
        }
        int64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool is_integer() const { return den == 1; }

    friend Rat operator+(const Rat& x, const Rat& y)
    {
        return {checked_add(checked_mul(x.num, y.den), checked_mul(y.num, x.den)),
                checked_mul(x.den, y.den)};
    }
    friend Rat operator-(const Rat& x, const Rat& y)
    {
        return {checked_sub(checked_mul(x.num, y.den), checked_mul(y.num, x.den)),
                checked_mul(x.den, y.den)};
    }
    friend Rat operator*(const Rat& x, const Rat& y)
    {
        return {checked_mul(x.num, y.num), checked_mul(x.den, y.den)};
    }
    friend Rat operator/(const Rat& x, const Rat& y)
    {
        if (y.num == 0)
            throw std::domain_error("Rat: division by zero");
        return {checked_mul(x.num, y.den), checked_mul(x.den, y.num)};
    }
    Rat operator-() const
    {
        Rat r;
        r.num = -num;
        r.den = den;
        return r;
    }
    bool operator==(const Rat&) const = default;
    bool operator<(const Rat& o) const
    {
        return checked_mul(num, o.den) < checked_mul(o.num, den);
    }

    // Representative in [0, m) of this value modulo the integer m.
    Rat mod(int64_t m) const
    {
        return {mod_floor(num, checked_mul(m, den)), den};
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r)
    {
        os << r.num;
        if (r.den != 1)
            os << "/" << r.den;
        return os;
    }
};

} // namespace abelkit

#endif
