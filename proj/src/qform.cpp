#include "abelkit/qform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace abelkit {

int64_t BinaryLattice::det() const
{
    return checked_sub(checked_mul(4, checked_mul(a, c)), checked_mul(b, b));
}

int64_t BinaryLattice::content() const
{
    return std::gcd(std::gcd(a, b), c);
}

BinaryLattice BinaryLattice::scaled(int64_t n) const
{
    if (n < 1)
        throw std::domain_error("scaled: n must be positive");
    return {checked_mul(n, a), checked_mul(n, b), checked_mul(n, c)};
}

bool BinaryLattice::is_reduced() const
{
    if (!(std::abs(b) <= a && a <= c))
        return false;
    if (b < 0 && (-b == a || a == c))
        return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const BinaryLattice& f)
{
    return os << "(" << f.a << "," << f.b << "," << f.c << ")";
}

namespace {

void require_positive_definite(const BinaryLattice& L, const char* who)
{
    if (!L.is_positive_definite())
        throw std::domain_error(std::string(who) + ": lattice must be positive definite");
}

} // namespace

Reduction reduce(const BinaryLattice& L)
{
    require_positive_definite(L, "reduce");
    int64_t a = L.a, b = L.b, c = L.c;
    Mat2 u = Mat2::identity();

    auto translate = [&](int64_t k) {
        // (a, b, c) -> (a, b + 2ak, c + bk + ak^2), via column op (1 k; 0 1).
        c = checked_add(c, checked_add(checked_mul(b, k), checked_mul(a, checked_mul(k, k))));
        b = checked_add(b, checked_mul(2, checked_mul(a, k)));
        u = u * Mat2{1, k, 0, 1};
    };
    auto flip = [&] {
        // (a, b, c) -> (c, -b, a), via (0 -1; 1 0).
        std::swap(a, c);
        b = -b;
        u = u * Mat2{0, -1, 1, 0};
    };

    for (int iter = 0; iter < 10000; iter++) {
        if (b > a || b <= -a) {
            // Bring b into (-a, a]: k = floor((a - b) / 2a).
            int64_t k = floor_div(checked_sub(a, b), checked_mul(2, a));
            translate(k);
            continue;
        }
        if (a > c) {
            flip();
            continue;
        }
        if (b < 0 && (-b == a || a == c)) {
            if (-b == a)
                translate(1);
            else
                flip();
            continue;
        }
        BinaryLattice r{a, b, c};
        if (!r.is_reduced() || u.det() != 1)
            throw std::logic_error("reduce: postcondition failed");
        return {r, u};
    }
    throw std::logic_error("reduce: did not terminate");
}

bool properly_equivalent(const BinaryLattice& L, const BinaryLattice& M)
{
    return reduce(L).form == reduce(M).form;
}

namespace {

// All (x, y) with 2a x^2 + 2b xy + 2c y^2 = t, t > 0.
std::vector<std::pair<int64_t, int64_t>> vectors_of_norm(const BinaryLattice& L, int64_t t)
{
    std::vector<std::pair<int64_t, int64_t>> out;
    int64_t det = L.det();
    // 2a * Q(x,y) = (2a x + b y)^2 + det y^2, so y^2 <= 2a t / det
    // and symmetrically x^2 <= 2c t / det.
    auto isqrt = [](int64_t v) {
        int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(v)));
        while (r * r > v)
            r--;
        while ((r + 1) * (r + 1) <= v)
            r++;
        return r;
    };
    int64_t ymax = isqrt(checked_mul(2 * L.a, t) / det);
    int64_t xmax = isqrt(checked_mul(2 * L.c, t) / det);
    for (int64_t x = -xmax; x <= xmax; x++) {
        for (int64_t y = -ymax; y <= ymax; y++) {
            int64_t q = 2 * L.a * x * x + 2 * L.b * x * y + 2 * L.c * y * y;
            if (q == t)
                out.push_back({x, y});
        }
    }
    return out;
}

std::vector<Mat2> isometry_group_reduced(const BinaryLattice& L)
{
    auto vs = vectors_of_norm(L, 2 * L.a);
    auto ws = vectors_of_norm(L, 2 * L.c);
    std::vector<Mat2> out;
    for (auto [vx, vy] : vs) {
        for (auto [wx, wy] : ws) {
            // Pairing of the image basis must reproduce the Gram off-diagonal.
            int64_t pr = 2 * L.a * vx * wx + L.b * (vx * wy + vy * wx) + 2 * L.c * vy * wy;
            if (pr != L.b)
                continue;
            Mat2 g{vx, wx, vy, wy};
            Mat2 gr = L.gram();
            if (!(g.transpose() * gr * g == gr) || std::abs(g.det()) != 1)
                throw std::logic_error("isometry_group: Gram identity failed");
            out.push_back(g);
        }
    }
    return out;
}

} // namespace

std::vector<Mat2> isometry_group(const BinaryLattice& L)
{
    require_positive_definite(L, "isometry_group");
    auto [r, u] = reduce(L);
    auto base = isometry_group_reduced(r);
    std::vector<Mat2> out;
    Mat2 uinv = u.unimodular_inverse();
    out.reserve(base.size());
    for (const auto& g : base)
        out.push_back(u * g * uinv);
    size_t n = out.size();
    if (n != 2 && n != 4 && n != 8 && n != 12)
        throw std::logic_error("isometry_group: unexpected order");
    return out;
}

bool is_ambiguous(const BinaryLattice& L)
{
    for (const auto& g : isometry_group(L))
        if (g.det() == -1)
            return true;
    return false;
}

std::vector<BinaryLattice> enumerate_reduced(int64_t det, bool primitive_only)
{
    if (det < 1)
        throw std::domain_error("enumerate_reduced: det must be positive");
    std::vector<BinaryLattice> out;
    if (det % 4 == 1 || det % 4 == 2)
        return out; // no even forms: b^2 = -det mod 4 has no solution
    for (int64_t a = 1; 3 * a * a <= det; a++) {
        for (int64_t b = -a; b <= a; b++) {
            int64_t num = det + b * b;
            if (num % (4 * a) != 0)
                continue;
            int64_t c = num / (4 * a);
            if (c < a)
                continue;
            if (b < 0 && (-b == a || a == c))
                continue;
            BinaryLattice f{a, b, c};
            if (primitive_only && !f.is_primitive())
                continue;
            out.push_back(f);
        }
    }
    return out; // loop order is already lexicographic in (a, b, c)
}

int64_t class_number(int64_t disc)
{
    if (disc >= 0)
        throw std::domain_error("class_number: discriminant must be negative");
    int64_t m = mod_floor(disc, 4);
    if (m != 0 && m != 1)
        throw std::domain_error("class_number: discriminant must be 0 or 1 mod 4");
    return static_cast<int64_t>(enumerate_reduced(-disc, true).size());
}

} // namespace abelkit
