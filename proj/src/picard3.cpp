#include "abelkit/picard3.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace abelkit {

std::vector<SigmaEntry> sigma_set(int64_t n)
{
    if (n < 1)
        throw std::domain_error("sigma_set: N must be positive");
    std::vector<SigmaEntry> out;
    for (int64_t r = 1; r * r <= n; r++) {
        if (n % r != 0)
            continue;
        int64_t s = n / r;
        if (std::gcd(r, s) != 1)
            continue;
        auto [a, b] = bezout(r, s);
        out.push_back({r, s, a, b});
    }
    std::sort(out.begin(), out.end(),
              [](const SigmaEntry& x, const SigmaEntry& y) { return x.r < y.r; });
    return out;
}

int64_t ns_pair(const NSVector3& v, const NSVector3& w, int64_t n)
{
    int64_t hyper = checked_add(checked_mul(v.x, w.y), checked_mul(v.y, w.x));
    return checked_sub(hyper, checked_mul(2 * n, checked_mul(v.z, w.z)));
}

EmbeddingVectors embedding_vectors(int64_t n, const SigmaEntry& sigma)
{
    if (sigma.r < 1 || sigma.s < 1 || checked_mul(sigma.r, sigma.s) != n
        || std::gcd(sigma.r, sigma.s) != 1
        || checked_add(checked_mul(sigma.a, sigma.r), checked_mul(sigma.b, sigma.s)) != 1)
        throw std::domain_error("embedding_vectors: invalid sigma entry");
    const int64_t r = sigma.r, s = sigma.s, a = sigma.a, b = sigma.b;
    EmbeddingVectors v;
    v.e = {r, s, 1};
    v.f = {checked_mul(checked_mul(b, b), s), checked_mul(checked_mul(a, a), r),
           -checked_mul(a, b)};
    v.l = {checked_mul(2 * n, b), -checked_mul(2 * n, a),
           checked_sub(checked_mul(b, s), checked_mul(a, r))};
    if (ns_pair(v.e, v.e, n) != 0 || ns_pair(v.f, v.f, n) != 0
        || ns_pair(v.e, v.f, n) != 1 || ns_pair(v.l, v.l, n) != -2 * n
        || ns_pair(v.e, v.l, n) != 0 || ns_pair(v.f, v.l, n) != 0)
        throw std::logic_error("embedding_vectors: Gram relations failed");
    return v;
}

int64_t multiplier_invariant(int64_t n, const SigmaEntry& sigma)
{
    int64_t m = checked_sub(checked_mul(sigma.b, sigma.s), checked_mul(sigma.a, sigma.r));
    m = mod_floor(m, 2 * n);
    if (mod_floor(checked_mul(m, m), 4 * n) != 1)
        throw std::logic_error("multiplier_invariant: square not 1 mod 4N");
    return m;
}

std::vector<int64_t> hall_divisors(int64_t n)
{
    std::vector<int64_t> out{1};
    for (const auto& [p, e] : factorize(n)) {
        int64_t pe = checked_pow(p, e);
        size_t sz = out.size();
        for (size_t i = 0; i < sz; i++)
            out.push_back(checked_mul(out[i], pe));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool in_gamma0(const Mat2& g, int64_t n)
{
    return g.det() == 1 && mod_floor(g.c, n) == 0;
}

ALMatrix atkin_lehner(int64_t n, int64_t q)
{
    if (n < 1 || q < 1 || n % q != 0 || std::gcd(q, n / q) != 1)
        throw std::domain_error("atkin_lehner: Q must be a Hall divisor of N");
    ALMatrix out;
    out.level = n;
    out.q = q;
    if (q == 1) {
        out.w = Mat2::identity();
        return out;
    }
    if (q == n)
        out.w = {0, -1, n, 0};
    else {
        auto [a, e] = bezout(q, n / q);
        out.w = {checked_mul(q, a), -e, n, q};
    }
    if (out.w.det() != q)
        throw std::logic_error("atkin_lehner: determinant is not Q");
    if (mod_floor(out.w.a, q) != 0 || mod_floor(out.w.d, q) != 0
        || mod_floor(out.w.c, n) != 0)
        throw std::logic_error("atkin_lehner: residue conditions failed");
    // Involution up to level: W^2 = Q * gamma for some gamma in Gamma_0(N).
    Mat2 sq = out.w * out.w;
    if (sq.a % q || sq.b % q || sq.c % q || sq.d % q)
        throw std::logic_error("atkin_lehner: W^2 not divisible by Q");
    Mat2 gamma{sq.a / q, sq.b / q, sq.c / q, sq.d / q};
    if (!in_gamma0(gamma, n) && !in_gamma0(-gamma, n))
        throw std::logic_error("atkin_lehner: W^2 not in Q * Gamma_0(N)");
    return out;
}

std::complex<double> moebius(const Mat2& g, std::complex<double> tau)
{
    return (double(g.a) * tau + double(g.b)) / (double(g.c) * tau + double(g.d));
}

std::complex<double> period_point(int64_t n, int64_t r, int64_t s,
                                  std::complex<double> tau)
{
    if (tau.imag() <= 0)
        throw std::domain_error("period_point: tau must lie in the upper half plane");
    if (r < 1 || s < 1 || checked_mul(r, s) != n || std::gcd(r, s) != 1)
        throw std::domain_error("period_point: (r, s) must be a coprime factorization of N");
    auto [u, v] = bezout(r, s);
    std::complex<double> rt = double(r) * tau;
    std::complex<double> out = (double(u) * rt - double(v)) / (double(s) * rt + double(r));
    if (out.imag() <= 0)
        throw std::logic_error("period_point: image left the upper half plane");
    return out;
}

std::complex<double> period_point(int64_t n, const SigmaEntry& sigma,
                                  std::complex<double> tau, bool swapped)
{
    return swapped ? period_point(n, sigma.s, sigma.r, tau)
                   : period_point(n, sigma.r, sigma.s, tau);
}

namespace {

constexpr int kMaxReduceIter = 10000;

// Reduce tau to the standard fundamental domain of SL_2(Z), tracking the
// applied matrix g with reduced = g . tau.
std::pair<std::complex<double>, Mat2> reduce_to_fundamental(std::complex<double> tau)
{
    Mat2 g = Mat2::identity();
    for (int i = 0; i < kMaxReduceIter; i++) {
        double shift = std::floor(tau.real() + 0.5);
        if (shift != 0) {
            int64_t k = static_cast<int64_t>(shift);
            tau -= shift;
            g = Mat2{1, -k, 0, 1} * g;
        }
        if (std::norm(tau) < 1.0 - 1e-15) {
            tau = -1.0 / tau;
            g = Mat2{0, -1, 1, 0} * g;
            continue;
        }
        return {tau, g};
    }
    throw std::runtime_error("gamma0_equiv: fundamental-domain reduction did not converge");
}

void reject_elliptic(std::complex<double> reduced, double tol)
{
    double guard = std::max(tol * 10, 1e-12);
    const std::complex<double> i{0.0, 1.0};
    const std::complex<double> rho{-0.5, std::sqrt(3.0) / 2};
    const std::complex<double> rho1{0.5, std::sqrt(3.0) / 2};
    if (std::abs(reduced - i) < guard || std::abs(reduced - rho) < guard
        || std::abs(reduced - rho1) < guard)
        throw std::domain_error("gamma0_equiv: point too close to an elliptic orbit");
}

} // namespace

bool gamma0_equiv(std::complex<double> t1, std::complex<double> t2, int64_t n, double tol)
{
    if (t1.imag() <= 0 || t2.imag() <= 0)
        throw std::domain_error("gamma0_equiv: points must lie in the upper half plane");
    auto [r1, g1] = reduce_to_fundamental(t1);
    auto [r2, g2] = reduce_to_fundamental(t2);
    reject_elliptic(r1, tol);
    reject_elliptic(r2, tol);
    // r1 = h . r2 forces h in a short list: identity in the interior, a
    // translation or inversion on the boundary walls (corners are rejected).
    const Mat2 candidates[] = {
        Mat2::identity(), {1, 1, 0, 1}, {1, -1, 0, 1}, {0, -1, 1, 0}};
    Mat2 g1_inv = g1.unimodular_inverse();
    for (const Mat2& h : candidates) {
        if (std::abs(r1 - moebius(h, r2)) >= tol)
            continue;
        Mat2 gamma = g1_inv * h * g2;
        if (in_gamma0(gamma, n) || in_gamma0(-gamma, n))
            return true;
    }
    return false;
}

bool al_orbit_check(int64_t n, std::complex<double> tau, double tol)
{
    if (n <= 1)
        throw std::domain_error("al_orbit_check: requires N > 1");
    std::vector<std::complex<double>> orbit;
    for (int64_t q : hall_divisors(n))
        orbit.push_back(moebius(atkin_lehner(n, q).w, tau));

    std::vector<std::complex<double>> periods;
    for (const auto& sigma : sigma_set(n)) {
        periods.push_back(period_point(n, sigma, tau));
        periods.push_back(period_point(n, sigma, tau, true));
    }
    if (orbit.size() != periods.size())
        return false;

    auto covered = [&](const std::vector<std::complex<double>>& xs,
                       const std::vector<std::complex<double>>& ys) {
        return std::all_of(xs.begin(), xs.end(), [&](std::complex<double> x) {
            return std::any_of(ys.begin(), ys.end(), [&](std::complex<double> y) {
                return gamma0_equiv(x, y, n, tol);
            });
        });
    };
    return covered(orbit, periods) && covered(periods, orbit);
}

} // namespace abelkit
