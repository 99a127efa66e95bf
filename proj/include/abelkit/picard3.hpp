#ifndef ABELKIT_PICARD3_HPP
#define ABELKIT_PICARD3_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "abelkit/arith.hpp"

namespace abelkit {

// One coprime factorization r*s = N with r <= s, together with the
// canonical Bezout pair a*r + b*s = 1, 0 <= a < s.
struct SigmaEntry {
    int64_t r = 1, s = 1;
    int64_t a = 0, b = 1;
    bool operator==(const SigmaEntry&) const = default;
};

std::vector<SigmaEntry> sigma_set(int64_t n);

// Vector in the fixed basis (e, f, l) of U + <-2N>:
// (e,e) = (f,f) = 0, (e,f) = 1, (l,l) = -2N, e,f orthogonal to l.
struct NSVector3 {
    int64_t x = 0, y = 0, z = 0;
    bool operator==(const NSVector3&) const = default;
};

int64_t ns_pair(const NSVector3& v, const NSVector3& w, int64_t n);

struct EmbeddingVectors {
    NSVector3 e, f, l;
};

// e_s = r e + s f + l, f_s = b^2 s e + a^2 r f - a b l,
// l_s = 2Nb e - 2Na f + (bs - ar) l; pairings checked exactly.
EmbeddingVectors embedding_vectors(int64_t n, const SigmaEntry& sigma);

// (b s - a r) mod 2N; independent of the Bezout choice, square = 1 mod 4N.
int64_t multiplier_invariant(int64_t n, const SigmaEntry& sigma);

// Divisors Q of N with gcd(Q, N/Q) = 1, ascending; there are 2^tau(N) of
// them for N > 1.
std::vector<int64_t> hall_divisors(int64_t n);

struct ALMatrix {
    Mat2 w;
    int64_t level = 1;
    int64_t q = 1;
};

// Normal form (Q a, b; N c, Q d) of determinant Q; the involution property
// W^2 in Q * Gamma_0(N) is verified exactly at construction.
ALMatrix atkin_lehner(int64_t n, int64_t q);

bool in_gamma0(const Mat2& g, int64_t n);

std::complex<double> moebius(const Mat2& g, std::complex<double> tau);

// Moduli point of the decomposition indexed by the coprime pair (r, s),
// rs = N, on Gamma_0(N) \ H: tau* = (u r tau - v) / (s r tau + r) with
// u r + v s = 1.  For (r, s) = (1, N) this is Gamma_0(N)-equivalent to tau.
std::complex<double> period_point(int64_t n, int64_t r, int64_t s,
                                  std::complex<double> tau);
std::complex<double> period_point(int64_t n, const SigmaEntry& sigma,
                                  std::complex<double> tau, bool swapped = false);

// Equivalence of two points of H under Gamma_0(N), decided by reduction to
// the standard fundamental domain with tracked matrices.  Points near the
// elliptic orbits of i or zeta_3 are rejected.
bool gamma0_equiv(std::complex<double> t1, std::complex<double> t2, int64_t n,
                  double tol = 1e-9);

// Whether the Atkin-Lehner orbit {W_Q tau} equals the set of period points
// {period_point(r, s), period_point(s, r)} over sigma_set(N), as subsets of
// Gamma_0(N) \ H.
bool al_orbit_check(int64_t n, std::complex<double> tau, double tol = 1e-9);

} // namespace abelkit

#endif
