#ifndef ABELKIT_COUNTING_HPP
#define ABELKIT_COUNTING_HPP

#include <cstdint>

#include "abelkit/genus.hpp"

namespace abelkit {

/*
 * Input descriptor for a decomposable Abelian surface:
 *   picard = 2: no further data (decomposability is the caller's assertion)
 *   picard = 3: N >= 1 with det(T_A) = -2N
 *   picard = 4: the rank-2 positive-definite transcendental lattice
 */
struct SurfaceSpec {
    int picard = 2;
    int64_t n = 1;
    BinaryLattice transcendental;

    static SurfaceSpec rho2() { return {2, 1, {}}; }
    static SurfaceSpec rho3(int64_t n) { return {3, n, {}}; }
    static SurfaceSpec rho4(const BinaryLattice& t) { return {4, 1, t}; }
};

// delta: decompositions up to isomorphism; delta_tilde: up to strict
// isomorphism (ordered pairs); delta0: self-products E x E.  Always
// delta_tilde = 2 delta - delta0.
struct DecompCounts {
    int64_t delta = 0;
    int64_t delta_tilde = 0;
    int64_t delta0 = 0;
    bool operator==(const DecompCounts&) const = default;
};

DecompCounts count(const SurfaceSpec& spec, int64_t guard = kDefaultGuard);

// delta_tilde computed from the double-coset formula
// sum over the proper genus of |SO(T_A) \ O(D_{T_A}) / SO(T)|, with
// O(D_{T_A}) materialized by brute force.  Independent of count().
int64_t weak_delta_tilde_oracle(const BinaryLattice& T, int64_t guard = kDefaultGuard);

struct ShiodaMitaniCheck {
    int64_t class_number = 0;
    bool matches = false;
};

// For primitive T: class number of the order of discriminant -det(T),
// compared against delta_tilde and against proper_genus * |O(D)| / 2.
ShiodaMitaniCheck shioda_mitani_check(const BinaryLattice& T, int64_t guard = kDefaultGuard);

// Scaling laws for delta_tilde under T -> T(N): divisibility always, and
// the closed forms in the coprime and N | det^a regimes.
bool scaled_count_check(const BinaryLattice& T, int64_t n, int64_t guard = kDefaultGuard);

// True iff the reduced form of T is (n,0,n) or (n,n,n): the lattices whose
// rotation group is larger than {+-id} and which are alone in their genus.
bool is_exceptional_shape(const BinaryLattice& T);

} // namespace abelkit

#endif
