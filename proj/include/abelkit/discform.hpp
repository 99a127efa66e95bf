#ifndef ABELKIT_DISCFORM_HPP
#define ABELKIT_DISCFORM_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "abelkit/qform.hpp"
#include "abelkit/rational.hpp"

namespace abelkit {

constexpr int64_t kDefaultGuard = 4096;

// Brute-force size limit exceeded; `required` is the size that was needed.
struct guard_error : std::runtime_error {
    int64_t required;
    explicit guard_error(int64_t required_size);
};

/*
 * Finite quadratic form on Z/d1 + Z/d2 (d1 | d2; d1 = 1 means cyclic or
 * trivial).  q11, q22 are the Q/2Z values on the generators, b12 the Q/Z
 * pairing; stored as reduced fractions, q mod 2 and b mod 1.
 */
struct FiniteQuadraticForm {
    int64_t d1 = 1, d2 = 1;
    Rat q11, q22, b12;

    int64_t order() const { return checked_mul(d1, d2); }
    bool operator==(const FiniteQuadraticForm&) const = default;
};

std::ostream& operator<<(std::ostream& os, const FiniteQuadraticForm& D);

// Generators of L^dual/L in lattice coordinates: column i of `right`
// divided by d_i.  `right` comes from the Smith form of the Gram matrix.
struct DualBasis {
    int64_t d1 = 1, d2 = 1;
    Mat2 right;
};

DualBasis dual_basis(const BinaryLattice& L);
FiniteQuadraticForm disc_form_of(const BinaryLattice& L);

/*
 * p-adic classification of the components of a discriminant form:
 *   Diag   - diagonalizable block on Z/p^k + Z/p^l (k <= l; cyclic when k = 0)
 *   EvenU  - 2-adic even block U_k (eps2 = 1 mod 8)
 *   EvenV  - 2-adic even block V_k (eps2 = 5 mod 8)
 * eps is the unit class -det(L)/p^{2k} when k = l, and 0 otherwise.
 */
enum class LocalKind { Trivial, Diag, EvenU, EvenV };

struct LocalSymbol {
    int64_t p = 2;
    int k = 0, l = 0;
    LocalKind kind = LocalKind::Trivial;
    int64_t eps = 0;
    bool operator==(const LocalSymbol&) const = default;
};

std::ostream& operator<<(std::ostream& os, const LocalSymbol& s);

// One symbol per prime dividing det(L).
std::vector<LocalSymbol> local_symbols(const BinaryLattice& L);

// Order of the isometry group of the local component described by s.
int64_t local_order(const LocalSymbol& s);

// |O(D_L)| by the closed global formula.
int64_t global_order(const BinaryLattice& L);

// |O(D_{L(n)})|; equals global_order(L.scaled(n)).
int64_t scaled_order(const BinaryLattice& L, int64_t n);

/*
 * Group endomorphism of Z/d1 + Z/d2 sending generator 1 to (a, c) and
 * generator 2 to (b, d); a, b live mod d1, c, d mod d2, and c is a
 * multiple of d2/d1.  Acts on coordinate columns.
 */
struct DiscMap {
    int64_t a = 1, b = 0, c = 0, d = 1;
    bool operator==(const DiscMap&) const = default;
    bool operator<(const DiscMap& o) const
    {
        if (a != o.a)
            return a < o.a;
        if (b != o.b)
            return b < o.b;
        if (c != o.c)
            return c < o.c;
        return d < o.d;
    }
};

DiscMap compose(int64_t d1, int64_t d2, const DiscMap& f, const DiscMap& g);

// The isometry group O(D) materialized by exhaustive search; identity first.
struct DiscGroup {
    int64_t d1 = 1, d2 = 1;
    std::vector<DiscMap> elems;

    size_t size() const { return elems.size(); }
    // Index of m in elems; throws if absent.
    size_t index_of(const DiscMap& m) const;
};

DiscGroup brute_force_isometries(const FiniteQuadraticForm& D, int64_t guard = kDefaultGuard);

// |O(D)| by exhaustive search (the oracle for the closed formula).
int64_t brute_force_order(const FiniteQuadraticForm& D, int64_t guard = kDefaultGuard);

// Up to max_count isomorphisms D1 -> D2 preserving the quadratic form.
std::vector<DiscMap> isometries_between(const FiniteQuadraticForm& D1,
                                        const FiniteQuadraticForm& D2,
                                        int64_t guard = kDefaultGuard,
                                        size_t max_count = 1);

bool forms_isometric(const FiniteQuadraticForm& D1, const FiniteQuadraticForm& D2,
                     int64_t guard = kDefaultGuard);

// Sorted multiset of the q-values of D; an isometry invariant used as a
// cheap pre-filter before the exhaustive search.
std::vector<Rat> value_multiset(const FiniteQuadraticForm& D);

} // namespace abelkit

#endif
