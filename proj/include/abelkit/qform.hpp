#ifndef ABELKIT_QFORM_HPP
#define ABELKIT_QFORM_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "abelkit/arith.hpp"

namespace abelkit {

/*
 * Rank-2 positive-definite even lattice, stored as the triple (a, b, c) of
 * the Gram matrix (2a b; b 2c), i.e. the binary quadratic form
 * a x^2 + b xy + c y^2 doubled.  det = 4ac - b^2 > 0, a > 0.
 */
struct BinaryLattice {
    int64_t a = 1, b = 0, c = 1;

    int64_t det() const;
    // gcd(a, b, c); the lattice is primitive iff the content is 1.
    int64_t content() const;
    bool is_primitive() const { return content() == 1; }
    bool is_positive_definite() const { return a > 0 && det() > 0; }
    Mat2 gram() const { return {2 * a, b, b, 2 * c}; }
    // The lattice with the form multiplied by n.
    BinaryLattice scaled(int64_t n) const;
    // |b| <= a <= c, and b >= 0 when |b| = a or a = c.
    bool is_reduced() const;

    bool operator==(const BinaryLattice&) const = default;
    bool operator<(const BinaryLattice& o) const
    {
        if (a != o.a)
            return a < o.a;
        if (b != o.b)
            return b < o.b;
        return c < o.c;
    }
};

std::ostream& operator<<(std::ostream& os, const BinaryLattice& f);

struct Reduction {
    BinaryLattice form;
    Mat2 transform; // det +1, transform^T * Gram(L) * transform = Gram(form)
};

// Gauss reduction.  Each proper equivalence class of positive-definite forms
// contains exactly one reduced triple.
Reduction reduce(const BinaryLattice& L);

bool properly_equivalent(const BinaryLattice& L, const BinaryLattice& M);

// The full isometry group O(L) as integer matrices g with g^T Gram g = Gram.
// Always contains +-identity; the order is 2, 4, 8 or 12.
std::vector<Mat2> isometry_group(const BinaryLattice& L);

// True iff O(L) contains an orientation-reversing isometry.
bool is_ambiguous(const BinaryLattice& L);

// All reduced triples with 4ac - b^2 = det, lexicographically sorted;
// one per proper equivalence class.
std::vector<BinaryLattice> enumerate_reduced(int64_t det, bool primitive_only);

// Class number of the imaginary quadratic order of discriminant disc < 0
// (disc = 0 or 1 mod 4): the number of proper classes of primitive forms.
int64_t class_number(int64_t disc);

} // namespace abelkit

#endif
