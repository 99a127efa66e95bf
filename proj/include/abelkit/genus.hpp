#ifndef ABELKIT_GENUS_HPP
#define ABELKIT_GENUS_HPP

#include <cstdint>
#include <vector>

#include "abelkit/discform.hpp"
#include "abelkit/qform.hpp"

namespace abelkit {

/*
 * A genus of positive-definite even binary lattices: one reduced member per
 * isometry class (b >= 0), with per-member ambiguity and the order of the
 * image of O(T) in O(D_T).  proper_count counts proper classes:
 * ambiguous members once, the others twice.
 */
struct GenusReport {
    std::vector<BinaryLattice> members;
    std::vector<bool> ambiguous;
    std::vector<int64_t> image_orders;
    int64_t g_count = 0;
    int64_t proper_count = 0;
};

// Genus membership is decided by discriminant-form isometry (brute force),
// with the local-symbol and value-multiset fingerprint as a pre-filter.
GenusReport genus_of(const BinaryLattice& T, int64_t guard = kDefaultGuard);

int64_t proper_genus_count(const BinaryLattice& T, int64_t guard = kDefaultGuard);

// Action of an isometry g of T on the discriminant group, in the generator
// coordinates of dual_basis(T).
DiscMap disc_action(const BinaryLattice& T, const Mat2& g);

// Pushforward of a set of isometries of T to O(D_T), deduplicated.
std::vector<DiscMap> image_on_disc(const BinaryLattice& T, const std::vector<Mat2>& isoms);

// |r_T(O(T))|: the order of the image of O(T) in O(D_T).
int64_t image_order(const BinaryLattice& T);

// The image of SO(T) in O(D_T).
std::vector<DiscMap> so_image(const BinaryLattice& T);

// All isometry classes of determinant det grouped into genera; each inner
// vector is sorted, outer vectors sorted by first member.
std::vector<std::vector<BinaryLattice>> genus_partition(int64_t det,
                                                        int64_t guard = kDefaultGuard);

} // namespace abelkit

#endif
