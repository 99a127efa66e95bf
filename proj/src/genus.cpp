#include "abelkit/genus.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace abelkit {

DiscMap disc_action(const BinaryLattice& T, const Mat2& g)
{
    DualBasis db = dual_basis(T);
    // X = right^-1 * g * right expresses g on the scaled generator frame;
    // conjugating by diag(d1, d2) gives integer generator coordinates.
    Mat2 x = db.right.unimodular_inverse() * g * db.right;
    if (checked_mul(x.b, db.d1) % db.d2 != 0)
        throw std::logic_error("disc_action: image not in the dual lattice");
    DiscMap m;
    m.a = mod_floor(x.a, db.d1);
    m.b = mod_floor(checked_mul(x.b, db.d1) / db.d2, db.d1);
    m.c = mod_floor(checked_mul(x.c, db.d2) / db.d1, db.d2); // d1 | d2, exact
    m.d = mod_floor(x.d, db.d2);
    if (m.c % (db.d2 / db.d1) != 0)
        throw std::logic_error("disc_action: malformed coordinate matrix");
    return m;
}

std::vector<DiscMap> image_on_disc(const BinaryLattice& T, const std::vector<Mat2>& isoms)
{
    std::set<DiscMap> seen;
    for (const auto& g : isoms)
        seen.insert(disc_action(T, g));
    return {seen.begin(), seen.end()};
}

int64_t image_order(const BinaryLattice& T)
{
    return static_cast<int64_t>(image_on_disc(T, isometry_group(T)).size());
}

std::vector<DiscMap> so_image(const BinaryLattice& T)
{
    std::vector<Mat2> rot;
    for (const auto& g : isometry_group(T))
        if (g.det() == 1)
            rot.push_back(g);
    return image_on_disc(T, rot);
}

namespace {

// Canonical representative of the isometry class: reduced with b >= 0.
BinaryLattice iso_class_rep(const BinaryLattice& L)
{
    BinaryLattice r = reduce(L).form;
    if (r.b < 0)
        r.b = -r.b;
    return r;
}

struct Fingerprint {
    std::vector<LocalSymbol> symbols;
    std::vector<Rat> values;
    bool operator==(const Fingerprint&) const = default;
};

Fingerprint fingerprint_of(const BinaryLattice& L, const FiniteQuadraticForm& D)
{
    return {local_symbols(L), value_multiset(D)};
}

} // namespace

GenusReport genus_of(const BinaryLattice& T, int64_t guard)
{
    if (!T.is_positive_definite())
        throw std::domain_error("genus_of: lattice must be positive definite");
    BinaryLattice rep = iso_class_rep(T);
    if (rep.det() > guard)
        throw guard_error(rep.det()); // |D| = det; fail before any dual-basis work
    FiniteQuadraticForm dt = disc_form_of(rep);
    Fingerprint fpt = fingerprint_of(rep, dt);

    GenusReport out;
    bool found_self = false;
    for (const auto& m : enumerate_reduced(rep.det(), false)) {
        if (m.b < 0)
            continue; // one representative per isometry class
        FiniteQuadraticForm dm = disc_form_of(m);
        if (!(fingerprint_of(m, dm) == fpt))
            continue;
        if (m == rep)
            found_self = true;
        else if (!forms_isometric(dm, dt, guard))
            continue;
        out.members.push_back(m);
        out.ambiguous.push_back(is_ambiguous(m));
        out.image_orders.push_back(image_order(m));
    }
    if (!found_self)
        throw std::logic_error("genus_of: lattice missing from its own genus");
    out.g_count = static_cast<int64_t>(out.members.size());
    for (bool amb : out.ambiguous)
        out.proper_count += amb ? 1 : 2;
    return out;
}

int64_t proper_genus_count(const BinaryLattice& T, int64_t guard)
{
    return genus_of(T, guard).proper_count;
}

std::vector<std::vector<BinaryLattice>> genus_partition(int64_t det, int64_t guard)
{
    if (det > guard)
        throw guard_error(det);
    std::vector<std::vector<BinaryLattice>> genera;
    std::vector<Fingerprint> prints;
    std::vector<FiniteQuadraticForm> reps;
    for (const auto& m : enumerate_reduced(det, false)) {
        if (m.b < 0)
            continue;
        FiniteQuadraticForm dm = disc_form_of(m);
        Fingerprint fp = fingerprint_of(m, dm);
        bool placed = false;
        for (size_t i = 0; i < genera.size(); i++) {
            if (!(prints[i] == fp))
                continue;
            if (forms_isometric(dm, reps[i], guard)) {
                genera[i].push_back(m);
                placed = true;
                break;
            }
        }
        if (!placed) {
            genera.push_back({m});
            prints.push_back(std::move(fp));
            reps.push_back(std::move(dm));
        }
    }
    return genera; // enumeration order keeps members and genera sorted
}

} // namespace abelkit
