#include <doctest.h>

#include <stdexcept>

#include <map>
#include <set>

#include "abelkit/genus.hpp"

using namespace abelkit;

TEST_CASE("genus_of on the det 15 and det 20 splits")
{
    auto g = genus_of({1, 1, 4});
    CHECK(g.members == std::vector<BinaryLattice>{{1, 1, 4}});
    CHECK(g.ambiguous == std::vector<bool>{true});
    CHECK(g.proper_count == 1);

    g = genus_of({2, 1, 2});
    CHECK(g.members == std::vector<BinaryLattice>{{2, 1, 2}});
    CHECK(g.proper_count == 1);

    g = genus_of({1, 0, 5});
    CHECK(g.members == std::vector<BinaryLattice>{{1, 0, 5}});
    g = genus_of({2, 2, 3});
    CHECK(g.members == std::vector<BinaryLattice>{{2, 2, 3}});
}

TEST_CASE("genus_of accepts non-reduced and negative-b input")
{
    auto g = genus_of({3, -1, 5});
    CHECK(g.members == std::vector<BinaryLattice>{{1, 1, 15}, {3, 1, 5}});
    CHECK(g.ambiguous == std::vector<bool>{true, false});
    CHECK(g.g_count == 2);
    CHECK(g.proper_count == 3);
    CHECK(proper_genus_count({3, 1, 5}) == 3);
}

TEST_CASE("proper genus counts")
{
    CHECK(proper_genus_count({1, 1, 4}) == 1);
    CHECK(proper_genus_count({1, 1, 1}) == 1);
    CHECK(proper_genus_count({1, 1, 6}) == 3); // h(-23) classes in one genus
}

TEST_CASE("image orders of the worked examples")
{
    CHECK(image_order({1, 1, 4}) == 2);
    CHECK(image_order({2, 1, 2}) == 4);
    CHECK(image_order({1, 0, 1}) == 2);
    CHECK(image_order({2, 2, 4}) == 4);
}

TEST_CASE("disc_action lands inside the brute-forced O(D)")
{
    for (int64_t det = 3; det <= 100; det++) {
        for (const auto& f : enumerate_reduced(det, false)) {
            if (f.b < 0)
                continue;
            DiscGroup od = brute_force_isometries(disc_form_of(f));
            auto img = image_on_disc(f, isometry_group(f));
            for (const auto& m : img)
                CHECK_NOTHROW(od.index_of(m));
            // The image is a subgroup: closed under composition.
            std::set<DiscMap> set(img.begin(), img.end());
            for (const auto& x : img)
                for (const auto& y : img)
                    CHECK(set.count(compose(od.d1, od.d2, x, y)) == 1);
        }
    }
}

TEST_CASE("image order divides |O(T)| and |O(D_T)|")
{
    for (int64_t det = 3; det <= 200; det++) {
        for (const auto& f : enumerate_reduced(det, false)) {
            if (f.b < 0)
                continue;
            int64_t img = image_order(f);
            CHECK(int64_t(isometry_group(f).size()) % img == 0);
            CHECK(global_order(f) % img == 0);
        }
    }
}

TEST_CASE("genera partition the classes of each determinant")
{
    for (int64_t det = 3; det <= 300; det++) {
        auto genera = genus_partition(det);
        std::set<BinaryLattice> seen;
        size_t total = 0;
        for (const auto& genus : genera) {
            CHECK(!genus.empty());
            for (const auto& f : genus) {
                CHECK(seen.insert(f).second);
                total++;
            }
        }
        size_t classes = 0;
        for (const auto& f : enumerate_reduced(det, false))
            if (f.b >= 0)
                classes++;
        CHECK(total == classes);
    }
}

TEST_CASE("genus_of agrees with the partition cell")
{
    for (int64_t det : {15, 20, 59, 63, 80, 96, 160, 240}) {
        auto genera = genus_partition(det);
        for (const auto& genus : genera)
            for (const auto& f : genus)
                CHECK(genus_of(f).members == genus);
    }
}

TEST_CASE("primitive genera of one determinant have equal proper size")
{
    // Proper classes per genus (ambiguous once, others twice) is the genus
    // mass that is constant across a class group; raw isometry-class counts
    // are not.
    for (int64_t det = 3; det <= 300; det++) {
        auto genera = genus_partition(det);
        std::set<int64_t> sizes;
        for (const auto& genus : genera) {
            size_t prim = 0;
            int64_t proper = 0;
            for (const auto& f : genus) {
                prim += f.is_primitive();
                proper += is_ambiguous(f) ? 1 : 2;
            }
            if (prim == genus.size())
                sizes.insert(proper);
            else
                CHECK(prim == 0); // content is a genus invariant
        }
        CHECK(sizes.size() <= 1);
    }
}

TEST_CASE("number of primitive proper genera equals |O(D)| / 2")
{
    for (int64_t det = 3; det <= 300; det++) {
        if (det % 4 == 1 || det % 4 == 2)
            continue;
        auto prim = enumerate_reduced(det, true);
        if (prim.empty())
            continue;
        auto genera = genus_partition(det);
        int64_t prim_genera = 0;
        for (const auto& genus : genera)
            if (genus.front().is_primitive())
                prim_genera++;
        CHECK(2 * prim_genera == global_order(prim.front()));
    }
}
