#include "doctest.h"

#include <functional>
#include <map>
#include <random>
#include <set>

#include "quadvertex/partitions.hpp"

using namespace quadvertex;

namespace {

PlanePartition box() { return PlanePartition::single_box(); }
PlanePartition pp(std::vector<std::vector<int>> rows) { return PlanePartition(std::move(rows)); }

// Solid partitions of n as non-increasing height functions on N^3,
// filled cell by cell in lexicographic order.  Shares nothing with enumerate_dt.
long count_solid_partitions(int n)
{
    if (n == 0)
        return 1;
    int r = n;
    std::vector<int> h(r * r * r, 0);
    auto at = [&](int i, int j, int k) -> int& { return h[(i * r + j) * r + k]; };
    long count = 0;
    std::function<void(int, int)> fill = [&](int cell, int remaining) {
        if (remaining == 0) {
            ++count;
            return;
        }
        if (cell == r * r * r)
            return;
        int i = cell / (r * r), j = (cell / r) % r, k = cell % r;
        int bound = remaining;
        if (i > 0)
            bound = std::min(bound, at(i - 1, j, k));
        if (j > 0)
            bound = std::min(bound, at(i, j - 1, k));
        if (k > 0)
            bound = std::min(bound, at(i, j, k - 1));
        for (int v = bound; v >= 0; --v) {
            at(i, j, k) = v;
            fill(cell + 1, remaining - v);
        }
        at(i, j, k) = 0;
    };
    fill(0, n);
    return count;
}

std::map<int, int> counts_by_volume(const std::vector<SolidPartition>& ps)
{
    std::map<int, int> c;
    for (const auto& p : ps)
        ++c[renormalized_volume(p)];
    return c;
}

} // namespace

TEST_CASE("plane partitions")
{
    const int expected[] = {1, 1, 3, 6, 13, 24, 48};
    for (int n = 0; n <= 6; ++n) {
        auto ps = plane_partitions_of_size(n);
        CHECK(static_cast<int>(ps.size()) == expected[n]);
        std::set<PlanePartition> uniq(ps.begin(), ps.end());
        CHECK(uniq.size() == ps.size());
        for (const auto& p : ps)
            CHECK(p.size() == n);
    }
    CHECK_THROWS_AS(pp({{1, 2}}), InvalidInput);
    CHECK_THROWS_AS(pp({{1}, {2}}), InvalidInput);
    CHECK(pp({{2, 1}, {1}}).str() == "[[2,1],[1]]");
}

TEST_CASE("CM partitions and renormalized volume")
{
    Legs none{};
    CHECK(renormalized_volume(cm_solid_partition(none)) == 0);

    Legs one{box(), {}, {}, {}};
    SolidPartition line = cm_solid_partition(one);
    CHECK(line.contains({5, 0, 0, 0}));
    CHECK_FALSE(line.contains({0, 1, 0, 0}));
    CHECK(renormalized_volume(line) == 0);

    Legs two{box(), box(), {}, {}};
    SolidPartition cross = cm_solid_partition(two);
    CHECK(leg_overlaps(two) == std::vector<Box4>{{0, 0, 0, 0}});
    CHECK(renormalized_volume(cross) == -1);
    CHECK(cross.cm_volume() == -1);

    SolidPartition pt(none, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}});
    CHECK(renormalized_volume(pt) == 3);
}

TEST_CASE("point-like DT counts match the height-function oracle")
{
    auto ps = enumerate_dt(Legs{}, 6);
    auto c = counts_by_volume(ps);
    for (int n = 0; n <= 6; ++n)
        CHECK(c[n] == count_solid_partitions(n));
    CHECK(c[1] == 1);
    CHECK(c[2] == 4);
    CHECK(c[3] == 10);
    CHECK(c[4] == 26);
    std::set<std::string> keys;
    for (const auto& p : ps) {
        CHECK(p.is_valid());
        keys.insert(p.key());
    }
    CHECK(keys.size() == ps.size());
}

TEST_CASE("single leg DT")
{
    Legs one{box(), {}, {}, {}};
    auto zero = enumerate_dt(one, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].embedded().empty());

    auto ps = enumerate_dt(one, 1);
    std::set<Box4> singles;
    for (const auto& p : ps)
        if (p.embedded().size() == 1)
            singles.insert(p.embedded()[0]);
    CHECK(ps.size() == 4);
    CHECK(singles == std::set<Box4>{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
}

TEST_CASE("renormalized volume is cutoff independent")
{
    std::mt19937_64 rng(3);
    std::vector<SolidPartition> pool;
    for (const auto& legs : {Legs{box(), {}, {}, {}}, Legs{box(), box(), {}, {}},
                             Legs{pp({{1, 1}}), {}, box(), {}}, Legs{box(), box(), box(), box()}}) {
        auto ps = enumerate_dt(legs, renormalized_volume(cm_solid_partition(legs)) + 2);
        pool.insert(pool.end(), ps.begin(), ps.end());
    }
    for (int k = 0; k < 100; ++k) {
        const auto& p = pool[rng() % pool.size()];
        int base = renormalized_volume(p);
        CHECK(renormalized_volume_at(p, 8) == base);
        CHECK(renormalized_volume_at(p, 9) == base);
        CHECK(p.is_valid());
    }
}

TEST_CASE("DT enumeration respects the node cap")
{
    EnumerationOptions opt;
    opt.node_cap = 10;
    CHECK_THROWS_AS(enumerate_dt(Legs{}, 4, opt), BudgetExceeded);
}

TEST_CASE("PT single leg")
{
    Legs one{box(), {}, {}, {}};
    auto cs = enumerate_pt(one, 2);
    REQUIRE(cs.size() == 3);
    for (int len = 0; len <= 2; ++len) {
        const auto& c = cs[len];
        CHECK(c.length() == len);
        for (int k = 1; k <= len; ++k) {
            CHECK(c.contains({-k, 0, 0, 0}));
        }
        for (const auto& b : c.boxes())
            CHECK(b.region == Region::IMinus);
    }
    auto empty = enumerate_pt(Legs{}, 3);
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].length() == 0);
}

TEST_CASE("PT two legs: length one against brute force")
{
    Legs two{box(), box(), {}, {}};
    std::set<Box4> brute;
    Box4 w;
    for (w[0] = -3; w[0] <= 3; ++w[0])
        for (w[1] = -3; w[1] <= 3; ++w[1])
            for (w[2] = -3; w[2] <= 3; ++w[2])
                for (w[3] = -3; w[3] <= 3; ++w[3]) {
                    if (region_of(two, w) == Region::None)
                        continue;
                    if (BoxConfiguration(two, {w}).satisfies_closure())
                        brute.insert(w);
                }
    std::set<Box4> found;
    for (const auto& c : enumerate_pt(two, 1))
        if (c.length() == 1)
            found.insert(c.boxes()[0].w);
    CHECK(found == brute);
    CHECK(found.size() == 1);
}

TEST_CASE("PT configurations satisfy closure")
{
    for (const auto& legs : {Legs{box(), {}, {}, {}}, Legs{box(), box(), {}, {}}, Legs{pp({{2}}), {}, {}, box()},
                             Legs{pp({{1, 1}}), box(), {}, {}}}) {
        auto cs = enumerate_pt(legs, 3);
        std::set<std::string> keys;
        for (const auto& c : cs) {
            CHECK(c.satisfies_closure());
            keys.insert(c.key());
        }
        CHECK(keys.size() == cs.size());
    }
    CHECK_THROWS_AS(enumerate_pt(Legs{box(), box(), box(), {}}, 1), InvalidInput);
    CHECK_THROWS_AS(BoxConfiguration(Legs{box(), {}, {}, {}}, {{1, 1, 0, 0}}), InvalidInput);
}

TEST_CASE("swapping axes")
{
    PlanePartition l(std::vector<std::vector<int>>{{2, 1}, {1}});
    Legs legs{PlanePartition::single_box(), PlanePartition(), PlanePartition(), l};
    Legs s = swap_axes(legs, 2, 3);
    CHECK(s[3].empty());
    CHECK(s[2] == l);
    CHECK(swap_axes(s, 2, 3) == legs);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Legs t = swap_axes(legs, a, b);
            // same points of Z^4 up to the coordinate swap
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y)
                    for (int z = 0; z < 3; ++z)
                        for (int u = 0; u < 3; ++u) {
                            Box4 w{x, y, z, u}, v = w;
                            std::swap(v[a], v[b]);
                            CHECK(legs_containing(legs, w) == legs_containing(t, v));
                        }
        }
}
