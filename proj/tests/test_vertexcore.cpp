#include "doctest.h"

#include "quadvertex/vertexcore.hpp"

using namespace quadvertex;

namespace {

using LP = LaurentPoly;

PlanePartition box() { return PlanePartition::single_box(); }
PlanePartition pp(std::vector<std::vector<int>> rows) { return PlanePartition(std::move(rows)); }

KWeight kw(int a1, int a2, int a3, int a4, int b = 0) { return reduce_exponent({a1, a2, a3, a4, b}); }

// [t1t2][t1t3][t2t3][y] / ([t1][t2][t3][t4])
FactoredContribution one_box_prefactor()
{
    FactoredContribution c;
    c.factors[kw(1, 1, 0, 0)] = 1;
    c.factors[kw(1, 0, 1, 0)] = 1;
    c.factors[kw(0, 1, 1, 0)] = 1;
    c.factors[kw(0, 0, 0, 0, 1)] = 1;
    c.factors[kw(1, 0, 0, 0)] = -1;
    c.factors[kw(0, 1, 0, 0)] = -1;
    c.factors[kw(0, 0, 1, 0)] = -1;
    c.factors[kw(0, 0, 0, 1)] = -1;
    return c;
}

std::vector<Legs> dt_legs()
{
    return {Legs{},
            Legs{box(), {}, {}, {}},
            Legs{PlanePartition{}, box(), {}, {}},
            Legs{PlanePartition{}, {}, {}, box()},
            Legs{box(), box(), {}, {}},
            Legs{box(), {}, {}, box()},
            Legs{pp({{1, 1}}), {}, {}, {}},
            Legs{pp({{2}}), {}, box(), {}},
            Legs{box(), box(), box(), {}},
            Legs{box(), box(), box(), box()}};
}

} // namespace

TEST_CASE("one-box tilde v")
{
    VertexCharacter ch = dt_character(SolidPartition(Legs{}, {{0, 0, 0, 0}}));
    LP expected = LP::t(0, -1) + LP::t(1, -1) + LP::t(2, -1) + LP::t(3) - LP::t(0, -1) * LP::t(1, -1) -
                  LP::t(0, -1) * LP::t(2, -1) - LP::t(1, -1) * LP::t(2, -1) - LP::y();
    WeightMap v = tilde_v(ch, Mode::DT);
    CHECK(v == reduce_cy(expected));

    FactoredContribution b = bracket(v);
    FactoredContribution ref = one_box_prefactor();
    for (int i = 0; i < 5; ++i) {
        QPoint pt = random_qpoint(17, i);
        CHECK(b.eval(pt) == ref.eval(pt));
    }
    CHECK(b.canonical() == ref.canonical());
}

TEST_CASE("bracket edge cases")
{
    CHECK(bracket(WeightMap{}).eval(random_qpoint(1, 0)) == 1);
    WeightMap fixed{{KWeight{}, -1}, {kw(1, 0, 0, 0), 1}};
    FactoredContribution z = bracket(fixed);
    CHECK(z.vanished);
    CHECK(z.eval(random_qpoint(1, 0)) == 0);
    CHECK_THROWS_AS(bracket(WeightMap{{KWeight{}, 1}}), ZeroWeightInDenominator);
}

TEST_CASE("a pure leg has no y-part")
{
    VertexCharacter ch = dt_character(cm_solid_partition(Legs{box(), {}, {}, {}}));
    WeightMap v = tilde_v(ch, Mode::DT);
    for (const auto& [w, c] : v)
        CHECK_FALSE(w.has_y());
}

TEST_CASE("vertex properties on enumerated DT fixed points")
{
    for (const auto& legs : dt_legs()) {
        int base = renormalized_volume(cm_solid_partition(legs));
        for (const auto& pi : enumerate_dt(legs, base + 2)) {
            VertexCharacter ch = dt_character(pi);
            WeightMap v;
            REQUIRE_NOTHROW(v = tilde_v(ch, Mode::DT));
            CHECK(check_vertex(ch, v).ok());
            CHECK(weight_rank(v) == 0);
            CHECK(plain_vertex_decomposition_check(ch));
        }
    }
}

TEST_CASE("vertex properties on enumerated PT fixed points")
{
    for (const auto& legs : dt_legs()) {
        if (count_nonempty(legs) > 2)
            continue;
        for (const auto& b : enumerate_pt(legs, 2)) {
            VertexCharacter ch = pt_character(legs, b);
            REQUIRE_NOTHROW(tilde_v(ch, Mode::PT));
            CHECK(plain_vertex_decomposition_check(ch));
        }
    }
    Legs three{box(), box(), box(), {}};
    CHECK_THROWS_AS(tilde_v(dt_character(cm_solid_partition(three)), Mode::PT), InvalidInput);
}

TEST_CASE("edges")
{
    EdgeGeometry g011({0, -1, -1});
    EdgeGeometry g110({-1, -1, 0});
    CHECK(tilde_e(PlanePartition{}, g011).empty());
    CHECK_THROWS_AS(EdgeGeometry({0, 0, 0}), InvalidInput);

    // half-integer powers are allowed for edges; the decomposition still holds
    CHECK(plain_edge_decomposition_check(box(), g011));
    WeightMap e = tilde_e(box(), g011);
    CHECK(weight_rank(e) == 0);

    WeightMap e2 = tilde_e(box(), g110);
    CHECK(weight_rank(e2) == 0);

    for (const auto& d : {std::array<int, 3>{0, -1, -1}, {-1, -1, 0}, {-1, 0, -1}, {1, -1, -2}, {-2, 0, 0}, {2, -2, -2}})
        for (int n = 1; n <= 3; ++n)
            for (const auto& lam : plane_partitions_of_size(n)) {
                EdgeGeometry g(d);
                CHECK(plain_edge_decomposition_check(lam, g));
                REQUIRE_NOTHROW(tilde_e(lam, g));
            }
}

TEST_CASE("factored contributions")
{
    FactoredContribution a = one_box_prefactor();
    FactoredContribution inv;
    for (const auto& [w, n] : a.factors)
        inv.factors[w] = -n;
    FactoredContribution prod = (a * inv).canonical();
    CHECK(prod.factors.empty());
    CHECK(prod.eval(random_qpoint(2, 0)) == 1);

    QPoint pt = random_qpoint(4, 1);
    CHECK(a.adams(2).eval(pt) == a.eval(pt.power(2)));
    CHECK(a.negated().eval(pt) == -a.eval(pt));

    FactoredContribution flipped;
    flipped.factors[kw(-1, 0, 0, 0)] = 1;
    CHECK(flipped.eval(pt) == -bracket_of_monomial(kw(1, 0, 0, 0)).eval(pt));
    CHECK(flipped.canonical().eval(pt) == flipped.eval(pt));

    FpPoint fp;
    for (int i = 0; i < 4; ++i)
        fp.root[i] = Fp::from_mpq(pt.root[i]);
    CHECK(a.eval(fp) == Fp::from_mpq(a.eval(pt)));
}
