#include "doctest.h"

#include "quadvertex/limits.hpp"
#include "quadvertex/signs.hpp"

using namespace quadvertex;

namespace {

PlanePartition box() { return PlanePartition::single_box(); }

KWeight kw(int a1, int a2, int a3, int a4, int b = 0) { return reduce_exponent({a1, a2, a3, a4, b}); }

FactoredContribution one_box() { return vertex_contribution(dt_character(SolidPartition(Legs{}, {{0, 0, 0, 0}})), Mode::DT); }

std::vector<Legs3> small_legs3()
{
    return {Legs3{}, Legs3{Partition{1}, {}, {}}, Legs3{Partition{}, {1}, {}}, Legs3{Partition{2}, {}, {}},
            Legs3{Partition{1, 1}, {}, {}}, Legs3{Partition{1}, {1}, {}}, Legs3{Partition{}, {1}, {1}}};
}

// 3-fold boxes of a 4-fold fixed point on {x4 = 0}
std::optional<std::vector<std::array<int, 3>>> flat_boxes(const std::vector<Box4>& ws)
{
    std::vector<std::array<int, 3>> out;
    for (const auto& w : ws) {
        if (w[3] != 0)
            return std::nullopt;
        out.push_back({w[0], w[1], w[2]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("one box reduces to the 3-fold vertex")
{
    FactoredContribution r = dim_reduce(one_box());
    FactoredContribution ref;
    ref.factors[kw(1, 1, 0, 0)] = 1;
    ref.factors[kw(1, 0, 1, 0)] = 1;
    ref.factors[kw(0, 1, 1, 0)] = 1;
    ref.factors[kw(1, 0, 0, 0)] = -1;
    ref.factors[kw(0, 1, 0, 0)] = -1;
    ref.factors[kw(0, 0, 1, 0)] = -1;
    for (int i = 0; i < 5; ++i) {
        QPoint pt = random_qpoint(3, i);
        CHECK(r.eval(pt) == ref.eval(pt));
    }
    QSeries o = vertex3d_oracle(Legs3{}, 1, Mode::DT);
    REQUIRE(o.at(1).size() == 1);
    CHECK(o.at(1)[0].c.eval(random_qpoint(3, 0)) == ref.eval(random_qpoint(3, 0)));
}

TEST_CASE("embedded boxes off the hyperplane give zero")
{
    Legs line{box(), {}, {}, {}};
    FactoredContribution c =
        vertex_contribution(dt_character(SolidPartition(line, {{0, 0, 0, 1}})), Mode::DT);
    CHECK(dim_reduce(c).vanished);
}

TEST_CASE("3-fold enumeration counts")
{
    // plane partitions: 1, 1, 3, 6
    auto dt = enumerate_3d(Legs3{}, 3, Mode::DT);
    std::array<int, 4> n{};
    for (const auto& c : dt)
        ++n[static_cast<std::size_t>(c.q_power)];
    CHECK(n == std::array<int, 4>{1, 1, 3, 6});
    // one leg: 3 ways to add one box (the PT side has a single one)
    CHECK(enumerate_3d(Legs3{Partition{1}, {}, {}}, 1, Mode::DT).size() == 3);
    CHECK(enumerate_3d(Legs3{Partition{1}, {}, {}}, 1, Mode::PT).size() == 2);
    CHECK_THROWS_AS(enumerate_3d(Legs3{Partition{1}, {1}, {1}}, 1, Mode::PT), InvalidInput);
}

TEST_CASE("y = t4 matches the 3-fold vertex fixed point by fixed point")
{
    for (const auto& l3 : small_legs3()) {
        Legs legs = embed_legs(l3);
        int base = renormalized_volume(cm_solid_partition(legs));
        std::map<std::vector<std::array<int, 3>>, WeightMap> oracle;
        for (const auto& c : enumerate_3d(l3, 2, Mode::DT))
            oracle[c.boxes] = reduce_cy(vertex3d_character(c, Mode::DT));
        int matched = 0;
        for (const auto& pi : enumerate_dt(legs, base + 2)) {
            WeightMap v = dim_reduce(tilde_v(dt_character(pi), Mode::DT));
            auto flat = flat_boxes(pi.embedded());
            if (!flat) {
                CHECK(dim_reduce(bracket(tilde_v(dt_character(pi), Mode::DT))).vanished);
                continue;
            }
            REQUIRE(oracle.count(*flat));
            CHECK(v == oracle[*flat]);
            ++matched;
        }
        CHECK(matched == static_cast<int>(oracle.size()));

        std::map<std::vector<std::array<int, 3>>, WeightMap> pt_oracle;
        for (const auto& c : enumerate_3d(l3, 2, Mode::PT))
            pt_oracle[c.boxes] = reduce_cy(vertex3d_character(c, Mode::PT));
        for (const auto& b : enumerate_pt(legs, 2)) {
            std::vector<Box4> ws;
            for (const auto& x : b.boxes())
                ws.push_back(x.w);
            auto flat = flat_boxes(ws);
            if (!flat)
                continue;
            REQUIRE(pt_oracle.count(*flat));
            CHECK(dim_reduce(tilde_v(pt_character(legs, b), Mode::PT)) == pt_oracle[*flat]);
        }
    }
}

TEST_CASE("series identity under y = t4")
{
    for (const auto& l3 : small_legs3()) {
        Legs legs = embed_legs(l3);
        int c = cm_solid_partition(legs).cm_volume();
        SeriesExpr rhs = SeriesExpr(vertex3d_oracle(l3, 2, Mode::DT)).negate_q().scaled(c % 2 == 0 ? 1 : -1);
        CHECK(series_equal(dim_reduce(dt_vertex_series(legs, 2, SignRule::Dimred)), rhs).pass);
        SeriesExpr rhs_pt = SeriesExpr(vertex3d_oracle(l3, 2, Mode::PT)).negate_q().scaled(c % 2 == 0 ? 1 : -1);
        CHECK(series_equal(dim_reduce(pt_vertex_series(legs, 2, SignRule::Dimred)), rhs_pt).pass);
    }
}

TEST_CASE("first cohomological limit")
{
    LimitPoint p = random_limit_point(1, 0);
    const auto& l = p.lambda;
    // sigma_DT = -1 times [-v] of one box
    mpq_class v = -coho_limit_1(one_box()).eval(p);
    CHECK(v == p.m * one_box_euler(p));

    FactoredContribution ratio = bracket_of_monomial(kw(1, 0, 0, 0)) * bracket_of_monomial(kw(0, 1, 0, 0), -1);
    CHECK(coho_limit_1(ratio).eval(p) == l[0] / l[1]);
    CHECK(coho_limit_1(FactoredContribution::zero()).eval(p) == 0);
    CHECK_THROWS_AS(coho_limit_1(bracket_of_monomial(kw(1, 0, 0, 0))), std::invalid_argument);
    // [t4] has form -(l1 + l2 + l3)
    CHECK(coho_limit_1(bracket_of_monomial(kw(0, 0, 0, 1)) * bracket_of_monomial(kw(1, 0, 0, 0), -1)).eval(p) ==
          -(l[0] + l[1] + l[2]) / l[0]);
}

TEST_CASE("second cohomological limit")
{
    LimitPoint p = random_limit_point(2, 0);
    CohoLimitII r = coho_limit_2(one_box(), 1);
    CHECK(r.Q_power == 1);
    CHECK(-r.euler.eval(p) == one_box_euler(p));
    CHECK(coho_limit_2(one_box(), 2).euler.zero);
    CHECK_THROWS_AS(coho_limit_2(one_box(), 0), std::domain_error);
}

TEST_CASE("MacMahon powers")
{
    auto m = macmahon_power(1, 5);
    std::array<int, 6> plane{1, 1, 3, 6, 13, 24};
    for (int n = 0; n <= 5; ++n)
        CHECK(m.at(n) == plane[static_cast<std::size_t>(n)]);
    auto h = macmahon_power(mpq_class(1, 2), 4) * macmahon_power(mpq_class(1, 2), 4);
    for (int n = 0; n <= 4; ++n)
        CHECK(h.at(n) == plane[static_cast<std::size_t>(n)]);
    CHECK(macmahon_power(1, 3, true).at(1) == -1);
}

TEST_CASE("limits of the Nekrasov side")
{
    SeriesExpr exp_f = plethystic_exp(nekrasov_F(3));
    SeriesExpr dt = dt_vertex_series(Legs{}, 3, SignRule::Formula);
    for (std::uint64_t i = 0; i < 3; ++i) {
        LimitPoint p = random_limit_point(7, i);
        std::array<int, 4> d{1, -2, 0, 3};
        const auto& l = p.lambda;
        mpq_class l4 = -(l[0] + l[1] + l[2]);
        p.m = -(d[0] * l[0] + d[1] * l[1] + d[2] * l[2] + d[3] * l4);
        mpq_class e = c1c3_integral(d, p);
        auto lhs = exp_f.negate_q().eval(LimitIContext{p});
        auto rhs = macmahon_power(e, 3, true);
        for (int n = 0; n <= 3; ++n)
            CHECK(lhs.at(n) == rhs.at(n));
        auto dt_side = dt.negate_q().eval(LimitIContext{p});
        for (int n = 0; n <= 3; ++n)
            CHECK(dt_side.at(n) == rhs.at(n));

        LimitPoint p2 = random_limit_point(8, i);
        mpq_class b = one_box_euler(p2);
        SeriesExpr F = nekrasov_F(3);
        auto psi1 = F.eval(LimitIIContext{p2, 1});
        CHECK(psi1.at(1) == b);
        CHECK(psi1.at(2) == 0);
        CHECK(psi1.at(3) == 0);
        for (int n : {2, 3}) {
            auto psi = F.eval(LimitIIContext{p2, n});
            for (int k = 0; k <= 3; ++k)
                CHECK(psi.at(k) == 0);
        }
        auto h = dt.eval(LimitIIContext{p2});
        CHECK(h.at(1) == b);
        CHECK(h.at(2) == b * b / 2);
        CHECK(h.at(3) == b * b * b / 6);
    }
}
