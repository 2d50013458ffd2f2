#include "doctest.h"

#include "quadvertex/series.hpp"
#include "quadvertex/signs.hpp"

using namespace quadvertex;

namespace {

PlanePartition box() { return PlanePartition::single_box(); }

SignProblem nekrasov_order(int k, const QSeries& dt, const SeriesExpr& target, int shift = 0)
{
    std::vector<FactoredContribution> cols;
    for (const auto& t : dt.at(k))
        cols.push_back(t.c);
    return make_sign_problem(
        cols, [=](const FpPoint& p) { return target.eval(FpContext{p}).at(k) + Fp(shift); },
        [=](const QPoint& p) -> mpq_class { return target.eval(QContext{p}).at(k) + shift; });
}

} // namespace

TEST_CASE("closed-form signs")
{
    CHECK(sigma_dt(SolidPartition(Legs{}, {{0, 0, 0, 0}})) == -1);
    CHECK(sigma_dt(SolidPartition(Legs{}, {{0, 0, 0, 0}, {0, 0, 0, 1}})) == -1);
    CHECK(sigma_dt(SolidPartition(Legs{}, {{0, 0, 0, 0}, {1, 0, 0, 0}})) == 1);
    CHECK(sigma_dt(cm_solid_partition(Legs{box(), {}, {}, {}})) == 1);

    Legs line{box(), {}, {}, {}};
    CHECK(sigma_pt(line, BoxConfiguration(line, {})) == 1);
    CHECK(sigma_pt(line, BoxConfiguration(line, {{-1, 0, 0, 0}})) == -1);
    Legs cross{box(), box(), {}, {}};
    CHECK(sigma_pt(cross, BoxConfiguration(cross, {})) == -1);

    // embedded diagonal box in a line: (-1)^{1+1}
    CHECK(sigma_dt(SolidPartition(line, {{0, 0, 0, 1}})) == 1);
    CHECK(sigma_dimred_dt(SolidPartition(line, {{0, 0, 0, 1}})) == -1);
    CHECK(sigma_dimred_pt(cross, BoxConfiguration(cross, {})) == -1);
}

TEST_CASE("sign search on the Nekrasov series")
{
    QSeries dt = dt_vertex_series(Legs{}, 3, SignRule::Unit);
    SeriesExpr target = plethystic_exp(nekrasov_F(3));

    auto r1 = search_signs(nekrasov_order(1, dt, target));
    REQUIRE(r1.solutions.size() == 1);
    CHECK(r1.solutions[0] == std::vector<int>{-1});

    QSeries signed_dt = dt_vertex_series(Legs{}, 3, SignRule::Formula);
    for (int k : {2, 3}) {
        auto r = search_signs(nekrasov_order(k, dt, target));
        std::vector<int> sigma;
        for (const auto& t : signed_dt.at(k))
            sigma.push_back(t.sign);
        REQUIRE(r.solutions.size() == 1);
        CHECK(r.solutions[0] == sigma);
        CHECK_FALSE(r.used_linear_algebra);

        SignSearchOptions opt;
        opt.cap = 4;
        auto lin = search_signs(nekrasov_order(k, dt, target), opt);
        CHECK(lin.used_linear_algebra);
        CHECK(lin.solutions == r.solutions);
    }

    CHECK(search_signs(nekrasov_order(2, dt, target, 1)).solutions.empty());
}

TEST_CASE("sign search reports every solution")
{
    // x - x = 0 has the two solutions (1,1) and (-1,-1)
    FactoredContribution c = bracket_of_monomial(reduce_exponent({1, 0, 0, 0, 0}));
    SignProblem p = make_sign_problem({c, c.negated()}, [](const FpPoint&) { return Fp(0); },
                                      [](const QPoint&) { return mpq_class(0); });
    auto r = search_signs(p);
    REQUIRE(r.solutions.size() == 2);
    CHECK(r.solutions[0] == std::vector<int>{1, 1});
    CHECK(r.solutions[1] == std::vector<int>{-1, -1});

    SignSearchOptions tiny;
    tiny.cap = 1;
    SignProblem free = make_sign_problem({c, c, c, c}, [](const FpPoint&) { return Fp(0); },
                                         [](const QPoint&) { return mpq_class(0); });
    CHECK_THROWS_AS(search_signs(free, tiny), SignCapExceeded);
}
