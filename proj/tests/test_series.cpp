#include "doctest.h"

#include "quadvertex/series.hpp"

using namespace quadvertex;

namespace {

PlanePartition box() { return PlanePartition::single_box(); }

SignedTerm unit(const std::string& key = "1") { return {1, FactoredContribution{}, key}; }

SignedTerm t1_power(int n)
{
    FactoredContribution c;
    c.monomial = reduce_exponent({n, 0, 0, 0, 0});
    return {1, c, "t1^" + std::to_string(n)};
}

Table<mpq_class> at_point(const SeriesExpr& s, std::uint64_t i = 0) { return s.eval(QContext{random_qpoint(5, i)}); }

} // namespace

TEST_CASE("plethystic exponential of simple series")
{
    QSeries q(6);
    q.add(1, 0, unit());
    auto e = at_point(plethystic_exp(q));
    for (int n = 0; n <= 6; ++n)
        CHECK(e.at(n) == 1);

    QSeries qq(6);
    qq.add(1, 0, unit());
    qq.add(2, 0, unit());
    // 1/((1-q)(1-q^2)) = sum floor(n/2) + 1
    auto e2 = at_point(plethystic_exp(qq));
    for (int n = 0; n <= 6; ++n)
        CHECK(e2.at(n) == n / 2 + 1);

    QSeries tq(4);
    tq.add(1, 0, t1_power(1));
    QPoint pt = random_qpoint(5, 3);
    auto e3 = plethystic_exp(tq).eval(QContext{pt});
    mpq_class t1 = pt.root[0] * pt.root[0];
    for (int n = 0; n <= 4; ++n)
        CHECK(e3.at(n) == pow(t1, n));

    QSeries bad(2);
    bad.add(0, 0, unit());
    CHECK_THROWS_AS(at_point(plethystic_exp(bad)), NonZeroConstantTerm);
}

TEST_CASE("plethystic exponential is a homomorphism")
{
    QSeries f = nekrasov_F(3);
    QSeries g(3);
    g.add(1, 0, t1_power(1));
    g.add(2, 0, t1_power(-1));
    QSeries sum = f;
    for (const auto& [k, terms] : g.coeffs())
        for (const auto& t : terms)
            sum.add(k.first, k.second, t);
    CHECK(series_equal(plethystic_exp(sum), plethystic_exp(f) * plethystic_exp(g)).pass);

    // also in two variables and over F_p
    QSeries h(3, 2);
    h.add(1, 1, t1_power(1));
    h.add(0, 1, t1_power(2));
    QSeries k2(3, 2);
    k2.add(2, 0, unit());
    QSeries hk = h;
    hk.add(2, 0, unit());
    FpContext ctx{random_fppoint(9, 0)};
    auto a = plethystic_exp(hk).eval(ctx);
    auto b = (plethystic_exp(h) * plethystic_exp(k2)).eval(ctx);
    CHECK(a.v == b.v);
}

TEST_CASE("Nekrasov series")
{
    CHECK(verify_expansion_identity(1));
    QSeries F = nekrasov_F(3);
    CHECK(F.at(0).empty());
    REQUIRE(F.at(1).size() == 1);
    FactoredContribution pre = nekrasov_prefactor();
    for (int i = 0; i < 5; ++i) {
        QPoint pt = random_qpoint(11, i);
        auto t = F.eval(QContext{pt});
        mpq_class p = pre.eval(pt);
        mpq_class u = pt.root[3];
        CHECK(t.at(1) == -p);
        CHECK(t.at(2) == -(u + 1 / u) * p);
    }
}

TEST_CASE("DT vertex series of the empty legs")
{
    QSeries dt = dt_vertex_series(Legs{}, 3, SignRule::Formula);
    CHECK(dt.at(0).size() == 1);
    CHECK(dt.at(1).size() == 1);
    CHECK(dt.at(2).size() == 4);
    CHECK(dt.at(3).size() == 10);
    CHECK(at_point(dt).at(0) == 1);
    // one box: sign -1 times [-v]
    CHECK(at_point(dt).at(1) == -nekrasov_prefactor().eval(random_qpoint(5, 0)));

    auto cert = series_equal(dt, plethystic_exp(nekrasov_F(3)));
    CHECK(cert.pass);
    CHECK(cert.rows.size() == 5);

    QSeries unsigned_dt = dt_vertex_series(Legs{}, 2, SignRule::Unit);
    auto bad = series_equal(unsigned_dt, plethystic_exp(nekrasov_F(2)));
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.first_failure);
    CHECK((*bad.first_failure)[0] == 0);
}

TEST_CASE("series comparison")
{
    QSeries a = nekrasov_F(2);
    CHECK(series_equal(a, a).pass);
    QSeries b = a;
    FactoredContribution c = nekrasov_prefactor();
    c.factors[reduce_exponent({1, 0, 0, 0, 0})] += 1;
    b.add(2, 0, {1, c, "extra"});
    auto cert = series_equal(a, b);
    CHECK_FALSE(cert.pass);
    REQUIRE(cert.first_failure);
    CHECK((*cert.first_failure)[1] == 2);
    CHECK(cert.to_json()["rows"].size() == 5);
}

TEST_CASE("PT vertex series")
{
    QSeries empty = pt_vertex_series(Legs{}, 3, SignRule::Formula);
    CHECK(empty.term_count() == 1);
    CHECK(at_point(empty).at(0) == 1);

    QSeries one = pt_vertex_series(Legs{box(), {}, {}, {}}, 2, SignRule::Formula);
    CHECK(one.at(1).size() == 1);
    CHECK(one.at(1)[0].sign == -1);

    QSeries two = pt_vertex_series(Legs{box(), box(), {}, {}}, 1, SignRule::Formula);
    REQUIRE(two.at(0).size() == 1);
    CHECK(two.at(0)[0].sign == -1);

    QSeries dt = dt_vertex_series(Legs{box(), {}, {}, {}}, 1, SignRule::Formula);
    CHECK(dt.at(1).size() == 3);
}

TEST_CASE("output does not depend on the worker count")
{
    SeriesOptions one, four;
    four.jobs = 4;
    Legs legs{box(), box(), {}, {}};
    CHECK(dt_vertex_series(legs, 2, SignRule::Formula, one).to_json() ==
          dt_vertex_series(legs, 2, SignRule::Formula, four).to_json());
    CHECK(pt_vertex_series(legs, 2, SignRule::Formula, one).to_json() ==
          pt_vertex_series(legs, 2, SignRule::Formula, four).to_json());
}

TEST_CASE("series JSON")
{
    QSeries s = dt_vertex_series(Legs{}, 1, SignRule::Formula);
    auto j = s.to_json();
    CHECK(j["meta"]["mode"] == "dt");
    CHECK(j["meta"]["q_max"] == 1);
    CHECK(j["coeffs"].size() == 2);
    CHECK(legs_from_json(legs_json(Legs{box(), {}, {}, {}})) == Legs{box(), {}, {}, {}});
    CHECK_THROWS_AS(legs_from_json(nlohmann::json::parse("[[[1,2]]]")), InvalidInput);
    CHECK_THROWS_AS(legs_from_json(nlohmann::json::parse("[1]")), InvalidInput);
}
