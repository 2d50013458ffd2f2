#include "doctest.h"

#include "quadvertex/geometry.hpp"
#include "quadvertex/limits.hpp"
#include "quadvertex/signs.hpp"

using namespace quadvertex;

namespace {

PlanePartition box() { return PlanePartition::single_box(); }

AssemblyOptions all_minus()
{
    AssemblyOptions o;
    o.edge_sign = [](std::size_t, const PlanePartition&) { return -1; };
    return o;
}

} // namespace

TEST_CASE("f_abc")
{
    CHECK(f_abc(1, -1, -2, PlanePartition()) == 0);
    CHECK(f_abc(0, 0, 0, PlanePartition(std::vector<std::vector<int>>{{2, 1}})) == 3);
    CHECK(f_abc(-1, -1, 0, box()) == 1);
    // boxes (0,0,0), (1,0,0): 1 + (1 - m)
    CHECK(f_abc(1, -1, -2, PlanePartition(std::vector<std::vector<int>>{{1}, {1}})) == 1);
    CHECK(f_abc(-1, -1, 0, PlanePartition(std::vector<std::vector<int>>{{1, 1}})) == 3);
}

TEST_CASE("Euler characteristic of glued data")
{
    ToricGeometry c4 = builtin_geometry("c4");
    SolidPartition two(Legs{}, {{0, 0, 0, 0}, {1, 0, 0, 0}});
    CHECK(chi(c4, {}, std::vector<SolidPartition>{two}) == 2);

    ToricGeometry con = builtin_geometry("conifold_x_c");
    Legs line{box(), {}, {}, {}};
    CHECK(chi(con, {box()}, std::vector<SolidPartition>{cm_solid_partition(line), cm_solid_partition(line)}) == 1);
    SolidPartition extra(line, {{0, 1, 0, 0}});
    CHECK(chi(con, {box()}, std::vector<SolidPartition>{extra, cm_solid_partition(line)}) == 2);
    CHECK(chi(con, {box()}, std::vector<BoxConfiguration>{BoxConfiguration(line, {{-1, 0, 0, 0}}),
                                                          BoxConfiguration(line, {})}) == 2);
    Legs wrong{PlanePartition(), box(), PlanePartition(), PlanePartition()};
    CHECK_THROWS_AS(chi(con, {box()}, std::vector<SolidPartition>{cm_solid_partition(wrong), cm_solid_partition(line)}),
                    GluingViolation);
}

TEST_CASE("geometry files")
{
    auto names = builtin_geometry_names();
    CHECK(names.size() == 3);
    for (const auto& n : names) {
        ToricGeometry g = builtin_geometry(n);
        CHECK_NOTHROW(g.validate());
        CHECK(ToricGeometry::from_json(g.to_json()).to_json() == g.to_json());
    }
    CHECK_THROWS_AS(builtin_geometry("p3"), InvalidInput);

    nlohmann::json j = builtin_geometry("conifold_x_c").to_json();
    nlohmann::json bad = j;
    bad["charts"][1]["transform"][3] = {0, 0, 1, 1};
    CHECK_THROWS_AS(ToricGeometry::from_json(bad), InvalidInput);
    bad = j;
    bad["edges"][0]["degrees"] = {-1, 0, 0};
    CHECK_THROWS_AS(ToricGeometry::from_json(bad), InvalidInput);
    bad = j;
    bad["edges"][0]["charts"] = {0, 5};
    CHECK_THROWS_AS(ToricGeometry::from_json(bad), InvalidInput);
    bad = j;
    bad["edges"][0]["axes"] = {0, 1};
    CHECK_THROWS_AS(ToricGeometry::from_json(bad), InvalidInput);
    CHECK_THROWS_AS(ToricGeometry::from_json(nlohmann::json{{"name", "x"}}), InvalidInput);
}

TEST_CASE("conifold assembly")
{
    ToricGeometry con = builtin_geometry("conifold_x_c");
    QSeries z = assemble_up_to(con, 1, 2, all_minus());
    for (std::uint64_t i = 0; i < 3; ++i) {
        QPoint pt = random_qpoint(11, i);
        auto t = z.eval(QContext{pt});
        CHECK(t.at(0, 0) == 1);
        CHECK(t.at(0, 1) == 0);
        // -[y]/[t4]
        FactoredContribution ref = bracket_of_monomial(reduce_exponent({0, 0, 0, 0, 1})) *
                                   bracket_of_monomial(reduce_exponent({0, 0, 0, 1, 0}), -1);
        CHECK(t.at(1, 1) == -ref.eval(pt));
    }
    CHECK(series_equal(assemble_up_to(con, 2, 3, all_minus()), conifold_closed_form(3, 2)).pass);
    CHECK(series_equal(dim_reduce(assemble_up_to(con, 2, 3, all_minus())), conifold_koo_form(3, 2)).pass);
    // without edge signs degree one already fails
    CHECK_FALSE(series_equal(assemble_up_to(con, 1, 2), conifold_closed_form(2, 1)).pass);

    auto koo = conifold_koo_form(2, 1).eval(QContext{random_qpoint(3, 0)});
    CHECK(koo.at(0, 0) == 1);
    CHECK(koo.at(1, 1) == -1);
}

TEST_CASE("conifold edge signs")
{
    ToricGeometry con = builtin_geometry("conifold_x_c");
    auto r1 = search_edge_signs(con, {1}, 3, conifold_closed_form(3, 1), 1);
    REQUIRE(r1.solutions.size() == 1);
    CHECK(r1.solutions[0] == std::vector<int>{-1});
    auto r2 = search_edge_signs(con, {2}, 3, conifold_closed_form(3, 2), 2);
    REQUIRE(r2.unknowns.size() == 3);
    REQUIRE(r2.solutions.size() == 1);
    CHECK(r2.solutions[0] == std::vector<int>{-1, -1, -1});
    CHECK_THROWS_AS(search_edge_signs(con, {2}, 3, conifold_closed_form(3, 2), 2, {}, 5, 1, 4), SignCapExceeded);
}

TEST_CASE("local P2 splittings")
{
    ToricGeometry p2 = builtin_geometry("local_p2");
    Assembly a = assemble(p2, {1}, 2);
    CHECK(a.splittings.size() == 3);
    for (const auto& s : a.splittings) {
        CHECK(s.vertex_factors == 3);
        CHECK(s.edge_factors == 3);
        CHECK(s.edge_chi == 1);
    }
}

TEST_CASE("C4 assembly is the vertex")
{
    ToricGeometry c4 = builtin_geometry("c4");
    AssemblyOptions o;
    o.mode = Mode::DT;
    Assembly a = assemble(c4, {}, 3, o);
    CHECK(series_equal(a.series, dt_vertex_series(Legs{}, 3, SignRule::Formula)).pass);
}
