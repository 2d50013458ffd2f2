#include "doctest.h"

#include "quadvertex/checks.hpp"

using namespace quadvertex;

namespace {

bool row_pass(const CheckReport& r, const std::string& label)
{
    for (const auto& row : r.rows)
        if (row["label"] == label)
            return row["pass"];
    FAIL("no row " << label);
    return false;
}

} // namespace

TEST_CASE("leg enumeration for the correspondence")
{
    CHECK(legs_of_size(0).size() == 1);
    CHECK(legs_of_size(1).size() == 4);
    CHECK(legs_of_size(2).size() == 18);
    CHECK(legs_of_size(3, 2).size() == 60);
    CHECK(line_legs_of_size(2).size() == 9);
    CHECK(line_legs_of_size(2, 1).size() == 6);
}

TEST_CASE("check reports")
{
    CheckReport n = check_nekrasov(2);
    CHECK(n.pass);
    CHECK(n.rows.size() == 4);

    CheckReport a = check_dtpt(Legs{PlanePartition::single_box(), {}, {}, {}}, 2);
    CHECK(a.pass);
    // a leg along x4 is moved to x3 first; left in place the signs are unique but not the closed-form ones
    Legs x4{PlanePartition(), PlanePartition(), PlanePartition(), PlanePartition::single_box()};
    CHECK(check_dtpt(x4, 2).pass);
    CheckOptions raw;
    raw.free_fourth_leg = false;
    CheckReport b = check_dtpt(x4, 2, raw);
    CHECK(row_pass(b, "q^1 signs unique"));
    CHECK(row_pass(b, "DT = PT x DT(empty), searched signs"));
    CHECK_FALSE(row_pass(b, "formula signs"));

    CHECK(check_conifold(1, 2).pass);
    CHECK(check_coho2(2).pass);
}
