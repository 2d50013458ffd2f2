#ifndef QUADVERTEX_CHECKS_HPP
#define QUADVERTEX_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "quadvertex/geometry.hpp"
#include "quadvertex/limits.hpp"
#include "quadvertex/signs.hpp"

namespace quadvertex {

// One verification run: a table of rows, each with its own verdict.
struct CheckReport {
    std::string name;
    bool pass = true;
    nlohmann::json rows = nlohmann::json::array();

    void add_row(const std::string& label, bool ok, nlohmann::json info = nlohmann::json::object());
    nlohmann::json to_json() const;
};

struct CheckOptions {
    std::uint64_t seed = 20240611;
    int points = 5;
    int jobs = 1;
    std::uint64_t sign_cap = std::uint64_t(1) << 20;
    // conifold edge signs are searched mod q^(sign_q_max + 1) when that exceeds the check order
    int sign_q_max = 0;
    // move a nonempty x4 leg onto an empty axis among x1..x3 before comparing with the sign formulas
    bool free_fourth_leg = true;
};

// DT(empty legs) against Exp(F), with per-order sign search and fixed-point counts.
CheckReport check_nekrasov(int q_max, const CheckOptions& opt = {});

// Normalized DT = normalized PT x DT(empty legs), signs solved order by order.
// The sign formulas assume no leg along x4; with free_fourth_leg such data is relabeled first.
CheckReport check_dtpt(const Legs& legs, int q_max, const CheckOptions& opt = {});

// All leg tuples of the given total size with at most max_legs nonempty legs.
std::vector<Legs> legs_of_size(int total, int max_legs = 4);
// legs with the x4 leg swapped onto the last empty axis among x1..x3, if there is one
Legs fourth_leg_free(const Legs& legs);

// Conifold x C against the closed form; edge signs searched per degree.
CheckReport check_conifold(int d_max, int q_max, const CheckOptions& opt = {});
// y = t4 reduction of the same assembly against the KOO form.
CheckReport check_koo(int d_max, int q_max, const CheckOptions& opt = {});

// y = t4 fixed point by fixed point and for whole series, against the 3-fold oracle.
CheckReport check_dimred(const std::vector<Legs3>& legs, int q_max, const CheckOptions& opt = {});
std::vector<Legs3> line_legs_of_size(int total, int max_legs = 2);

CheckReport check_coho1(int q_max, const CheckOptions& opt = {});
CheckReport check_coho2(int q_max, const CheckOptions& opt = {});

// Vertex properties on every enumerated fixed point, enumeration counts, job independence.
CheckReport check_properties(const CheckOptions& opt = {});

} // namespace quadvertex

#endif
