#ifndef QUADVERTEX_GEOMETRY_HPP
#define QUADVERTEX_GEOMETRY_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quadvertex/series.hpp"

namespace quadvertex {

using Matrix4 = std::array<std::array<int, 4>, 4>;

struct Chart {
    std::string name;
    // row i: exponents of the global t for the chart variable t_i
    Matrix4 transform;
    // insertion bundle weight in chart variables
    std::array<int, 4> bundle{0, 0, 0, 0};
};

struct GeometryEdge {
    std::array<int, 2> charts{0, 0};
    // axis of the line in each chart
    std::array<int, 2> axes{0, 0};
    std::array<int, 3> degrees{0, 0, 0};
    // row i: edge-frame variable s_i (s_1 along the line) in variables of charts[0]
    Matrix4 transform;
    int curve_class = 0;
};

struct ToricGeometry {
    std::string name;
    std::vector<Chart> charts;
    std::vector<GeometryEdge> edges;
    int classes = 0;

    // Throws InvalidInput on malformed data or inconsistent transforms.
    static ToricGeometry from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;
};

// "c4", "conifold_x_c", "local_p2"
ToricGeometry builtin_geometry(const std::string& name);
std::vector<std::string> builtin_geometry_names();

// sum over boxes (0-indexed i,j,k) of 1 - m i - m' j - m'' k
int f_abc(int m, int m1, int m2, const PlanePartition& lambda);

// Legs at a chart induced by edge partitions (one per edge).
Legs chart_legs(const ToricGeometry& g, int chart, const std::vector<PlanePartition>& edge_parts);

struct GluingViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sum_alpha |pi_alpha| + sum_edges f(lambda_e); checks the gluing condition.
int chi(const ToricGeometry& g, const std::vector<PlanePartition>& edge_parts,
        const std::vector<SolidPartition>& vertices);
int chi(const ToricGeometry& g, const std::vector<PlanePartition>& edge_parts,
        const std::vector<BoxConfiguration>& vertices);

struct AssemblyOptions {
    Mode mode = Mode::PT;
    SignRule vertex_signs = SignRule::Formula;
    // sign of the edge term for partition lambda on edge e; default +1
    std::function<int(std::size_t, const PlanePartition&)> edge_sign;
    SeriesOptions series;
};

struct Splitting {
    std::vector<PlanePartition> edges;
    int edge_chi = 0;
    int vertex_factors = 0;
    int edge_factors = 0;
    QSeries series; // this splitting's terms only, edge signs applied
};

struct Assembly {
    QSeries series; // q^chi Q^{sum beta}
    std::vector<Splitting> splittings;
};

// Vertex and edge brackets in global variables.
FactoredContribution chart_vertex_contribution(const ToricGeometry& g, int chart, const VertexCharacter& ch, Mode mode);
FactoredContribution edge_contribution(const ToricGeometry& g, std::size_t edge, const PlanePartition& lambda);

Assembly assemble(const ToricGeometry& g, const std::vector<int>& beta, int q_max, const AssemblyOptions& opt = {});

// All degrees up to d_max: the Q^0 slice is 1.
QSeries assemble_up_to(const ToricGeometry& g, int d_max, int q_max, const AssemblyOptions& opt = {});

// Exp(Q [y] / ([t4][y^{1/2} q][y^{1/2} q^{-1}]))
SeriesExpr conifold_closed_form(int q_max, int d_max);
// Exp(-q Q / ((1 - q/kappa)(1 - q kappa))), kappa = (t1 t2 t3)^{1/2}
SeriesExpr conifold_koo_form(int q_max, int d_max);

struct EdgeSignSearch {
    std::vector<std::pair<std::size_t, PlanePartition>> unknowns;
    std::vector<std::vector<int>> solutions;
};

// Brute force over one sign per (edge, partition) occurring in degree beta.
EdgeSignSearch search_edge_signs(const ToricGeometry& g, const std::vector<int>& beta, int q_max,
                                 const SeriesExpr& target, int target_Q, const AssemblyOptions& opt = {},
                                 int points = 5, std::uint64_t seed = 1, std::uint64_t cap = 1u << 16);

} // namespace quadvertex

#endif
