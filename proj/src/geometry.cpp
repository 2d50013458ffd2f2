#include "quadvertex/geometry.hpp"

#include <map>
#include <sstream>

#include "quadvertex/signs.hpp"

namespace quadvertex {

namespace detail {
const std::map<std::string, std::string>& geometry_files();
}

namespace {

using LP = LaurentPoly;
using Row = std::array<int, 4>;

Matrix4 identity()
{
    Matrix4 m{};
    for (int i = 0; i < 4; ++i)
        m[i][i] = 1;
    return m;
}

Matrix4 compose(const Matrix4& a, const Matrix4& b)
{
    Matrix4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                r[i][k] += a[i][j] * b[j][k];
    return r;
}

Row add(Row a, const Row& b, int s = 1)
{
    for (int i = 0; i < 4; ++i)
        a[i] += s * b[i];
    return a;
}

// Substitution images for a polynomial in the variables given by `rows`,
// with y -> gamma^{-1} y.
std::array<Exponent, 5> images(const Matrix4& rows, const Row& gamma)
{
    std::array<Exponent, 5> im{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            im[i][k] = rows[i][k];
    for (int k = 0; k < 4; ++k)
        im[4][k] = -gamma[k];
    im[4][4] = 1;
    return im;
}

// bundle weight of a chart in global exponents
Row global_bundle(const Chart& c)
{
    Row g{};
    for (int j = 0; j < 4; ++j)
        g = add(g, c.transform[j], c.bundle[j]);
    return g;
}

Matrix4 read_matrix(const nlohmann::json& j)
{
    Matrix4 m = j.get<Matrix4>();
    return m;
}

} // namespace

ToricGeometry ToricGeometry::from_json(const nlohmann::json& j)
{
    ToricGeometry g;
    try {
        g.name = j.at("name").get<std::string>();
        g.classes = j.value("classes", 1);
        for (const auto& c : j.at("charts"))
            g.charts.push_back({c.at("name").get<std::string>(), read_matrix(c.at("transform")), {0, 0, 0, 0}});
        for (const auto& e : j.at("edges")) {
            GeometryEdge edge;
            edge.charts = e.at("charts").get<std::array<int, 2>>();
            edge.axes = e.value("axes", std::array<int, 2>{0, 0});
            edge.degrees = e.at("degrees").get<std::array<int, 3>>();
            edge.transform = e.contains("transform") ? read_matrix(e.at("transform")) : identity();
            edge.curve_class = e.value("class", 0);
            g.edges.push_back(edge);
        }
        if (j.contains("bundle"))
            for (const auto& [k, v] : j.at("bundle").items()) {
                std::size_t idx = std::stoul(k);
                if (idx >= g.charts.size())
                    throw InvalidInput("bundle refers to a missing chart " + k);
                g.charts[idx].bundle = v.get<Row>();
            }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad geometry file: ") + e.what());
    } catch (const std::logic_error& e) {
        throw InvalidInput(std::string("bad geometry file: ") + e.what());
    }
    g.validate();
    return g;
}

nlohmann::json ToricGeometry::to_json() const
{
    nlohmann::json j;
    j["name"] = name;
    j["classes"] = classes;
    j["charts"] = nlohmann::json::array();
    j["bundle"] = nlohmann::json::object();
    for (std::size_t i = 0; i < charts.size(); ++i) {
        j["charts"].push_back({{"name", charts[i].name}, {"transform", charts[i].transform}});
        j["bundle"][std::to_string(i)] = charts[i].bundle;
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : edges)
        j["edges"].push_back({{"charts", e.charts},
                              {"axes", e.axes},
                              {"degrees", e.degrees},
                              {"transform", e.transform},
                              {"class", e.curve_class}});
    return j;
}

void ToricGeometry::validate() const
{
    if (charts.empty())
        throw InvalidInput("geometry without charts");
    for (const auto& c : charts) {
        // t1 t2 t3 t4 must be preserved
        Row s{};
        for (const auto& r : c.transform)
            s = add(s, r);
        if (s != Row{1, 1, 1, 1})
            throw InvalidInput("chart " + c.name + " does not preserve t1 t2 t3 t4");
    }
    for (std::size_t n = 0; n < edges.size(); ++n) {
        const auto& e = edges[n];
        std::string where = "edge " + std::to_string(n) + ": ";
        for (int k = 0; k < 2; ++k) {
            if (e.charts[k] < 0 || e.charts[k] >= static_cast<int>(charts.size()))
                throw InvalidInput(where + "chart index out of range");
            if (e.axes[k] < 0 || e.axes[k] > 3)
                throw InvalidInput(where + "axis out of range");
        }
        if (e.curve_class < 0 || e.curve_class >= classes)
            throw InvalidInput(where + "curve class out of range");
        if (e.degrees[0] + e.degrees[1] + e.degrees[2] != -2)
            throw InvalidInput(where + "normal degrees must sum to -2");
        // the frame is the axis permutation of the first chart
        const auto& c0 = charts[static_cast<std::size_t>(e.charts[0])];
        const auto& c1 = charts[static_cast<std::size_t>(e.charts[1])];
        Matrix4 expected_frame{};
        expected_frame[0][e.axes[0]] = 1;
        for (int i = 0; i < 3; ++i)
            expected_frame[i + 1][kComplement[e.axes[0]][i]] = 1;
        if (e.transform != expected_frame)
            throw InvalidInput(where + "frame does not match the axis of the first chart");
        // the standard edge transform must land on the second chart's variables
        Matrix4 s = compose(e.transform, c0.transform);
        std::array<Row, 4> image;
        image[0] = add(Row{}, s[0], -1);
        for (int i = 1; i < 4; ++i)
            image[i] = add(s[i], s[0], -e.degrees[i - 1]);
        if (image[0] != c1.transform[e.axes[1]])
            throw InvalidInput(where + "transition does not match the second chart along the line");
        for (int i = 0; i < 3; ++i)
            if (image[i + 1] != c1.transform[kComplement[e.axes[1]][i]])
                throw InvalidInput(where + "transition does not match the second chart");
    }
}

ToricGeometry builtin_geometry(const std::string& name)
{
    const auto& files = detail::geometry_files();
    auto it = files.find(name);
    if (it == files.end())
        throw InvalidInput("unknown geometry " + name);
    return ToricGeometry::from_json(nlohmann::json::parse(it->second));
}

std::vector<std::string> builtin_geometry_names()
{
    std::vector<std::string> out;
    for (const auto& [k, v] : detail::geometry_files())
        out.push_back(k);
    return out;
}

int f_abc(int m, int m1, int m2, const PlanePartition& lambda)
{
    int s = 0;
    for (const auto& b : lambda.boxes())
        s += 1 - m * b[0] - m1 * b[1] - m2 * b[2];
    return s;
}

Legs chart_legs(const ToricGeometry& g, int chart, const std::vector<PlanePartition>& edge_parts)
{
    if (edge_parts.size() != g.edges.size())
        throw InvalidInput("one partition per edge is required");
    Legs legs;
    for (std::size_t n = 0; n < g.edges.size(); ++n)
        for (int k = 0; k < 2; ++k)
            if (g.edges[n].charts[k] == chart) {
                auto& slot = legs[static_cast<std::size_t>(g.edges[n].axes[k])];
                if (!slot.empty() && !edge_parts[n].empty())
                    throw InvalidInput("two edges along the same axis of a chart");
                if (!edge_parts[n].empty())
                    slot = edge_parts[n];
            }
    return legs;
}

namespace {

int edge_chi(const ToricGeometry& g, const std::vector<PlanePartition>& edge_parts)
{
    int s = 0;
    for (std::size_t n = 0; n < g.edges.size(); ++n) {
        const auto& d = g.edges[n].degrees;
        s += f_abc(d[0], d[1], d[2], edge_parts[n]);
    }
    return s;
}

void check_glue(const ToricGeometry& g, const std::vector<PlanePartition>& edge_parts, std::size_t chart,
                const Legs& legs)
{
    if (chart_legs(g, static_cast<int>(chart), edge_parts) != legs)
        throw GluingViolation("legs at chart " + g.charts[chart].name + " differ from the edge partitions");
}

} // namespace

int chi(const ToricGeometry& g, const std::vector<PlanePartition>& edge_parts, const std::vector<SolidPartition>& vertices)
{
    if (vertices.size() != g.charts.size())
        throw InvalidInput("one vertex per chart is required");
    int s = edge_chi(g, edge_parts);
    for (std::size_t a = 0; a < vertices.size(); ++a) {
        check_glue(g, edge_parts, a, vertices[a].legs());
        s += renormalized_volume(vertices[a]);
    }
    return s;
}

int chi(const ToricGeometry& g, const std::vector<PlanePartition>& edge_parts,
        const std::vector<BoxConfiguration>& vertices)
{
    if (vertices.size() != g.charts.size())
        throw InvalidInput("one vertex per chart is required");
    int s = edge_chi(g, edge_parts);
    for (std::size_t a = 0; a < vertices.size(); ++a) {
        check_glue(g, edge_parts, a, vertices[a].legs());
        s += cm_solid_partition(vertices[a].legs()).cm_volume() + vertices[a].length();
    }
    return s;
}

FactoredContribution chart_vertex_contribution(const ToricGeometry& g, int chart, const VertexCharacter& ch, Mode mode)
{
    const Chart& c = g.charts.at(static_cast<std::size_t>(chart));
    tilde_v(ch, mode); // property checks in chart variables
    LP v = tilde_v_poly(ch).substitute(images(c.transform, global_bundle(c)));
    return bracket(reduce_cy(v));
}

FactoredContribution edge_contribution(const ToricGeometry& g, std::size_t edge, const PlanePartition& lambda)
{
    const GeometryEdge& e = g.edges.at(edge);
    if (lambda.empty())
        return {};
    EdgeGeometry eg(e.degrees);
    tilde_e(lambda, eg);
    const Chart& c0 = g.charts[static_cast<std::size_t>(e.charts[0])];
    Matrix4 s = compose(e.transform, c0.transform);
    LP p = tilde_e_poly(lambda, eg).substitute(images(s, global_bundle(c0)));
    return bracket(reduce_cy(p));
}

namespace {

struct Piece {
    int power = 0;
    int sign = 1;
    FactoredContribution c;
    std::string key;
};

std::vector<Piece> chart_pieces(const ToricGeometry& g, int chart, const Legs& legs, int budget,
                                const AssemblyOptions& opt)
{
    std::vector<Piece> out;
    if (opt.mode == Mode::DT) {
        auto pis = enumerate_dt(legs, budget, opt.series.enumeration);
        out.resize(pis.size());
        parallel_for(pis.size(), opt.series.jobs, [&](std::size_t i) {
            const auto& pi = pis[i];
            int s = opt.vertex_signs == SignRule::Formula  ? sigma_dt(pi)
                    : opt.vertex_signs == SignRule::Dimred ? sigma_dimred_dt(pi)
                                                           : 1;
            out[i] = {renormalized_volume(pi), s, chart_vertex_contribution(g, chart, dt_character(pi), Mode::DT),
                      pi.key()};
        });
    } else {
        int cm = cm_solid_partition(legs).cm_volume();
        if (budget < cm)
            return out;
        auto bs = enumerate_pt(legs, budget - cm, opt.series.enumeration);
        out.resize(bs.size());
        parallel_for(bs.size(), opt.series.jobs, [&](std::size_t i) {
            const auto& b = bs[i];
            int s = opt.vertex_signs == SignRule::Formula  ? sigma_pt(legs, b)
                    : opt.vertex_signs == SignRule::Dimred ? sigma_dimred_pt(legs, b)
                                                           : 1;
            out[i] = {cm + b.length(), s, chart_vertex_contribution(g, chart, pt_character(legs, b), Mode::PT),
                      b.key()};
        });
    }
    return out;
}

int min_power(const Legs& legs, Mode mode)
{
    SolidPartition cm = cm_solid_partition(legs);
    return mode == Mode::DT ? renormalized_volume(cm) : cm.cm_volume();
}

// every assignment of edge sizes with the given class totals
void edge_sizes(const ToricGeometry& g, std::size_t n, std::vector<int>& left, std::vector<int>& cur,
                std::vector<std::vector<int>>& out)
{
    if (n == g.edges.size()) {
        for (int x : left)
            if (x != 0)
                return;
        out.push_back(cur);
        return;
    }
    int c = g.edges[n].curve_class;
    for (int s = 0; s <= left[static_cast<std::size_t>(c)]; ++s) {
        left[static_cast<std::size_t>(c)] -= s;
        cur.push_back(s);
        edge_sizes(g, n + 1, left, cur, out);
        cur.pop_back();
        left[static_cast<std::size_t>(c)] += s;
    }
}

std::vector<std::vector<PlanePartition>> splittings(const ToricGeometry& g, const std::vector<int>& beta)
{
    std::vector<std::vector<int>> sizes;
    std::vector<int> left = beta, cur;
    edge_sizes(g, 0, left, cur, sizes);
    std::vector<std::vector<PlanePartition>> out;
    for (const auto& sz : sizes) {
        std::vector<std::vector<PlanePartition>> acc{{}};
        for (int s : sz) {
            std::vector<std::vector<PlanePartition>> next;
            for (const auto& a : acc)
                for (const auto& p : plane_partitions_of_size(s)) {
                    auto b = a;
                    b.push_back(p);
                    next.push_back(std::move(b));
                }
            acc = std::move(next);
        }
        out.insert(out.end(), acc.begin(), acc.end());
    }
    return out;
}

} // namespace

Assembly assemble(const ToricGeometry& g, const std::vector<int>& beta, int q_max, const AssemblyOptions& opt)
{
    if (static_cast<int>(beta.size()) != g.classes)
        throw InvalidInput("beta needs one entry per curve class");
    int degree = 0;
    for (int b : beta) {
        if (b < 0)
            throw InvalidInput("negative curve degree");
        degree += b;
    }
    Assembly out;
    out.series = QSeries(q_max, degree);
    for (const auto& parts : splittings(g, beta)) {
        Splitting sp;
        sp.edges = parts;
        sp.edge_chi = edge_chi(g, parts);
        sp.vertex_factors = static_cast<int>(g.charts.size());
        sp.edge_factors = static_cast<int>(g.edges.size());
        sp.series = QSeries(q_max, degree);

        std::vector<Legs> legs;
        int floor = sp.edge_chi;
        for (std::size_t a = 0; a < g.charts.size(); ++a) {
            legs.push_back(chart_legs(g, static_cast<int>(a), parts));
            floor += min_power(legs.back(), opt.mode);
        }
        if (floor > q_max) {
            out.splittings.push_back(std::move(sp));
            continue;
        }
        // edge factors first
        Piece base{sp.edge_chi, 1, FactoredContribution{}, ""};
        std::ostringstream key;
        for (std::size_t n = 0; n < parts.size(); ++n) {
            if (!parts[n].empty() && opt.edge_sign)
                base.sign *= opt.edge_sign(n, parts[n]);
            base.c = base.c * edge_contribution(g, n, parts[n]);
            key << "e" << n << ":" << parts[n].str() << ";";
        }
        base.key = key.str();
        std::vector<Piece> acc{base};
        for (std::size_t a = 0; a < g.charts.size(); ++a) {
            int budget = q_max - (floor - min_power(legs[a], opt.mode));
            auto pieces = chart_pieces(g, static_cast<int>(a), legs[a], budget, opt);
            std::vector<Piece> next;
            for (const auto& x : acc)
                for (const auto& p : pieces)
                    next.push_back({x.power + p.power, x.sign * p.sign, x.c * p.c,
                                    x.key + "v" + std::to_string(a) + ":" + p.key + ";"});
            acc = std::move(next);
            // later charts add at least their minimum
            int rest = 0;
            for (std::size_t b = a + 1; b < g.charts.size(); ++b)
                rest += min_power(legs[b], opt.mode);
            std::erase_if(acc, [&](const Piece& p) { return p.power + rest > q_max; });
        }
        for (auto& p : acc) {
            SignedTerm t{p.sign, p.c.canonical(), p.key};
            sp.series.add(p.power, degree, t);
            out.series.add(p.power, degree, std::move(t));
        }
        sp.series.canonicalize();
        out.splittings.push_back(std::move(sp));
    }
    out.series.canonicalize();
    out.series.meta = {{"geometry", g.name}, {"beta", beta}, {"mode", opt.mode == Mode::DT ? "dt" : "pt"}};
    return out;
}

QSeries assemble_up_to(const ToricGeometry& g, int d_max, int q_max, const AssemblyOptions& opt)
{
    if (g.classes != 1)
        throw InvalidInput("assemble_up_to needs a single curve class");
    QSeries s(q_max, d_max);
    for (int d = 0; d <= d_max; ++d) {
        Assembly a = assemble(g, {d}, q_max, opt);
        for (const auto& [k, terms] : a.series.coeffs())
            for (const auto& t : terms)
                s.add(k.first, d, t);
    }
    s.canonicalize();
    s.meta = {{"geometry", g.name}, {"d_max", d_max}, {"mode", opt.mode == Mode::DT ? "dt" : "pt"}};
    return s;
}

SeriesExpr conifold_closed_form(int q_max, int d_max)
{
    FactoredContribution pre = (bracket_of_monomial(reduce_exponent({0, 0, 0, 0, 1})) *
                                bracket_of_monomial(reduce_exponent({0, 0, 0, 1, 0}), -1))
                                   .canonical();
    QSeries f(q_max, d_max);
    if (d_max >= 1)
        for (int k = 1; k <= q_max; ++k)
            for (int j = 0; j < k; ++j) {
                FactoredContribution c = pre;
                c.monomial.c[3] += k - 1 - 2 * j;
                f.add(k, 1, {-1, c, std::to_string(k) + "." + std::to_string(j)});
            }
    return plethystic_exp(f);
}

SeriesExpr conifold_koo_form(int q_max, int d_max)
{
    QSeries f(q_max, d_max);
    if (d_max >= 1)
        for (int k = 1; k <= q_max; ++k)
            for (int j = 0; j < k; ++j) {
                FactoredContribution c;
                int p = k - 1 - 2 * j;
                c.monomial = KWeight{{p, p, p, 0}};
                f.add(k, 1, {-1, c, std::to_string(k) + "." + std::to_string(j)});
            }
    return plethystic_exp(f);
}

EdgeSignSearch search_edge_signs(const ToricGeometry& g, const std::vector<int>& beta, int q_max,
                                 const SeriesExpr& target, int target_Q, const AssemblyOptions& opt, int points,
                                 std::uint64_t seed, std::uint64_t cap)
{
    AssemblyOptions plain = opt;
    plain.edge_sign = nullptr;
    Assembly a = assemble(g, beta, q_max, plain);
    int degree = a.series.Q_max();

    EdgeSignSearch res;
    std::map<std::pair<std::size_t, std::string>, std::size_t> index;
    std::vector<std::vector<std::size_t>> uses; // unknowns per splitting
    for (const auto& sp : a.splittings) {
        std::vector<std::size_t> u;
        for (std::size_t n = 0; n < sp.edges.size(); ++n) {
            if (sp.edges[n].empty())
                continue;
            auto k = std::make_pair(n, sp.edges[n].str());
            auto it = index.find(k);
            if (it == index.end()) {
                it = index.emplace(k, res.unknowns.size()).first;
                res.unknowns.emplace_back(n, sp.edges[n]);
            }
            u.push_back(it->second);
        }
        uses.push_back(std::move(u));
    }
    std::size_t n = res.unknowns.size();
    if (n >= 63 || (std::uint64_t(1) << n) > cap)
        throw SignCapExceeded("edge sign search: too many unknowns");

    // values[point][splitting][q], target[point][q]
    std::vector<std::vector<std::vector<mpq_class>>> values;
    std::vector<std::vector<mpq_class>> goal;
    for (std::uint64_t index_pt = 0; static_cast<int>(values.size()) < points; ++index_pt) {
        if (index_pt > static_cast<std::uint64_t>(points) + 64)
            throw SingularPoint("too many singular points in edge sign search");
        QContext ctx{random_qpoint(seed, index_pt)};
        try {
            std::vector<std::vector<mpq_class>> row;
            for (const auto& sp : a.splittings) {
                auto t = sp.series.eval(ctx);
                std::vector<mpq_class> col;
                for (int q = 0; q <= q_max; ++q)
                    col.push_back(t.at(q, degree));
                row.push_back(std::move(col));
            }
            auto tt = target.eval(ctx);
            std::vector<mpq_class> gcol;
            for (int q = 0; q <= q_max; ++q)
                gcol.push_back(tt.at(q, target_Q));
            values.push_back(std::move(row));
            goal.push_back(std::move(gcol));
        } catch (const SingularPoint&) {
        }
    }
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << n); ++m) {
        std::vector<int> eps(n);
        for (std::size_t i = 0; i < n; ++i)
            eps[i] = (m >> i) & 1 ? -1 : 1;
        bool ok = true;
        for (std::size_t p = 0; p < values.size() && ok; ++p)
            for (int q = 0; q <= q_max && ok; ++q) {
                mpq_class s = 0;
                for (std::size_t k = 0; k < a.splittings.size(); ++k) {
                    int sign = 1;
                    for (std::size_t u : uses[k])
                        sign *= eps[u];
                    s += sign * values[p][k][static_cast<std::size_t>(q)];
                }
                ok = s == goal[p][static_cast<std::size_t>(q)];
            }
        if (ok)
            res.solutions.push_back(std::move(eps));
    }
    std::sort(res.solutions.begin(), res.solutions.end(), std::greater<>());
    return res;
}

} // namespace quadvertex
