#include "quadvertex/checks.hpp"

#include <algorithm>
#include <map>

namespace quadvertex {

using nlohmann::json;

void CheckReport::add_row(const std::string& label, bool ok, json info)
{
    info["label"] = label;
    info["pass"] = ok;
    rows.push_back(std::move(info));
    pass = pass && ok;
}

json CheckReport::to_json() const { return {{"check", name}, {"pass", pass}, {"rows", rows}}; }

namespace {

SeriesOptions series_options(const CheckOptions& opt)
{
    SeriesOptions s;
    s.jobs = opt.jobs;
    return s;
}

SignSearchOptions sign_options(const CheckOptions& opt)
{
    SignSearchOptions s;
    s.seed = opt.seed;
    s.exact_points = opt.points;
    s.cap = opt.sign_cap;
    return s;
}

std::vector<int> signs_at(const QSeries& s, int q, int Q = 0)
{
    std::vector<int> out;
    for (const auto& t : s.at(q, Q))
        out.push_back(t.sign);
    return out;
}

std::vector<int> negated(std::vector<int> v)
{
    for (int& x : v)
        x = -x;
    return v;
}

json cert_summary(const EqualityCertificate& c)
{
    json j{{"points", c.rows.size()}, {"seed", c.seed}};
    if (c.first_failure)
        j["first_failure"] = {{"row", (*c.first_failure)[0]}, {"q", (*c.first_failure)[1]}, {"Q", (*c.first_failure)[2]}};
    return j;
}

// columns minus target, coefficient (k, Q) of a series expression
SignProblem order_problem(const std::vector<FactoredContribution>& cols, const SeriesExpr& target, int k, int Q = 0)
{
    return make_sign_problem(
        cols, [=](const FpPoint& p) { return target.eval(FpContext{p}).at(k, Q); },
        [=](const QPoint& p) -> mpq_class { return target.eval(QContext{p}).at(k, Q); });
}

json solutions_json(const SignSearchResult& r)
{
    json j{{"solutions", r.solutions.size()}, {"linear_algebra", r.used_linear_algebra}};
    if (r.solutions.size() <= 4)
        j["signs"] = r.solutions;
    return j;
}

void partitions_of(int n, int max_part, Partition& cur, std::vector<Partition>& out)
{
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_of(n - p, p, cur, out);
        cur.pop_back();
    }
}

std::vector<Partition> partitions_of(int n)
{
    std::vector<Partition> out;
    Partition cur;
    partitions_of(n, n, cur, out);
    return out;
}

std::string legs3_label(const Legs3& l)
{
    return json(l).dump();
}

// Edge signs keyed by (edge, partition).
using EdgeSigns = std::map<std::pair<std::size_t, std::string>, int>;

AssemblyOptions conifold_options(const CheckOptions& opt, const EdgeSigns* signs)
{
    AssemblyOptions a;
    a.mode = Mode::PT;
    a.vertex_signs = SignRule::Formula;
    a.series = series_options(opt);
    if (signs)
        a.edge_sign = [signs](std::size_t e, const PlanePartition& l) {
            auto it = signs->find({e, l.str()});
            return it == signs->end() ? 1 : it->second;
        };
    return a;
}

// Searches the edge signs degree by degree; false if some degree is not unique.
bool search_conifold_signs(const ToricGeometry& g, int d_max, int q_max, const CheckOptions& opt, CheckReport& rep,
                           EdgeSigns& signs)
{
    q_max = std::max(q_max, opt.sign_q_max);
    SeriesExpr target = conifold_closed_form(q_max, d_max);
    bool all_unique = true;
    for (int d = 1; d <= d_max; ++d) {
        EdgeSignSearch r = search_edge_signs(g, {d}, q_max, target, d, conifold_options(opt, nullptr), opt.points,
                                             opt.seed, opt.sign_cap);
        json info{{"degree", d}, {"q_max", q_max}, {"unknowns", r.unknowns.size()}, {"solutions", r.solutions.size()}};
        json parts = json::array();
        for (const auto& u : r.unknowns)
            parts.push_back(u.second.str());
        info["partitions"] = parts;
        bool unique = r.solutions.size() == 1;
        if (unique) {
            info["signs"] = r.solutions[0];
            for (std::size_t i = 0; i < r.unknowns.size(); ++i)
                signs[{r.unknowns[i].first, r.unknowns[i].second.str()}] = r.solutions[0][i];
        }
        all_unique = all_unique && unique;
        rep.add_row("edge signs degree " + std::to_string(d), unique, info);
    }
    return all_unique;
}

} // namespace

std::vector<Legs> legs_of_size(int total, int max_legs)
{
    std::vector<Legs> out;
    for (int a = 0; a <= total; ++a)
        for (int b = 0; a + b <= total; ++b)
            for (int c = 0; a + b + c <= total; ++c) {
                std::array<int, 4> sz{a, b, c, total - a - b - c};
                int nonempty = static_cast<int>(std::count_if(sz.begin(), sz.end(), [](int s) { return s > 0; }));
                if (nonempty > max_legs)
                    continue;
                std::array<std::vector<PlanePartition>, 4> choices;
                for (std::size_t i = 0; i < 4; ++i)
                    choices[i] = sz[i] == 0 ? std::vector<PlanePartition>{PlanePartition()}
                                            : plane_partitions_of_size(sz[i]);
                for (const auto& p0 : choices[0])
                    for (const auto& p1 : choices[1])
                        for (const auto& p2 : choices[2])
                            for (const auto& p3 : choices[3])
                                out.push_back(Legs{p0, p1, p2, p3});
            }
    return out;
}

std::vector<Legs3> line_legs_of_size(int total, int max_legs)
{
    std::vector<Legs3> out;
    for (int a = 0; a <= total; ++a)
        for (int b = 0; a + b <= total; ++b) {
            std::array<int, 3> sz{a, b, total - a - b};
            int nonempty = static_cast<int>(std::count_if(sz.begin(), sz.end(), [](int s) { return s > 0; }));
            if (nonempty > max_legs)
                continue;
            std::array<std::vector<Partition>, 3> choices;
            for (std::size_t i = 0; i < 3; ++i)
                choices[i] = partitions_of(sz[i]);
            for (const auto& p0 : choices[0])
                for (const auto& p1 : choices[1])
                    for (const auto& p2 : choices[2])
                        out.push_back(Legs3{p0, p1, p2});
        }
    return out;
}

CheckReport check_nekrasov(int q_max, const CheckOptions& opt)
{
    CheckReport rep;
    rep.name = "nekrasov";
    SeriesOptions so = series_options(opt);
    QSeries unit = dt_vertex_series(Legs{}, q_max, SignRule::Unit, so);
    QSeries sig = dt_vertex_series(Legs{}, q_max, SignRule::Formula, so);
    SeriesExpr target = plethystic_exp(nekrasov_F(q_max));

    // solid partitions by size
    static const std::vector<std::size_t> kSolid{1, 1, 4, 10, 26, 59, 140, 307};
    for (int k = 0; k <= q_max; ++k) {
        std::vector<FactoredContribution> cols;
        for (const auto& t : unit.at(k))
            cols.push_back(t.c);
        SignSearchResult r = search_signs(order_problem(cols, target, k), sign_options(opt));
        json info = solutions_json(r);
        info["fixed_points"] = cols.size();
        bool count_ok = static_cast<std::size_t>(k) >= kSolid.size() || cols.size() == kSolid[static_cast<std::size_t>(k)];
        bool ok = count_ok && r.solutions.size() == 1 && r.solutions[0] == signs_at(sig, k);
        rep.add_row("q^" + std::to_string(k), ok, info);
    }
    EqualityCertificate c = series_equal(sig, target, opt.points, opt.seed);
    rep.add_row("DT(empty) = Exp(F)", c.pass, cert_summary(c));
    return rep;
}

Legs fourth_leg_free(const Legs& legs)
{
    if (legs[3].empty())
        return legs;
    for (int j = 2; j >= 0; --j)
        if (legs[j].empty())
            return swap_axes(legs, j, 3);
    return legs;
}

CheckReport check_dtpt(const Legs& input, int q_max, const CheckOptions& opt)
{
    CheckReport rep;
    rep.name = "dtpt " + legs_json(input).dump();
    const Legs legs = opt.free_fourth_leg ? fourth_leg_free(input) : input;
    if (!(legs == input))
        rep.add_row("relabeled axes", true, {{"legs", legs_json(legs)}});
    SeriesOptions so = series_options(opt);
    QSeries dt_u = dt_vertex_series(legs, q_max, SignRule::Unit, so);
    QSeries pt_u = pt_vertex_series(legs, q_max, SignRule::Unit, so);
    QSeries dt_s = dt_vertex_series(legs, q_max, SignRule::Formula, so);
    QSeries pt_s = pt_vertex_series(legs, q_max, SignRule::Formula, so);
    SeriesExpr n = dt_vertex_series(Legs{}, q_max, SignRule::Formula, so);

    // PT terms below the current order, with the signs already fixed
    QSeries fixed(q_max);
    QSeries dt_found(q_max);
    bool formula_everywhere = true;
    for (int k = 0; k <= q_max; ++k) {
        std::vector<FactoredContribution> cols;
        for (const auto& t : dt_u.at(k))
            cols.push_back(t.c);
        for (const auto& t : pt_u.at(k))
            cols.push_back(t.c.negated());
        SeriesExpr target = SeriesExpr(fixed) * n;
        SignSearchResult r = search_signs(order_problem(cols, target, k), sign_options(opt));

        std::vector<int> sigma = signs_at(dt_s, k);
        std::vector<int> sp = signs_at(pt_s, k);
        sigma.insert(sigma.end(), sp.begin(), sp.end());
        bool has_sigma = std::find(r.solutions.begin(), r.solutions.end(), sigma) != r.solutions.end();
        formula_everywhere = formula_everywhere && has_sigma;
        bool unique;
        if (k == 0)
            // the normalization fixes the signs only up to an overall flip
            unique = r.solutions.size() == 2 && r.solutions[0] == negated(r.solutions[1]);
        else
            unique = r.solutions.size() == 1;
        json info = solutions_json(r);
        info["dt_points"] = dt_u.at(k).size();
        info["pt_points"] = pt_u.at(k).size();
        info["contains_formula"] = has_sigma;

        // continue with the formula signs if they solve this order, else with a unique solution
        std::vector<int> chosen = sigma;
        if (!has_sigma && unique) {
            chosen = r.solutions[0];
            json diff = json::array();
            for (std::size_t i = 0; i < sigma.size(); ++i)
                if (chosen[i] != sigma[i])
                    diff.push_back(i < dt_u.at(k).size() ? "DT " + dt_u.at(k)[i].key
                                                         : "PT " + pt_u.at(k)[i - dt_u.at(k).size()].key);
            info["differs_from_formula"] = diff;
        }
        rep.add_row("q^" + std::to_string(k) + " signs unique", unique, info);

        std::size_t offset = dt_u.at(k).size();
        for (std::size_t i = 0; i < offset; ++i) {
            SignedTerm t = dt_u.at(k)[i];
            t.sign = chosen[i];
            dt_found.add(k, 0, t);
        }
        for (std::size_t i = 0; i < pt_u.at(k).size(); ++i) {
            SignedTerm t = pt_u.at(k)[i];
            t.sign = chosen[offset + i];
            fixed.add(k, 0, t);
        }
    }
    EqualityCertificate c = series_equal(dt_found, SeriesExpr(fixed) * n, opt.points, opt.seed);
    rep.add_row("DT = PT x DT(empty), searched signs", c.pass, cert_summary(c));
    c = series_equal(dt_s, SeriesExpr(pt_s) * n, opt.points, opt.seed);
    rep.add_row("formula signs", c.pass && formula_everywhere, cert_summary(c));
    return rep;
}

CheckReport check_conifold(int d_max, int q_max, const CheckOptions& opt)
{
    CheckReport rep;
    rep.name = "conifold";
    ToricGeometry g = builtin_geometry("conifold_x_c");
    EdgeSigns signs;
    search_conifold_signs(g, d_max, q_max, opt, rep, signs);
    QSeries z = assemble_up_to(g, d_max, q_max, conifold_options(opt, &signs));
    EqualityCertificate c = series_equal(z, conifold_closed_form(q_max, d_max), opt.points, opt.seed);
    json info = cert_summary(c);
    info["terms"] = z.term_count();
    rep.add_row("assembly = closed form", c.pass, info);
    return rep;
}

CheckReport check_koo(int d_max, int q_max, const CheckOptions& opt)
{
    CheckReport rep;
    rep.name = "koo";
    ToricGeometry g = builtin_geometry("conifold_x_c");
    EdgeSigns signs;
    search_conifold_signs(g, d_max, q_max, opt, rep, signs);
    QSeries z = dim_reduce(assemble_up_to(g, d_max, q_max, conifold_options(opt, &signs)));
    EqualityCertificate c = series_equal(z, conifold_koo_form(q_max, d_max), opt.points, opt.seed);
    rep.add_row("y = t4 reduction = KOO form", c.pass, cert_summary(c));
    return rep;
}

namespace {

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

CheckReport check_dimred(const std::vector<Legs3>& all, int q_max, const CheckOptions& opt)
{
    CheckReport rep;
    rep.name = "dimred";
    SeriesOptions so = series_options(opt);
    for (const auto& l3 : all) {
        Legs legs = embed_legs(l3);
        int cm = cm_solid_partition(legs).cm_volume();
        int sign = cm % 2 == 0 ? 1 : -1;

        // DT fixed points
        std::map<std::vector<std::array<int, 3>>, WeightMap> oracle;
        for (const auto& c : enumerate_3d(l3, q_max, Mode::DT))
            oracle[c.boxes] = reduce_cy(vertex3d_character(c, Mode::DT));
        int matched = 0, vanished = 0, bad = 0;
        int base = renormalized_volume(cm_solid_partition(legs));
        for (const auto& pi : enumerate_dt(legs, base + q_max, so.enumeration)) {
            WeightMap v = tilde_v(dt_character(pi), Mode::DT);
            auto flat = flat_boxes(pi.embedded());
            if (!flat) {
                if (dim_reduce(bracket(v)).vanished)
                    ++vanished;
                else
                    ++bad;
                continue;
            }
            auto it = oracle.find(*flat);
            if (it == oracle.end() || dim_reduce(v) != it->second)
                ++bad;
            else
                ++matched;
        }
        bool ok = bad == 0 && matched == static_cast<int>(oracle.size());
        rep.add_row("DT fixed points " + legs3_label(l3), ok,
                    {{"matched", matched}, {"vanished", vanished}, {"mismatched", bad}});

        // PT fixed points
        std::map<std::vector<std::array<int, 3>>, WeightMap> pt_oracle;
        for (const auto& c : enumerate_3d(l3, q_max, Mode::PT))
            pt_oracle[c.boxes] = reduce_cy(vertex3d_character(c, Mode::PT));
        matched = vanished = bad = 0;
        for (const auto& b : enumerate_pt(legs, q_max, so.enumeration)) {
            std::vector<Box4> ws;
            for (const auto& x : b.boxes())
                ws.push_back(x.w);
            WeightMap v = tilde_v(pt_character(legs, b), Mode::PT);
            auto flat = flat_boxes(ws);
            if (!flat) {
                if (dim_reduce(bracket(v)).vanished)
                    ++vanished;
                else
                    ++bad;
                continue;
            }
            auto it = pt_oracle.find(*flat);
            if (it == pt_oracle.end() || dim_reduce(v) != it->second)
                ++bad;
            else
                ++matched;
        }
        ok = bad == 0 && matched == static_cast<int>(pt_oracle.size());
        rep.add_row("PT fixed points " + legs3_label(l3), ok,
                    {{"matched", matched}, {"vanished", vanished}, {"mismatched", bad}});

        EqualityCertificate c = series_equal(
            dim_reduce(dt_vertex_series(legs, q_max, SignRule::Dimred, so)),
            SeriesExpr(vertex3d_oracle(l3, q_max, Mode::DT)).negate_q().scaled(sign), opt.points, opt.seed);
        rep.add_row("DT series " + legs3_label(l3), c.pass, cert_summary(c));
        c = series_equal(dim_reduce(pt_vertex_series(legs, q_max, SignRule::Dimred, so)),
                         SeriesExpr(vertex3d_oracle(l3, q_max, Mode::PT)).negate_q().scaled(sign), opt.points,
                         opt.seed);
        rep.add_row("PT series " + legs3_label(l3), c.pass, cert_summary(c));
    }
    return rep;
}

CheckReport check_coho1(int q_max, const CheckOptions& opt)
{
    CheckReport rep;
    rep.name = "coho1";
    SeriesOptions so = series_options(opt);
    SeriesExpr exp_f = plethystic_exp(nekrasov_F(q_max)).negate_q();
    SeriesExpr dt = SeriesExpr(dt_vertex_series(Legs{}, q_max, SignRule::Formula, so)).negate_q();
    static const std::array<std::array<int, 4>, 3> kD{{{1, -2, 0, 3}, {0, 0, 0, 1}, {2, 1, -1, 0}}};
    for (int i = 0; i < opt.points; ++i) {
        LimitPoint p = random_limit_point(opt.seed, static_cast<std::uint64_t>(i));
        const auto& d = kD[static_cast<std::size_t>(i) % kD.size()];
        const auto& l = p.lambda;
        mpq_class l4 = -(l[0] + l[1] + l[2]);
        p.m = -(d[0] * l[0] + d[1] * l[1] + d[2] * l[2] + d[3] * l4);
        mpq_class e = c1c3_integral(d, p);
        auto rhs = macmahon_power(e, q_max, true);
        auto a = exp_f.eval(LimitIContext{p});
        auto b = dt.eval(LimitIContext{p});
        bool ok = true;
        for (int n = 0; n <= q_max; ++n)
            ok = ok && a.at(n) == rhs.at(n) && b.at(n) == rhs.at(n);
        rep.add_row("point " + std::to_string(i), ok, {{"exponent", to_string(e)}, {"d", d}});
    }
    return rep;
}

CheckReport check_coho2(int q_max, const CheckOptions& opt)
{
    CheckReport rep;
    rep.name = "coho2";
    SeriesOptions so = series_options(opt);
    SeriesExpr f = nekrasov_F(q_max);
    SeriesExpr dt = dt_vertex_series(Legs{}, q_max, SignRule::Formula, so);
    for (int i = 0; i < opt.points; ++i) {
        LimitPoint p = random_limit_point(opt.seed, static_cast<std::uint64_t>(i));
        mpq_class b = one_box_euler(p);
        bool ok = true;
        for (int n = 1; n <= q_max; ++n) {
            auto psi = f.eval(LimitIIContext{p, n});
            for (int k = 0; k <= q_max; ++k)
                ok = ok && psi.at(k) == (n == 1 && k == 1 ? b : mpq_class(0));
        }
        // the Hilbert series exp(b q)
        auto h = dt.eval(LimitIIContext{p});
        mpq_class term = 1;
        for (int k = 0; k <= q_max; ++k) {
            ok = ok && h.at(k) == term;
            term = term * b / (k + 1);
        }
        rep.add_row("point " + std::to_string(i), ok, {{"one_box", to_string(b)}});
    }
    return rep;
}

CheckReport check_properties(const CheckOptions& opt)
{
    CheckReport rep;
    rep.name = "properties";
    SeriesOptions so = series_options(opt);

    // every fixed point through total leg size 2, three boxes beyond the CM point
    int points = 0, failures = 0;
    std::string first;
    for (int total = 0; total <= 2; ++total)
        for (const auto& legs : legs_of_size(total)) {
            int base = renormalized_volume(cm_solid_partition(legs));
            int extra = total == 0 ? 4 : 3;
            for (const auto& pi : enumerate_dt(legs, base + extra, so.enumeration)) {
                VertexCharacter ch = dt_character(pi);
                ++points;
                try {
                    WeightMap v = tilde_v(ch, Mode::DT);
                    if (!check_vertex(ch, v).ok() || !plain_vertex_decomposition_check(ch))
                        throw PropertyViolation(pi.key());
                } catch (const PropertyViolation& e) {
                    if (failures++ == 0)
                        first = e.what();
                }
            }
            if (count_nonempty(legs) > 2)
                continue;
            for (const auto& b : enumerate_pt(legs, extra, so.enumeration)) {
                VertexCharacter ch = pt_character(legs, b);
                ++points;
                try {
                    WeightMap v = tilde_v(ch, Mode::PT);
                    if (!check_vertex(ch, v).ok() || !plain_vertex_decomposition_check(ch))
                        throw PropertyViolation(b.key());
                } catch (const PropertyViolation& e) {
                    if (failures++ == 0)
                        first = e.what();
                }
            }
        }
    json info{{"fixed_points", points}, {"failures", failures}};
    if (failures)
        info["first"] = first;
    rep.add_row("vertex properties", failures == 0, info);

    int edges = 0;
    failures = 0;
    for (std::array<int, 3> deg : {std::array<int, 3>{-1, -1, 0}, {0, 0, -2}, {1, -1, -2}, {2, -2, -2}, {-3, 1, 0}})
        for (int n = 1; n <= 3; ++n)
            for (const auto& l : plane_partitions_of_size(n)) {
                ++edges;
                try {
                    tilde_e(l, EdgeGeometry(deg));
                    if (!plain_edge_decomposition_check(l, EdgeGeometry(deg)))
                        ++failures;
                } catch (const PropertyViolation&) {
                    ++failures;
                }
            }
    rep.add_row("edge properties", failures == 0, {{"edges", edges}, {"failures", failures}});

    // enumeration counts: solid partitions, plane partitions
    std::vector<std::size_t> solid(6, 0);
    for (const auto& pi : enumerate_dt(Legs{}, 5, so.enumeration))
        ++solid[static_cast<std::size_t>(pi.volume())];
    rep.add_row("solid partition counts", solid == std::vector<std::size_t>{1, 1, 4, 10, 26, 59}, {{"counts", solid}});
    std::vector<std::size_t> plane(6, 0);
    for (const auto& c : enumerate_3d(Legs3{}, 5, Mode::DT))
        ++plane[static_cast<std::size_t>(c.q_power)];
    rep.add_row("plane partition counts", plane == std::vector<std::size_t>{1, 1, 3, 6, 13, 24}, {{"counts", plane}});
    // PT with one single-box leg: a single chain of boxes
    std::vector<std::size_t> pt(4, 0);
    Legs line{PlanePartition::single_box(), {}, {}, {}};
    for (const auto& b : enumerate_pt(line, 3, so.enumeration))
        ++pt[static_cast<std::size_t>(b.length())];
    rep.add_row("PT line counts", pt == std::vector<std::size_t>{1, 1, 1, 1}, {{"counts", pt}});

    // output independent of the thread count
    bool same = true;
    for (const auto& legs : {Legs{}, Legs{PlanePartition::single_box(), PlanePartition::single_box(), {}, {}}}) {
        SeriesOptions one = so, many = so;
        one.jobs = 1;
        many.jobs = 4;
        same = same && dt_vertex_series(legs, 3, SignRule::Formula, one).to_json().dump() ==
                           dt_vertex_series(legs, 3, SignRule::Formula, many).to_json().dump();
        same = same && pt_vertex_series(legs, 3, SignRule::Formula, one).to_json().dump() ==
                           pt_vertex_series(legs, 3, SignRule::Formula, many).to_json().dump();
    }
    rep.add_row("jobs 1 vs 4", same);
    return rep;
}

} // namespace quadvertex
