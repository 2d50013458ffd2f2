#include "quadvertex/series.hpp"

#include <algorithm>
#include <memory>
#include <random>

#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "quadvertex/limits.hpp"
#include "quadvertex/signs.hpp"

namespace quadvertex {

nlohmann::json contribution_json(const FactoredContribution& c)
{
    nlohmann::json j;
    if (c.vanished)
        return nlohmann::json{{"vanished", true}};
    j["sign"] = c.sign;
    j["monomial"] = c.monomial.c;
    nlohmann::json f = nlohmann::json::array();
    for (const auto& [w, n] : c.factors)
        f.push_back({w.c[0], w.c[1], w.c[2], w.c[3], n});
    j["factors"] = f;
    return j;
}

nlohmann::json legs_json(const Legs& legs)
{
    nlohmann::json j = nlohmann::json::array();
    for (const auto& l : legs)
        j.push_back(l.rows());
    return j;
}

Legs legs_from_json(const nlohmann::json& j)
{
    if (!j.is_array() || j.size() > 4)
        throw InvalidInput("legs must be an array of at most four plane partitions");
    Legs legs;
    try {
        for (std::size_t a = 0; a < j.size(); ++a)
            legs[a] = PlanePartition(j[a].get<std::vector<std::vector<int>>>());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad legs: ") + e.what());
    }
    return legs;
}

void QSeries::add(int q, int Q, SignedTerm t)
{
    if (q < 0 || Q < 0)
        throw std::logic_error("negative power in a series");
    if (q > q_max_ || Q > Q_max_)
        return;
    coeffs_[{q, Q}].push_back(std::move(t));
}

const std::vector<SignedTerm>& QSeries::at(int q, int Q) const
{
    static const std::vector<SignedTerm> none;
    auto it = coeffs_.find({q, Q});
    return it == coeffs_.end() ? none : it->second;
}

std::size_t QSeries::term_count() const
{
    std::size_t n = 0;
    for (const auto& [k, v] : coeffs_)
        n += v.size();
    return n;
}

void QSeries::canonicalize()
{
    for (auto& [k, v] : coeffs_)
        std::stable_sort(v.begin(), v.end(), [](const SignedTerm& a, const SignedTerm& b) { return a.key < b.key; });
}

nlohmann::json QSeries::to_json() const
{
    nlohmann::json j;
    j["meta"] = meta.is_null() ? nlohmann::json::object() : meta;
    j["meta"]["q_max"] = q_max_;
    j["meta"]["Q_max"] = Q_max_;
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& [k, terms] : coeffs_) {
        nlohmann::json ts = nlohmann::json::array();
        for (const auto& t : terms)
            ts.push_back({{"sign", t.sign}, {"key", t.key}, {"contribution", contribution_json(t.c)}});
        cs.push_back({k.first, k.second, ts});
    }
    j["coeffs"] = cs;
    return j;
}

// ---- expressions ----

template <class Fn>
SeriesExpr SeriesExpr::make(int q_max, int Q_max, Fn fn)
{
    SeriesExpr e;
    e.q_max_ = q_max;
    e.Q_max_ = Q_max;
    e.fq_ = [fn](const QContext& c) { return fn(c); };
    e.fp_ = [fn](const FpContext& c) { return fn(c); };
    e.l1_ = [fn](const LimitIContext& c) { return fn(c); };
    e.l2_ = [fn](const LimitIIContext& c) { return fn(c); };
    return e;
}

SeriesExpr::SeriesExpr(const QSeries& s)
{
    auto p = std::make_shared<const QSeries>(s);
    *this = make(s.q_max(), s.Q_max(), [p](const auto& ctx) { return p->eval(ctx); });
}

SeriesExpr operator*(const SeriesExpr& a, const SeriesExpr& b)
{
    return SeriesExpr::make(std::min(a.q_max_, b.q_max_), std::min(a.Q_max_, b.Q_max_),
                            [a, b](const auto& ctx) { return a.eval(ctx) * b.eval(ctx); });
}

SeriesExpr SeriesExpr::negate_q() const
{
    SeriesExpr a = *this;
    return make(q_max_, Q_max_, [a](const auto& ctx) {
        auto t = a.eval(ctx);
        for (int Q = 0; Q <= t.Q_max; ++Q)
            for (int q = 1; q <= t.q_max; q += 2)
                t.at(q, Q) = -t.at(q, Q);
        return t;
    });
}

SeriesExpr SeriesExpr::scaled(int sign) const
{
    SeriesExpr a = *this;
    return make(q_max_, Q_max_, [a, sign](const auto& ctx) {
        auto t = a.eval(ctx);
        if (sign < 0)
            for (auto& x : t.v)
                x = -x;
        return t;
    });
}

SeriesExpr SeriesExpr::truncated(int q_max, int Q_max) const
{
    SeriesExpr a = *this;
    q_max = std::min(q_max, q_max_);
    Q_max = std::min(Q_max, Q_max_);
    return make(q_max, Q_max, [a, q_max, Q_max](const auto& ctx) {
        auto t = a.eval(ctx);
        decltype(t) r(q_max, Q_max);
        for (int Q = 0; Q <= Q_max; ++Q)
            for (int q = 0; q <= q_max; ++q)
                r.at(q, Q) = t.at(q, Q);
        return r;
    });
}

SeriesExpr plethystic_exp(const SeriesExpr& f)
{
    int qm = f.q_max(), Qm = f.Q_max();
    return SeriesExpr::make(qm, Qm, [f, qm, Qm](const auto& ctx) {
        using F = typename std::decay_t<decltype(ctx)>::Field;
        Table<F> L(qm, Qm);
        for (int n = 1; n <= std::max(qm, Qm); ++n) {
            Table<F> g = f.eval(ctx.adams(n));
            if (!is_zero(g.at(0, 0)))
                throw NonZeroConstantTerm("plethystic exponential of a series with a constant term");
            F inv_n = F(1) / F(n);
            for (int Q = 0; Q * n <= Qm; ++Q)
                for (int q = 0; q * n <= qm; ++q)
                    if (!is_zero(g.at(q, Q)))
                        L.at(q * n, Q * n) += g.at(q, Q) * inv_n;
        }
        // exp(L) = sum_j L^j / j!; L has no constant term so j <= qm + Qm
        Table<F> r(qm, Qm), power(qm, Qm);
        r.at(0, 0) = F(1);
        power.at(0, 0) = F(1);
        for (int j = 1; j <= qm + Qm; ++j) {
            power = power * L;
            F inv_j = F(1) / F(j);
            for (auto& x : power.v)
                x *= inv_j;
            for (std::size_t i = 0; i < r.v.size(); ++i)
                r.v[i] += power.v[i];
        }
        return r;
    });
}

// ---- comparison ----

nlohmann::json EqualityCertificate::to_json() const
{
    nlohmann::json j;
    j["pass"] = pass;
    j["seed"] = seed;
    j["q_max"] = q_max;
    j["Q_max"] = Q_max;
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : rows)
        rs.push_back({{"index", r.index}, {"point", r.point}, {"a", r.a}, {"b", r.b}});
    j["rows"] = rs;
    if (first_failure)
        j["first_failure"] = *first_failure;
    else
        j["first_failure"] = nullptr;
    return j;
}

EqualityCertificate series_equal(const SeriesExpr& a, const SeriesExpr& b, int points, std::uint64_t seed)
{
    EqualityCertificate cert;
    cert.seed = seed;
    cert.q_max = std::min(a.q_max(), b.q_max());
    cert.Q_max = std::min(a.Q_max(), b.Q_max());
    int done = 0;
    for (std::uint64_t index = 0; done < points; ++index) {
        if (index > static_cast<std::uint64_t>(points) + 64)
            throw SingularPoint("too many singular evaluation points");
        QPoint pt = random_qpoint(seed, index);
        Table<mpq_class> ta, tb;
        try {
            ta = a.eval(QContext{pt});
            tb = b.eval(QContext{pt});
        } catch (const SingularPoint&) {
            continue;
        }
        EqualityCertificate::Row row;
        row.index = index;
        for (int i = 0; i < 4; ++i)
            row.point[i] = to_string(pt.root[i]);
        for (int Q = 0; Q <= cert.Q_max; ++Q)
            for (int q = 0; q <= cert.q_max; ++q) {
                const mpq_class& x = ta.at(q, Q);
                const mpq_class& y = tb.at(q, Q);
                row.a.push_back(to_string(x));
                row.b.push_back(to_string(y));
                if (x != y && !cert.first_failure) {
                    cert.pass = false;
                    cert.first_failure = std::array<int, 3>{static_cast<int>(cert.rows.size()), q, Q};
                }
            }
        cert.rows.push_back(std::move(row));
        ++done;
    }
    return cert;
}

// ---- vertex series ----

FactoredContribution vertex_contribution(const VertexCharacter& ch, Mode mode)
{
    return bracket(tilde_v(ch, mode));
}

QSeries dt_vertex_series(const Legs& legs, int q_max, SignRule rule, const SeriesOptions& opt)
{
    int base = renormalized_volume(cm_solid_partition(legs));
    std::vector<SolidPartition> pis = enumerate_dt(legs, base + q_max, opt.enumeration);
    std::vector<SignedTerm> terms(pis.size());
    std::vector<int> powers(pis.size());
    parallel_for(pis.size(), opt.jobs, [&](std::size_t i) {
        const SolidPartition& pi = pis[i];
        int s = 1;
        if (rule == SignRule::Formula)
            s = sigma_dt(pi);
        else if (rule == SignRule::Dimred)
            s = sigma_dimred_dt(pi);
        terms[i] = {s, vertex_contribution(dt_character(pi), Mode::DT), pi.key()};
        powers[i] = renormalized_volume(pi) - base;
    });
    QSeries s(q_max);
    for (std::size_t i = 0; i < pis.size(); ++i)
        s.add(powers[i], 0, std::move(terms[i]));
    s.canonicalize();
    s.meta = {{"legs", legs_json(legs)}, {"mode", "dt"}, {"normalization", base}};
    return s;
}

QSeries pt_vertex_series(const Legs& legs, int q_max, SignRule rule, const SeriesOptions& opt)
{
    std::vector<BoxConfiguration> bs = enumerate_pt(legs, q_max, opt.enumeration);
    std::vector<SignedTerm> terms(bs.size());
    parallel_for(bs.size(), opt.jobs, [&](std::size_t i) {
        const BoxConfiguration& b = bs[i];
        int s = 1;
        if (rule == SignRule::Formula)
            s = sigma_pt(legs, b);
        else if (rule == SignRule::Dimred)
            s = sigma_dimred_pt(legs, b);
        terms[i] = {s, vertex_contribution(pt_character(legs, b), Mode::PT), b.key()};
    });
    QSeries s(q_max);
    for (std::size_t i = 0; i < bs.size(); ++i)
        s.add(bs[i].length(), 0, std::move(terms[i]));
    s.canonicalize();
    s.meta = {{"legs", legs_json(legs)}, {"mode", "pt"},
              {"normalization", cm_solid_partition(legs).cm_volume()}};
    return s;
}

// ---- Nekrasov ----

FactoredContribution nekrasov_prefactor()
{
    auto w = [](int a, int b, int c, int d, int e) { return reduce_exponent({a, b, c, d, e}); };
    FactoredContribution f = bracket_of_monomial(w(1, 1, 0, 0, 0)) * bracket_of_monomial(w(1, 0, 1, 0, 0)) *
                             bracket_of_monomial(w(0, 1, 1, 0, 0)) * bracket_of_monomial(w(0, 0, 0, 0, 1));
    for (int i = 0; i < 4; ++i) {
        Exponent e{};
        e[i] = 1;
        f = f * bracket_of_monomial(reduce_exponent(e), -1);
    }
    return f.canonical();
}

QSeries nekrasov_F(int q_max)
{
    if (!verify_expansion_identity(20240611))
        throw std::logic_error("expansion identity failed");
    FactoredContribution pre = nekrasov_prefactor();
    QSeries s(q_max);
    for (int k = 1; k <= q_max; ++k)
        for (int j = 0; j < k; ++j) {
            FactoredContribution c = pre;
            c.monomial.c[3] += k - 1 - 2 * j;
            s.add(k, 0, {-1, c, "F" + std::to_string(k) + "." + std::to_string(j)});
        }
    s.meta = {{"mode", "nekrasov"}};
    return s;
}

bool verify_expansion_identity(std::uint64_t seed, int points)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(1, 997);
    for (int i = 0; i < points; ++i) {
        // v = y^{1/4}, s = q^{1/2}
        mpq_class v(d(rng), d(rng)), s(d(rng), d(rng));
        v.canonicalize();
        s.canonicalize();
        mpq_class q = s * s, u = v * v;
        mpq_class lhs = (v * s - 1 / (v * s)) * (v / s - s / v);
        mpq_class rhs = -(1 - q * u) * (1 - q / u) / q;
        if (lhs != rhs)
            return false;
    }
    return true;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn)
{
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    tbb::task_arena arena(jobs);
    arena.execute([&] { tbb::parallel_for(std::size_t(0), n, [&](std::size_t i) { fn(i); }); });
}

} // namespace quadvertex
