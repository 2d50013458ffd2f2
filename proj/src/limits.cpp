#include "quadvertex/limits.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace quadvertex {

// ---- y = t4 ----

namespace {

KWeight reduce_y(const KWeight& w) { return {{w.c[0] - w.c[3], w.c[1] - w.c[3], w.c[2] - w.c[3], 0}}; }

} // namespace

WeightMap dim_reduce(const WeightMap& v)
{
    WeightMap r;
    for (const auto& [w, c] : v)
        r[reduce_y(w)] += c;
    for (auto it = r.begin(); it != r.end();)
        it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

FactoredContribution dim_reduce(const FactoredContribution& c)
{
    if (c.vanished)
        return FactoredContribution::zero();
    FactoredContribution r;
    r.sign = c.sign;
    r.monomial = reduce_y(c.monomial);
    for (const auto& [w, n] : c.factors)
        r.factors[reduce_y(w)] += n;
    return r.canonical();
}

QSeries dim_reduce(const QSeries& s)
{
    QSeries r(s.q_max(), s.Q_max());
    for (const auto& [k, terms] : s.coeffs())
        for (const auto& t : terms)
            r.add(k.first, k.second, {t.sign, dim_reduce(t.c), t.key});
    r.meta = s.meta;
    r.meta["y"] = "t4";
    return r;
}

Legs embed_legs(const Legs3& legs)
{
    Legs out;
    for (int a = 0; a < 3; ++a) {
        std::vector<std::vector<int>> rows;
        for (int len : legs[a])
            rows.push_back(std::vector<int>(static_cast<std::size_t>(len), 1));
        out[a] = PlanePartition(rows);
    }
    return out;
}

// ---- 3-fold vertex ----

namespace {

using B3 = std::array<int, 3>;
using LP = LaurentPoly;

constexpr std::array<std::array<int, 2>, 3> kPlane{{{1, 2}, {0, 2}, {0, 1}}};

bool in_partition(const Partition& p, int r, int c)
{
    return r >= 0 && c >= 0 && r < static_cast<int>(p.size()) && c < p[static_cast<std::size_t>(r)];
}

bool in_cylinder(const Legs3& legs, int a, const B3& b)
{
    return in_partition(legs[a], b[kPlane[a][0]], b[kPlane[a][1]]);
}

int cylinders(const Legs3& legs, const B3& b)
{
    int n = 0;
    for (int a = 0; a < 3; ++a)
        if (!legs[a].empty() && in_cylinder(legs, a, b))
            ++n;
    return n;
}

bool nonneg(const B3& b) { return b[0] >= 0 && b[1] >= 0 && b[2] >= 0; }

bool in_cm(const Legs3& legs, const B3& b) { return nonneg(b) && cylinders(legs, b) > 0; }

int partition_size(const Partition& p)
{
    int s = 0;
    for (int x : p)
        s += x;
    return s;
}

int reach(const Legs3& legs)
{
    int r = 1;
    for (const auto& p : legs) {
        r = std::max(r, static_cast<int>(p.size()));
        for (int x : p)
            r = std::max(r, x);
    }
    return r;
}

// #(CM in [0,N)^3) - N sum |legs|
int cm_volume3(const Legs3& legs)
{
    int n = reach(legs) + 1;
    int count = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (in_cm(legs, {i, j, k}))
                    ++count;
    int s = 0;
    for (const auto& p : legs)
        s += partition_size(p);
    return count - n * s;
}

using BoxSet = std::set<B3>;

// All sets reachable by repeatedly adding an allowed box, grouped by size.
template <class Allowed>
std::vector<BoxSet> grow(int max_size, const std::vector<B3>& candidates, Allowed allowed)
{
    std::vector<BoxSet> out{BoxSet{}};
    std::set<BoxSet> level{BoxSet{}};
    for (int n = 1; n <= max_size; ++n) {
        std::set<BoxSet> next;
        for (const auto& s : level)
            for (const auto& b : candidates)
                if (!s.count(b) && allowed(s, b)) {
                    BoxSet t = s;
                    t.insert(b);
                    next.insert(std::move(t));
                }
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

} // namespace

std::vector<Box3Config> enumerate_3d(const Legs3& legs, int q_max, Mode mode)
{
    int nonempty = 0;
    for (const auto& p : legs)
        if (!p.empty())
            ++nonempty;
    int cm = cm_volume3(legs);
    int r = reach(legs) + q_max + 1;
    std::vector<Box3Config> out;
    if (mode == Mode::DT) {
        std::vector<B3> cand;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k)
                    if (!in_cm(legs, {i, j, k}))
                        cand.push_back({i, j, k});
        auto allowed = [&](const BoxSet& s, const B3& b) {
            for (int a = 0; a < 3; ++a) {
                B3 p = b;
                if (--p[a] < 0)
                    continue;
                if (!in_cm(legs, p) && !s.count(p))
                    return false;
            }
            return true;
        };
        for (const auto& s : grow(q_max, cand, allowed))
            out.push_back({legs, std::vector<B3>(s.begin(), s.end()), cm + static_cast<int>(s.size())});
        return out;
    }
    if (nonempty > 2)
        throw InvalidInput("3-fold PT vertex needs at most two legs");
    // quotient weights: one leg with negative own coordinate, or two legs
    auto region = [&](const B3& b) {
        if (nonneg(b))
            return cylinders(legs, b) == 2;
        for (int a = 0; a < 3; ++a)
            if (!legs[a].empty() && b[a] < 0 && in_cylinder(legs, a, b))
                return true;
        return false;
    };
    std::vector<B3> cand;
    for (int i = -q_max; i < r; ++i)
        for (int j = -q_max; j < r; ++j)
            for (int k = -q_max; k < r; ++k)
                if (region({i, j, k}))
                    cand.push_back({i, j, k});
    // up-closed: successors inside the region must already be present
    auto allowed = [&](const BoxSet& s, const B3& b) {
        for (int a = 0; a < 3; ++a) {
            B3 n = b;
            ++n[a];
            if (region(n) && !s.count(n))
                return false;
        }
        return true;
    };
    for (const auto& s : grow(q_max, cand, allowed))
        out.push_back({legs, std::vector<B3>(s.begin(), s.end()), cm + static_cast<int>(s.size())});
    return out;
}

LaurentPoly vertex3d_character(const Box3Config& c, Mode /*mode*/)
{
    const Legs3& legs = c.legs;
    auto mono = [](int i, int j, int k) { return LP::monomial({i, j, k, 0, 0}); };
    // leg characters in the two transverse variables
    std::array<LP, 3> Q;
    for (int a = 0; a < 3; ++a)
        for (int r = 0; r < static_cast<int>(legs[a].size()); ++r)
            for (int s = 0; s < legs[a][static_cast<std::size_t>(r)]; ++s) {
                B3 e{0, 0, 0};
                e[kPlane[a][0]] = r;
                e[kPlane[a][1]] = s;
                Q[a] += mono(e[0], e[1], e[2]);
            }
    // W: box sum over [0,N)^3 minus truncated legs, plus the extra boxes
    int n = reach(legs) + 2;
    LP W;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (in_cm(legs, {i, j, k}))
                    W += mono(i, j, k);
    for (int a = 0; a < 3; ++a)
        for (int m = 0; m < n; ++m) {
            B3 e{0, 0, 0};
            e[a] = m;
            W -= Q[a] * mono(e[0], e[1], e[2]);
        }
    for (const auto& b : c.boxes)
        W += mono(b[0], b[1], b[2]);

    PoleFraction Qfull(W);
    for (int a = 0; a < 3; ++a)
        Qfull += PoleFraction(Q[a]).over_one_minus_t(a);
    LP inv123 = mono(-1, -1, -1);
    LP P123 = LP::one_minus_t({0, 1, 2});
    PoleFraction V = Qfull - PoleFraction(inv123) * Qfull.bar() + PoleFraction(P123 * inv123) * Qfull * Qfull.bar();
    for (int a = 0; a < 3; ++a) {
        if (Q[a].is_zero())
            continue;
        int j = kPlane[a][0], k = kPlane[a][1];
        B3 e{0, 0, 0};
        e[j] = -1;
        e[k] = -1;
        LP inv = mono(e[0], e[1], e[2]);
        LP G = -Q[a] - Q[a].bar() * inv + Q[a] * Q[a].bar() * LP::one_minus_t({j, k}) * inv;
        V += PoleFraction(G).over_one_minus_t(a);
    }
    return V.clear();
}

QSeries vertex3d_oracle(const Legs3& legs, int q_max, Mode mode)
{
    int cm = cm_volume3(legs);
    QSeries s(q_max);
    for (const auto& c : enumerate_3d(legs, q_max, mode)) {
        std::ostringstream key;
        for (const auto& b : c.boxes)
            key << "(" << b[0] << "," << b[1] << "," << b[2] << ")";
        s.add(c.q_power - cm, 0, {1, bracket(reduce_cy(vertex3d_character(c, mode))), key.str()});
    }
    s.canonicalize();
    s.meta = {{"mode", mode == Mode::DT ? "dt3" : "pt3"}};
    return s;
}

// ---- cohomological limits ----

LimitPoint random_limit_point(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(ss);
    std::uniform_int_distribution<int> d(1, 1000);
    auto draw = [&] {
        mpq_class x(d(rng) * (rng() % 2 ? 1 : -1), d(rng));
        x.canonicalize();
        return x;
    };
    LimitPoint p;
    for (auto& l : p.lambda)
        l = draw();
    p.m = draw();
    return p;
}

namespace {

mpq_class form_value(const LinearForm& f, const LimitPoint& p)
{
    mpq_class v = f.c[0] * p.lambda[0] + f.c[1] * p.lambda[1] + f.c[2] * p.lambda[2] + f.c[3] * p.m;
    return v / 2;
}

std::string form_str(const LinearForm& f)
{
    static const char* names[] = {"l1", "l2", "l3", "m"};
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 4; ++i) {
        if (f.c[i] == 0)
            continue;
        mpq_class c(f.c[i], 2);
        c.canonicalize();
        if (!first || sgn(c) < 0)
            os << (sgn(c) < 0 ? "-" : "+");
        mpq_class a = abs(c);
        if (a != 1)
            os << a.get_str() << "*";
        os << names[i];
        first = false;
    }
    return "(" + os.str() + ")";
}

void check_rank(const FactoredContribution& c)
{
    if (c.rank() != 0)
        throw std::invalid_argument("cohomological limit of a contribution with nonzero rank");
}

} // namespace

mpq_class LinearFormProduct::eval(const LimitPoint& p) const
{
    if (zero)
        return 0;
    mpq_class a = constant * sign, b = 1;
    for (const auto& f : num)
        a *= form_value(f, p);
    for (const auto& f : den)
        b *= form_value(f, p);
    if (b == 0)
        throw SingularPoint("linear form vanishes at limit point");
    return a / b;
}

std::string LinearFormProduct::str() const
{
    if (zero)
        return "0";
    std::ostringstream os;
    mpq_class c = constant * sign;
    os << c.get_str();
    for (const auto& f : num)
        os << "*" << form_str(f);
    for (const auto& f : den)
        os << "/" << form_str(f);
    return os.str();
}

LinearFormProduct coho_limit_1(const FactoredContribution& c)
{
    LinearFormProduct r;
    if (c.vanished) {
        r.zero = true;
        return r;
    }
    check_rank(c);
    r.sign = c.sign;
    for (const auto& [w, n] : c.factors) {
        if (w.is_zero())
            throw ZeroWeightInDenominator("zero linear form");
        auto& side = n > 0 ? r.num : r.den;
        for (int i = 0; i < std::abs(n); ++i)
            side.push_back({w.c});
    }
    return r;
}

CohoLimitII coho_limit_2(const FactoredContribution& c, int q_power)
{
    CohoLimitII out;
    out.Q_power = q_power;
    LinearFormProduct& r = out.euler;
    if (c.vanished) {
        r.zero = true;
        return out;
    }
    check_rank(c);
    r.sign = c.sign;
    int m_power = -q_power;
    for (const auto& [w, n] : c.factors) {
        if (w.has_y()) {
            // (w.l + w_m m)/2 ~ (w_m/2) m
            mpq_class lead(w.c[3], 2);
            lead.canonicalize();
            r.constant *= pow(lead, n);
            m_power += n;
            continue;
        }
        auto& side = n > 0 ? r.num : r.den;
        for (int i = 0; i < std::abs(n); ++i)
            side.push_back({w.c});
    }
    if (m_power > 0)
        throw std::domain_error("second cohomological limit diverges");
    if (m_power < 0)
        r = LinearFormProduct{true, 1, 1, {}, {}};
    return out;
}

mpq_class LimitIContext::term(const FactoredContribution& c, int /*q_power*/) const
{
    return coho_limit_1(c.adams(n)).eval(pt);
}

mpq_class LimitIIContext::term(const FactoredContribution& c, int q_power) const
{
    return coho_limit_2(c.adams(n), q_power * n).euler.eval(pt);
}

Table<mpq_class> macmahon_power(const mpq_class& e, int q_max, bool negate_q)
{
    // log M(q) = sum_{n,k} n q^{nk} / k
    Table<mpq_class> L(q_max, 0);
    for (int n = 1; n <= q_max; ++n)
        for (int k = 1; n * k <= q_max; ++k)
            L.at(n * k) += e * mpq_class(n, k);
    Table<mpq_class> r(q_max, 0), power(q_max, 0);
    r.at(0) = 1;
    power.at(0) = 1;
    for (int j = 1; j <= q_max; ++j) {
        power = power * L;
        for (auto& x : power.v)
            x /= j;
        for (int q = 0; q <= q_max; ++q)
            r.at(q) += power.at(q);
    }
    if (negate_q)
        for (int q = 1; q <= q_max; q += 2)
            r.at(q) = -r.at(q);
    return r;
}

mpq_class c1c3_integral(const std::array<int, 4>& d, const LimitPoint& p)
{
    std::array<mpq_class, 4> l{p.lambda[0], p.lambda[1], p.lambda[2], -(p.lambda[0] + p.lambda[1] + p.lambda[2])};
    mpq_class c1 = 0;
    for (int i = 0; i < 4; ++i)
        c1 += d[i] * l[i];
    // tangent weights -l_i: c3 = -e3(l), e = e4(l)
    mpq_class e3 = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                e3 += l[i] * l[j] * l[k];
    mpq_class e4 = l[0] * l[1] * l[2] * l[3];
    return c1 * (-e3) / e4;
}

mpq_class one_box_euler(const LimitPoint& p)
{
    const auto& l = p.lambda;
    return (l[0] + l[1]) * (l[0] + l[2]) * (l[1] + l[2]) / (l[0] * l[1] * l[2] * (l[0] + l[1] + l[2]));
}

} // namespace quadvertex
