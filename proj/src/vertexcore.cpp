#include "quadvertex/vertexcore.hpp"

#include <sstream>

namespace quadvertex {

namespace {

using LP = LaurentPoly;

// 1 / prod_{i in axes} t_i
LP inv_t(std::initializer_list<int> axes)
{
    Exponent e{};
    for (int a : axes)
        e[a] = -1;
    return LP::monomial(e);
}

LP P(std::initializer_list<int> axes) { return LP::one_minus_t(axes); }

// P_{ij} / (t_i t_j) for the first two complementary axes of a leg.
LP pair_factor(int axis)
{
    int i = kComplement[axis][0], j = kComplement[axis][1];
    return P({i, j}) * inv_t({i, j});
}

PoleFraction frac(const LP& p) { return PoleFraction(p); }

std::map<KWeight, int> fold(const std::map<KWeight, int>& factors, int& sign, bool& vanished)
{
    std::map<KWeight, int> out;
    for (const auto& [w, n] : factors) {
        if (n == 0)
            continue;
        if (w.is_zero()) {
            if (n > 0) {
                vanished = true;
                continue;
            }
            throw ZeroWeightInDenominator("bracket [1] in the denominator");
        }
        KWeight r = w;
        int first = 0;
        for (int v : w.c)
            if (v != 0) {
                first = v;
                break;
            }
        if (first < 0) {
            r = -w;
            if (n % 2 != 0)
                sign = -sign;
        }
        out[r] += n;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

} // namespace

FactoredContribution FactoredContribution::operator*(const FactoredContribution& o) const
{
    if (vanished || o.vanished)
        return zero();
    FactoredContribution r = *this;
    r.sign *= o.sign;
    r.monomial = r.monomial + o.monomial;
    for (const auto& [w, n] : o.factors) {
        int& slot = r.factors[w];
        slot += n;
        if (slot == 0)
            r.factors.erase(w);
    }
    return r;
}

FactoredContribution FactoredContribution::negated() const
{
    FactoredContribution r = *this;
    r.sign = -r.sign;
    return r;
}

FactoredContribution FactoredContribution::adams(int n) const
{
    FactoredContribution r;
    r.sign = sign;
    r.vanished = vanished;
    r.monomial = monomial.scaled(n);
    for (const auto& [w, k] : factors)
        r.factors[w.scaled(n)] += k;
    return r;
}

int FactoredContribution::rank() const
{
    int s = 0;
    for (const auto& [w, n] : factors)
        s += n;
    return s;
}

FactoredContribution FactoredContribution::canonical() const
{
    if (vanished)
        return zero();
    FactoredContribution r;
    r.sign = sign;
    r.monomial = monomial;
    bool v = false;
    r.factors = fold(factors, r.sign, v);
    if (v)
        return zero();
    return r;
}

template <>
mpq_class FactoredContribution::eval(const QPoint& pt) const
{
    if (vanished)
        return 0;
    // Accumulate numerator and denominator as integers; one gcd at the end.
    mpz_class num = sign, den = 1;
    auto mul_half_monomial = [&](const KWeight& h, mpz_class& n, mpz_class& d) {
        n = 1;
        d = 1;
        mpz_class tmp;
        for (int i = 0; i < 4; ++i) {
            int e = h.c[i];
            if (e == 0)
                continue;
            const mpq_class& r = pt.root[i];
            unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
            mpz_pow_ui(tmp.get_mpz_t(), r.get_num_mpz_t(), k);
            (e > 0 ? n : d) *= tmp;
            mpz_pow_ui(tmp.get_mpz_t(), r.get_den_mpz_t(), k);
            (e > 0 ? d : n) *= tmp;
        }
    };
    mpz_class n, d, b_num, b_den, tmp;
    mul_half_monomial(monomial, n, d);
    num *= n;
    den *= d;
    for (const auto& [w, k] : factors) {
        KWeight h;
        for (int i = 0; i < 4; ++i) {
            if (w.c[i] % 2 != 0)
                throw std::invalid_argument("bracket of a weight with quarter powers: " + weight_str(w));
            h.c[i] = w.c[i] / 2;
        }
        mul_half_monomial(h, n, d);
        // n/d - d/n = (n^2 - d^2) / (n d)
        b_num = n * n - d * d;
        b_den = n * d;
        if (b_num == 0) {
            if (k > 0)
                return 0;
            throw SingularPoint("bracket factor vanishes at evaluation point");
        }
        unsigned long e = static_cast<unsigned long>(k > 0 ? k : -k);
        mpz_pow_ui(tmp.get_mpz_t(), b_num.get_mpz_t(), e);
        (k > 0 ? num : den) *= tmp;
        mpz_pow_ui(tmp.get_mpz_t(), b_den.get_mpz_t(), e);
        (k > 0 ? den : num) *= tmp;
    }
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

FactoredContribution bracket_of_monomial(const KWeight& w, int n)
{
    FactoredContribution c;
    if (n != 0)
        c.factors[w] = n;
    return c;
}

FactoredContribution bracket(const WeightMap& v)
{
    FactoredContribution c;
    for (const auto& [w, coeff] : v) {
        if (w.is_zero()) {
            if (coeff > 0)
                throw ZeroWeightInDenominator("positive fixed term " + weight_str(w));
            c.vanished = true;
            continue;
        }
        if (!coeff.fits_sint_p())
            throw std::overflow_error("bracket multiplicity out of range");
        c.factors[w] = -static_cast<int>(coeff.get_si());
    }
    if (c.vanished)
        return FactoredContribution::zero();
    return c;
}

KWeight half_det_exponent(const FactoredContribution& c)
{
    // [tau^w] = tau^{-w/2} (tau^w - 1); returns -sum n_w w/2, doubled.
    KWeight s;
    for (const auto& [w, n] : c.factors)
        for (int i = 0; i < 4; ++i)
            s.c[i] -= n * w.c[i];
    for (int i = 0; i < 4; ++i) {
        if (s.c[i] % 2 != 0)
            throw std::logic_error("half determinant exponent is not a half-integer");
        s.c[i] /= 2;
    }
    return s;
}

LaurentPoly plain_v_poly(const VertexCharacter& ch)
{
    PoleFraction Z = ch.Z();
    PoleFraction Zb = Z.bar();
    LP Pb123 = P({0, 1, 2}).bar();
    PoleFraction v = Z - frac(Pb123) * Z * Zb;
    for (int a = 0; a < 3; ++a) {
        const LP& Za = ch.leg_chars[a];
        if (Za.is_zero())
            continue;
        LP f = -Za + pair_factor(a) * Za * Za.bar();
        v += frac(f).over_one_minus_t(a);
    }
    const LP& Z4 = ch.leg_chars[3];
    if (!Z4.is_zero()) {
        LP Z4b = Z4.bar();
        PoleFraction block = frac(-Z4) + frac(Pb123) * (Zb * frac(Z4) - Z * frac(Z4b)) +
                             frac(Pb123 * Z4 * Z4b).over_one_minus_t(3);
        v += block.over_one_minus_t(3);
    }
    return v.clear();
}

namespace {

// The insertion terms of tilde-v: -y Zbar - sum_a t_a y Zbar_a / (1 - t_a).
LaurentPoly insertion_terms(const VertexCharacter& ch)
{
    PoleFraction Z = ch.Z();
    LP y = LP::y();
    PoleFraction r = -(frac(y) * Z.bar());
    for (int a = 0; a < 4; ++a) {
        const LP& Za = ch.leg_chars[a];
        if (Za.is_zero())
            continue;
        r -= frac(LP::t(a) * y * Za.bar()).over_one_minus_t(a);
    }
    return r.clear();
}

} // namespace

LaurentPoly tilde_v_poly(const VertexCharacter& ch) { return plain_v_poly(ch) + insertion_terms(ch); }

LaurentPoly plain_V_poly(const VertexCharacter& ch)
{
    PoleFraction Z = ch.Z();
    PoleFraction Zb = Z.bar();
    LP inv_all = inv_t({0, 1, 2, 3});
    PoleFraction V = Z + frac(inv_all) * Zb - frac(P({0, 1, 2, 3}) * inv_all) * Z * Zb;
    for (int a = 0; a < 4; ++a) {
        const LP& Za = ch.leg_chars[a];
        if (Za.is_zero())
            continue;
        const auto& c = kComplement[a];
        LP inv_c = inv_t({c[0], c[1], c[2]});
        LP Zab = Za.bar();
        LP F = -Za + Zab * inv_c - P({c[0], c[1], c[2]}) * inv_c * Za * Zab;
        V += frac(F).over_one_minus_t(a);
    }
    return V.clear();
}

std::string VertexReport::describe() const
{
    std::ostringstream os;
    os << "integer_powers=" << integer_powers << " no_positive_fixed_term=" << no_positive_fixed_term
       << " rank_zero=" << rank_zero << " y_part_matches=" << y_part_matches;
    return os.str();
}

VertexReport check_vertex(const VertexCharacter& ch, const WeightMap& v)
{
    VertexReport r;
    mpz_class rank = 0;
    std::array<mpz_class, 3> det{0, 0, 0};
    WeightMap ypart;
    for (const auto& [w, c] : v) {
        rank += c;
        if (w.is_zero() && c > 0)
            r.no_positive_fixed_term = false;
        for (int i = 0; i < 3; ++i)
            det[i] += c * w.c[i];
        if (w.has_y())
            ypart[w] = c;
    }
    r.rank_zero = rank == 0;
    for (const auto& d : det)
        if (d % 4 != 0)
            r.integer_powers = false;
    WeightMap expected = reduce_cy(-(LP::y() * ch.W.bar()));
    r.y_part_matches = ypart == expected;
    return r;
}

WeightMap tilde_v(const VertexCharacter& ch, Mode mode)
{
    if (mode == Mode::PT && count_nonempty(ch.legs) > 2)
        throw InvalidInput("PT vertex needs at most two nonempty legs");
    WeightMap v = reduce_cy(tilde_v_poly(ch));
    VertexReport rep = check_vertex(ch, v);
    if (!rep.ok())
        throw PropertyViolation("vertex property failure: " + rep.describe());
    return v;
}

EdgeGeometry::EdgeGeometry(std::array<int, 3> d) : degrees(d)
{
    if (d[0] + d[1] + d[2] != -2)
        throw InvalidInput("normal degrees must sum to -2");
}

std::array<Exponent, 5> EdgeGeometry::transform() const
{
    return {{
        {-1, 0, 0, 0, 0},
        {-degrees[0], 1, 0, 0, 0},
        {-degrees[1], 0, 1, 0, 0},
        {-degrees[2], 0, 0, 1, 0},
        {0, 0, 0, 0, 1},
    }};
}

namespace {

// (t1^{-1} g(t) - g(sigma t)) / (1 - t1^{-1}) = (-g(t) + t1 g(sigma t)) / (1 - t1)
LaurentPoly difference_quotient(const LP& g, const EdgeGeometry& geo)
{
    LP num = -g + LP::t(0) * g.substitute(geo.transform());
    return exact_divide(num, 0);
}

} // namespace

LaurentPoly plain_e_poly(const PlanePartition& lambda, const EdgeGeometry& g)
{
    LP Z = edge_character(lambda);
    LP f = -Z + pair_factor(0) * Z * Z.bar();
    return difference_quotient(f, g);
}

LaurentPoly tilde_e_poly(const PlanePartition& lambda, const EdgeGeometry& g)
{
    LP Z = edge_character(lambda);
    LP f = -Z - LP::t(0) * LP::y() * Z.bar() + pair_factor(0) * Z * Z.bar();
    return difference_quotient(f, g);
}

LaurentPoly plain_E_poly(const PlanePartition& lambda, const EdgeGeometry& g)
{
    LP Z = edge_character(lambda);
    LP inv = inv_t({1, 2, 3});
    LP F = -Z + Z.bar() * inv - P({1, 2, 3}) * inv * Z * Z.bar();
    return difference_quotient(F, g);
}

LaurentPoly edge_y_terms_at_one(const PlanePartition& lambda, const EdgeGeometry& g)
{
    // -y (Zbar - d/dt1|_{t1=1} Zbar(t2 t1^-m, t3 t1^-m', t4 t1^-m''))
    LP Zb = edge_character(lambda).bar();
    LP shifted = Zb.substitute(g.transform());
    LP r;
    for (const auto& [e, c] : Zb.terms())
        r.add_term(e, -c);
    for (const auto& [e, c] : shifted.terms()) {
        // these are t1^{-1}-free images of Zbar monomials times t1^N
        Exponent base = e;
        int n = base[0];
        base[0] = 0;
        r.add_term(base, c * n);
    }
    return LP::y() * r;
}

WeightMap tilde_e(const PlanePartition& lambda, const EdgeGeometry& g)
{
    LP e = tilde_e_poly(lambda, g);
    if (e.rank() != 0)
        throw PropertyViolation("edge class has nonzero rank");
    // set t1 = 1 in the y-terms and compare with the derivative formula
    LP ypart = e.y_part();
    LP at_one;
    for (const auto& [x, c] : ypart.terms()) {
        Exponent b = x;
        b[0] = 0;
        at_one.add_term(b, c);
    }
    if (!(at_one == edge_y_terms_at_one(lambda, g)))
        throw PropertyViolation("edge y-terms differ from the derivative formula");
    return reduce_cy(e);
}

bool plain_vertex_decomposition_check(const VertexCharacter& ch)
{
    WeightMap V = reduce_cy(plain_V_poly(ch));
    WeightMap v = reduce_cy(plain_v_poly(ch));
    return V == weight_sum(v, weight_bar(v));
}

bool plain_edge_decomposition_check(const PlanePartition& lambda, const EdgeGeometry& g)
{
    WeightMap E = reduce_cy(plain_E_poly(lambda, g));
    WeightMap e = reduce_cy(plain_e_poly(lambda, g));
    return E == weight_sum(e, weight_bar(e));
}

} // namespace quadvertex
