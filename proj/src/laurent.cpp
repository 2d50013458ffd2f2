#include "quadvertex/laurent.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

namespace quadvertex {

namespace {

struct ExponentHash {
    std::size_t operator()(const Exponent& e) const
    {
        std::uint64_t h = 1469598103934665603ull;
        for (int v : e) {
            h ^= static_cast<std::uint32_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

Exponent add(const Exponent& a, const Exponent& b)
{
    Exponent r;
    for (int i = 0; i < 5; ++i)
        r[i] = a[i] + b[i];
    return r;
}

} // namespace

LaurentPoly LaurentPoly::constant(long c)
{
    LaurentPoly p;
    if (c != 0)
        p.terms_[Exponent{}] = c;
    return p;
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const mpz_class& c)
{
    LaurentPoly p;
    if (c != 0)
        p.terms_[e] = c;
    return p;
}

LaurentPoly LaurentPoly::t(int axis, int power)
{
    Exponent e{};
    e[axis] = power;
    return monomial(e);
}

LaurentPoly LaurentPoly::y(int power)
{
    Exponent e{};
    e[4] = power;
    return monomial(e);
}

LaurentPoly LaurentPoly::one_minus_t(std::initializer_list<int> axes)
{
    LaurentPoly p = constant(1);
    for (int a : axes)
        p = p * (constant(1) - t(a));
    return p;
}

void LaurentPoly::add_term(const Exponent& e, const mpz_class& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const
{
    LaurentPoly r = *this;
    r += o;
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const
{
    LaurentPoly r = *this;
    r -= o;
    return r;
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_)
        c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const
{
    if (terms_.empty() || o.terms_.empty())
        return {};
    std::unordered_map<Exponent, mpz_class, ExponentHash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    mpz_class tmp;
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            mpz_mul(tmp.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
            acc[add(ea, eb)] += tmp;
        }
    LaurentPoly r;
    for (auto& [e, c] : acc)
        if (c != 0)
            r.terms_.emplace(e, std::move(c));
    return r;
}

LaurentPoly LaurentPoly::bar() const
{
    LaurentPoly r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(Exponent{-e[0], -e[1], -e[2], -e[3], e[4]}, c);
    return r;
}

LaurentPoly LaurentPoly::substitute(const std::array<Exponent, 5>& images) const
{
    LaurentPoly r;
    for (const auto& [e, c] : terms_) {
        Exponent n{};
        for (int v = 0; v < 5; ++v)
            for (int j = 0; j < 5; ++j)
                n[j] += e[v] * images[v][j];
        r.add_term(n, c);
    }
    return r;
}

LaurentPoly LaurentPoly::shift(const Exponent& s) const
{
    LaurentPoly r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(add(e, s), c);
    return r;
}

mpz_class LaurentPoly::rank() const
{
    mpz_class s = 0;
    for (const auto& [e, c] : terms_)
        s += c;
    return s;
}

LaurentPoly LaurentPoly::y_part() const
{
    LaurentPoly r;
    for (const auto& [e, c] : terms_)
        if (e[4] != 0)
            r.terms_.emplace(e, c);
    return r;
}

LaurentPoly LaurentPoly::y_free_part() const
{
    LaurentPoly r;
    for (const auto& [e, c] : terms_)
        if (e[4] == 0)
            r.terms_.emplace(e, c);
    return r;
}

std::string LaurentPoly::str() const
{
    if (terms_.empty())
        return "0";
    static const char* names[5] = {"t1", "t2", "t3", "t4", "y"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first)
            os << (c > 0 ? " + " : " - ");
        else if (c < 0)
            os << "-";
        first = false;
        mpz_class a = abs(c);
        bool unit = true;
        for (int v : e)
            unit = unit && v == 0;
        if (a != 1 || unit)
            os << a;
        for (int v = 0; v < 5; ++v) {
            if (e[v] == 0)
                continue;
            os << names[v];
            if (e[v] != 1)
                os << "^" << e[v];
        }
    }
    return os.str();
}

LaurentPoly exact_divide(const LaurentPoly& p, int axis)
{
    // Group by the exponents of the other variables, then run the
    // telescoping recursion q_k = q_{k-1} + p_k along the chosen axis.
    std::map<Exponent, std::map<int, mpz_class>> groups;
    for (const auto& [e, c] : p.terms()) {
        Exponent rest = e;
        rest[axis] = 0;
        groups[rest][e[axis]] = c;
    }
    LaurentPoly q;
    for (const auto& [rest, coeffs] : groups) {
        mpz_class running = 0;
        int lo = coeffs.begin()->first;
        int hi = coeffs.rbegin()->first;
        auto it = coeffs.begin();
        for (int k = lo; k <= hi; ++k) {
            if (it != coeffs.end() && it->first == k) {
                running += it->second;
                ++it;
            }
            if (k < hi || running != 0) {
                if (k == hi)
                    throw NotDivisible("polynomial not divisible by (1 - t" + std::to_string(axis + 1) + ")");
                Exponent e = rest;
                e[axis] = k;
                q.add_term(e, running);
            }
        }
    }
    return q;
}

PoleFraction PoleFraction::raised_to(const std::array<int, 4>& den) const
{
    LaurentPoly n = num_;
    for (int i = 0; i < 4; ++i)
        for (int k = den_[i]; k < den[i]; ++k)
            n = n * LaurentPoly::one_minus_t({i});
    return {std::move(n), den};
}

PoleFraction PoleFraction::operator+(const PoleFraction& o) const
{
    std::array<int, 4> d;
    for (int i = 0; i < 4; ++i)
        d[i] = std::max(den_[i], o.den_[i]);
    PoleFraction a = raised_to(d);
    PoleFraction b = o.raised_to(d);
    return {a.num_ + b.num_, d};
}

PoleFraction PoleFraction::operator-(const PoleFraction& o) const { return *this + (-o); }

PoleFraction PoleFraction::operator*(const PoleFraction& o) const
{
    std::array<int, 4> d;
    for (int i = 0; i < 4; ++i)
        d[i] = den_[i] + o.den_[i];
    return {num_ * o.num_, d};
}

PoleFraction PoleFraction::over_one_minus_t(int axis, int times) const
{
    PoleFraction r = *this;
    r.den_[axis] += times;
    return r;
}

PoleFraction PoleFraction::bar() const
{
    // 1/(1 - t^{-1}) = -t/(1 - t)
    LaurentPoly n = num_.bar();
    Exponent s{};
    int sign = 1;
    for (int i = 0; i < 4; ++i) {
        s[i] = den_[i];
        if (den_[i] % 2 != 0)
            sign = -sign;
    }
    n = n.shift(s);
    if (sign < 0)
        n = -n;
    return {std::move(n), den_};
}

LaurentPoly PoleFraction::clear() const
{
    LaurentPoly n = num_;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < den_[i]; ++k)
            n = exact_divide(n, i);
    return n;
}

KWeight KWeight::operator+(const KWeight& o) const
{
    KWeight r;
    for (int i = 0; i < 4; ++i)
        r.c[i] = c[i] + o.c[i];
    return r;
}

KWeight KWeight::operator-() const
{
    KWeight r;
    for (int i = 0; i < 4; ++i)
        r.c[i] = -c[i];
    return r;
}

KWeight KWeight::scaled(int n) const
{
    KWeight r;
    for (int i = 0; i < 4; ++i)
        r.c[i] = n * c[i];
    return r;
}

KWeight reduce_exponent(const Exponent& e)
{
    return KWeight{{2 * (e[0] - e[3]), 2 * (e[1] - e[3]), 2 * (e[2] - e[3]), 2 * e[4]}};
}

WeightMap reduce_cy(const LaurentPoly& p)
{
    WeightMap m;
    for (const auto& [e, c] : p.terms()) {
        auto& slot = m[reduce_exponent(e)];
        slot += c;
    }
    for (auto it = m.begin(); it != m.end();)
        it = it->second == 0 ? m.erase(it) : std::next(it);
    return m;
}

WeightMap weight_sum(const WeightMap& a, const WeightMap& b, int sign_b)
{
    WeightMap r = a;
    for (const auto& [w, c] : b) {
        auto& slot = r[w];
        slot += sign_b * c;
        if (slot == 0)
            r.erase(w);
    }
    return r;
}

WeightMap weight_product(const WeightMap& a, const WeightMap& b)
{
    WeightMap r;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b)
            r[wa + wb] += ca * cb;
    for (auto it = r.begin(); it != r.end();)
        it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

WeightMap weight_bar(const WeightMap& a)
{
    WeightMap r;
    for (const auto& [w, c] : a) {
        KWeight b = w;
        for (int i = 0; i < 3; ++i)
            b.c[i] = -b.c[i];
        r[b] = c;
    }
    return r;
}

mpz_class weight_rank(const WeightMap& a)
{
    mpz_class s = 0;
    for (const auto& [w, c] : a)
        s += c;
    return s;
}

std::string weight_str(const KWeight& w)
{
    std::ostringstream os;
    os << "(" << w.c[0] << "," << w.c[1] << "," << w.c[2] << ";" << w.c[3] << ")";
    return os.str();
}

namespace {

std::mt19937_64 point_rng(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x51ed2701u};
    return std::mt19937_64(seq);
}

} // namespace

QPoint random_qpoint(std::uint64_t seed, std::uint64_t index)
{
    auto rng = point_rng(seed, index);
    QPoint p;
    for (auto& r : p.root) {
        long n, d;
        do {
            n = static_cast<long>(rng() % 10000) + 1;
            d = static_cast<long>(rng() % 10000) + 1;
        } while (n == d);
        r = mpq_class(n, d);
        r.canonicalize();
    }
    return p;
}

FpPoint random_fppoint(std::uint64_t seed, std::uint64_t index)
{
    auto rng = point_rng(seed ^ 0x9e3779b97f4a7c15ull, index);
    FpPoint p;
    for (auto& r : p.root)
        r = Fp::raw(2 + rng() % (Fp::P - 3));
    return p;
}

} // namespace quadvertex
