#ifndef QUADVERTEX_LAURENT_HPP
#define QUADVERTEX_LAURENT_HPP

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "quadvertex/field.hpp"

namespace quadvertex {

// Exponents of (t1, t2, t3, t4, y).
using Exponent = std::array<int, 5>;

struct NotDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class LaurentPoly {
public:
    using Terms = std::map<Exponent, mpz_class>;

    LaurentPoly() = default;
    static LaurentPoly constant(long c);
    static LaurentPoly monomial(const Exponent& e, const mpz_class& c = 1);
    static LaurentPoly t(int axis, int power = 1); // axis in 0..3
    static LaurentPoly y(int power = 1);
    // prod_{i in axes} (1 - t_i)
    static LaurentPoly one_minus_t(std::initializer_list<int> axes);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    void add_term(const Exponent& e, const mpz_class& c);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

    // t_i -> t_i^{-1}; the y exponent is left alone.
    LaurentPoly bar() const;
    // Monomial substitution: variable v -> prod_j var_j^{images[v][j]}.
    LaurentPoly substitute(const std::array<Exponent, 5>& images) const;
    LaurentPoly shift(const Exponent& e) const;
    // Sum of coefficients with every variable set to 1.
    mpz_class rank() const;
    // Terms whose y exponent is nonzero (or zero).
    LaurentPoly y_part() const;
    LaurentPoly y_free_part() const;

    std::string str() const;

private:
    Terms terms_;
};

// Quotient by (1 - t_axis); throws NotDivisible when the remainder is nonzero.
LaurentPoly exact_divide(const LaurentPoly& p, int axis);

// Numerator over prod_i (1 - t_i)^{den[i]}.  Poles are cleared only at the end.
class PoleFraction {
public:
    PoleFraction() = default;
    PoleFraction(LaurentPoly num) : num_(std::move(num)) {} // NOLINT(google-explicit-constructor)
    PoleFraction(LaurentPoly num, std::array<int, 4> den) : num_(std::move(num)), den_(den) {}

    const LaurentPoly& numerator() const { return num_; }
    const std::array<int, 4>& denominator() const { return den_; }

    PoleFraction operator+(const PoleFraction& o) const;
    PoleFraction operator-(const PoleFraction& o) const;
    PoleFraction operator-() const { return {-num_, den_}; }
    PoleFraction operator*(const PoleFraction& o) const;
    PoleFraction& operator+=(const PoleFraction& o) { return *this = *this + o; }
    PoleFraction& operator-=(const PoleFraction& o) { return *this = *this - o; }
    PoleFraction over_one_minus_t(int axis, int times = 1) const;
    PoleFraction bar() const;

    // Divides out the whole denominator; throws NotDivisible on failure.
    LaurentPoly clear() const;

private:
    PoleFraction raised_to(const std::array<int, 4>& den) const;
    LaurentPoly num_;
    std::array<int, 4> den_{0, 0, 0, 0};
};

// Weight after imposing t1 t2 t3 t4 = 1, in doubled units:
// c = (2(a1-a4), 2(a2-a4), 2(a3-a4), 2b) for t^a y^b.
struct KWeight {
    std::array<int, 4> c{0, 0, 0, 0};

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
    bool has_y() const { return c[3] != 0; }
    KWeight operator+(const KWeight& o) const;
    KWeight operator-() const;
    KWeight scaled(int n) const;
    auto operator<=>(const KWeight&) const = default;
};

KWeight reduce_exponent(const Exponent& e);

using WeightMap = std::map<KWeight, mpz_class>;

WeightMap reduce_cy(const LaurentPoly& p);
WeightMap weight_sum(const WeightMap& a, const WeightMap& b, int sign_b = 1);
WeightMap weight_product(const WeightMap& a, const WeightMap& b);
WeightMap weight_bar(const WeightMap& a);
mpz_class weight_rank(const WeightMap& a);
std::string weight_str(const KWeight& w);

// Values of t1^{1/2}, t2^{1/2}, t3^{1/2}, y^{1/2}.  t4^{1/2} is determined.
template <class F>
struct Point {
    std::array<F, 4> root;

    // Adams operation: every variable raised to the n-th power.
    Point power(int n) const
    {
        Point p = *this;
        for (auto& r : p.root)
            r = pow(r, n);
        return p;
    }
};

using QPoint = Point<mpq_class>;
using FpPoint = Point<Fp>;

// Value of the monomial tau^{w/2}, i.e. prod root_i^{w_i}.
template <class F>
F half_monomial(const KWeight& w, const Point<F>& pt)
{
    F v(1);
    for (int i = 0; i < 4; ++i)
        if (w.c[i] != 0)
            v *= pow(pt.root[i], w.c[i]);
    return v;
}

// Value of the monomial tau^w (doubled encoding: root^c).
template <class F>
F monomial_value(const KWeight& w, const Point<F>& pt)
{
    return half_monomial(w, pt);
}

// [tau^w] = tau^{w/2} - tau^{-w/2}; requires every doubled coordinate even.
template <class F>
F bracket_value(const KWeight& w, const Point<F>& pt)
{
    KWeight h;
    for (int i = 0; i < 4; ++i) {
        if (w.c[i] % 2 != 0)
            throw std::invalid_argument("bracket of a weight with quarter powers: " + weight_str(w));
        h.c[i] = w.c[i] / 2;
    }
    F x = half_monomial(h, pt);
    return x - F(1) / x;
}

// Values of a Laurent polynomial and of a weight map at a point.
template <class F>
F eval(const WeightMap& m, const Point<F>& pt)
{
    F s(0);
    for (const auto& [w, c] : m) {
        if constexpr (std::is_same_v<F, mpq_class>)
            s += mpq_class(c) * monomial_value(w, pt);
        else
            s += Fp::from_mpz(c) * monomial_value(w, pt);
    }
    return s;
}

template <class F>
F eval(const LaurentPoly& p, const Point<F>& pt)
{
    return eval(reduce_cy(p), pt);
}

// Deterministic pseudo-random points; numerators and denominators in [1, 10^4].
QPoint random_qpoint(std::uint64_t seed, std::uint64_t index);
FpPoint random_fppoint(std::uint64_t seed, std::uint64_t index);

} // namespace quadvertex

#endif
