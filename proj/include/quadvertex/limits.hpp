#ifndef QUADVERTEX_LIMITS_HPP
#define QUADVERTEX_LIMITS_HPP

#include <array>
#include <string>
#include <vector>

#include "quadvertex/series.hpp"

namespace quadvertex {

// ---- dimensional reduction y = t4 ----

WeightMap dim_reduce(const WeightMap& v);
// Zero weights: in the numerator the value is 0; in the denominator an error.
FactoredContribution dim_reduce(const FactoredContribution& c);
QSeries dim_reduce(const QSeries& s);

// Line partitions (row lengths) of the three legs, in the (x2,x3), (x1,x3)
// and (x1,x2) planes.
using Partition = std::vector<int>;
using Legs3 = std::array<Partition, 3>;

// The legs placed in {x4 = 0} as flat plane partitions.
Legs embed_legs(const Legs3& legs);

// Independent 3-fold code path: its own enumeration and the MNOP vertex character.
struct Box3Config {
    Legs3 legs;
    std::vector<std::array<int, 3>> boxes; // embedded points (DT) or the box configuration (PT)
    int q_power = 0;                       // renormalized volume, or |B| + |pi_CM|
};

std::vector<Box3Config> enumerate_3d(const Legs3& legs, int q_max, Mode mode);
// Vertex character V as a Laurent polynomial in t1, t2, t3.
LaurentPoly vertex3d_character(const Box3Config& c, Mode mode);
// sum [-V] q^{n - |pi_CM|}, no signs.
QSeries vertex3d_oracle(const Legs3& legs, int q_max, Mode mode);

// ---- cohomological limits ----

// (c1 l1 + c2 l2 + c3 l3 + c4 m) / 2, with l4 = -(l1 + l2 + l3) eliminated.
struct LinearForm {
    std::array<int, 4> c{0, 0, 0, 0};
    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
    bool has_m() const { return c[3] != 0; }
    auto operator<=>(const LinearForm&) const = default;
};

struct LimitPoint {
    std::array<mpq_class, 3> lambda;
    mpq_class m;
};

LimitPoint random_limit_point(std::uint64_t seed, std::uint64_t index);

struct LinearFormProduct {
    bool zero = false;
    int sign = 1;
    mpq_class constant = 1;
    std::vector<LinearForm> num, den;

    mpq_class eval(const LimitPoint& p) const;
    std::string str() const;
};

LinearFormProduct coho_limit_1(const FactoredContribution& c);

struct CohoLimitII {
    LinearFormProduct euler; // m-free factors; zero when the m-power is negative
    int Q_power = 0;
};

CohoLimitII coho_limit_2(const FactoredContribution& c, int q_power);

// t_i = exp(b l_i), y = exp(b m), b -> 0.
struct LimitIContext {
    using Field = mpq_class;
    LimitPoint pt;
    int n = 1;

    LimitIContext adams(int k) const { return {pt, n * k}; }
    mpq_class term(const FactoredContribution& c, int q_power) const;
};

// Additionally Q = m q, m -> infinity.
struct LimitIIContext {
    using Field = mpq_class;
    LimitPoint pt;
    int n = 1;

    LimitIIContext adams(int k) const { return {pt, n * k}; }
    mpq_class term(const FactoredContribution& c, int q_power) const;
};

// M(q)^e truncated, where M is MacMahon's function; q -> -q when asked.
Table<mpq_class> macmahon_power(const mpq_class& e, int q_max, bool negate_q = false);

// int_{C^4} c1(L) c3(X) for L = t^d, equivariantly (tangent weights -l_i).
mpq_class c1c3_integral(const std::array<int, 4>& d, const LimitPoint& p);

// (l1+l2)(l1+l3)(l2+l3) / (l1 l2 l3 (l1+l2+l3))
mpq_class one_box_euler(const LimitPoint& p);

} // namespace quadvertex

#endif
