#ifndef QUADVERTEX_VERTEXCORE_HPP
#define QUADVERTEX_VERTEXCORE_HPP

#include <array>
#include <map>
#include <stdexcept>
#include <string>

#include "quadvertex/character.hpp"
#include "quadvertex/laurent.hpp"

namespace quadvertex {

enum class Mode { DT, PT };

struct ZeroWeightInDenominator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sign * tau^monomial * prod_w [tau^w]^{n_w}, or zero when vanished.
struct FactoredContribution {
    int sign = 1;
    KWeight monomial;
    std::map<KWeight, int> factors;
    bool vanished = false;

    static FactoredContribution zero()
    {
        FactoredContribution c;
        c.vanished = true;
        return c;
    }

    FactoredContribution operator*(const FactoredContribution& o) const;
    FactoredContribution negated() const;
    // Every variable (t_i, y) raised to the n-th power.
    FactoredContribution adams(int n) const;
    // Sum of the multiplicities.
    int rank() const;
    // Each weight and its inverse folded onto one representative.
    FactoredContribution canonical() const;

    template <class F>
    F eval(const Point<F>& pt) const;

    bool operator==(const FactoredContribution& o) const = default;
};

FactoredContribution bracket_of_monomial(const KWeight& w, int n = 1);

// [-v] for a reduced weight multiset v.
FactoredContribution bracket(const WeightMap& v);

// tau^{-(1/2) sum n_w w}: the prefactor of a bracket product, doubled encoding.
KWeight half_det_exponent(const FactoredContribution& c);

// Pre-relation classes of a fixed point (poles already cleared).
LaurentPoly plain_v_poly(const VertexCharacter& ch);
LaurentPoly tilde_v_poly(const VertexCharacter& ch);
LaurentPoly plain_V_poly(const VertexCharacter& ch);

struct VertexReport {
    bool integer_powers = true;
    bool no_positive_fixed_term = true;
    bool rank_zero = true;
    bool y_part_matches = true;
    bool ok() const { return integer_powers && no_positive_fixed_term && rank_zero && y_part_matches; }
    std::string describe() const;
};

VertexReport check_vertex(const VertexCharacter& ch, const WeightMap& v_tilde);

struct PropertyViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reduced tilde-v; throws PropertyViolation if any vertex property fails.
WeightMap tilde_v(const VertexCharacter& ch, Mode mode);

// Normal-bundle degrees (m, m', m'') of an edge along x1 of the standard chart.
struct EdgeGeometry {
    std::array<int, 3> degrees{0, 0, 0};

    explicit EdgeGeometry(std::array<int, 3> d);
    // (t1, t2, t3, t4, y) -> (t1^-1, t2 t1^-m, t3 t1^-m', t4 t1^-m'', y)
    std::array<Exponent, 5> transform() const;
};

LaurentPoly plain_e_poly(const PlanePartition& lambda, const EdgeGeometry& g);
LaurentPoly tilde_e_poly(const PlanePartition& lambda, const EdgeGeometry& g);
LaurentPoly plain_E_poly(const PlanePartition& lambda, const EdgeGeometry& g);

// Reduced tilde-e; throws PropertyViolation unless rank 0 and the y-terms
// match the derivative formula.
WeightMap tilde_e(const PlanePartition& lambda, const EdgeGeometry& g);
// y-terms of tilde-e with t1 = 1, from differentiating the transformed character.
LaurentPoly edge_y_terms_at_one(const PlanePartition& lambda, const EdgeGeometry& g);

bool plain_vertex_decomposition_check(const VertexCharacter& ch);
bool plain_edge_decomposition_check(const PlanePartition& lambda, const EdgeGeometry& g);

// ---- evaluation ----

template <class F>
F FactoredContribution::eval(const Point<F>& pt) const
{
    if (vanished)
        return F(0);
    F num(sign);
    F den(1);
    num *= monomial_value(monomial, pt);
    for (const auto& [w, n] : factors) {
        F b = bracket_value(w, pt);
        if (is_zero(b)) {
            if (n > 0)
                return F(0);
            throw SingularPoint("bracket factor vanishes at evaluation point");
        }
        F p = pow(b, n > 0 ? n : -n);
        if (n > 0)
            num *= p;
        else
            den *= p;
    }
    return num / den;
}

template <>
mpq_class FactoredContribution::eval(const QPoint& pt) const;

} // namespace quadvertex

#endif
