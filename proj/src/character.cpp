#include "quadvertex/character.hpp"

namespace quadvertex {

namespace {

Exponent box_exponent(const Box4& w)
{
    return Exponent{w[0], w[1], w[2], w[3], 0};
}

LaurentPoly cm_correction(const Legs& legs)
{
    LaurentPoly c;
    for (const auto& w : leg_overlaps(legs))
        c.add_term(box_exponent(w), -(legs_containing(legs, w) - 1));
    return c;
}

VertexCharacter with_legs(const Legs& legs)
{
    VertexCharacter ch;
    ch.legs = legs;
    for (int a = 0; a < 4; ++a)
        ch.leg_chars[a] = leg_character(legs[a], a);
    ch.W = cm_correction(legs);
    return ch;
}

} // namespace

LaurentPoly leg_character(const PlanePartition& leg, int axis)
{
    LaurentPoly p;
    const auto& c = kComplement[axis];
    for (const auto& b : leg.boxes()) {
        Exponent e{};
        e[c[0]] = b[0];
        e[c[1]] = b[1];
        e[c[2]] = b[2];
        p.add_term(e, 1);
    }
    return p;
}

LaurentPoly edge_character(const PlanePartition& lambda) { return leg_character(lambda, 0); }

PoleFraction VertexCharacter::Z() const
{
    PoleFraction z(W);
    for (int a = 0; a < 4; ++a)
        if (!leg_chars[a].is_zero())
            z += PoleFraction(leg_chars[a]).over_one_minus_t(a);
    return z;
}

LaurentPoly VertexCharacter::truncated(int n) const
{
    LaurentPoly p = W;
    for (int a = 0; a < 4; ++a)
        for (int k = 0; k < n; ++k)
            p += leg_chars[a] * LaurentPoly::t(a, k);
    return p;
}

VertexCharacter dt_character(const SolidPartition& pi)
{
    VertexCharacter ch = with_legs(pi.legs());
    for (const auto& b : pi.embedded())
        ch.W.add_term(box_exponent(b), 1);
    return ch;
}

VertexCharacter pt_character(const Legs& cm_legs, const BoxConfiguration& b)
{
    if (!(cm_legs == b.legs()))
        throw InvalidInput("box configuration legs differ from the curve");
    VertexCharacter ch = with_legs(cm_legs);
    for (const auto& box : b.boxes())
        ch.W.add_term(box_exponent(box.w), 1);
    return ch;
}

LaurentPoly naive_box_sum(const SolidPartition& pi, int n)
{
    LaurentPoly p;
    Box4 w;
    for (w[0] = 0; w[0] < n; ++w[0])
        for (w[1] = 0; w[1] < n; ++w[1])
            for (w[2] = 0; w[2] < n; ++w[2])
                for (w[3] = 0; w[3] < n; ++w[3])
                    if (pi.contains(w))
                        p.add_term(box_exponent(w), 1);
    return p;
}

LaurentPoly naive_box_sum(const Legs& cm_legs, const BoxConfiguration& b, int n)
{
    LaurentPoly p = naive_box_sum(cm_solid_partition(cm_legs), n);
    for (const auto& box : b.boxes())
        p.add_term(box_exponent(box.w), 1);
    return p;
}

} // namespace quadvertex
