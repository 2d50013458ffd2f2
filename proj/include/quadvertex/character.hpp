#ifndef QUADVERTEX_CHARACTER_HPP
#define QUADVERTEX_CHARACTER_HPP

#include <array>
#include <vector>

#include "quadvertex/laurent.hpp"
#include "quadvertex/partitions.hpp"

namespace quadvertex {

// Character of a leg cross-section in the complementary variables of its axis.
LaurentPoly leg_character(const PlanePartition& leg, int axis);

// Z = sum_a leg_a / (1 - t_a) + W.
struct VertexCharacter {
    Legs legs;
    std::array<LaurentPoly, 4> leg_chars;
    LaurentPoly W;

    PoleFraction Z() const;
    // Sum_a leg_a (1 + t_a + ... + t_a^{N-1}) + W.
    LaurentPoly truncated(int n) const;
};

VertexCharacter dt_character(const SolidPartition& pi);
VertexCharacter pt_character(const Legs& cm_legs, const BoxConfiguration& b);

// Z_lambda = sum t2^{j} t3^{k} t4^{l} over the boxes of the cross-section.
LaurentPoly edge_character(const PlanePartition& lambda);

// Box sums over [0,N)^4 (plus the finite PT boxes) for the truncation check.
LaurentPoly naive_box_sum(const SolidPartition& pi, int n);
LaurentPoly naive_box_sum(const Legs& cm_legs, const BoxConfiguration& b, int n);

} // namespace quadvertex

#endif
