#pragma once

#include "cyclo.hpp"
#include "linalg.hpp"

#include <array>

namespace veech {

struct NotInSubfieldError : CycloError {
    NotInSubfieldError() : CycloError("element does not lie in the cubic field") {}
};
struct DegenerateBasisError : CycloError {
    DegenerateBasisError() : CycloError("Gram matrix singular: not a basis") {}
};

// A cubic abelian field K inside Q(zeta_n), presented by a degree-3
// generator t and the power basis (1, t, t^2). The stabilizer of K in
// (Z/n)^* and coset representatives drive trace computations.
struct CubicField {
    int n = 1;
    CycloElem t;
    std::array<CycloElem, 3> power_basis;
    int conductor = 1;
    std::vector<int> stabilizer;  // units fixing t
    std::array<long, 3> coset_reps = {1, 1, 1};

    static CubicField from_generator(const CycloElem & t);
};

bool in_field(const CubicField & k, const CycloElem & a);

Rat trace_K(const CubicField & k, const CycloElem & a);

// (r0, r1, r2) with a = r0 + r1 t + r2 t^2
std::array<Rat, 3> expand_in_cubic_basis(const CubicField & k, const CycloElem & a);

// dual basis (d1,d2,d3) of c with respect to the trace pairing:
// trace_K(c_i d_j) = delta_ij
std::array<CycloElem, 3> dual_basis(const CubicField & k, const std::array<CycloElem, 3> & c);

// minimal d | n with a in Q(zeta_d), via invariance under the subgroup
// {k in (Z/n)^* : k = 1 mod d}
int conductor_of(const CycloElem & a);

} // namespace veech
