#pragma once

#include "search.hpp"
#include "sign.hpp"

#include <array>

namespace veech {

// Chain-of-cylinders model: three horizontal cylinders C1 - C2 - C3, the
// distinguished saddle gamma_0 in both boundaries of C1, t2 = 0 normalized.
struct ChainSurface {
    std::array<CycloElem, 3> c, h;
    CycloElem s;                  // gamma_0 length
    Rat t1;                       // twist of C1 as a fraction of c1
    Rat t3;                       // twist of C3 as a fraction of c3
    std::array<CycloElem, 4> ell; // saddle lengths l_0..l_3, all positive
    CycloElem area;
};

struct GeometricInfeasibility : CycloError {
    explicit GeometricInfeasibility(const std::string & m) : CycloError(m) {}
};

ChainSurface build_chain_surface(const Candidate & cand, const Rat & t1, const Rat & t3);

struct VerticalCylinder {
    CycloElem height;
    CycloElem circumference;
    long cross_gamma0 = 0;   // crossings of gamma_0
    long cross_gamma0p = 0;  // crossings of the other bottom saddle of C1
};

enum class Side { C1, C3 };

// First-return orbit tracing on the core circle of the side cylinder with
// marked points at the gamma endpoints. The traced data is compared with the
// closed forms h' = (r, c1/q - r), c' = q h1 + (q-p-1) h2 / q h1 + (q-p) h2
// and crossing counts (p+1, q-p-1) / (p, q-p); disagreement throws.
std::array<VerticalCylinder, 2> vertical_side_decomposition(const ChainSurface & surf, Side side);

// raw tracer on one circle; exposed for the randomized oracle suite
std::array<VerticalCylinder, 2> trace_vertical(const CycloElem & c1, const CycloElem & h1,
                                               const CycloElem & h2, const CycloElem & s,
                                               const Rat & t1_frac);

struct ModuliRatio {
    Rat value;        // meaningful when rational
    bool is_rational; // exact degree test
};

std::vector<ModuliRatio> moduli_ratio_check(const std::array<VerticalCylinder, 2> & cyls);

// Veech 14-gon: regular 14-gon, unit circumradius, opposite sides identified,
// one side direction horizontal; exact data in Q(zeta_28).
struct Gon14 {
    std::array<CycloElem, 3> c, h; // horizontal cylinders, C1 = the gamma_0 end
    CycloElem s_c1_end;            // gamma_0 length (central chord)
    CycloElem s_c3_end;            // gamma_g length (identified polygon side)
    std::array<Rat, 3> twist_frac; // twists after shearing t2 to 0, mod 1
};

Gon14 build_veech_14gon();

// exact agreement of the normalized 14-gon data with a candidate, up to
// global scaling, chain reversal and twist sign
bool gon14_matches_candidate(const Candidate & cand);

} // namespace veech
