#pragma once

#include "search.hpp"

#include <map>
#include <optional>
#include <string>

namespace veech {

// Bivariate polynomial in the formal variables P (= p+1) and q, rational
// coefficients, zero coefficients never stored.
struct PolyPQ {
    std::map<std::pair<int, int>, Rat> coef; // (deg_P, deg_q) -> coefficient

    bool is_zero() const { return coef.empty(); }
    void set(int i, int j, const Rat & v);
    Rat get(int i, int j) const;
    int deg_P() const;
    Rat eval(const Rat & P, const Rat & q) const;
    std::string str() const;

    bool operator==(const PolyPQ & o) const { return coef == o.coef; }
};

PolyPQ pq_const(const Rat & c);
PolyPQ pq_P();
PolyPQ pq_q();
PolyPQ add(const PolyPQ & a, const PolyPQ & b);
PolyPQ sub(const PolyPQ & a, const PolyPQ & b);
PolyPQ mul(const PolyPQ & a, const PolyPQ & b);
PolyPQ scale(const PolyPQ & a, const Rat & r);

// primitive integer content, positive leading coefficient (lex P then q),
// trivial P/q factors split off and returned
PolyPQ normalize_pq(PolyPQ a, int & p_factors, int & q_factors);

// univariate rational polynomial in q
using PolyQ = std::map<int, Rat>;
Rat eval_q(const PolyQ & f, const Rat & q);

struct CaseData {
    Candidate cand;
    std::array<Rat, 3> a, b, k; // expansions of s, h2, s*h2 in (1, t, t^2)
    RatMat ML, MR;              // the two 3x3 matrices of the twist equation
    std::array<Rat, 3> lambda;  // dependence of (s-1, h2, s h2 + 1), primitive integer
};

// nonzero rational triple with l1 (s-1) + l2 h2 + l3 (s h2 + 1) = 0, or
// nullopt if independent; normalized primitive-integer, first nonzero > 0
std::optional<std::array<Rat, 3>> dependence_lambda(const Candidate & cand);

// requires dependence_lambda to exist; verifies all CaseData invariants
CaseData build_case(const Candidate & cand);

struct Elimination {
    RatVec kappa;                 // right kernel of MR
    RatVec ell;                   // shared left kernel of MR and ML
    std::vector<PolyPQ> constraints;   // tau-eliminant(s), normalized
    std::vector<PolyPQ> inv_u_affine;  // rows where 1/u is a polynomial in (P, q)
};

Elimination eliminate_u(const CaseData & cd);

struct TwistSolution {
    long p = 0, q = 0;
    Rat u;
    bool valid = false;
    std::string reason;
};

struct SolveOutcome {
    std::vector<TwistSolution> solutions; // accepted (p, q, u)
    bool incomplete = false;              // q-range not closed; scanned to q_max only
    std::string closure;                  // discriminant-bound | affine-u | q-max
    PolyQ discriminant;                   // of the primary quadratic constraint, monicized
    std::vector<long> feasible_q_direct;  // direct per-q route, q <= q_max
    std::vector<long> feasible_q_symbolic;
};

SolveOutcome integer_solutions(const CaseData & cd, const Elimination & elim, long q_max);

// reversed-chain candidate: circumferences (1, c2/c3, 1/c3), saddle s'/c3,
// heights re-derived from the dual basis of the reversed circumferences
Candidate reverse_chain(const Candidate & cand);

struct CandidateVerdict {
    RootTuple tuple;
    std::string stage;  // where it was eliminated, or "survivor"
    std::optional<std::array<Rat, 3>> lambda;
    std::optional<SolveOutcome> forward;
    std::optional<SolveOutcome> reversed;
    bool survives = false;
};

struct Classification {
    OrderScanReport scan;
    std::vector<CandidateVerdict> verdicts;
    std::vector<RootTuple> survivors;
    std::vector<std::array<Rat, 3>> survivor_twists; // (t1, t2, t3), exact
    int orbit_count = 0;
    bool incomplete = false;
    bool gon14_match = false; // flat-model cross-check of the survivors
};

Classification classify_all(long q_max = 64, int workers = 1);

} // namespace veech
