#pragma once

#include "cubic.hpp"
#include "cyclo.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace veech {

struct RootTuple {
    int n = 0;
    std::array<int, 3> e = {0, 0, 0};

    bool operator<(const RootTuple & o) const
    {
        return std::tie(n, e) < std::tie(o.n, o.e);
    }
    bool operator==(const RootTuple & o) const { return n == o.n && e == o.e; }
};

// reasons a tuple fails the admissibility filters; ok means passed
enum class Filter {
    ok,
    gcd_not_one,
    distinctness,
    not_cubic,
    not_one_field,
    not_basis,
    c_sign,
    moduli_not_rational,
    moduli_not_positive,
    s_sign,
    chain_sign,
};
const char * filter_name(Filter f);

struct Candidate {
    RootTuple tuple;
    std::array<CycloElem, 3> c; // (1, c2, c3), real and positive
    std::array<CycloElem, 3> h; // (1, h2, h3), dual-basis normalized
    CubicField field;
    CycloElem s;
    std::array<Rat, 3> theta;   // signed angle fractions in (-1/2, 1/2)
    bool reversed = false;      // built by reverse_chain
};

// tuple invariants: gcd(e1,e2,e3,n) = 1 and the 2g+2 roots distinct
Filter validate_tuple(const RootTuple & t);

// normalized circumferences (1, c2, c3) from the resultant formula; throws
// CycloError on a vanishing denominator with valid distinctness (invariant
// breach), returns nullopt if distinctness fails
std::array<CycloElem, 3> circumference_ratios(const RootTuple & t);

std::array<Rat, 3> theta_of(const RootTuple & t);

// s = sum_j c_j (sgn theta_j - 2 theta_j)
CycloElem compute_s(const RootTuple & t, const std::array<CycloElem, 3> & c);

// conditions (2)-(3): distinctness, one cubic field, trace-dual moduli
// rational and positive, positive circumference ratios
Filter check_symmetric(const RootTuple & t);

// conditions (1) and (4) on top of check_symmetric: c_j > 0, s > 0, chain
// saddle lengths positive
Filter check_asymmetric(const RootTuple & t);

// full candidate for a tuple passing both checks
Candidate build_candidate(const RootTuple & t);

// canonical representative under 6 permutations x optional simultaneous
// inversion e -> n - e
std::array<int, 3> canonical_tuple(int n, std::array<int, 3> e);

struct EnumerationResult {
    int n = 0;
    std::vector<std::array<int, 3>> symmetric;  // canonical representatives
    std::vector<std::array<int, 3>> asymmetric; // ordered tuples
    std::map<std::string, long> rejects;        // reason -> canonical tuples rejected
};

EnumerationResult enumerate_candidates(int n, int workers = 1);

struct OrderScanEntry {
    EnumerationResult enumeration;
    std::string field_name; // e.g. "Q(cos(pi/7))" for nonempty moduli
    int conductor = 0;
};

struct OrderScanReport {
    std::vector<OrderScanEntry> entries; // ascending n over divisors of 56 and 72
    std::vector<int> nonempty_moduli;
};

OrderScanReport run_order_scan(int workers = 1);

} // namespace veech
