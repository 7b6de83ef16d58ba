#pragma once

#include "cyclo.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace veech {

// ---- Dvornicich-Zannier order bounds ----------------------------------

struct OrderBoundQuery {
    int k; // relation length, >= 2
    int d; // degree bound [L cap Q(zeta_n) : Q], >= 1
};

// true iff n passes both conditions for a primitive L-relation of length k:
// p^(m+1) | n implies p^m | 2d, and sum over p || n of
// ((p-1)/gcd(d,p-1) - 1) <= k - 2.
bool dz_admissible(long n, const OrderBoundQuery & q);

// maximal admissible orders under divisibility, primes capped
std::vector<long> dz_enumerate_maximal(const OrderBoundQuery & q, int prime_cap = 100);

// ---- primitive-subrelation decomposition ------------------------------

struct RelationTerm {
    CycloElem coeff;          // nonzero
    std::pair<int, long> root; // (modulus, exponent)
};

struct PartitionReport {
    bool primitive = false;
    std::vector<std::vector<int>> vanishing_subsets; // proper nonempty, by index
};

// requires: the full sum vanishes exactly; length <= 12
PartitionReport primitive_partition(const std::vector<RelationTerm> & terms);

// ---- Lemma "2pow3" pair search over orders dividing 63 ----------------

struct PairHit {
    int e1, e2;      // y_j = zeta_63^{e_j}
    int ord1, ord2;
    int ratio_degree; // degree of (y1+y1^-1)/(y2+y2^-1), in {1, 3}
};

struct PairSearchResult {
    std::vector<PairHit> hits; // lexicographic in (e1, e2)
    bool paper_dichotomy;      // gcd in {7,9} or orders {7,3} for every hit
    bool orders_in_379;        // corrected invariant: both orders in {3,7,9}
};

PairSearchResult pair_search_63();

// ---- Lemma "2pow2" determinant search over n0 = 819 -------------------

struct DetTriple {
    int m1, m2, m3;
    int ord1, ord2, ord3;
    bool cubes_equal;      // y1^3 = y2^3 = y3^3
};

struct DetSearchResult {
    std::vector<DetTriple> survivors;  // lexicographic, exact-confirmed
    long prefilter_hits = 0;           // triples passing the float prefilter
    long space_size = 0;               // triples satisfying the preconditions
    long rejected_sample_checked = 0;  // random rejected triples re-checked exactly
    long rejected_sample_nonzero = 0;  // of those, exactly nonzero (want: all)
    bool paper_dichotomy = false;      // cubes or all orders in {7,9}
    bool orders_in_379 = false;        // corrected: cubes or all orders in {3,7,9}
};

DetSearchResult det_search_819(double tolerance = 1e-6, int workers = 1,
                               long rejected_sample = 1000);

} // namespace veech
