#pragma once

#include "rat.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace veech {

struct CycloError : std::runtime_error {
    explicit CycloError(const std::string & m) : std::runtime_error(m) {}
};

// Precomputed data for Q(zeta_n): the n-th cyclotomic polynomial, reduction
// of zeta^k to the power basis {1, zeta, ..., zeta^(phi-1)}, the unit group
// of Z/n, and the absolute trace of each zeta^k. Contexts are immutable and
// cached per n; safe to share across threads.
struct CycloContext {
    int n = 1;
    int phi = 1;
    std::vector<int> units;                    // units of Z/n, ascending
    std::vector<Int> cyclo_poly;               // Phi_n, degree phi, monic, size phi+1
    std::vector<std::vector<Int>> pow_basis;   // zeta^k in power basis, k < max(n, 2*phi-1)
    std::vector<Int> trace_zeta;               // Tr_{Q(zeta_n)/Q}(zeta^k), k < n

    static const CycloContext & get(int n);
};

int euler_phi(int n);
int moebius(int n);
std::vector<int> divisors(int n);
std::vector<std::pair<int, int>> factorize(int n);

// Element of Q(zeta_n) in canonical power-basis coordinates. Length of c is
// exactly phi(n); equality of canonical vectors is equality in the field.
// Values are immutable in spirit: operations return fresh elements.
struct CycloElem {
    int n = 1;
    std::vector<Rat> c;

    CycloElem() : c(1, Rat(0)) {}

    bool is_zero() const;
    bool is_rational() const;
    Rat rat_value() const; // requires is_rational()
};

CycloElem cyclo_zero(int n);
CycloElem cyclo_rat(const Rat & r, int n = 1);
// zeta_n^e (e arbitrary, reduced mod n)
CycloElem cyclo_root(int n, long e);
// canonical form of sum coeff_e * zeta_n^e over an exponent map
CycloElem canonicalize(int n, const std::map<long, Rat> & raw);

CycloElem add(const CycloElem & a, const CycloElem & b);
CycloElem sub(const CycloElem & a, const CycloElem & b);
CycloElem neg(const CycloElem & a);
CycloElem mul(const CycloElem & a, const CycloElem & b);
CycloElem mul(const CycloElem & a, const Rat & r);
CycloElem inv(const CycloElem & a);
inline CycloElem div(const CycloElem & a, const CycloElem & b) { return mul(a, inv(b)); }
bool eq(const CycloElem & a, const CycloElem & b);

// lift to Q(zeta_m), m a multiple of a.n
CycloElem lift(const CycloElem & a, int m);
// lift both to Q(zeta_lcm)
void common_lift(CycloElem & a, CycloElem & b);

// sigma_k : zeta -> zeta^k, requires gcd(k, n) = 1
CycloElem galois_apply(long k, const CycloElem & a);
CycloElem conjugate(const CycloElem & a);
bool is_real(const CycloElem & a);

// [Q(a) : Q] = orbit size under the Galois group of Q(zeta_n)/Q
int degree_over_Q(const CycloElem & a);

// degree of a/b over Q without dividing: counts k with sigma_k(a) b == sigma_k(b) a
int degree_of_ratio(const CycloElem & a, const CycloElem & b);

// Tr_{Q(zeta_n)/Q}
Rat trace_absolute(const CycloElem & a);

} // namespace veech
