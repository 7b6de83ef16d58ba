#include "cubic.hpp"

#include <numeric>

namespace veech {

CubicField CubicField::from_generator(const CycloElem & t)
{
    if (degree_over_Q(t) != 3)
        throw CycloError("cubic generator must have degree 3");
    CubicField k;
    k.n = t.n;
    k.t = t;
    k.power_basis = {cyclo_rat(Rat(1), t.n), t, mul(t, t)};
    const auto & ctx = CycloContext::get(t.n);
    for (int u : ctx.units)
        if (eq(galois_apply(u, t), t))
            k.stabilizer.push_back(u);
    // coset reps: 1 plus two units moving t to each other conjugate
    k.coset_reps[0] = 1;
    CycloElem t1, t2;
    bool have1 = false, have2 = false;
    for (int u : ctx.units) {
        CycloElem img = galois_apply(u, t);
        if (eq(img, t))
            continue;
        if (!have1) {
            t1 = img;
            k.coset_reps[1] = u;
            have1 = true;
        } else if (!eq(img, t1) && !have2) {
            t2 = img;
            k.coset_reps[2] = u;
            have2 = true;
        }
    }
    if (!have1 || !have2)
        throw CycloError("could not find three conjugates of the cubic generator");
    k.conductor = conductor_of(t);
    // conductor shape 9^eps * p1...pm with distinct primes p = 1 mod 3
    int c = k.conductor;
    for (auto [p, e] : factorize(c)) {
        bool ok = (p == 3 && e == 2) || (e == 1 && p % 3 == 1);
        if (!ok)
            throw CycloError("conductor " + std::to_string(c) + " is not of cubic abelian shape");
    }
    return k;
}

bool in_field(const CubicField & k, const CycloElem & a0)
{
    CycloElem a = lift(a0, k.n);
    for (int u : k.stabilizer)
        if (!eq(galois_apply(u, a), a))
            return false;
    int d = degree_over_Q(a);
    return d == 1 || d == 3;
}

Rat trace_K(const CubicField & k, const CycloElem & a0)
{
    CycloElem a = lift(a0, k.n);
    if (!in_field(k, a))
        throw NotInSubfieldError();
    CycloElem s = cyclo_zero(k.n);
    for (long rep : k.coset_reps)
        s = add(s, galois_apply(rep, a));
    return s.rat_value();
}

std::array<Rat, 3> expand_in_cubic_basis(const CubicField & k, const CycloElem & a0)
{
    CycloElem a = lift(a0, k.n);
    int phi = CycloContext::get(k.n).phi;
    RatMat m(phi, RatVec(3));
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < phi; ++i)
            m[i][j] = k.power_basis[j].c[i];
    auto sol = solve_exact(std::move(m), a.c);
    if (!sol)
        throw NotInSubfieldError();
    return {(*sol)[0], (*sol)[1], (*sol)[2]};
}

std::array<CycloElem, 3> dual_basis(const CubicField & k, const std::array<CycloElem, 3> & c0)
{
    std::array<CycloElem, 3> c = {lift(c0[0], k.n), lift(c0[1], k.n), lift(c0[2], k.n)};
    RatMat gram(3, RatVec(3));
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            gram[i][j] = gram[j][i] = trace_K(k, mul(c[i], c[j]));
    RatMat ginv;
    try {
        ginv = inverse(gram);
    } catch (const LinalgError &) {
        throw DegenerateBasisError();
    }
    std::array<CycloElem, 3> d = {cyclo_zero(k.n), cyclo_zero(k.n), cyclo_zero(k.n)};
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
            d[j] = add(d[j], mul(c[m], ginv[m][j]));
    return d;
}

int conductor_of(const CycloElem & a)
{
    const auto & ctx = CycloContext::get(a.n);
    for (int d : divisors(a.n)) {
        bool fixed = true;
        for (int u : ctx.units) {
            if (u % d != 1 % d)
                continue;
            if (!eq(galois_apply(u, a), a)) {
                fixed = false;
                break;
            }
        }
        if (fixed)
            return d;
    }
    return a.n;
}

} // namespace veech
