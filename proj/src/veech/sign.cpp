#include "sign.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace veech {

namespace {

// closed interval [lo, hi] with outward-rounded endpoints
struct Interval {
    mpfr_t lo, hi;

    explicit Interval(mpfr_prec_t prec)
    {
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
        mpfr_set_zero(lo, 1);
        mpfr_set_zero(hi, 1);
    }
    ~Interval()
    {
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
    Interval(const Interval &) = delete;
    Interval & operator=(const Interval &) = delete;
};

// I += q * cos(2 pi k / n), soundly
void add_q_cos(Interval & acc, const Rat & q, long k, long n, mpfr_prec_t prec)
{
    mpfr_t pi_lo, pi_hi, th_lo, th_hi, c_lo, c_hi, w, t;
    mpfr_inits2(prec, pi_lo, pi_hi, th_lo, th_hi, c_lo, c_hi, w, t, (mpfr_ptr)nullptr);

    mpfr_const_pi(pi_lo, MPFR_RNDD);
    mpfr_const_pi(pi_hi, MPFR_RNDU);
    // theta = pi * (2k/n), factor >= 0 after normalizing k to [0, n)
    Rat f = make_rat(2 * k, n);
    mpfr_mul_q(th_lo, pi_lo, f.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(th_hi, pi_hi, f.get_mpq_t(), MPFR_RNDU);
    // cos over [th_lo, th_hi]: cos is 1-Lipschitz, so widen cos(th_lo) by the
    // interval width
    mpfr_cos(c_lo, th_lo, MPFR_RNDD);
    mpfr_cos(c_hi, th_lo, MPFR_RNDU);
    mpfr_sub(w, th_hi, th_lo, MPFR_RNDU);
    mpfr_sub(c_lo, c_lo, w, MPFR_RNDD);
    mpfr_add(c_hi, c_hi, w, MPFR_RNDU);

    // acc += q * [c_lo, c_hi]
    if (q >= 0) {
        mpfr_mul_q(t, c_lo, q.get_mpq_t(), MPFR_RNDD);
        mpfr_add(acc.lo, acc.lo, t, MPFR_RNDD);
        mpfr_mul_q(t, c_hi, q.get_mpq_t(), MPFR_RNDU);
        mpfr_add(acc.hi, acc.hi, t, MPFR_RNDU);
    } else {
        mpfr_mul_q(t, c_hi, q.get_mpq_t(), MPFR_RNDD);
        mpfr_add(acc.lo, acc.lo, t, MPFR_RNDD);
        mpfr_mul_q(t, c_lo, q.get_mpq_t(), MPFR_RNDU);
        mpfr_add(acc.hi, acc.hi, t, MPFR_RNDU);
    }
    mpfr_clears(pi_lo, pi_hi, th_lo, th_hi, c_lo, c_hi, w, t, (mpfr_ptr)nullptr);
}

} // namespace

int sign_at_standard_embedding(const CycloElem & a, int start_bits)
{
    if (!is_real(a))
        throw CycloError("sign_at_standard_embedding: element is not real");
    if (a.is_zero())
        return 0;
    if (a.is_rational())
        return sgn(a.c[0]);
    for (mpfr_prec_t prec = std::max(32, start_bits);; prec *= 2) {
        Interval acc(prec);
        for (size_t j = 0; j < a.c.size(); ++j) {
            if (a.c[j] == 0)
                continue;
            // real part of a = sum c_j cos(2 pi j / n); a is real so this is a
            add_q_cos(acc, a.c[j], (long)j, a.n, prec);
        }
        if (mpfr_sgn(acc.lo) > 0)
            return 1;
        if (mpfr_sgn(acc.hi) < 0)
            return -1;
        if (prec > (1 << 22))
            throw CycloError("sign determination did not converge (nonzero check failed?)");
    }
}

Int embedded_floor(const CycloElem & a, int start_bits)
{
    if (!is_real(a))
        throw CycloError("embedded_floor: element is not real");
    if (a.is_rational())
        return rat_floor(a.c[0]);
    // bracket with a double estimate, then certify by exact sign tests
    double est = 0;
    for (size_t j = 0; j < a.c.size(); ++j)
        est += a.c[j].get_d() * std::cos(2.0 * 3.14159265358979323846 * (double)j / a.n);
    long m = (long)std::floor(est);
    for (long cand = m - 2; cand <= m + 2; ++cand) {
        // floor = cand iff cand <= a < cand+1; a irrational here so signs are strict
        if (sign_at_standard_embedding(sub(a, cyclo_rat(make_rat(cand), a.n)), start_bits) > 0
            && sign_at_standard_embedding(sub(cyclo_rat(make_rat(cand + 1), a.n), a), start_bits) > 0)
            return Int(cand);
    }
    throw CycloError("embedded_floor: bracketing failed");
}

} // namespace veech
