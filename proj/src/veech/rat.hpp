#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace veech {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as they are built through arithmetic or
// make_rat below.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int & num, const Int & den)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat & r)
{
    return r.get_str();
}

inline bool is_integer(const Rat & r)
{
    return r.get_den() == 1;
}

// floor(num/den) for exact rationals
inline Int rat_floor(const Rat & r)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

// true iff r is the square of a rational; if so store the nonnegative root
bool rat_square_root(const Rat & r, Rat & root);

} // namespace veech
