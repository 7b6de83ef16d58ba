#include "rat.hpp"

namespace veech {

bool rat_square_root(const Rat & r, Rat & root)
{
    if (r < 0)
        return false;
    Int num = r.get_num(), den = r.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
        return false;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = make_rat(rn, rd);
    return true;
}

} // namespace veech
