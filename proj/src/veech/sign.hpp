#pragma once

#include "cyclo.hpp"

namespace veech {

// Exact sign of a conjugate-fixed element at the standard embedding
// zeta_n -> exp(2 pi i / n). Zero is decided exactly on the canonical form;
// nonzero values are separated from 0 by interval evaluation with outward
// rounding, doubling the working precision from start_bits until the
// interval excludes 0. Throws CycloError if a is not real.
int sign_at_standard_embedding(const CycloElem & a, int start_bits = 64);

inline bool is_positive(const CycloElem & a, int start_bits = 64)
{
    return sign_at_standard_embedding(a, start_bits) > 0;
}

// convenience comparisons at the standard embedding (a, b real)
inline int cmp_embedded(const CycloElem & a, const CycloElem & b, int start_bits = 64)
{
    return sign_at_standard_embedding(sub(a, b), start_bits);
}

// exact floor of a real element's embedded value
Int embedded_floor(const CycloElem & a, int start_bits = 64);

} // namespace veech
