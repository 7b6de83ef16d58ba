#pragma once

#include "rat.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace veech {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>; // row-major

struct LinalgError : std::runtime_error {
    explicit LinalgError(const std::string & m) : std::runtime_error(m) {}
};

int rank(RatMat m);

// solve A x = b for square nonsingular A
RatVec solve_square(RatMat a, RatVec b);

// solve possibly overdetermined A x = b exactly; nullopt if inconsistent,
// throws if the solution is not unique
std::optional<RatVec> solve_exact(RatMat a, RatVec b);

RatMat inverse(RatMat a);

// basis of the right kernel {x : A x = 0}
std::vector<RatVec> right_kernel(RatMat a);
std::vector<RatVec> left_kernel(const RatMat & a);

Rat det3(const RatMat & a);

} // namespace veech
