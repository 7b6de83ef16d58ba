#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "veech/search.hpp"
#include "veech/sign.hpp"

#include <random>
#include <set>

using namespace veech;

namespace {

// the proof-of-Theorem-"bound" lists
const std::vector<std::array<int, 3>> kSym18 = {
    {1, 5, 14}, {1, 6, 15}, {1, 8, 11}, {1, 8, 16}, {2, 6, 15}, {2, 7, 13},
    {2, 7, 14}, {3, 6, 13}, {3, 6, 14}, {3, 7, 12}, {3, 8, 12}, {4, 8, 13}};

const std::vector<std::array<int, 3>> kAsym18 = {
    {1, 5, 14}, {1, 11, 8}, {1, 14, 5}, {1, 15, 6}, {1, 16, 8}, {2, 7, 13},
    {2, 13, 7}, {2, 14, 7}, {2, 15, 6}, {3, 6, 13}, {3, 7, 12}, {3, 12, 7},
    {3, 12, 8}, {3, 13, 6}, {3, 14, 6}, {4, 8, 13}, {4, 13, 8}, {5, 1, 14},
    {5, 14, 1}, {6, 3, 14}, {6, 13, 3}, {6, 14, 3}, {7, 2, 14}, {7, 13, 2},
    {7, 14, 2}, {8, 13, 4}, {12, 7, 3}, {13, 7, 2}, {14, 1, 5}, {14, 2, 7},
    {14, 5, 1}, {15, 6, 1}};

// direct substitution of the circumferences into the two defining equations
bool resultant_equations_vanish(const RootTuple & t, const std::array<CycloElem, 3> & c)
{
    for (int r = 1; r <= 2; ++r) {
        CycloElem sum = cyclo_zero(t.n);
        for (int j = 0; j < 3; ++j) {
            CycloElem xr = sub(cyclo_root(t.n, (long)r * t.e[j]), cyclo_root(t.n, -(long)r * t.e[j]));
            sum = add(sum, mul(lift(c[j], t.n), xr));
        }
        if (!sum.is_zero())
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("circumference ratios: oracle is direct substitution")
{
    RootTuple t{7, {1, 5, 3}};
    auto c = circumference_ratios(t);
    CHECK(degree_over_Q(c[1]) == 3);
    CHECK(degree_over_Q(c[2]) == 3);
    CHECK(resultant_equations_vanish(t, c));
    CHECK(is_real(c[1]));
    CHECK(is_real(c[2]));
    // distinctness violation errors out
    CHECK_THROWS_AS(circumference_ratios(RootTuple{7, {1, 1, 3}}), std::invalid_argument);
    // formula symmetry: permuted tuple gives permuted, renormalized output
    auto ca = circumference_ratios(RootTuple{7, {1, 3, 5}});
    auto cb = circumference_ratios(RootTuple{7, {3, 1, 5}});
    CHECK(eq(cb[1], div(ca[0], ca[1])));
    CHECK(eq(cb[2], div(ca[2], ca[1])));
}

TEST_CASE("every admissible candidate satisfies the equations exactly")
{
    for (RootTuple t : {RootTuple{7, {1, 5, 3}}, RootTuple{14, {1, 11, 5}},
                        RootTuple{18, {1, 5, 14}}, RootTuple{18, {4, 13, 8}}}) {
        auto c = circumference_ratios(t);
        CHECK(resultant_equations_vanish(t, c));
    }
}

TEST_CASE("compute_s: paper expansions and the formula arithmetic example")
{
    Candidate c1 = build_candidate({7, {1, 5, 3}});
    auto se = expand_in_cubic_basis(c1.field, c1.s);
    CHECK(se == std::array<Rat, 3>{make_rat(9, 7), make_rat(-2, 7), make_rat(-3, 7)});
    Candidate c3 = build_candidate({14, {1, 11, 5}});
    auto se3 = expand_in_cubic_basis(c3.field, c3.s);
    CHECK(se3 == std::array<Rat, 3>{make_rat(8, 7), make_rat(-6, 7), make_rat(2, 7)});
    // formula arithmetic only (not an admissible candidate): c = (1,1,1),
    // theta = (1/4, -1/4, 1/4) gives 1/2 - 1/2 + 1/2 = 1/2
    RootTuple t{4, {1, 3, 1}};
    std::array<CycloElem, 3> ones = {cyclo_rat(Rat(1), 4), cyclo_rat(Rat(1), 4),
                                     cyclo_rat(Rat(1), 4)};
    CHECK(theta_of(t) == std::array<Rat, 3>{make_rat(1, 4), make_rat(-1, 4), make_rat(1, 4)});
    CHECK(compute_s(t, ones).rat_value() == make_rat(1, 2));
}

TEST_CASE("check_symmetric spec examples")
{
    CHECK(check_symmetric({7, {1, 3, 5}}) == Filter::ok);
    CHECK(check_symmetric({18, {1, 5, 14}}) == Filter::ok);
    for (int e1 = 1; e1 < 8; ++e1)
        for (int e2 = 1; e2 < 8; ++e2)
            for (int e3 = 1; e3 < 8; ++e3)
                CHECK(check_symmetric({8, {e1, e2, e3}}) != Filter::ok);
}

TEST_CASE("check_asymmetric spec examples")
{
    CHECK(check_asymmetric({7, {1, 5, 3}}) == Filter::ok);
    CHECK(check_asymmetric({7, {3, 5, 1}}) != Filter::ok);
    CHECK(check_asymmetric({14, {1, 11, 5}}) == Filter::ok);
    // asymmetric pass implies symmetric pass
    CHECK(check_symmetric({7, {1, 5, 3}}) == Filter::ok);
}

TEST_CASE("enumerate_candidates reproduces the paper lists")
{
    auto r7 = enumerate_candidates(7, 2);
    CHECK(r7.symmetric == std::vector<std::array<int, 3>>{{1, 3, 5}});
    CHECK(r7.asymmetric == std::vector<std::array<int, 3>>{{1, 3, 5}, {1, 5, 3}, {5, 3, 1}});
    auto r14 = enumerate_candidates(14, 2);
    CHECK(r14.symmetric == std::vector<std::array<int, 3>>{{1, 5, 11}});
    CHECK(r14.asymmetric == std::vector<std::array<int, 3>>{{1, 11, 5}, {11, 5, 1}});
    auto r18 = enumerate_candidates(18, 2);
    CHECK(r18.symmetric == kSym18);
    auto asym = kAsym18;
    std::sort(asym.begin(), asym.end());
    CHECK(r18.asymmetric == asym);
    for (int n : {8, 9, 12})
        CHECK(enumerate_candidates(n, 2).symmetric.empty());
    CHECK_THROWS_AS(enumerate_candidates(2), std::invalid_argument);
}

TEST_CASE("symmetry soundness on the n=18 canonical survivors")
{
    std::mt19937 rng(5);
    for (const auto & e : kSym18) {
        std::array<int, 3> p = e;
        for (int it = 0; it < 3; ++it) {
            std::shuffle(p.begin(), p.end(), rng);
            std::array<int, 3> q = p;
            if (rng() & 1)
                for (auto & x : q)
                    x = (18 - x) % 18;
            CHECK(check_symmetric({18, q}) == Filter::ok);
        }
    }
}

TEST_CASE("candidate invariants: dual heights, moduli, positivity")
{
    for (RootTuple t : {RootTuple{7, {1, 5, 3}}, RootTuple{7, {5, 3, 1}},
                        RootTuple{14, {1, 11, 5}}}) {
        Candidate cand = build_candidate(t);
        // h is the normalized dual basis: all nine trace conditions on the
        // rescaled pair (c_i, d_j) with d = h * d1
        auto d = dual_basis(cand.field, cand.c);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(trace_K(cand.field, mul(cand.c[i], d[j])) == Rat(i == j ? 1 : 0));
        CHECK(eq(cand.h[0], cyclo_rat(Rat(1), cand.field.n)));
        for (int j = 1; j < 3; ++j)
            CHECK(eq(cand.h[j], div(d[j], d[0])));
        // moduli ratios rational and positive
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j)
                    continue;
                CycloElem num = mul(cand.h[i], cand.c[j]);
                CycloElem den = mul(cand.c[i], cand.h[j]);
                CHECK(degree_of_ratio(num, den) == 1);
                CHECK(div(num, den).rat_value() > 0);
            }
        // circumferences positive, s positive
        for (int j = 0; j < 3; ++j)
            CHECK(sign_at_standard_embedding(cand.c[j]) == 1);
        CHECK(sign_at_standard_embedding(cand.s) == 1);
        // h3 = c3 for the paper candidates (the reversal normalizations agree)
        CHECK(eq(cand.h[2], cand.c[2]));
        CHECK(eq(cand.h[1], cand.c[1]));
    }
}

TEST_CASE("order scan: nonempty moduli and field identification")
{
    auto rep = run_order_scan(2);
    CHECK(rep.nonempty_moduli == std::vector<int>{7, 14, 18});
    for (const auto & e : rep.entries) {
        if (e.enumeration.n == 7 || e.enumeration.n == 14)
            CHECK(e.field_name == "Q(cos(pi/7))");
        else if (e.enumeration.n == 18)
            CHECK(e.field_name == "Q(cos(pi/9))");
        else
            CHECK(e.enumeration.symmetric.empty());
    }
}
