#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "veech/relations.hpp"
#include "veech/search.hpp"

#include <algorithm>

using namespace veech;

TEST_CASE("dz_admissible spec examples")
{
    OrderBoundQuery q63{6, 3};
    CHECK(dz_admissible(1260, q63));
    CHECK(!dz_admissible(25, q63));
    CHECK(dz_admissible(1, q63));
    CHECK(dz_admissible(1, OrderBoundQuery{2, 1}));
}

TEST_CASE("dz_admissible is divisor monotone")
{
    OrderBoundQuery q{6, 3};
    for (long n : {1260L, 3276L, 252L, 60L, 720L}) {
        if (!dz_admissible(n, q))
            continue;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0)
                CHECK(dz_admissible(d, q));
    }
}

TEST_CASE("dz_enumerate_maximal paper values")
{
    CHECK(dz_enumerate_maximal({6, 3}) == std::vector<long>{1260, 3276});
    CHECK(dz_enumerate_maximal({4, 3}) == std::vector<long>{252});
    CHECK(dz_enumerate_maximal({6, 1}) == std::vector<long>{60});
    // antichain: no output divides another
    auto v = dz_enumerate_maximal({8, 3});
    for (long a : v)
        for (long b : v)
            if (a != b)
                CHECK(b % a != 0);
    CHECK_THROWS_AS(dz_enumerate_maximal({1, 1}), std::invalid_argument);
}

TEST_CASE("primitive_partition spec examples")
{
    auto term = [](int n, long e) {
        return RelationTerm{cyclo_rat(Rat(1), 1), {n, e}};
    };
    // 1 + zeta_3 + zeta_3^2 = 0 is primitive
    auto rep = primitive_partition({term(3, 0), term(3, 1), term(3, 2)});
    CHECK(rep.primitive);
    // 1 + (-1) + zeta_5 + (-zeta_5): two length-2 vanishing subsets
    auto rep2 = primitive_partition({term(2, 0), term(2, 1), term(10, 2), term(10, 7)});
    CHECK(!rep2.primitive);
    CHECK(rep2.vanishing_subsets
          == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
    // complements of vanishing subsets vanish: closure under complement
    for (const auto & s : rep2.vanishing_subsets) {
        std::vector<int> comp;
        for (int i = 0; i < 4; ++i)
            if (std::find(s.begin(), s.end(), i) == s.end())
                comp.push_back(i);
        CHECK(std::find(rep2.vanishing_subsets.begin(), rep2.vanishing_subsets.end(), comp)
              != rep2.vanishing_subsets.end());
    }
    // nonzero full sum is rejected
    CHECK_THROWS_AS(primitive_partition({term(3, 0), term(3, 1)}), std::invalid_argument);
    // repeated root is rejected
    CHECK_THROWS_AS(primitive_partition({term(3, 1), term(6, 2), term(3, 2)}),
                    std::invalid_argument);
}

TEST_CASE("the case-1 six-term relation is primitive")
{
    Candidate cand = build_candidate({7, {1, 5, 3}});
    std::vector<RelationTerm> terms;
    for (int j = 0; j < 3; ++j) {
        terms.push_back({cand.c[j], {7, cand.tuple.e[j]}});
        terms.push_back({neg(cand.c[j]), {7, -cand.tuple.e[j]}});
    }
    auto rep = primitive_partition(terms);
    CHECK(rep.primitive);
}

TEST_CASE("pair search over orders dividing 63")
{
    auto res = pair_search_63();
    // first exact run froze the output size
    CHECK(res.hits.size() == 96);
    // (zeta_7, zeta_7^2) = exponents (9, 18), ratio degree 3
    bool found = false;
    for (const auto & h : res.hits)
        if (h.e1 == 9 && h.e2 == 18) {
            found = true;
            CHECK(h.ratio_degree == 3);
            CHECK(h.ord1 == 7);
            CHECK(h.ord2 == 7);
        }
    CHECK(found);
    for (const auto & h : res.hits) {
        CHECK(h.e1 != h.e2);
        CHECK((h.e1 + h.e2) % 63 != 0);
    }
    // corrected invariant holds; the literal paper dichotomy is violated by
    // the (9,3)/(3,9) pairs such as (zeta_9, zeta_3) = exponents (7, 21)
    CHECK(res.orders_in_379);
    CHECK(!res.paper_dichotomy);
    bool has_93 = false;
    for (const auto & h : res.hits)
        has_93 = has_93 || (h.ord1 == 9 && h.ord2 == 3);
    CHECK(has_93);
    // lexicographic output order
    CHECK(std::is_sorted(res.hits.begin(), res.hits.end(), [](const PairHit & a, const PairHit & b) {
        return std::tie(a.e1, a.e2) < std::tie(b.e1, b.e2);
    }));
}

TEST_CASE("determinant search over 819")
{
    auto res = det_search_819(1e-6, 4, 1000);
    // frozen after the first exact-confirmed run
    CHECK(res.survivors.size() == 78);
    CHECK(res.prefilter_hits == 78); // tolerance 1e-6 has no false positives here
    // the cube family member at m1 = 1
    bool cube1 = false, z3triple = false;
    for (const auto & t : res.survivors) {
        if (t.m1 == 1 && t.m2 == 274 && t.m3 == 547) {
            cube1 = true;
            CHECK(t.cubes_equal);
        }
        if (t.m1 == 91 && t.m2 == 117 && t.m3 == 273)
            z3triple = true; // (zeta_9, zeta_7, zeta_3): exact zero, order 3 present
        CHECK(t.m2 < t.m3);
    }
    CHECK(cube1);
    CHECK(z3triple);
    CHECK(res.orders_in_379);
    CHECK(!res.paper_dichotomy);
    // prefilter soundness: every sampled rejected triple is exactly nonzero
    CHECK(res.rejected_sample_checked == 1000);
    CHECK(res.rejected_sample_nonzero == 1000);
    // determinism across worker counts
    auto res1 = det_search_819(1e-6, 1, 10);
    CHECK(res1.survivors.size() == res.survivors.size());
    for (size_t i = 0; i < res.survivors.size(); ++i) {
        CHECK(res1.survivors[i].m1 == res.survivors[i].m1);
        CHECK(res1.survivors[i].m2 == res.survivors[i].m2);
        CHECK(res1.survivors[i].m3 == res.survivors[i].m3);
    }
}
