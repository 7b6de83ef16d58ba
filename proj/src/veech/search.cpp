#include "search.hpp"

#include "parallel.hpp"
#include "sign.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

namespace veech {

const char * filter_name(Filter f)
{
    switch (f) {
    case Filter::ok: return "ok";
    case Filter::gcd_not_one: return "gcd-not-one";
    case Filter::distinctness: return "distinctness";
    case Filter::not_cubic: return "not-cubic";
    case Filter::not_one_field: return "not-one-field";
    case Filter::not_basis: return "not-basis";
    case Filter::c_sign: return "c-sign";
    case Filter::moduli_not_rational: return "moduli-not-rational";
    case Filter::moduli_not_positive: return "moduli-not-positive";
    case Filter::s_sign: return "s-sign";
    case Filter::chain_sign: return "chain-sign";
    }
    return "?";
}

Filter validate_tuple(const RootTuple & t)
{
    int g = t.n;
    for (int e : t.e)
        g = std::gcd(g, e);
    if (g != 1)
        return Filter::gcd_not_one;
    std::set<int> vals;
    vals.insert(0);
    if (t.n % 2 == 0)
        vals.insert(t.n / 2);
    size_t expect = vals.size();
    for (int e : t.e) {
        vals.insert(((e % t.n) + t.n) % t.n);
        vals.insert(((-e % t.n) + t.n) % t.n);
        expect += 2;
    }
    return vals.size() == expect ? Filter::ok : Filter::distinctness;
}

std::array<Rat, 3> theta_of(const RootTuple & t)
{
    std::array<Rat, 3> th;
    for (int j = 0; j < 3; ++j) {
        th[j] = make_rat(t.e[j], t.n);
        if (th[j] > make_rat(1, 2))
            th[j] -= 1;
    }
    return th;
}

namespace {

// d_j = w_{j+1} w_{j+2} (t_{j+2} - t_{j+1}) as a 16-monomial product,
// where w_a = x_a - x_a^{-1} and t_a = x_a + x_a^{-1}
struct Monomials {
    // parallel arrays: exponent and sign
    std::array<long, 16> exp;
    std::array<int, 16> sgn;
};

Monomials d_monomials(const RootTuple & t, int j, long galois = 1)
{
    long n = t.n;
    long a = (long)t.e[(j + 1) % 3] * galois % n;
    long b = (long)t.e[(j + 2) % 3] * galois % n;
    // (x_a - x_a^-1)(x_b - x_b^-1)((x_b + x_b^-1) - (x_a + x_a^-1))
    Monomials m{};
    int idx = 0;
    for (int sa = 0; sa < 2; ++sa) {
        long ea = sa ? -a : a;
        int ga = sa ? -1 : 1;
        for (int sb = 0; sb < 2; ++sb) {
            long eb = sb ? -b : b;
            int gb = sb ? -1 : 1;
            // times (x_b + x_b^-1): +, then times -(x_a + x_a^-1)
            for (int sc = 0; sc < 2; ++sc) {
                long ec = sc ? -b : b;
                m.exp[idx] = ea + eb + ec;
                m.sgn[idx] = ga * gb;
                ++idx;
            }
            for (int sc = 0; sc < 2; ++sc) {
                long ec = sc ? -a : a;
                m.exp[idx] = ea + eb + ec;
                m.sgn[idx] = -ga * gb;
                ++idx;
            }
        }
    }
    return m;
}

// exact int64 workspace for one modulus
struct ScanContext {
    int n = 0, phi = 0;
    std::vector<std::vector<int64_t>> rows; // zeta^k in power basis, k < n
    std::vector<int> units;
    struct Sub3 {
        std::vector<int> gens;
    };
    std::vector<Sub3> sub3; // index-3 subgroups of (Z/n)^*

    explicit ScanContext(int n_) : n(n_)
    {
        const auto & ctx = CycloContext::get(n);
        phi = ctx.phi;
        units = ctx.units;
        rows.resize(n);
        for (int k = 0; k < n; ++k) {
            rows[k].resize(phi);
            for (int i = 0; i < phi; ++i) {
                const Int & v = ctx.pow_basis[k][i];
                assert(v.fits_slong_p());
                rows[k][i] = v.get_si();
            }
        }
        build_sub3();
    }

    std::set<int> span(std::set<int> gen) const
    {
        gen.insert(1 % n);
        for (bool grew = true; grew;) {
            grew = false;
            std::vector<int> cur(gen.begin(), gen.end());
            for (int a : cur)
                for (int b : cur)
                    if (gen.insert((int)((long)a * b % n)).second)
                        grew = true;
        }
        return gen;
    }

    void build_sub3()
    {
        // Index-3 subgroups all contain the cube subgroup G^3 (G abelian),
        // and correspond to index-3 subgroups of G/G^3 = (Z/3)^r.
        int m = (int)units.size();
        if (m % 3 != 0)
            return;
        std::set<int> cubes;
        for (int u : units)
            cubes.insert((int)((long)u * u % n * u % n));
        size_t target = units.size() / 3;
        std::set<std::set<int>> found;
        if (cubes.size() == target)
            found.insert(cubes);
        else
            for (int u : units) {
                std::set<int> gen = cubes;
                gen.insert(u);
                std::set<int> h = span(std::move(gen));
                if (h.size() == target)
                    found.insert(std::move(h));
            }
        for (const auto & h : found) {
            // small generating set: greedy
            Sub3 s3;
            std::set<int> got = span({});
            for (int u : h) {
                if (got.count(u))
                    continue;
                s3.gens.push_back(u);
                std::set<int> gen(s3.gens.begin(), s3.gens.end());
                got = span(std::move(gen));
                if (got.size() == h.size())
                    break;
            }
            sub3.push_back(std::move(s3));
        }
    }
};

// canonical int64 vector of a product of two monomial sets under sigma_k on
// the first factor
void canon_product(const ScanContext & sc, const Monomials & a, const Monomials & b,
                   std::vector<int64_t> & out, std::vector<int64_t> & counts)
{
    std::fill(counts.begin(), counts.end(), 0);
    long n = sc.n;
    for (int i = 0; i < 16; ++i) {
        if (a.sgn[i] == 0)
            continue;
        for (int j = 0; j < 16; ++j) {
            long e = (a.exp[i] + b.exp[j]) % n;
            if (e < 0)
                e += n;
            counts[e] += a.sgn[i] * b.sgn[j];
        }
    }
    std::fill(out.begin(), out.end(), 0);
    for (long e = 0; e < n; ++e) {
        if (counts[e] == 0)
            continue;
        const auto & row = sc.rows[e];
        for (int i = 0; i < sc.phi; ++i)
            out[i] += counts[e] * row[i];
    }
}

Monomials apply_galois(const Monomials & m, long k, long n)
{
    Monomials out = m;
    for (int i = 0; i < 16; ++i) {
        long e = m.exp[i] % n * k % n;
        out.exp[i] = e;
    }
    return out;
}

struct ScanScratch {
    std::vector<int64_t> counts, v1, v2;
    explicit ScanScratch(const ScanContext & sc)
        : counts(sc.n, 0), v1(sc.phi, 0), v2(sc.phi, 0)
    {
    }
};

// the exponent-multiplier u fixes d_j2/d_j1 iff sigma_u(d_j2) d_j1 == sigma_u(d_j1) d_j2
bool ratio_fixed_by(const ScanContext & sc, ScanScratch & ws, const RootTuple & t,
                    int j_num, int j_den, long u)
{
    Monomials num = d_monomials(t, j_num), den = d_monomials(t, j_den);
    Monomials num_u = apply_galois(num, u, sc.n), den_u = apply_galois(den, u, sc.n);
    canon_product(sc, num_u, den, ws.v1, ws.counts);
    canon_product(sc, den_u, num, ws.v2, ws.counts);
    return ws.v1 == ws.v2;
}

bool vec_is_zero(const std::vector<int64_t> & v)
{
    for (auto x : v)
        if (x)
            return false;
    return true;
}

// canonical vector of d_j alone
void canon_single(const ScanContext & sc, const Monomials & m, std::vector<int64_t> & out,
                  std::vector<int64_t> & counts)
{
    std::fill(counts.begin(), counts.end(), 0);
    long n = sc.n;
    for (int i = 0; i < 16; ++i) {
        long e = m.exp[i] % n;
        if (e < 0)
            e += n;
        counts[e] += m.sgn[i];
    }
    std::fill(out.begin(), out.end(), 0);
    for (long e = 0; e < n; ++e) {
        if (counts[e] == 0)
            continue;
        const auto & row = sc.rows[e];
        for (int i = 0; i < sc.phi; ++i)
            out[i] += counts[e] * row[i];
    }
}

CycloElem elem_from_monomials(int n, const Monomials & m)
{
    std::map<long, Rat> raw;
    for (int i = 0; i < 16; ++i)
        raw[m.exp[i]] += Rat(m.sgn[i]);
    return canonicalize(n, raw);
}

std::array<CycloElem, 3> d_elems(const RootTuple & t)
{
    return {elem_from_monomials(t.n, d_monomials(t, 0)),
            elem_from_monomials(t.n, d_monomials(t, 1)),
            elem_from_monomials(t.n, d_monomials(t, 2))};
}

// shared per-n scan context cache
const ScanContext & scan_context(int n)
{
    static std::mutex m;
    static std::unordered_map<int, std::unique_ptr<ScanContext>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<ScanContext>(n)).first;
    return *it->second;
}

// full symmetric filter on the exact rational path, given d's precomputed
Filter symmetric_exact_tail(const RootTuple & t, const std::array<CycloElem, 3> & d)
{
    // 1, c2, c3 linearly independent over Q  <=>  d1, d2, d3 independent
    RatMat m(3);
    for (int j = 0; j < 3; ++j)
        m[j] = d[j].c;
    if (rank(std::move(m)) != 3)
        return Filter::not_basis;
    // positive circumference ratios (all same sign as d1)
    int s1 = sign_at_standard_embedding(d[0]);
    if (sign_at_standard_embedding(d[1]) != s1 || sign_at_standard_embedding(d[2]) != s1)
        return Filter::c_sign;
    // trace Gram on the unnormalized basis, dual combos, moduli ratios
    const auto & ctx = CycloContext::get(t.n);
    int phi = ctx.phi;
    RatMat gram(3, RatVec(3));
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Rat tr = trace_absolute(mul(d[i], d[j])) * 3 / phi;
            gram[i][j] = gram[j][i] = tr;
        }
    RatMat ginv;
    try {
        ginv = inverse(gram);
    } catch (const LinalgError &) {
        return Filter::not_basis;
    }
    std::array<CycloElem, 3> e;
    for (int j = 0; j < 3; ++j) {
        e[j] = cyclo_zero(t.n);
        for (int mm = 0; mm < 3; ++mm)
            e[j] = add(e[j], mul(d[mm], ginv[mm][j]));
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            CycloElem num = mul(e[i], d[j]), den = mul(d[i], e[j]);
            if (degree_of_ratio(num, den) != 1)
                return Filter::moduli_not_rational;
            if (sign_at_standard_embedding(num) * sign_at_standard_embedding(den) <= 0)
                return Filter::moduli_not_positive;
        }
    return Filter::ok;
}

Filter symmetric_filter(const RootTuple & t)
{
    Filter v = validate_tuple(t);
    if (v != Filter::ok)
        return v;
    const auto & sc = scan_context(t.n);
    ScanScratch ws(sc);
    // denominators nonzero is a theorem under distinctness; breach = internal error
    {
        std::vector<int64_t> dv(sc.phi);
        for (int j = 0; j < 3; ++j) {
            canon_single(sc, d_monomials(t, j), dv, ws.counts);
            if (vec_is_zero(dv))
                throw CycloError("circumference denominator vanished despite distinctness");
        }
    }
    // c2 = d2/d1 and c3 = d3/d1 must be irrational and lie in one cubic field:
    // irrationality first (fixed by ALL units <=> rational)
    auto rational_ratio = [&](int jn) {
        for (int u : sc.units)
            if (u != 1 && !ratio_fixed_by(sc, ws, t, jn, 0, u))
                return false;
        return true;
    };
    // cubic test: some index-3 subgroup fixes the ratio
    auto fixed_by_sub = [&](int jn, const ScanContext::Sub3 & s3) {
        for (int u : s3.gens)
            if (!ratio_fixed_by(sc, ws, t, jn, 0, u))
                return false;
        return true;
    };
    const ScanContext::Sub3 * field2 = nullptr;
    for (const auto & s3 : sc.sub3)
        if (fixed_by_sub(1, s3)) {
            field2 = &s3;
            break;
        }
    if (!field2 || rational_ratio(1))
        return Filter::not_cubic;
    if (!fixed_by_sub(2, *field2) || rational_ratio(2))
        return Filter::not_one_field; // c3 not in the same cubic field (or rational)
    return symmetric_exact_tail(t, d_elems(t));
}

Filter asymmetric_filter(const RootTuple & t, bool check_sym = true)
{
    if (check_sym) {
        Filter f = symmetric_filter(t);
        if (f != Filter::ok)
            return f;
    }
    auto d = d_elems(t);
    int s1 = sign_at_standard_embedding(d[0]);
    // c_j > 0 at the standard embedding
    for (int j = 1; j < 3; ++j)
        if (sign_at_standard_embedding(d[j]) != s1)
            return Filter::c_sign;
    // s > 0, via s * d1 = sum alpha_j d_j
    auto th = theta_of(t);
    CycloElem s_num = cyclo_zero(t.n);
    for (int j = 0; j < 3; ++j) {
        Rat alpha = (th[j] > 0 ? Rat(1) : Rat(-1)) - 2 * th[j];
        s_num = add(s_num, mul(d[j], alpha));
    }
    if (sign_at_standard_embedding(s_num) != s1)
        return Filter::s_sign;
    // saddle lengths l_k = (-1)^k s + sum_{j=1..k} (-1)^(k-j) c_j > 0, k = 1..3
    for (int k = 1; k <= 3; ++k) {
        CycloElem num = (k % 2 == 0) ? s_num : neg(s_num);
        for (int j = 1; j <= k; ++j) {
            if ((k - j) % 2 == 0)
                num = add(num, d[j - 1]);
            else
                num = sub(num, d[j - 1]);
        }
        if (sign_at_standard_embedding(num) != s1)
            return Filter::chain_sign;
    }
    return Filter::ok;
}

} // namespace

std::array<CycloElem, 3> circumference_ratios(const RootTuple & t)
{
    Filter v = validate_tuple(t);
    if (v != Filter::ok)
        throw std::invalid_argument(std::string("invalid tuple: ") + filter_name(v));
    auto d = d_elems(t);
    for (const auto & dj : d)
        if (dj.is_zero())
            throw CycloError("circumference denominator vanished despite distinctness");
    CycloElem inv_d1 = inv(d[0]);
    return {cyclo_rat(Rat(1), t.n), mul(d[1], inv_d1), mul(d[2], inv_d1)};
}

CycloElem compute_s(const RootTuple & t, const std::array<CycloElem, 3> & c)
{
    auto th = theta_of(t);
    CycloElem s = cyclo_zero(t.n);
    for (int j = 0; j < 3; ++j) {
        if (th[j] == 0)
            throw CycloError("compute_s: theta_j = 0 breaches distinctness");
        Rat alpha = (th[j] > 0 ? Rat(1) : Rat(-1)) - 2 * th[j];
        s = add(s, mul(lift(c[j], t.n), alpha));
    }
    return s;
}

Filter check_symmetric(const RootTuple & t)
{
    return symmetric_filter(t);
}

Filter check_asymmetric(const RootTuple & t)
{
    return asymmetric_filter(t);
}

Candidate build_candidate(const RootTuple & t)
{
    Filter f = asymmetric_filter(t);
    if (f != Filter::ok)
        throw std::invalid_argument(std::string("tuple not admissible: ") + filter_name(f));
    Candidate cand;
    cand.tuple = t;
    cand.c = circumference_ratios(t);
    cand.theta = theta_of(t);
    cand.s = compute_s(t, cand.c);
    // canonical generator: zeta_n + zeta_n^-1 when it generates the field of c2,
    // else c2 itself
    CycloElem tgen = add(cyclo_root(t.n, 1), cyclo_root(t.n, -1));
    bool use_std = degree_over_Q(tgen) == 3;
    if (use_std) {
        CubicField k = CubicField::from_generator(tgen);
        if (!in_field(k, cand.c[1]) || !in_field(k, cand.c[2]))
            use_std = false;
        else
            cand.field = k;
    }
    if (!use_std)
        cand.field = CubicField::from_generator(cand.c[1]);
    auto d = dual_basis(cand.field, cand.c);
    CycloElem inv_d1 = inv(d[0]);
    cand.h = {cyclo_rat(Rat(1), t.n), mul(d[1], inv_d1), mul(d[2], inv_d1)};
    return cand;
}

std::array<int, 3> canonical_tuple(int n, std::array<int, 3> e)
{
    std::array<int, 3> best = e, cur = e;
    std::sort(cur.begin(), cur.end());
    best = cur;
    do {
        if (cur < best)
            best = cur;
    } while (std::next_permutation(cur.begin(), cur.end()));
    std::array<int, 3> invd;
    for (int i = 0; i < 3; ++i)
        invd[i] = (n - e[i]) % n;
    std::sort(invd.begin(), invd.end());
    do {
        if (invd < best)
            best = invd;
    } while (std::next_permutation(invd.begin(), invd.end()));
    return best;
}

EnumerationResult enumerate_candidates(int n, int workers)
{
    if (n < 3)
        throw std::invalid_argument("enumerate_candidates: n must be >= 3");
    EnumerationResult res;
    res.n = n;
    scan_context(n); // build shared tables before the parallel section
    CycloContext::get(n);

    struct ChunkOut {
        std::vector<std::array<int, 3>> symmetric;
        std::map<std::string, long> rejects;
    };
    std::vector<ChunkOut> outs(n - 1);
    // partitioned over the first exponent; only canonical representatives
    // (lexicographically least over the 12-element symmetry group) are tested
    parallel_chunks(n - 1, workers, [&](int chunk) {
        int e1 = chunk + 1;
        auto & out = outs[chunk];
        RootTuple t;
        t.n = n;
        for (int e2 = e1; e2 < n; ++e2) {
            for (int e3 = e2; e3 < n; ++e3) {
                std::array<int, 3> e = {e1, e2, e3};
                if (canonical_tuple(n, e) != e)
                    continue;
                t.e = e;
                Filter f = symmetric_filter(t);
                if (f == Filter::ok)
                    out.symmetric.push_back(e);
                else
                    ++out.rejects[filter_name(f)];
            }
        }
    });
    for (auto & o : outs) {
        res.symmetric.insert(res.symmetric.end(), o.symmetric.begin(), o.symmetric.end());
        for (auto & [k, v] : o.rejects)
            res.rejects[k] += v;
    }
    std::sort(res.symmetric.begin(), res.symmetric.end());

    // asymmetric pass: all ordered tuples in the orbits of symmetric survivors
    std::set<std::array<int, 3>> orbit;
    for (const auto & e : res.symmetric) {
        std::array<int, 3> p = e;
        std::sort(p.begin(), p.end());
        do {
            orbit.insert(p);
            orbit.insert({(n - p[0]) % n, (n - p[1]) % n, (n - p[2]) % n});
        } while (std::next_permutation(p.begin(), p.end()));
    }
    for (const auto & e : orbit) {
        RootTuple t{n, e};
        // symmetric conditions are invariant over the orbit; re-verify exactly
        Filter fs = symmetric_filter(t);
        if (fs != Filter::ok)
            throw CycloError("symmetry invariance breach at tuple enumeration");
        if (asymmetric_filter(t, false) == Filter::ok)
            res.asymmetric.push_back(e);
    }
    std::sort(res.asymmetric.begin(), res.asymmetric.end());
    return res;
}

OrderScanReport run_order_scan(int workers)
{
    std::set<int> moduli;
    for (int d : divisors(56))
        if (d >= 3)
            moduli.insert(d);
    for (int d : divisors(72))
        if (d >= 3)
            moduli.insert(d);
    OrderScanReport rep;
    for (int n : moduli) {
        OrderScanEntry entry;
        entry.enumeration = enumerate_candidates(n, workers);
        if (!entry.enumeration.symmetric.empty()) {
            rep.nonempty_moduli.push_back(n);
            CycloElem tgen = add(cyclo_root(n, 1), cyclo_root(n, -1));
            entry.conductor = conductor_of(tgen);
            entry.field_name = (entry.conductor == 7 || entry.conductor == 14)
                                   ? "Q(cos(pi/7))"
                                   : (entry.conductor == 9 ? "Q(cos(pi/9))" : "Q(zeta_" + std::to_string(entry.conductor) + ")+");
        }
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

} // namespace veech
