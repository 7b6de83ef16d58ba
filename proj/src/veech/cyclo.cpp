#include "cyclo.hpp"

#include "linalg.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace veech {

int euler_phi(int n)
{
    int result = n;
    for (auto [p, e] : factorize(n))
        result = result / p * (p - 1);
    return result;
}

int moebius(int n)
{
    int m = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1)
            return 0;
        m = -m;
    }
    return m;
}

std::vector<std::pair<int, int>> factorize(int n)
{
    std::vector<std::pair<int, int>> f;
    for (int p = 2; (long)p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.emplace_back(p, e);
        }
    }
    if (n > 1)
        f.emplace_back(n, 1);
    return f;
}

std::vector<int> divisors(int n)
{
    std::vector<int> d = {1};
    for (auto [p, e] : factorize(n)) {
        size_t sz = d.size();
        long pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j)
                d.push_back(d[j] * (int)pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

namespace {

// exact division of integer polynomials, num / den, remainder must vanish
std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int> & den)
{
    int dn = (int)num.size() - 1, dd = (int)den.size() - 1;
    std::vector<Int> q(dn - dd + 1);
    for (int k = dn - dd; k >= 0; --k) {
        Int c = num[k + dd] / den[dd];
        q[k] = c;
        for (int i = 0; i <= dd; ++i)
            num[k + i] -= c * den[i];
    }
    for (auto & r : num)
        if (r != 0)
            throw CycloError("cyclotomic polynomial division not exact");
    return q;
}

std::vector<Int> cyclotomic_poly(int n)
{
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<Int> num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (int d : divisors(n)) {
        if (d == n)
            continue;
        num = poly_divide_exact(num, cyclotomic_poly(d));
    }
    return num;
}

struct ContextCache {
    std::mutex m;
    std::unordered_map<int, std::unique_ptr<CycloContext>> cache;
};

ContextCache & context_cache()
{
    static ContextCache c;
    return c;
}

std::unique_ptr<CycloContext> build_context(int n)
{
    auto ctx = std::make_unique<CycloContext>();
    ctx->n = n;
    ctx->phi = euler_phi(n);
    if (n == 1)
        ctx->units = {1};
    else
        for (int k = 1; k < n; ++k)
            if (std::gcd(k, n) == 1)
                ctx->units.push_back(k);
    ctx->cyclo_poly = cyclotomic_poly(n);

    int phi = ctx->phi;
    int kmax = std::max(n, 2 * phi - 1);
    ctx->pow_basis.resize(kmax);
    for (int k = 0; k < std::min(phi, kmax); ++k) {
        ctx->pow_basis[k].assign(phi, 0);
        ctx->pow_basis[k][k] = 1;
    }
    for (int k = phi; k < kmax; ++k) {
        // zeta^k = zeta * zeta^(k-1) reduced by the monic Phi_n
        const auto & prev = ctx->pow_basis[k - 1];
        std::vector<Int> cur(phi);
        Int overflow = prev[phi - 1];
        for (int i = phi - 1; i >= 1; --i)
            cur[i] = prev[i - 1] - overflow * ctx->cyclo_poly[i];
        cur[0] = -overflow * ctx->cyclo_poly[0];
        ctx->pow_basis[k] = std::move(cur);
    }

    ctx->trace_zeta.resize(n);
    for (int k = 0; k < n; ++k) {
        int g = std::gcd(k, n);
        int m = n / g; // zeta^k is a primitive m-th root
        ctx->trace_zeta[k] = Int(moebius(m)) * phi / euler_phi(m);
    }
    return ctx;
}

} // namespace

const CycloContext & CycloContext::get(int n)
{
    if (n < 1)
        throw CycloError("invalid modulus " + std::to_string(n));
    auto & cc = context_cache();
    std::lock_guard<std::mutex> lock(cc.m);
    auto it = cc.cache.find(n);
    if (it == cc.cache.end())
        it = cc.cache.emplace(n, build_context(n)).first;
    return *it->second;
}

bool CycloElem::is_zero() const
{
    for (const auto & v : c)
        if (v != 0)
            return false;
    return true;
}

bool CycloElem::is_rational() const
{
    for (size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0)
            return false;
    return true;
}

Rat CycloElem::rat_value() const
{
    if (!is_rational())
        throw CycloError("element is not rational");
    return c[0];
}

CycloElem cyclo_zero(int n)
{
    CycloElem e;
    e.n = n;
    e.c.assign(CycloContext::get(n).phi, Rat(0));
    return e;
}

CycloElem cyclo_rat(const Rat & r, int n)
{
    CycloElem e = cyclo_zero(n);
    e.c[0] = r;
    return e;
}

CycloElem cyclo_root(int n, long e)
{
    std::map<long, Rat> raw;
    raw[e] = Rat(1);
    return canonicalize(n, raw);
}

CycloElem canonicalize(int n, const std::map<long, Rat> & raw)
{
    const auto & ctx = CycloContext::get(n);
    CycloElem out = cyclo_zero(n);
    for (const auto & [e, coeff] : raw) {
        if (coeff == 0)
            continue;
        long k = ((e % n) + n) % n;
        const auto & row = ctx.pow_basis[k];
        for (int i = 0; i < ctx.phi; ++i)
            if (row[i] != 0)
                out.c[i] += coeff * Rat(row[i]);
    }
    return out;
}

static void check_same(const CycloElem & a, const CycloElem & b)
{
    if (a.n != b.n)
        throw CycloError("modulus mismatch (lift first)");
}

CycloElem add(const CycloElem & a0, const CycloElem & b0)
{
    CycloElem a = a0, b = b0;
    common_lift(a, b);
    for (size_t i = 0; i < a.c.size(); ++i)
        a.c[i] += b.c[i];
    return a;
}

CycloElem sub(const CycloElem & a0, const CycloElem & b0)
{
    CycloElem a = a0, b = b0;
    common_lift(a, b);
    for (size_t i = 0; i < a.c.size(); ++i)
        a.c[i] -= b.c[i];
    return a;
}

CycloElem neg(const CycloElem & a)
{
    CycloElem out = a;
    for (auto & v : out.c)
        v = -v;
    return out;
}

CycloElem mul(const CycloElem & a0, const CycloElem & b0)
{
    CycloElem a = a0, b = b0;
    common_lift(a, b);
    const auto & ctx = CycloContext::get(a.n);
    int phi = ctx.phi;
    // dense convolution, then reduce degrees >= phi through pow_basis
    std::vector<Rat> conv(2 * phi - 1, Rat(0));
    for (int i = 0; i < phi; ++i) {
        if (a.c[i] == 0)
            continue;
        for (int j = 0; j < phi; ++j) {
            if (b.c[j] == 0)
                continue;
            conv[i + j] += a.c[i] * b.c[j];
        }
    }
    CycloElem out = cyclo_zero(a.n);
    for (int i = 0; i < phi; ++i)
        out.c[i] = conv[i];
    for (int k = phi; k < 2 * phi - 1; ++k) {
        if (conv[k] == 0)
            continue;
        const auto & row = ctx.pow_basis[k];
        for (int i = 0; i < phi; ++i)
            if (row[i] != 0)
                out.c[i] += conv[k] * Rat(row[i]);
    }
    return out;
}

CycloElem mul(const CycloElem & a, const Rat & r)
{
    CycloElem out = a;
    for (auto & v : out.c)
        v *= r;
    return out;
}

CycloElem inv(const CycloElem & a)
{
    if (a.is_zero())
        throw CycloError("division by zero");
    if (a.is_rational()) {
        CycloElem out = cyclo_zero(a.n);
        out.c[0] = 1 / a.c[0];
        return out;
    }
    // solve the linear system given by the multiplication-by-a matrix:
    // columns are a * zeta^j in the power basis
    const auto & ctx = CycloContext::get(a.n);
    int phi = ctx.phi;
    RatMat m(phi, RatVec(phi));
    CycloElem col = a;
    CycloElem zeta = cyclo_root(a.n, 1);
    for (int j = 0; j < phi; ++j) {
        for (int i = 0; i < phi; ++i)
            m[i][j] = col.c[i];
        if (j + 1 < phi)
            col = mul(col, zeta);
    }
    RatVec e0(phi, Rat(0));
    e0[0] = 1;
    CycloElem out = cyclo_zero(a.n);
    out.c = solve_square(std::move(m), std::move(e0));
    return out;
}

bool eq(const CycloElem & a0, const CycloElem & b0)
{
    CycloElem a = a0, b = b0;
    common_lift(a, b);
    return a.c == b.c;
}

CycloElem lift(const CycloElem & a, int m)
{
    if (a.n == m)
        return a;
    if (m % a.n != 0)
        throw CycloError("lift target is not a multiple of the modulus");
    long stride = m / a.n;
    std::map<long, Rat> raw;
    for (size_t j = 0; j < a.c.size(); ++j)
        if (a.c[j] != 0)
            raw[(long)j * stride] = a.c[j];
    return canonicalize(m, raw);
}

void common_lift(CycloElem & a, CycloElem & b)
{
    if (a.n == b.n)
        return;
    int l = (int)std::lcm((long)a.n, (long)b.n);
    a = lift(a, l);
    b = lift(b, l);
}

CycloElem galois_apply(long k, const CycloElem & a)
{
    int n = a.n;
    long kk = ((k % n) + n) % n;
    if (n > 1 && std::gcd(kk, (long)n) != 1)
        throw CycloError("galois_apply: exponent not coprime to modulus");
    std::map<long, Rat> raw;
    for (size_t j = 0; j < a.c.size(); ++j)
        if (a.c[j] != 0)
            raw[(long)j * kk % n] += a.c[j];
    return canonicalize(n, raw);
}

CycloElem conjugate(const CycloElem & a)
{
    return galois_apply(-1, a);
}

bool is_real(const CycloElem & a)
{
    return eq(conjugate(a), a);
}

int degree_over_Q(const CycloElem & a)
{
    const auto & ctx = CycloContext::get(a.n);
    int stab = 0;
    for (int k : ctx.units)
        if (galois_apply(k, a).c == a.c)
            ++stab;
    return (int)ctx.units.size() / stab;
}

int degree_of_ratio(const CycloElem & a0, const CycloElem & b0)
{
    CycloElem a = a0, b = b0;
    common_lift(a, b);
    if (b.is_zero())
        throw CycloError("degree_of_ratio: zero denominator");
    const auto & ctx = CycloContext::get(a.n);
    int stab = 0;
    for (int k : ctx.units) {
        CycloElem lhs = mul(galois_apply(k, a), b);
        CycloElem rhs = mul(galois_apply(k, b), a);
        if (lhs.c == rhs.c)
            ++stab;
    }
    return (int)ctx.units.size() / stab;
}

Rat trace_absolute(const CycloElem & a)
{
    const auto & ctx = CycloContext::get(a.n);
    Rat t(0);
    for (size_t j = 0; j < a.c.size(); ++j)
        if (a.c[j] != 0)
            t += a.c[j] * Rat(ctx.trace_zeta[j]);
    return t;
}

} // namespace veech
