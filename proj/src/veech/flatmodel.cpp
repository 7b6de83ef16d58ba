#include "flatmodel.hpp"

#include "twist.hpp"

#include <algorithm>

namespace veech {

ChainSurface build_chain_surface(const Candidate & cand, const Rat & t1, const Rat & t3)
{
    ChainSurface surf;
    surf.c = cand.c;
    surf.h = cand.h;
    surf.s = cand.s;
    surf.t1 = t1;
    surf.t3 = t3;
    // l_k = (-1)^k s + sum_{j=1..k} (-1)^(k-j) c_j ; l_0 = s
    surf.ell[0] = surf.s;
    for (int k = 1; k <= 3; ++k) {
        CycloElem l = (k % 2 == 0) ? surf.s : neg(surf.s);
        for (int j = 1; j <= k; ++j) {
            CycloElem cj = lift(surf.c[j - 1], surf.s.n);
            l = ((k - j) % 2 == 0) ? add(l, cj) : sub(l, cj);
        }
        surf.ell[k] = l;
    }
    for (int k = 0; k <= 3; ++k)
        if (sign_at_standard_embedding(surf.ell[k]) <= 0)
            throw GeometricInfeasibility("saddle length l_" + std::to_string(k) + " not positive");
    surf.area = cyclo_zero(surf.s.n);
    for (int j = 0; j < 3; ++j)
        surf.area = add(surf.area, mul(surf.c[j], surf.h[j]));
    if (sign_at_standard_embedding(surf.area) <= 0)
        throw GeometricInfeasibility("nonpositive area");
    return surf;
}

std::array<VerticalCylinder, 2> trace_vertical(const CycloElem & c1, const CycloElem & h1,
                                               const CycloElem & h2, const CycloElem & s,
                                               const Rat & t1_frac)
{
    long q = t1_frac.get_den().get_si();
    // p = floor(q s / c1)
    CycloElem qs_over = mul(s, Rat(q));
    // compare against multiples of c1: p = floor(q s / c1) via sign scans
    CycloElem step = mul(c1, make_rat(1, q));
    Int pz = 0;
    {
        // q s / c1 in (p, p+1): bracket by signs of q s - m c1
        // start from a double estimate through embedded values
        // (exact: scan from 0; s < c1 so p < q)
        long p = 0;
        while (p < q) {
            CycloElem diff = sub(qs_over, mul(c1, Rat(p + 1)));
            int sg = sign_at_standard_embedding(diff);
            if (sg < 0)
                break;
            if (sg == 0)
                throw GeometricInfeasibility("degenerate saddle: q s is a multiple of c1/q");
            ++p;
        }
        pz = p;
    }
    long p = pz.get_si();
    CycloElem r = sub(s, mul(step, Rat(p)));
    if (r.is_zero() || sign_at_standard_embedding(r) <= 0)
        throw GeometricInfeasibility("degenerate saddle: r = s - p c1/q not positive");
    // two sample orbits: midpoints of (0, r) and (r, c1/q)
    std::array<CycloElem, 2> samples = {mul(r, make_rat(1, 2)),
                                        mul(add(r, step), make_rat(1, 2))};
    CycloElem twist = mul(c1, t1_frac);
    long cap = 64 * q;
    std::array<VerticalCylinder, 2> out;
    for (int i = 0; i < 2; ++i) {
        VerticalCylinder cyl;
        cyl.height = (i == 0) ? r : sub(step, r);
        CycloElem pos = samples[i];
        CycloElem circ = cyclo_zero(c1.n);
        long steps = 0;
        for (;;) {
            if (++steps > cap)
                throw GeometricInfeasibility("orbit did not close within the step cap");
            // gate test: 0 < pos < s -> gamma_0, else gamma_0'
            if (sign_at_standard_embedding(sub(s, pos)) > 0 && sign_at_standard_embedding(pos) > 0) {
                circ = add(circ, h1);
                ++cyl.cross_gamma0;
            } else {
                circ = add(circ, add(h1, h2));
                ++cyl.cross_gamma0p;
            }
            pos = sub(pos, twist);
            if (sign_at_standard_embedding(pos) < 0)
                pos = add(pos, c1);
            if (eq(pos, samples[i]))
                break;
        }
        if (steps != q)
            throw GeometricInfeasibility("orbit period differs from the twist denominator");
        cyl.circumference = circ;
        out[i] = cyl;
    }
    // compare the traced data against the closed forms
    std::array<CycloElem, 2> h_pred = {r, sub(step, r)};
    std::array<CycloElem, 2> c_pred = {
        add(mul(h1, Rat(q)), mul(h2, Rat(q - p - 1))),
        add(mul(h1, Rat(q)), mul(h2, Rat(q - p)))};
    std::array<std::pair<long, long>, 2> x_pred = {std::pair<long, long>{p + 1, q - p - 1},
                                                   std::pair<long, long>{p, q - p}};
    for (int i = 0; i < 2; ++i) {
        if (!eq(out[i].height, h_pred[i]) || !eq(out[i].circumference, c_pred[i])
            || out[i].cross_gamma0 != x_pred[i].first || out[i].cross_gamma0p != x_pred[i].second)
            throw CycloError("traced vertical decomposition disagrees with the closed forms");
    }
    return out;
}

std::array<VerticalCylinder, 2> vertical_side_decomposition(const ChainSurface & surf, Side side)
{
    if (side == Side::C1)
        return trace_vertical(surf.c[0], surf.h[0], surf.h[1], surf.s, surf.t1);
    // C3 side: same picture on the reversed chain; circumference c3, heights
    // (h3, h2), saddle s' = l_3, twist t3 (fraction of c3)
    return trace_vertical(surf.c[2], surf.h[2], surf.h[1], surf.ell[3], surf.t3);
}

std::vector<ModuliRatio> moduli_ratio_check(const std::array<VerticalCylinder, 2> & cyls)
{
    std::vector<ModuliRatio> out;
    for (size_t i = 0; i < cyls.size(); ++i)
        for (size_t j = i + 1; j < cyls.size(); ++j) {
            CycloElem num = mul(cyls[i].height, cyls[j].circumference);
            CycloElem den = mul(cyls[j].height, cyls[i].circumference);
            ModuliRatio r;
            r.is_rational = degree_of_ratio(num, den) == 1;
            if (r.is_rational)
                r.value = div(num, den).rat_value();
            out.push_back(r);
        }
    return out;
}

Gon14 build_veech_14gon()
{
    const int N = 28;
    Gon14 g;
    // vertex levels and chord widths of the regular 14-gon with unit
    // circumradius and a horizontal side: W_a = 2 cos(a pi / 7) chord widths,
    // Y_a = sin(a pi / 7) vertex levels, a = 0..3
    auto W = [&](int a) {
        return add(cyclo_root(N, 2 * a), cyclo_root(N, -2 * a));
    };
    auto Y = [&](int a) {
        // (zeta_14^a - zeta_14^-a) / (2 i), with 1/i = -i = -zeta_28^7
        CycloElem d = sub(cyclo_root(N, 2 * a), cyclo_root(N, -2 * a));
        return mul(mul(d, neg(cyclo_root(N, 7))), make_rat(1, 2));
    };
    // cylinder a spans levels [Y_{a-1}, Y_a] plus its central mirror:
    // circumference W_{a-1} + W_a, height Y_a - Y_{a-1}
    std::array<CycloElem, 4> Wv, Yv;
    for (int a = 0; a <= 3; ++a) {
        Wv[a] = W(a);
        Yv[a] = Y(a);
    }
    for (int a = 1; a <= 3; ++a) {
        g.c[a - 1] = add(Wv[a - 1], Wv[a]);
        g.h[a - 1] = sub(Yv[a], Yv[a - 1]);
    }
    g.s_c1_end = Wv[0]; // central chord through the Weierstrass point
    g.s_c3_end = Wv[3]; // identified top/bottom side
    // Raw twists from the boundary junction offsets. With the leaf-flow
    // parameterization starting at the odd-class zero, the vertical transport
    // inside the strip maps bottom parameter W_a + x + W_{a-1}/2 to top
    // parameter x + W_a/2, an offset of -(W_{a-1} + W_a)/2 = -c_a/2, i.e.
    // t_a = c_a/2 mod c_a. Shear t2 to 0 and reduce.
    std::array<CycloElem, 3> tw;
    for (int a = 0; a < 3; ++a)
        tw[a] = mul(g.c[a], make_rat(1, 2));
    CycloElem lambda = neg(div(tw[1], g.h[1]));
    for (int a = 0; a < 3; ++a) {
        CycloElem sheared = add(tw[a], mul(lambda, g.h[a]));
        CycloElem rho = div(sheared, g.c[a]);
        if (degree_over_Q(rho) != 1)
            throw CycloError("14-gon twist fraction is not rational");
        Rat f = rho.rat_value();
        f -= rat_floor(f);
        g.twist_frac[a] = f;
    }
    return g;
}

bool gon14_matches_candidate(const Candidate & cand)
{
    Gon14 g = build_veech_14gon();
    // normalized forward data: scale lengths by 1/c1, heights by 1/h1
    auto norm = [&](const std::array<CycloElem, 3> & c, const std::array<CycloElem, 3> & h,
                    const CycloElem & s) {
        CycloElem ic = inv(c[0]), ih = inv(h[0]);
        std::array<CycloElem, 7> out = {mul(c[0], ic), mul(c[1], ic), mul(c[2], ic),
                                        mul(h[0], ih), mul(h[1], ih), mul(h[2], ih),
                                        mul(s, ic)};
        return out;
    };
    auto match = [&](const std::array<CycloElem, 7> & a, const std::array<CycloElem, 7> & b) {
        for (int i = 0; i < 7; ++i)
            if (!eq(a[i], b[i]))
                return false;
        return true;
    };
    auto cand_data = norm(cand.c, cand.h, cand.s);
    auto fwd = norm(g.c, g.h, g.s_c1_end);
    std::array<CycloElem, 3> rc = {g.c[2], g.c[1], g.c[0]};
    std::array<CycloElem, 3> rh = {g.h[2], g.h[1], g.h[0]};
    auto rev = norm(rc, rh, g.s_c3_end);
    // twists must vanish (mod 1) up to sign on both sides of the comparison
    for (const Rat & f : g.twist_frac)
        if (f != 0 && f != 1)
            return false;
    return match(cand_data, fwd) || match(cand_data, rev);
}

} // namespace veech
