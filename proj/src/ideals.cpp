#include "hmso/ideals.hpp"

#include <numeric>

namespace hmso {

namespace {

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

/// The lattice {a, b+c*omega} is an O_K-module iff multiplication by
/// omega keeps both basis vectors inside.
bool is_omega_stable(const IdealHNF& i, const FieldCtx& ctx) {
    const Int t = ctx.omega_trace, n = ctx.omega_norm;
    // omega * a -> (0, a); omega * (b + c*omega) -> (-c*n, b + c*t)
    return lattice_contains(i, Rat(0), Rat(i.a)) &&
           lattice_contains(i, Rat(-i.c * n), Rat(i.b + i.c * t));
}

}  // namespace

IdealHNF zlattice_hnf(const std::vector<std::pair<Int, Int>>& cols, long m) {
    Int a = 0;        // gcd of first coordinates of omega-free vectors
    Int pb = 0, g = 0;  // running column (pb, g), g = gcd of omega-parts
    for (const auto& [p, q] : cols) {
        if (q == 0) {
            a = gcd(a, p);
            continue;
        }
        if (g == 0) {
            pb = p;
            g = q;
            continue;
        }
        auto [d, s, t] = ext_gcd(g, q);
        Int comp = (q / d) * pb - (g / d) * p;  // omega-part cancels
        a = gcd(a, comp);
        pb = s * pb + t * p;
        g = d;
    }
    if (g == 0 || a == 0) throw DegenerateBasis("lattice has rank < 2");
    if (g < 0) { g = -g; pb = -pb; }
    if (a < 0) a = -a;
    IdealHNF res{a, mod_floor(pb, a), g, m};
    return res;
}

IdealHNF ideal_from_generators(const std::vector<QuadElem>& gens, const FieldCtx& ctx) {
    std::vector<std::pair<Int, Int>> cols;
    bool all_zero = true;
    for (const QuadElem& gen : gens) {
        if (gen.is_zero()) continue;
        all_zero = false;
        auto co = ok_coords(gen, ctx);
        if (!co) throw NotIntegral("generator " + gen.str() + " is not in O_K");
        auto wco = ok_coords(gen * ctx.omega, ctx);
        cols.push_back(*co);
        cols.push_back(*wco);
    }
    if (all_zero) throw ZeroIdeal();
    IdealHNF res = zlattice_hnf(cols, ctx.m);
    assert(res.a % res.c == 0 && res.b % res.c == 0);
    assert(is_omega_stable(res, ctx));
    return res;
}

bool lattice_contains(const IdealHNF& i, const Rat& p, const Rat& q) {
    Rat y = q / Rat(i.c);
    if (!is_integer(y)) return false;
    Rat x = (p - y * Rat(i.b)) / Rat(i.a);
    return is_integer(x);
}

bool ideal_contains(const IdealHNF& i, const QuadElem& a, const FieldCtx& ctx) {
    Vec2 co = coords_wrt(a, QuadElem(1), ctx.omega);
    return lattice_contains(i, co(0), co(1));
}

bool frac_contains(const FracIdeal& f, const QuadElem& z, const FieldCtx& ctx) {
    QuadElem w = QuadElem(Rat(f.den)) * z;
    Vec2 co = coords_wrt(w, QuadElem(1), ctx.omega);
    return lattice_contains(f.num, co(0), co(1));
}

IdealHNF ideal_mul(const IdealHNF& i, const IdealHNF& j, const FieldCtx& ctx) {
    assert(i.m == j.m);
    QuadElem gi1 = ideal_element(i, 1, 0, ctx), gi2 = ideal_element(i, 0, 1, ctx);
    QuadElem gj1 = ideal_element(j, 1, 0, ctx), gj2 = ideal_element(j, 0, 1, ctx);
    // Z-span of pairwise basis products is already omega-stable.
    std::vector<std::pair<Int, Int>> cols;
    for (const QuadElem& p : {gi1 * gj1, gi1 * gj2, gi2 * gj1, gi2 * gj2}) {
        cols.push_back(*ok_coords(p, ctx));
    }
    IdealHNF res = zlattice_hnf(cols, ctx.m);
    assert(is_omega_stable(res, ctx));
    return res;
}

IdealHNF conj_ideal(const IdealHNF& i, const FieldCtx& ctx) {
    // conj(b + c*omega) = (b + c*tr) - c*omega
    std::vector<std::pair<Int, Int>> cols{{i.a, 0}, {i.b + i.c * ctx.omega_trace, -i.c}};
    return zlattice_hnf(cols, ctx.m);
}

IdealHNF A_ell(const Int& ell, const FieldCtx& ctx) {
    if (ell < 1 || !is_squarefree(ell) || ctx.disc % ell != 0)
        throw BadDivisor("ell = " + ell.str() + " for d_K = " + ctx.disc.str());
    IdealHNF res{ell, 0, 1, ctx.m};
    assert(is_omega_stable(res, ctx));
    return res;
}

std::pair<Int, Int> canonical_basis(const IdealHNF& i) {
    if (!is_primitive(i)) throw NotPrimitive("content " + i.c.str());
    return {i.a, i.b};
}

FracIdeal frac_reduce(IdealHNF num, Int den) {
    assert(den > 0);
    Int g = boost::multiprecision::gcd(num.content(), den);
    if (g > 1) {
        num = IdealHNF{num.a / g, num.b / g, num.c / g, num.m};
        den /= g;
    }
    return {num, den};
}

FracIdeal ideal_inverse(const IdealHNF& i, const FieldCtx& ctx) {
    auto [N, t] = canonical_basis(i);
    IdealHNF conj = conj_ideal(i, ctx);
    if (ideal_mul(i, conj, ctx) != ideal_scale(N, ok_ideal(ctx)))
        throw Error("ideal_inverse: I * I' != N * O_K");
    return frac_reduce(conj, N);
}

FracIdeal frac_mul(const FracIdeal& f, const FracIdeal& g, const FieldCtx& ctx) {
    return frac_reduce(ideal_mul(f.num, g.num, ctx), f.den * g.den);
}

IdealHNF content_ideal(const MatK2& L, const FieldCtx& ctx) {
    return ideal_from_generators({L(0, 0), L(0, 1), L(1, 0), L(1, 1)}, ctx);
}

QuadElem ideal_element(const IdealHNF& i, const Int& x, const Int& y, const FieldCtx& ctx) {
    return QuadElem(Rat(x * i.a + y * i.b)) + QuadElem(Rat(y * i.c)) * ctx.omega;
}

}  // namespace hmso
