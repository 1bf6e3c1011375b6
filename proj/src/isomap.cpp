#include "hmso/isomap.hpp"

#include <random>

namespace hmso {

namespace {

QuadElem det2(const MatK2& L) {
    return L(0, 0) * L(1, 1) - L(0, 1) * L(1, 0);
}

BasisCtx build_ctx(const QuadElem& u, const QuadElem& v, const FieldCtx& ctx) {
    MatK2 g;
    g << u, v, conj(u), conj(v);
    if (det2(g).is_zero()) throw DegenerateBasis();
    BasisCtx b{ctx, u, v, g, gram_of_basis(u, v)};
    return b;
}

IdealHNF span_of_pair(const QuadElem& u, const QuadElem& v, const FieldCtx& ctx) {
    auto cu = ok_coords(u, ctx), cv = ok_coords(v, ctx);
    if (!cu || !cv) throw NotIntegral("basis entries must lie in O_K");
    return zlattice_hnf({*cu, *cv}, ctx.m);
}

}  // namespace

BasisCtx ok_basis_ctx(const QuadElem& u, const QuadElem& v, const FieldCtx& ctx) {
    BasisCtx b = build_ctx(u, v, ctx);
    if (span_of_pair(u, v, ctx) != ok_ideal(ctx))
        throw DegenerateBasis("pair does not span O_K");
    assert(b.S.is_even_integral());
    assert(-b.S.core().determinant() == Rat(ctx.disc));
    return b;
}

BasisCtx ideal_basis_ctx(const QuadElem& u, const QuadElem& v, const IdealHNF& ideal,
                         const FieldCtx& ctx) {
    if (!is_primitive(ideal)) throw NotPrimitive();
    BasisCtx b = build_ctx(u, v, ctx);
    if (span_of_pair(u, v, ctx) != ideal)
        throw DegenerateBasis("pair does not span the ideal");
    b.is_ideal = true;
    b.ideal = ideal;
    b.N = ideal.reduced_norm();
    Mat2 tcore = b.S.core() / Rat(b.N);
    b.T.emplace(tcore);
    if (!b.T->is_even_integral()) throw Error("ideal basis: S/N is not even integral");
    return b;
}

BasisCtx ideal_basis_ctx(const GammaICtx& ictx, const FieldCtx& ctx) {
    QuadElem u(Rat(ictx.N));
    QuadElem v = QuadElem(Rat(ictx.t)) + ctx.omega;
    return ideal_basis_ctx(u, v, ictx.ideal, ctx);
}

MatK4 omega_pair(const SigmaElem& m, const FieldCtx& ctx) {
    (void)ctx;
    auto [L, ell] = map_representative(m);
    const QuadElem el(ell);
    const QuadElem a = L(0, 0), b = L(0, 1), c = L(1, 0), d = L(1, 1);
    const QuadElem ac = conj(a), bc = conj(b), cc = conj(c), dc = conj(d);
    MatK4 om;
    om << a * ac, -a * bc, -ac * b, -b * bc,
          -a * cc, a * dc, b * cc, b * dc,
          -ac * c, bc * c, ac * d, bc * d,
          -c * cc, c * dc, cc * d, d * dc;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) om(i, j) = om(i, j) / el;
    return om;
}

Mat4 phi_fast(const SigmaElem& m, const BasisCtx& ctx) {
    auto [L, el] = map_representative(m);
    const QuadElem a = L(0, 0), b = L(0, 1), c = L(1, 0), d = L(1, 1);

    // corners are norms, the rest are coordinates of K-elements
    Rat at = norm(a) / el, bt = -norm(b) / el, gt = -norm(c) / el, dt = norm(d) / el;
    Vec2 va = ctx.coords(-(conj(a) * b) / QuadElem(el));
    Vec2 vb = ctx.coords(-(a * conj(c)) / QuadElem(el));
    Vec2 vc = ctx.coords((b * conj(d)) / QuadElem(el));
    Vec2 vd = ctx.coords((conj(c) * d) / QuadElem(el));

    // middle block: w -> s*w + t*w' in the basis B
    QuadElem s = (a * conj(d)) / QuadElem(el);
    QuadElem t = (b * conj(c)) / QuadElem(el);
    Vec2 k0 = ctx.coords(s * ctx.u + t * conj(ctx.u));
    Vec2 k1 = ctx.coords(s * ctx.v + t * conj(ctx.v));

    const Mat2& score = ctx.S.core();
    Vec2 aS = score * va, dS = score * vd;  // S symmetric

    Mat4 u;
    u << at, aS(0), aS(1), bt,
         vb(0), k0(0), k1(0), vc(0),
         vb(1), k0(1), k1(1), vc(1),
         gt, dS(0), dS(1), dt;
    return u;
}

Mat4 base_change_oracle(const SigmaElem& m, const BasisCtx& ctx) {
    MatK4 om = omega_pair(m, ctx.field);

    MatK4 ghat = MatK4::Identity();
    ghat.block<2, 2>(1, 1) = ctx.G;
    QuadElem dg = det2(ctx.G);
    MatK4 ghat_inv = MatK4::Identity();
    MatK2 gi;
    gi << conj(ctx.v) / dg, -ctx.v / dg, -conj(ctx.u) / dg, ctx.u / dg;
    ghat_inv.block<2, 2>(1, 1) = gi;

    MatK4 x = ghat_inv * om * ghat;
    Mat4 res;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (!x(i, j).is_rational())
                throw IrrationalEntry("base change left sqrt(m) in entry");
            res(i, j) = x(i, j).x();
        }
    return res;
}

namespace {

/// Scale W by lambda in K* so that lambda^2 * det W becomes a positive
/// rational; std::nullopt when det W is not a rational square class.
std::optional<std::pair<MatK2, Rat>> rational_square_descent(const MatK2& w,
                                                             const QuadElem& d) {
    const Rat& p = d.x();
    const Rat& q = d.y();
    if (q == 0) {
        if (p <= 0) return std::nullopt;
        return std::make_pair(w, p);
    }
    auto rho = rat_sqrt_exact(norm(d));
    if (!rho) return std::nullopt;
    for (int sign = 0; sign < 2; ++sign) {
        Rat r = (p + (sign ? -*rho : *rho)) / q;
        QuadElem lam_den = QuadElem(r) + QuadElem::sqrt_m(d.m());
        QuadElem mu = d / (lam_den * lam_den);
        if (mu.is_rational() && mu.x() > 0) {
            MatK2 w2;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) w2(i, j) = w(i, j) / lam_den;
            return std::make_pair(w2, mu.x());
        }
    }
    return std::nullopt;
}

}  // namespace

SigmaElem phi_inverse(const Mat4& u, const BasisCtx& ctx) {
    if (!is_orthogonal(u, ctx.S)) throw NotInImage("not orthogonal for S1");

    const Mat2 sinv = ctx.S.core().inverse();
    Vec2 va = sinv * Vec2(u(0, 1), u(0, 2));
    Vec2 vd = sinv * Vec2(u(3, 1), u(3, 2));
    QuadElem A = ctx.from_coords(va);                    // -alpha' beta
    QuadElem Bk = ctx.from_coords(Vec2(u(1, 0), u(2, 0)));  // -alpha gamma'
    QuadElem Ck = ctx.from_coords(Vec2(u(1, 3), u(2, 3)));  // beta delta'
    QuadElem Dk = ctx.from_coords(vd);                   // gamma' delta

    // middle block = mult(s) + twist(t): solve for s, t in the operator
    // basis {mult 1, mult sqrt(m), twist 1, twist sqrt(m)}
    const QuadElem sq = ctx.field.sqrtm();
    Mat4 sys;
    Vec4 rhs;
    const QuadElem ops[4][2] = {{ctx.u, ctx.v},
                                {sq * ctx.u, sq * ctx.v},
                                {conj(ctx.u), conj(ctx.v)},
                                {sq * conj(ctx.u), sq * conj(ctx.v)}};
    for (int piece = 0; piece < 4; ++piece) {
        Vec2 c0 = ctx.coords(ops[piece][0]);
        Vec2 c1 = ctx.coords(ops[piece][1]);
        sys(0, piece) = c0(0);
        sys(1, piece) = c0(1);
        sys(2, piece) = c1(0);
        sys(3, piece) = c1(1);
    }
    rhs << u(1, 1), u(2, 1), u(1, 2), u(2, 2);
    Vec4 st = sys.inverse() * rhs;
    QuadElem s(st(0), st(1), ctx.field.m);  // alpha delta'
    QuadElem t(st(2), st(3), ctx.field.m);  // beta gamma'

    // rank-one matrix of pair products Q_ij = v_i * v'_j for the entry
    // vector v = (alpha, beta, gamma, delta)
    MatK4 q;
    q << QuadElem(u(0, 0)), -conj(A), -Bk, s,
         -A, QuadElem(-u(0, 3)), t, Ck,
         -conj(Bk), conj(t), QuadElem(-u(3, 0)), conj(Dk),
         conj(s), conj(Ck), Dk, QuadElem(u(3, 3));

    int piv = -1;
    for (int j = 0; j < 4; ++j)
        if (!q(j, j).is_zero()) { piv = j; break; }
    if (piv < 0) throw NotInImage("all pair norms vanish");

    MatK2 w;
    w << q(0, piv), q(1, piv), q(2, piv), q(3, piv);
    QuadElem dw = det2(w);
    if (dw.is_zero()) throw NotInImage("degenerate candidate");

    auto desc = rational_square_descent(w, dw);
    if (!desc) throw NotInImage("determinant class is not rational");
    try {
        SigmaElem cand(desc->first, desc->second, ctx.field);
        if (phi_fast(cand, ctx) == u) return cand;
    } catch (const Error&) {
        // falls through to NotInImage
    }
    throw NotInImage("reconstruction failed verification");
}

namespace {

std::pair<QuadElem, QuadElem> mult_twist_parts(const SigmaElem& m) {
    auto [L, ell] = map_representative(m);
    QuadElem el(ell);
    return {(L(0, 0) * conj(L(1, 1))) / el, (L(0, 1) * conj(L(1, 0))) / el};
}

void require_integral_image(const SigmaElem& m, const BasisCtx& ctx) {
    // the honest integral form lives at S1 for O_K bases and at T1
    // (after conjugation by H_N) for ideal bases
    Mat4 img = ctx.is_ideal ? psi(m, ctx) : phi_fast(m, ctx);
    if (!mat_is_integral(img)) throw NotIntegralImage();
}

}  // namespace

bool dk_criterion_fm(const SigmaElem& m, const BasisCtx& ctx) {
    require_integral_image(m, ctx);
    auto [s, t] = mult_twist_parts(m);
    const QuadElem sd = ctx.field.sqrt_disc();
    const Rat dk(ctx.field.disc);
    for (const QuadElem& w : {ctx.u, ctx.v}) {
        QuadElem x = sd * w;
        QuadElem fx = (s - QuadElem(1)) * x + t * conj(x);
        Vec2 co = ctx.coords(fx);
        if (!is_integer(co(0) / dk) || !is_integer(co(1) / dk)) return false;
    }
    return true;
}

bool middle_block_congruence(const SigmaElem& m, const BasisCtx& ctx) {
    require_integral_image(m, ctx);
    Mat4 img = phi_fast(m, ctx);
    Mat2 kb = img.block<2, 2>(1, 1);
    const Mat2& core = ctx.is_ideal ? ctx.T->core() : ctx.S.core();
    Mat2 x = (kb - Mat2::Identity()) * core.inverse();
    return mat_is_integral(x);
}

Mat4 psi(const SigmaElem& m, const BasisCtx& ctx) {
    if (!ctx.is_ideal) throw Error("psi needs an ideal basis context");
    Mat4 h = conjugator(Conjugator::H_N, ctx.N);
    return h.inverse() * phi_fast(m, ctx) * h;
}

bool level_group_image(const Mat4& u, const Int& N, const BasisCtx& ctx) {
    GramForm sn(ctx.S.core(), N);
    Mat4 f = conjugator(Conjugator::F_N, N);
    return in_discriminant_kernel(f.inverse() * u * f, sn);
}

bool principal_congruence_image(const Mat4& u, const Int& N, const BasisCtx& ctx) {
    GramForm nsn(Mat2(Rat(N) * ctx.S.core()), N);
    return in_discriminant_kernel(u, nsn);
}

bool divisor_congruence_image(const Mat4& u, const Int& N, const FieldCtx& field) {
    // basis (N, omega) of A_N, with T = S/N
    GramForm s3 = gram_of_basis(QuadElem(Rat(N)), field.omega);
    GramForm tn(Mat2(s3.core() / Rat(N)), N);
    Mat4 g = conjugator(Conjugator::G_N, N);
    return in_discriminant_kernel(g * u * g.inverse(), tn);
}

bool hn_conjugation_check(const IdealHNF& ideal, const Int& n, const FieldCtx& field,
                          std::uint64_t seed, int trials) {
    GammaICtx ictx = make_gamma_ictx(ideal, field);
    BasisCtx b = ideal_basis_ctx(ictx, field);
    Mat4 hn = conjugator(Conjugator::H_n, n);
    Mat4 hninv = hn.inverse();

    std::mt19937_64 rng(seed);
    auto small_int = [&](long h) { return static_cast<long>(rng() % (2 * h + 1)) - h; };
    for (int trial = 0; trial < trials; ++trial) {
        // word in Gamma_K(nI): beta in n*I, gamma in (1/n) I^-1
        MatK2 acc = MatK2::Identity();
        size_t len = 1 + rng() % 6;
        for (size_t i = 0; i < len; ++i) {
            MatK2 g = MatK2::Identity();
            if (rng() % 2 == 0) {
                g(0, 1) = QuadElem(Rat(n)) *
                          ideal_element(ictx.ideal, small_int(3), small_int(3), field);
            } else {
                g(1, 0) = ideal_element(ictx.inverse.num, small_int(3), small_int(3), field) /
                          QuadElem(Rat(ictx.inverse.den * n));
            }
            acc = acc * g;
        }
        SigmaElem m = SigmaElem::from_k_matrix(acc, field);

        // conjugate by (1/sqrt(n)) diag(n, 1)
        MatK2 mk = m.k_matrix();
        MatK2 mstar;
        mstar << mk(0, 0), mk(0, 1) / QuadElem(Rat(n)),
                 mk(1, 0) * QuadElem(Rat(n)), mk(1, 1);
        SigmaElem ms = SigmaElem::from_k_matrix(mstar, field);

        if (!in_gamma_I(ms, ictx, field)) return false;
        if (Mat4(hninv * phi_fast(m, b) * hn) != phi_fast(ms, b)) return false;
    }
    return true;
}

}  // namespace hmso
