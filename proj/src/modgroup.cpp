#include "hmso/modgroup.hpp"

#include <random>

namespace hmso {

namespace {

QuadElem det2(const MatK2& L) {
    return L(0, 0) * L(1, 1) - L(0, 1) * L(1, 0);
}

void scale_entries(MatK2& L, const QuadElem& s) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) L(i, j) = L(i, j) * s;
}

Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

bool in_n_ok(const QuadElem& a, const Int& N, const FieldCtx& ctx) {
    auto co = ok_coords(a, ctx);
    return co && co->first % N == 0 && co->second % N == 0;
}

}  // namespace

SigmaElem::SigmaElem(MatK2 L, Rat ell, const FieldCtx& ctx)
    : L_(std::move(L)), m_(ctx.m) {
    if (ell <= 0) throw Error("SigmaElem: scale must be positive");
    if (det2(L_) != QuadElem(ell)) throw Error("SigmaElem: det L != ell");

    // Rational scale -> integral: (1/sqrt(p/q))L = (1/sqrt(pq))(qL).
    ell_ = num(ell) * den(ell);
    if (den(ell) != 1) scale_entries(L_, QuadElem(Rat(den(ell))));

    // Clear denominators of the (1, omega)-coordinates.
    Int D = 1;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Vec2 co = coords_wrt(L_(i, j), QuadElem(1), ctx.omega);
            D = lcm(D, lcm(den(co(0)), den(co(1))));
        }
    if (D > 1) {
        scale_entries(L_, QuadElem(Rat(D)));
        ell_ *= D * D;
    }

    const QuadElem sqm = ctx.sqrtm();
    for (;;) {
        // integer content
        Int g = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                auto co = *ok_coords(L_(i, j), ctx);
                g = gcd(g, gcd(co.first, co.second));
            }
        if (g > 1) {
            scale_entries(L_, QuadElem(Rat(1) / Rat(g)));
            assert(ell_ % (g * g) == 0);
            ell_ /= g * g;
            continue;
        }
        // sqrt(m) content: pass to (sqrt(m) L / c, m ell / c^2) with
        // c the integer content of sqrt(m) L, whenever that shrinks
        // ell (c^2 > m). Together with the integer-content step this
        // pins down a unique representative of the class
        // {r L, r sqrt(m) L : r rational}.
        MatK2 sm = L_;
        scale_entries(sm, sqm);
        Int cs = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                auto co = *ok_coords(sm(i, j), ctx);
                cs = gcd(cs, gcd(co.first, co.second));
            }
        if (cs * cs > m_) {
            scale_entries(sm, QuadElem(Rat(1) / Rat(cs)));
            L_ = sm;
            assert((ell_ * m_) % (cs * cs) == 0);
            ell_ = ell_ * m_ / (cs * cs);
            continue;
        }
        break;
    }

    // projective sign: first nonzero entry positive under sqrt(m) > 0
    for (int k = 0; k < 4; ++k) {
        const QuadElem& e = L_(k / 2, k % 2);
        if (e.is_zero()) continue;
        if (sign_emb1(e) < 0) scale_entries(L_, QuadElem(-1));
        break;
    }
    assert(det2(L_) == QuadElem(Rat(ell_)));
}

std::optional<QuadElem> SigmaElem::inv_scale_in_k() const {
    if (auto k = sqrt_exact(ell_)) return QuadElem(Rat(1) / Rat(*k));
    if (ell_ % m_ == 0) {
        if (auto k = sqrt_exact(ell_ / m_)) {
            // 1/(k sqrt(m)) = sqrt(m)/(k m)
            return QuadElem(Rat(0), Rat(1) / Rat(*k * m_), m_);
        }
    }
    return std::nullopt;
}

MatK2 SigmaElem::k_matrix() const {
    auto s = inv_scale_in_k();
    if (!s) throw Error("SigmaElem: not an SL2(K) element");
    MatK2 M = L_;
    scale_entries(M, *s);
    return M;
}

std::pair<MatK2, Rat> map_representative(const SigmaElem& m) {
    if (m.is_sl2k()) return {m.k_matrix(), Rat(1)};
    return {m.L(), Rat(m.ell())};
}

NormalizerElem::NormalizerElem(MatK2 Lm, const FieldCtx& ctx) : L(std::move(Lm)) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!is_integral(L(i, j), ctx))
                throw NotIntegral("NormalizerElem entries must lie in O_K");
    delta = det2(L);
    if (sign_emb1(delta) <= 0)
        throw Error("NormalizerElem: det L not positive under the fixed embedding");
}

GammaICtx make_gamma_ictx(const IdealHNF& ideal, const FieldCtx& ctx) {
    auto [N, t] = canonical_basis(ideal);  // NotPrimitive for c > 1
    GammaICtx ictx{ideal, ideal_inverse(ideal, ctx), N, t};
    return ictx;
}

bool in_gamma_I(const SigmaElem& m, const GammaICtx& ictx, const FieldCtx& ctx) {
    auto scale = m.inv_scale_in_k();
    if (!scale) return false;
    QuadElem alpha = m.L()(0, 0) * *scale, beta = m.L()(0, 1) * *scale;
    QuadElem gamma = m.L()(1, 0) * *scale, delta = m.L()(1, 1) * *scale;
    return is_integral(alpha, ctx) && is_integral(delta, ctx) &&
           ideal_contains(ictx.ideal, beta, ctx) &&
           frac_contains(ictx.inverse, gamma, ctx);
}

bool in_normalizer(const NormalizerElem& n, const FieldCtx& ctx) {
    if (sign_emb1(n.delta) <= 0) return false;
    IdealHNF c = content_ideal(n.L, ctx);
    return ideal_mul(c, c, ctx) == principal_ideal(n.delta, ctx);
}

bool in_gamma_star(const NormalizerElem& n, const FieldCtx& ctx) {
    return is_totally_positive(n.delta) && in_normalizer(n, ctx);
}

bool in_gamma_star(const SigmaElem& m, const FieldCtx& ctx) {
    IdealHNF c = content_ideal(m.L(), ctx);
    return ideal_mul(c, c, ctx) == ideal_scale(m.ell(), ok_ideal(ctx));
}

namespace {

/// Minimal positive nu with nu*ell - mu*c = 1 (c > 0), plus matching mu.
std::pair<Int, Int> bezout_min_nu(const Int& ell, const Int& c) {
    auto [g, s, t] = ext_gcd(ell, c);
    if (g != 1) throw NoBezout("gcd(" + ell.str() + ", " + c.str() + ") = " + g.str());
    Int nu = mod_floor(s, c);
    if (nu == 0) nu = c;
    Int mu = (nu * ell - 1) / c;
    assert(nu * ell - mu * c == 1);
    return {nu, mu};
}

}  // namespace

SigmaElem atkin_lehner(const Int& ell, const FieldCtx& ctx) {
    if (ell < 1 || !is_squarefree(ell) || ctx.disc % ell != 0)
        throw BadDivisor("ell = " + ell.str());
    Int mm1 = Int(ctx.m) * (ctx.m - 1);
    if (mm1 % ell != 0) throw BadDivisor("ell does not divide m(m-1)");
    auto [nu, mu] = bezout_min_nu(ell, mm1 / ell);
    const QuadElem sqm = ctx.sqrtm();
    MatK2 L;
    L << QuadElem(Rat(nu * ell)), QuadElem(Rat(mu)) * (QuadElem(Rat(ctx.m)) + sqm),
         QuadElem(Rat(ctx.m)) - sqm, QuadElem(Rat(ell));
    return SigmaElem(L, Rat(ell), ctx);
}

namespace {

/// Content of a matrix shaped over [[O_K, I], [I^-1, O_K]], each entry
/// measured against its slot: alpha O_K + beta I^-1 + gamma I + delta O_K.
/// For I = O_K this is the plain content ideal.
FracIdeal shaped_content(const MatK2& L, const GammaICtx& ictx, const FieldCtx& ctx) {
    const Int& d = ictx.inverse.den;
    std::vector<QuadElem> gens;
    QuadElem dq{Rat(d)};
    gens.push_back(L(0, 0) * dq);
    gens.push_back(L(1, 1) * dq);
    const IdealHNF& iconj = ictx.inverse.num;
    gens.push_back(L(0, 1) * ideal_element(iconj, 1, 0, ctx));
    gens.push_back(L(0, 1) * ideal_element(iconj, 0, 1, ctx));
    gens.push_back(L(1, 0) * ideal_element(ictx.ideal, 1, 0, ctx) * dq);
    gens.push_back(L(1, 0) * ideal_element(ictx.ideal, 0, 1, ctx) * dq);
    return frac_reduce(ideal_from_generators(gens, ctx), d);
}

}  // namespace

SigmaElem atkin_lehner_ideal(const Int& ell, const GammaICtx& ictx, const FieldCtx& ctx) {
    if (ell < 1 || !is_squarefree(ell) || ctx.disc % ell != 0)
        throw BadDivisor("ell = " + ell.str());
    QuadElem u = QuadElem(Rat(ell / gcd(ell, ictx.N) + ctx.m)) + ctx.sqrtm();
    Rat nuu = Rat(ictx.N) * norm(u);
    if (!is_integer(nuu / Rat(ell)))
        throw NoBezout("ell does not divide N*u*u'");
    auto [nu, mu] = bezout_min_nu(ell, num(nuu / Rat(ell)));
    MatK2 L;
    L << QuadElem(Rat(nu * ell)), QuadElem(Rat(mu * ictx.N)) * u,
         conj(u), QuadElem(Rat(ell));
    SigmaElem v(L, Rat(ell), ctx);
    // postconditions: the slot shape of L and the slot-weighted content
    // condition I(L)^2 = O_K det L that characterize Gamma*_K(I)
    FracIdeal c = shaped_content(L, ictx, ctx);
    bool content_ok = frac_mul(c, c, ctx) == frac_reduce(ideal_scale(ell, ok_ideal(ctx)), 1);
    if (!ideal_contains(ictx.ideal, L(0, 1), ctx) ||
        !frac_contains(ictx.inverse, L(1, 0), ctx) || !content_ok)
        throw Error("atkin_lehner_ideal: representative fails membership");
    return v;
}

bool in_gamma_star_ideal(const SigmaElem& m, const GammaICtx& ictx, const FieldCtx& ctx) {
    for (const Int& ell : squarefree_divisors(ctx.disc)) {
        SigmaElem v = atkin_lehner_ideal(ell, ictx, ctx);
        if (in_gamma_I(mul(inv(v, ctx), m, ctx), ictx, ctx)) return true;
    }
    return false;
}

NormalizerElem m0_unit(const FieldCtx& ctx) {
    if (ctx.eps0_norm != -1)
        throw WrongCase("fundamental unit has norm +1");
    MatK2 L;
    L << ctx.eps0, QuadElem(0), QuadElem(0), QuadElem(1);
    return NormalizerElem(L, ctx);
}

NormalizerElem m0_two_squares(const FieldCtx& ctx) {
    long a, b;
    try {
        std::tie(a, b) = two_squares(ctx.m);
    } catch (const NoRepresentation&) {
        throw WrongCase("m is not a sum of two squares");
    }
    auto [nu, mu] = bezout_min_nu(a, Int(2) * b);  // nu*alpha - 2*mu*beta = 1
    QuadElem u = QuadElem(Rat(b)) + ctx.sqrtm();
    assert(norm(u) == -Rat(a) * Rat(a));
    MatK2 L;
    L << QuadElem(Rat(mu * a)) + QuadElem(Rat(nu)) * u, QuadElem(Rat(mu)) * u,
         u, QuadElem(Rat(a));
    NormalizerElem n(L, ctx);
    assert(n.delta == u);
    return n;
}

NormalizerClass normalizer_class(const FieldCtx& ctx) {
    if (ctx.eps0_norm == 1) {
        for (const Int& p : prime_factors(ctx.disc)) {
            if (mod_floor(p, 4) == 3) return {false, std::nullopt};
        }
        return {true, m0_two_squares(ctx)};
    }
    return {true, m0_unit(ctx)};
}

std::vector<std::vector<Int>> coset_classes(const FieldCtx& ctx) {
    std::vector<std::vector<Int>> classes;
    std::vector<SigmaElem> reps;
    for (const Int& ell : squarefree_divisors(ctx.disc)) {
        SigmaElem v = atkin_lehner(ell, ctx);
        bool placed = false;
        for (size_t i = 0; i < reps.size(); ++i) {
            if (coset_eq(reps[i], v, ctx)) {
                classes[i].push_back(ell);
                placed = true;
                break;
            }
        }
        if (!placed) {
            reps.push_back(v);
            classes.push_back({ell});
        }
    }
    return classes;
}

std::pair<Int, bool> unit_kernel_check(const QuadElem& eps, const FieldCtx& ctx) {
    if (!is_unit(eps, ctx) || !is_totally_positive(eps))
        throw NotTotallyPositiveUnit(eps.str());
    Rat t = Rat(2) + trace(eps);
    assert(is_integer(t) && t > 0);
    Int q = squarefree_kernel(num(t));
    return {q, ctx.disc % q == 0};
}

namespace {

struct GammaEntries {
    QuadElem alpha, beta, gamma, delta;
};

GammaEntries gamma_entries(const SigmaElem& m) {
    if (!in_gamma(m)) throw NotInGamma();
    return {m.L()(0, 0), m.L()(0, 1), m.L()(1, 0), m.L()(1, 1)};
}

std::vector<Int> unit_residues(const Int& N) {
    std::vector<Int> es;
    for (Int e = 0; e < N; ++e)
        if (mod_floor(e * e - 1, N) == 0) es.push_back(e);
    return es;
}

}  // namespace

bool in_level_group(const SigmaElem& m, const Int& N, const FieldCtx& ctx) {
    auto [alpha, beta, gamma, delta] = gamma_entries(m);
    (void)beta;
    return mod_floor(num(norm(alpha)) - 1, N) == 0 &&
           mod_floor(num(norm(delta)) - 1, N) == 0 && in_n_ok(gamma, N, ctx);
}

bool in_principal_congruence(const SigmaElem& m, const IdealHNF& modulus, const Int& level,
                             const FieldCtx& ctx) {
    auto [alpha, beta, gamma, delta] = gamma_entries(m);
    for (const Int& e : unit_residues(level)) {
        QuadElem eps{Rat(e)};
        if (ideal_contains(modulus, alpha - eps, ctx) &&
            ideal_contains(modulus, delta - eps, ctx) &&
            ideal_contains(modulus, beta, ctx) && ideal_contains(modulus, gamma, ctx))
            return true;
    }
    return false;
}

namespace {

MatK2 upper_elem(const QuadElem& b) {
    MatK2 t;
    t << QuadElem(1), b, QuadElem(0), QuadElem(1);
    return t;
}

MatK2 lower_elem(const QuadElem& c) {
    MatK2 t;
    t << QuadElem(1), QuadElem(0), c, QuadElem(1);
    return t;
}

MatK2 unit_diag(const QuadElem& e) {
    MatK2 t;
    t << e, QuadElem(0), QuadElem(0), QuadElem(1) / e;
    return t;
}

MatK2 adj2(const MatK2& L) {
    MatK2 t;
    t << L(1, 1), -L(0, 1), -L(1, 0), L(0, 0);
    return t;
}

}  // namespace

SigmaElem sample(const SampleSpec& spec, std::uint64_t seed, const FieldCtx& ctx) {
    std::mt19937_64 rng(seed);
    auto small_int = [&](long h) { return static_cast<long>(rng() % (2 * h + 1)) - h; };
    auto small_ok = [&] {
        return QuadElem(Rat(small_int(9))) + QuadElem(Rat(small_int(9))) * ctx.omega;
    };

    const bool use_ideal = spec.kind == SampleKind::GammaI;
    if (use_ideal) assert(spec.ictx != nullptr);

    auto upper_coeff = [&]() -> QuadElem {
        switch (spec.kind) {
            case SampleKind::Gamma:
            case SampleKind::LevelGroup:
                return small_ok();
            case SampleKind::GammaI:
                return ideal_element(spec.ictx->ideal, small_int(3), small_int(3), ctx);
            case SampleKind::PrincipalCongruence:
                return QuadElem(Rat(spec.N)) * small_ok();
            case SampleKind::DivisorCongruence:
                return ideal_element(A_ell(spec.N, ctx), small_int(9), small_int(9), ctx);
        }
        return QuadElem(0);
    };
    auto lower_coeff = [&]() -> QuadElem {
        switch (spec.kind) {
            case SampleKind::Gamma:
                return small_ok();
            case SampleKind::GammaI:
                return ideal_element(spec.ictx->inverse.num, small_int(3), small_int(3), ctx) /
                       QuadElem(Rat(spec.ictx->inverse.den));
            case SampleKind::PrincipalCongruence:
            case SampleKind::LevelGroup:
                return QuadElem(Rat(spec.N)) * small_ok();
            case SampleKind::DivisorCongruence:
                return ideal_element(A_ell(spec.N, ctx), small_int(9), small_int(9), ctx);
        }
        return QuadElem(0);
    };

    // totally positive unit for the diagonal generators where the kind
    // constrains alpha*alpha' mod N
    const QuadElem eps_plus =
        ctx.eps0_norm == 1 ? ctx.eps0 : pow(ctx.eps0, 2);

    const size_t len = 1 + rng() % 12;
    MatK2 acc = MatK2::Identity();
    for (size_t i = 0; i < len; ++i) {
        switch (rng() % 3) {
            case 0:
                acc = acc * upper_elem(upper_coeff());
                break;
            case 1:
                acc = acc * lower_elem(lower_coeff());
                break;
            default:
                if (spec.kind == SampleKind::Gamma || spec.kind == SampleKind::GammaI) {
                    long k = small_int(2);
                    if (k != 0) acc = acc * unit_diag(pow(ctx.eps0, k));
                } else if (spec.kind == SampleKind::LevelGroup) {
                    acc = acc * unit_diag(eps_plus);
                } else {
                    acc = acc * upper_elem(upper_coeff());
                }
                break;
        }
    }

    if (spec.kind == SampleKind::PrincipalCongruence || spec.kind == SampleKind::DivisorCongruence) {
        // conjugating by Gamma_K keeps principal congruence subgroups
        // stable and varies the entries
        MatK2 w = upper_elem(small_ok()) * lower_elem(small_ok());
        acc = w * acc * adj2(w);
    }
    return SigmaElem::from_k_matrix(acc, ctx);
}

}  // namespace hmso
