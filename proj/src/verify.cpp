#include "hmso/verify.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <random>

#include "hmso/textio.hpp"

namespace hmso::verify {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Harness {
    SuiteResult* out;
    long m;

    void check(bool ok, const std::string& what, const std::string& witness = "",
               std::uint64_t seed = 0) {
        if (ok) {
            ++out->pass;
            return;
        }
        ++out->fail;
        if (out->counterexamples.size() < 16) {
            nlohmann::json ce;
            ce["m"] = m;
            ce["what"] = what;
            if (!witness.empty()) ce["witness"] = witness;
            ce["seed"] = std::to_string(seed);
            out->counterexamples.push_back(ce);
        }
    }
};

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    long small(long h) { return static_cast<long>(gen() % (2 * h + 1)) - h; }
    std::uint64_t u64() { return gen(); }
    Rat rat(long h, long dmax) {
        return Rat(small(h), 1 + static_cast<long>(gen() % dmax));
    }
};

QuadElem rand_elem(Rng& r, const FieldCtx& f) {
    return QuadElem(r.rat(9, 3), r.rat(9, 3), f.m);
}

QuadElem rand_integral(Rng& r, const FieldCtx& f) {
    return QuadElem(Rat(r.small(9))) + QuadElem(Rat(r.small(9))) * f.omega;
}

IdealHNF rand_ideal(Rng& r, const FieldCtx& f) {
    for (;;) {
        std::vector<QuadElem> gens{rand_integral(r, f), rand_integral(r, f)};
        try {
            return ideal_from_generators(gens, f);
        } catch (const ZeroIdeal&) {
        }
    }
}

Mat4 maybe_corrupt(Mat4 u, const Options& o) {
    if (o.inject_sign_bug) u(1, 2) = -u(1, 2);
    return u;
}

// ---------------------------------------------------------------- quadfield

void suite_field_laws(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    Rng r(seed);
    for (long i = 0; i < o.trials; ++i) {
        QuadElem a = rand_elem(r, f), b = rand_elem(r, f);
        h.check(conj(a * b) == conj(a) * conj(b), "conj multiplicative", a.str());
        h.check(conj(a + b) == conj(a) + conj(b), "conj additive", a.str());
        h.check(norm(a * b) == norm(a) * norm(b), "norm multiplicative", a.str());
        h.check(trace(a + b) == trace(a) + trace(b), "trace additive", a.str());
        Vec2 c = coords_wrt(a, QuadElem(1), f.omega);
        h.check(QuadElem(c(0)) + QuadElem(c(1)) * f.omega == a, "coords round trip", a.str());
    }
    QuadElem w = f.omega;
    h.check(w * w - QuadElem(trace(w)) * w + QuadElem(norm(w)) == QuadElem(0),
            "omega satisfies its quadratic equation");

    for (long i = 0; i < o.trials; ++i) {
        QuadElem a(Rat(r.small(9)), Rat(r.small(9)), f.m);
        double root = std::sqrt(static_cast<double>(f.m));
        double e1 = a.x().convert_to<double>() + a.y().convert_to<double>() * root;
        double e2 = a.x().convert_to<double>() - a.y().convert_to<double>() * root;
        if (std::abs(e1) < 1e-6 || std::abs(e2) < 1e-6) continue;
        h.check(is_totally_positive(a) == (e1 > 0 && e2 > 0), "total positivity vs floats",
                a.str());
    }
}

void suite_unit_sweep(Harness& h, const FieldCtx&, const Options&, std::uint64_t) {
    for (long m = 2; m <= 60; ++m) {
        if (!is_squarefree(Int(m))) continue;
        FieldCtx f = make_field(m);
        QuadElem oracle = pell_oracle_unit(m);
        h.check(f.eps0 == oracle, "fundamental unit matches Pell oracle, m = " + std::to_string(m),
                f.eps0.str());
        Rat n = norm(f.eps0);
        h.check(n == 1 || n == -1, "unit norm is +-1, m = " + std::to_string(m));
    }
    h.check(make_field(2).eps0 == QuadElem(Rat(1), Rat(1), 2), "golden unit m=2");
    h.check(make_field(3).eps0 == QuadElem(Rat(2), Rat(1), 3), "golden unit m=3");
    h.check(make_field(5).eps0 == QuadElem(Rat(1, 2), Rat(1, 2), 5), "golden unit m=5");
    h.check(make_field(6).eps0 == QuadElem(Rat(5), Rat(2), 6), "golden unit m=6");
    h.check(make_field(13).eps0 == QuadElem(Rat(3, 2), Rat(1, 2), 13), "golden unit m=13");
}

// ------------------------------------------------------------------- ideals

void suite_ideal_arith(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    Rng r(seed);
    for (long i = 0; i < o.trials / 4 + 1; ++i) {
        IdealHNF a = rand_ideal(r, f), b = rand_ideal(r, f), c = rand_ideal(r, f);
        h.check(ideal_mul(a, b, f) == ideal_mul(b, a, f), "ideal product commutative");
        h.check(ideal_mul(ideal_mul(a, b, f), c, f) == ideal_mul(a, ideal_mul(b, c, f), f),
                "ideal product associative");
        h.check(ideal_mul(a, b, f).reduced_norm() == a.reduced_norm() * b.reduced_norm(),
                "reduced norm multiplicative");
        h.check(ideal_mul(a, ok_ideal(f), f) == a, "O_K is the unit ideal");

        IdealHNF p{a.a / a.c, a.b / a.c, 1, f.m};  // primitive part
        FracIdeal inv = ideal_inverse(p, f);
        h.check(ideal_mul(p, inv.num, f) == ideal_scale(inv.den, ok_ideal(f)),
                "I * I^-1 = O_K", ideal_str(p));
    }
}

void suite_ak_identities(Harness& h, const FieldCtx& f, const Options&, std::uint64_t) {
    auto divisors = squarefree_divisors(f.disc);
    for (const Int& k : divisors) {
        for (const Int& l : divisors) {
            Int g = boost::multiprecision::gcd(k, l);
            Int ff = k * l / (g * g);
            h.check(ideal_mul(A_ell(k, f), A_ell(l, f), f) == ideal_scale(g, A_ell(ff, f)),
                    "A_k A_l = gcd * A_f for k=" + k.str() + " l=" + l.str());
        }
        h.check(ideal_mul(A_ell(k, f), A_ell(k, f), f) == ideal_scale(k, ok_ideal(f)),
                "A_k^2 = k O_K for k=" + k.str());
    }
    h.check(A_ell(Int(f.m), f) == principal_ideal(f.sqrtm(), f), "A_m = sqrt(m) O_K");
}

// ----------------------------------------------------------------- modgroup

void suite_group_laws(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    for (long i = 0; i < o.trials / 2 + 1; ++i) {
        SigmaElem a = sample_sigma(mix(seed, 3 * i), f);
        SigmaElem b = sample_sigma(mix(seed, 3 * i + 1), f);
        SigmaElem c = sample_sigma(mix(seed, 3 * i + 2), f);
        h.check(mul(mul(a, b, f), c, f) == mul(a, mul(b, c, f), f), "mul associative",
                sigma_str(a), seed);
        h.check(inv(mul(a, b, f), f) == mul(inv(b, f), inv(a, f), f), "inverse antihomomorphism",
                sigma_str(a), seed);
        h.check(mul(a, inv(a, f), f) == SigmaElem::identity(f), "M * M^-1 = I", sigma_str(a));
        MatK2 neg = a.L();
        for (int k = 0; k < 4; ++k) neg(k / 2, k % 2) = -neg(k / 2, k % 2);
        h.check(SigmaElem(neg, Rat(a.ell()), f) == a, "projective sign identified");
        h.check(SigmaElem(a.L(), Rat(a.ell()), f) == a, "canonical form stable");
    }
}

void suite_eq10_cosets(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    auto divisors = squarefree_divisors(f.disc);
    // sqrt(l) * M for the canonical form (1/sqrt(lc)) Lc of a coset
    // member: the ratio l/lc is a square or m times a square
    auto entries_in_al = [&](const SigmaElem& m, const Int& ell, const IdealHNF& al) {
        QuadElem scale;
        Rat ratio(ell, m.ell());
        if (auto k = rat_sqrt_exact(ratio)) {
            scale = QuadElem(*k);
        } else if (auto k2 = rat_sqrt_exact(ratio / f.m)) {
            scale = QuadElem(Rat(0), *k2, f.m);
        } else {
            return false;
        }
        for (int k = 0; k < 4; ++k)
            if (!ideal_contains(al, scale * m.L()(k / 2, k % 2), f)) return false;
        return true;
    };
    for (const Int& ell : divisors) {
        SigmaElem v = atkin_lehner(ell, f);
        IdealHNF al = A_ell(ell, f);
        for (long i = 0; i < std::max<long>(3, o.trials / 16); ++i) {
            SigmaElem g = sample_gamma(mix(seed, 100 * static_cast<long>(ell) + i), f);
            h.check(entries_in_al(mul(v, g, f), ell, al) && entries_in_al(mul(g, v, f), ell, al),
                    "sqrt(l) V_l Gamma has entries in A_l, l=" + ell.str(),
                    sigma_str(g), seed);
            h.check(in_gamma(mul(mul(v, g, f), inv(v, f), f)),
                    "V_l normalizes Gamma_K, l=" + ell.str(), sigma_str(g), seed);
        }
        bool trivial = (ell == 1 || ell == f.m);
        h.check(coset_eq(v, SigmaElem::identity(f), f) == trivial,
                "V_l Gamma = Gamma iff l in {1, m}, l=" + ell.str());
    }
    size_t nu = prime_factors(f.disc).size();
    h.check(coset_count(f) == (size_t(1) << (nu - 1)), "index [Gamma* : Gamma] = 2^(nu-1)");

    // ideal variant of the trivial-coset equivalence
    Int p = prime_factors(f.disc).front();
    GammaICtx ictx = make_gamma_ictx(A_ell(p, f), f);
    for (const Int& ell : divisors) {
        SigmaElem v = atkin_lehner_ideal(ell, ictx, f);
        bool trivial = (ell == 1 || ell == f.m);
        h.check(in_gamma_I(v, ictx, f) == trivial,
                "V_l Gamma(I) = Gamma(I) iff l in {1, m}, l=" + ell.str());
    }
}

void suite_normalizer_units(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    for (long i = 0; i < o.trials / 4 + 1; ++i) {
        SigmaElem s = sample_gamma_star(mix(seed, i), f);
        h.check(in_gamma_star(s, f), "Gamma* sample satisfies I(L)^2 = l O_K", sigma_str(s), seed);
        h.check(in_normalizer(to_normalizer(s, f), f), "Gamma* sample is in the normalizer",
                sigma_str(s), seed);
    }
    NormalizerClass nc = normalizer_class(f);
    if (nc.extended) {
        h.check(in_normalizer(*nc.m0, f), "M0 is in the normalizer");
        h.check(!in_gamma_star(*nc.m0, f), "M0 is not in Gamma*");
    }

    // totally positive unit powers and their squarefree kernels
    QuadElem eps = f.eps0_norm == 1 ? f.eps0 : pow(f.eps0, 2);
    QuadElem e = QuadElem(1);
    for (int k = 1; k <= 5; ++k) {
        e = e * eps;
        auto [q, divides] = unit_kernel_check(e, f);
        h.check(divides, "squarefree kernel of 2+eps+eps' divides d_K (q=" + q.str() + ")",
                e.str());
        MatK2 d;
        d << e + QuadElem(1), QuadElem(0), QuadElem(0), conj(e) + QuadElem(1);
        h.check(in_gamma_star(SigmaElem(d, Rat(2) + trace(e), f), f),
                "unit diagonal lies in Gamma*", e.str());
    }
}

// ------------------------------------------------------------ ortho4/isomap

Mat4 galois_swap(const BasisCtx& b) {
    Mat4 u = Mat4::Zero();
    u(0, 3) = u(3, 0) = 1;
    Vec2 cu = b.coords(conj(b.u)), cv = b.coords(conj(b.v));
    u(1, 1) = cu(0);
    u(2, 1) = cu(1);
    u(1, 2) = cv(0);
    u(2, 2) = cv(1);
    return u;
}

/// -I on the hyperbolic corner plane: orthogonal of det 1 but outside
/// the identity component (it reverses the positive cone).
Mat4 cone_flip() {
    Mat4 u = Mat4::Identity();
    u(0, 0) = u(3, 3) = -1;
    return u;
}

void suite_ortho_component(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
    Mat4 swap = galois_swap(b);
    // the Galois swap fixes a positive-definite plane pointwise, so it
    // lies in the identity component
    h.check(is_orthogonal(swap, b.S), "Galois swap is orthogonal of det 1");
    h.check(in_SO0(swap, b.S), "Galois swap is inside SO0");
    Mat4 flip = cone_flip();
    h.check(is_orthogonal(flip, b.S), "cone flip is orthogonal of det 1");
    h.check(!in_SO0(flip, b.S), "cone flip is outside SO0");

    std::vector<Mat4> pool{swap, flip};
    for (long i = 0; i < 6; ++i) pool.push_back(phi_fast(sample_gamma_star(mix(seed, i), f), b));
    for (size_t i = 0; i < pool.size(); ++i)
        for (size_t j = 0; j < pool.size(); ++j) {
            int si = in_SO0(pool[i], b.S) ? 1 : -1;
            int sj = in_SO0(pool[j], b.S) ? 1 : -1;
            h.check(in_SO0(Mat4(pool[i] * pool[j]), b.S) == (si * sj > 0),
                    "component map is multiplicative");
        }

    for (long i = 0; i < o.trials / 8 + 1; ++i) {
        Mat4 u = phi_fast(sample_gamma(mix(seed, 100 + 2 * i), f), b);
        Mat4 v = phi_fast(sample_gamma(mix(seed, 101 + 2 * i), f), b);
        h.check(in_discriminant_kernel(Mat4(u * v), b.S), "D(S1;Z) closed under products");
        h.check(in_discriminant_kernel(Mat4(u.inverse()), b.S), "D(S1;Z) closed under inverse");
        Mat4 w = phi_fast(sample_gamma_star(mix(seed, 102 + i), f), b);
        h.check(in_discriminant_kernel(Mat4(w * u * w.inverse()), b.S),
                "D(S1;Z) is normal under SO0(S1;Z)");
    }
}

void suite_gram_forms(Harness& h, const FieldCtx& f, const Options&, std::uint64_t) {
    for (auto& [u, v] : std::vector<std::pair<QuadElem, QuadElem>>{
             {QuadElem(1), f.omega},
             {f.omega, QuadElem(1)},
             {QuadElem(1) + f.omega, f.omega}}) {
        GramForm s = gram_of_basis(u, v);
        h.check(-s.core().determinant() == Rat(f.disc), "det S = -d_K");
        h.check(s.is_even_integral(), "S even integral");
        Mat4 check = s.split().transpose() * s.mat4() * s.split();
        bool diag_ok = true;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                diag_ok = diag_ok && (i == j ? (check(i, j) != 0 && ((i < 2) == (check(i, j) > 0)))
                                             : check(i, j) == 0);
        h.check(diag_ok, "split basis re-multiplication");
    }
}

BasisCtx pick_ideal_basis(const FieldCtx& f) {
    if (f.m == 5) {
        // the split prime above 11
        IdealHNF i{11, 1, 1, 5};
        return ideal_basis_ctx(make_gamma_ictx(i, f), f);
    }
    Int p = prime_factors(f.disc).front();
    return ideal_basis_ctx(make_gamma_ictx(A_ell(p, f), f), f);
}

void suite_oracle_equiv(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    BasisCtx bases[2] = {ok_basis_ctx(QuadElem(1), f.omega, f), pick_ideal_basis(f)};
    for (const BasisCtx& b : bases) {
        for (long i = 0; i < o.trials; ++i) {
            std::uint64_t s = mix(seed, i);
            SigmaElem m = sample_sigma(s, f);
            h.check(maybe_corrupt(phi_fast(m, b), o) == base_change_oracle(m, b),
                    "phi_fast = base change oracle", sigma_str(m), s);
        }
    }
}

void suite_homomorphism(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
    for (long i = 0; i < o.trials / 2 + 1; ++i) {
        std::uint64_t s = mix(seed, i);
        SigmaElem m1 = sample_sigma(s, f), m2 = sample_sigma(mix(s, 1), f);
        Mat4 lhs = maybe_corrupt(phi_fast(mul(m1, m2, f), b), o);
        Mat4 rhs = phi_fast(m1, b) * phi_fast(m2, b);
        h.check(lhs == rhs || lhs == Mat4(-rhs), "phi respects products up to sign",
                sigma_str(m1), s);
        Mat4 u = phi_fast(m1, b);
        h.check(Mat4(u.transpose() * b.S.mat4() * u) == b.S.mat4(), "image orthogonal for S1",
                sigma_str(m1), s);

        SigmaElem g1 = sample_gamma(mix(s, 2), f), g2 = sample_gamma(mix(s, 3), f);
        h.check(phi_fast(mul(g1, g2, f), b) == Mat4(phi_fast(g1, b) * phi_fast(g2, b)),
                "phi is an honest homomorphism on Gamma", sigma_str(g1), s);
    }
    // the pair embedding respects products up to the sign of the conjugate
    for (long i = 0; i < 8; ++i) {
        std::uint64_t s = mix(seed, 1000 + i);
        SigmaElem m1 = sample_sigma(s, f), m2 = sample_sigma(mix(s, 1), f);
        MatK4 lhs = omega_pair(mul(m1, m2, f), f);
        MatK4 rhs = omega_pair(m1, f) * omega_pair(m2, f);
        MatK4 neg = rhs;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) neg(r, c) = -neg(r, c);
        h.check(lhs == rhs || lhs == neg, "pair embedding multiplicative up to sign",
                sigma_str(m1), s);
    }
}

void suite_kernel_containment(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
    for (long i = 0; i < o.trials; ++i) {
        std::uint64_t s = mix(seed, i);
        SigmaElem g = sample_gamma(s, f);
        h.check(in_discriminant_kernel(phi_fast(g, b), b.S), "Gamma maps into D(S1;Z)",
                sigma_str(g), s);
    }
    for (const Int& ell : squarefree_divisors(f.disc)) {
        Mat4 u = phi_fast(atkin_lehner(ell, f), b);
        h.check(mat_is_integral(u) && in_SO0(u, b.S), "V_l maps into SO0(S1;Z), l=" + ell.str());
        bool trivial = (ell == 1 || ell == f.m);
        h.check(in_discriminant_kernel(u, b.S) == trivial,
                "V_l in D(S1;Z) iff l in {1,m}, l=" + ell.str());
    }
    for (long i = 0; i < o.trials / 4 + 1; ++i) {
        std::uint64_t s = mix(seed, 5000 + i);
        SigmaElem m = sample_sigma(s, f);
        Mat4 u = phi_fast(m, b);
        h.check(is_orthogonal(u, b.S) && in_SO0(u, b.S), "Sigma maps into SO0(S1;Q)",
                sigma_str(m), s);
    }
}

void suite_block_congruence(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
    for (long i = 0; i < o.trials / 2 + 1; ++i) {
        std::uint64_t s = mix(seed, i);
        SigmaElem g = sample_gamma(s, f);
        h.check(dk_criterion_fm(g, b), "lattice criterion holds on Gamma", sigma_str(g), s);
        h.check(middle_block_congruence(g, b) == dk_criterion_fm(g, b), "block congruence iff lattice criterion on Gamma",
                sigma_str(g), s);
    }
    for (const Int& ell : squarefree_divisors(f.disc)) {
        SigmaElem v = atkin_lehner(ell, f);
        bool trivial = (ell == 1 || ell == f.m);
        h.check(dk_criterion_fm(v, b) == trivial, "lattice criterion on V_l, l=" + ell.str());
        h.check(middle_block_congruence(v, b) == dk_criterion_fm(v, b), "block congruence iff lattice criterion on V_l");
        SigmaElem vg = mul(v, sample_gamma(mix(seed, 900 + static_cast<long>(ell)), f), f);
        h.check(middle_block_congruence(vg, b) == dk_criterion_fm(vg, b), "block congruence iff lattice criterion on Gamma* words");
    }
    // ideal-basis variant
    BasisCtx bi = pick_ideal_basis(f);
    GammaICtx ictx = make_gamma_ictx(bi.ideal, f);
    for (const Int& ell : squarefree_divisors(f.disc)) {
        SigmaElem v = atkin_lehner_ideal(ell, ictx, f);
        bool trivial = (ell == 1 || ell == f.m);
        h.check(dk_criterion_fm(v, bi) == trivial, "ideal lattice criterion on V_l, l=" + ell.str());
        h.check(middle_block_congruence(v, bi) == dk_criterion_fm(v, bi), "ideal block congruence iff lattice criterion");
    }
}

void suite_generator_shapes(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
    Rng r(seed);
    for (long i = 0; i < o.trials / 4 + 1; ++i) {
        QuadElem lam = rand_elem(r, f);
        MatK2 up, lo;
        up << QuadElem(1), lam, QuadElem(0), QuadElem(1);
        lo << QuadElem(1), QuadElem(0), lam, QuadElem(1);
        Mat4 uu = phi_fast(SigmaElem::from_k_matrix(up, f), b);
        Mat4 ul = phi_fast(SigmaElem::from_k_matrix(lo, f), b);
        bool upper_shape = uu(0, 0) == 1 && uu(3, 3) == 1 && uu(3, 0) == 0 && uu(1, 0) == 0 &&
                           uu(2, 0) == 0 && uu(3, 1) == 0 && uu(3, 2) == 0 &&
                           Mat2(uu.block<2, 2>(1, 1)) == Mat2::Identity();
        bool lower_shape = ul(0, 0) == 1 && ul(3, 3) == 1 && ul(0, 3) == 0 && ul(1, 3) == 0 &&
                           ul(2, 3) == 0 && ul(0, 1) == 0 && ul(0, 2) == 0 &&
                           Mat2(ul.block<2, 2>(1, 1)) == Mat2::Identity();
        h.check(upper_shape, "translation images are upper block triangular", lam.str());
        h.check(lower_shape, "transposed translations are lower block triangular", lam.str());
    }
    for (long ell = 1; ell <= 5; ++ell) {
        MatK2 d;
        d << QuadElem(Rat(ell)), QuadElem(0), QuadElem(0), QuadElem(1);
        Mat4 u = phi_fast(SigmaElem(d, Rat(ell), f), b);
        if (u(0, 0) < 0) u = -u;
        h.check(u == conjugator(Conjugator::H_n, ell), "scaled diagonal maps to diag(l,1,1,1/l)");
    }
    QuadElem w = f.eps0_norm == 1 ? f.eps0 : pow(f.eps0, 2);
    MatK2 d;
    d << w + QuadElem(1), QuadElem(0), QuadElem(0), conj(w) + QuadElem(1);
    Mat4 u = phi_fast(SigmaElem(d, Rat(2) + trace(w), f), b);
    if (u(0, 0) < 0) u = -u;  // the image is projective
    Mat2 k = u.block<2, 2>(1, 1);
    bool rot = u(0, 0) == 1 && u(3, 3) == 1 && u(0, 3) == 0 && u(3, 0) == 0 &&
               u(1, 0) == 0 && u(2, 0) == 0 && u(1, 3) == 0 && u(2, 3) == 0 &&
               u(0, 1) == 0 && u(0, 2) == 0 && u(3, 1) == 0 && u(3, 2) == 0 &&
               k.determinant() == 1 && Mat2(k.transpose() * b.S.core() * k) == b.S.core();
    h.check(rot, "norm-one unit maps to a middle-block rotation", w.str());
}

void suite_roundtrip(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
    for (long i = 0; i < o.trials; ++i) {
        std::uint64_t s = mix(seed, i);
        SigmaElem m = sample_sigma(s, f);
        try {
            h.check(phi_inverse(phi_fast(m, b), b) == m, "phi_inverse . phi_fast = +-id",
                    sigma_str(m), s);
        } catch (const NotInImage& e) {
            h.check(false, std::string("round trip raised NotInImage: ") + e.what(),
                    sigma_str(m), s);
        }
    }
    bool rejected = false;
    try {
        phi_inverse(cone_flip(), b);
    } catch (const NotInImage&) {
        rejected = true;
    }
    h.check(rejected, "non-SO0 matrix rejected by phi_inverse");
}

void suite_congruence(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
    for (long n : {2L, 3L, 5L}) {
        Int N(n);
        for (long i = 0; i < o.trials / 4 + 1; ++i) {
            std::uint64_t s = mix(seed, 100 * n + i);
            SampleKind kind = i % 3 == 0 ? SampleKind::LevelGroup
                              : i % 3 == 1 ? SampleKind::PrincipalCongruence
                                           : SampleKind::Gamma;
            SigmaElem m = sample({kind, N}, s, f);
            Mat4 u = phi_fast(m, b);
            h.check(in_level_group(m, N, f) == level_group_image(u, N, b), "level group lhs iff rhs",
                    sigma_str(m), s);
            h.check(in_principal_congruence(m, ideal_scale(N, ok_ideal(f)), N, f) == principal_congruence_image(u, N, b), "principal congruence lhs iff rhs",
                    sigma_str(m), s);
            if (kind == SampleKind::PrincipalCongruence)
                h.check(principal_congruence_image(u, N, b), "principal congruence maps into D(N S1;Z)",
                        sigma_str(m), s);
            if (kind == SampleKind::LevelGroup)
                h.check(level_group_image(u, N, b), "level group maps into F_N D(S_N;Z) F_N^-1",
                        sigma_str(m), s);
        }
    }
    for (const Int& N : squarefree_divisors(f.disc)) {
        if (N == 1) continue;
        // the divisor-level congruence reads its image through (N, omega)
        BasisCtx b3 = ideal_basis_ctx(make_gamma_ictx(A_ell(N, f), f), f);
        for (long i = 0; i < o.trials / 8 + 1; ++i) {
            std::uint64_t s = mix(seed, 999 + 100 * static_cast<long>(N) + i);
            SigmaElem m = i % 2 == 0 ? sample({SampleKind::DivisorCongruence, N}, s, f) : sample_gamma(s, f);
            h.check(in_principal_congruence(m, A_ell(N, f), N, f) == divisor_congruence_image(phi_fast(m, b3), N, f),
                    "divisor congruence lhs iff rhs, N=" + N.str(), sigma_str(m), s);
        }
    }
}

void suite_ideal_kernel(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    BasisCtx bi = pick_ideal_basis(f);
    GammaICtx ictx = make_gamma_ictx(bi.ideal, f);
    for (long i = 0; i < o.trials / 2 + 1; ++i) {
        std::uint64_t s = mix(seed, i);
        SigmaElem m = sample({SampleKind::GammaI, 0, &ictx}, s, f);
        h.check(in_gamma_I(m, ictx, f), "sampler lands in Gamma(I)", sigma_str(m), s);
        h.check(in_discriminant_kernel(psi(m, bi), *bi.T), "psi maps Gamma(I) into D(T1;Z)",
                sigma_str(m), s);
    }
    for (const Int& ell : squarefree_divisors(f.disc)) {
        SigmaElem v = atkin_lehner_ideal(ell, ictx, f);
        Mat4 pv = psi(v, bi);
        h.check(mat_is_integral(pv) && in_SO0(pv, *bi.T),
                "psi of ideal V_l lands in SO0(T1;Z), l=" + ell.str());
        bool trivial = (ell == 1 || ell == f.m);
        h.check(in_discriminant_kernel(pv, *bi.T) == trivial,
                "psi of V_l in D(T1;Z) iff l in {1,m}, l=" + ell.str());
        h.check(in_gamma_star_ideal(v, ictx, f), "ideal V_l lies in Gamma*(I), l=" + ell.str());
    }
}

void suite_hn_conjugation(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    long trials = std::max<long>(5, o.trials / 10);
    h.check(hn_conjugation_check(ok_ideal(f), 2, f, mix(seed, 1), static_cast<int>(trials)),
            "H_2 conjugation for I = O_K");
    Int p = prime_factors(f.disc).front();
    h.check(hn_conjugation_check(A_ell(p, f), 3, f, mix(seed, 2), static_cast<int>(trials)),
            "H_3 conjugation for I = A_p");
    h.check(hn_conjugation_check(ok_ideal(f), 1, f, mix(seed, 3), 2),
            "H_1 conjugation is trivial");
}

bool compat_with(const Mat4& u, const SigmaElem& m, const BasisCtx& ctx, const HTPoint& z) {
    try {
        HTPoint lhs = ortho_action(u, z, ctx.S);
        auto [tau1, tau2] = base_change_point(z, ctx);
        auto [g1, g2] = base_change_point(lhs, ctx);
        return g1 == mobius(m, tau1, Embedding::First) &&
               g2 == mobius(m, tau2, Embedding::Conjugate);
    } catch (const Error&) {
        return false;
    }
}

void suite_action(Harness& h, const FieldCtx& f, const Options& o, std::uint64_t seed) {
    BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
    for (long i = 0; i < o.trials; ++i) {
        std::uint64_t s = mix(seed, i);
        SigmaElem m = sample_sigma(s, f);
        HTPoint z = sample_ht_point(b, mix(s, 7));
        h.check(check_compat(m, b, z), "orthogonal action matches the Moebius pair",
                sigma_str(m), s);
        h.check(automorphy_factor_check(m, b, z),
                "automorphy factor equals (c tau1 + d)(c' tau2 + d')", sigma_str(m), s);
        auto [tau1, tau2] = base_change_point(z, b);
        h.check(in_h2(mobius(m, tau1, Embedding::First), mobius(m, tau2, Embedding::Conjugate)),
                "Moebius action preserves H x H", sigma_str(m), s);
        HTPoint img = ortho_action(phi_fast(m, b), z, b.S);
        h.check(in_half_space_component(img, b), "action preserves the half-space component",
                sigma_str(m), s);

        SigmaElem m2 = sample_sigma(mix(s, 9), f);
        Mat4 u1 = phi_fast(m, b), u2 = phi_fast(m2, b);
        CPoint lhs = automorphy(Mat4(u1 * u2), z, b.S);
        CPoint rhs = automorphy(u1, ortho_action(u2, z, b.S), b.S) * automorphy(u2, z, b.S);
        h.check(lhs == rhs, "automorphy cocycle", sigma_str(m), s);
    }
    // negative control: a corrupted image must fail the compatibility
    SigmaElem m = sample_gamma(mix(seed, 4242), f);
    HTPoint z = sample_ht_point(b, mix(seed, 4243));
    Mat4 bad = phi_fast(m, b);
    bad(1, 1) += 1;
    h.check(!compat_with(bad, m, b, z), "corrupted image fails compatibility", sigma_str(m));
}

// ------------------------------------------------------------------- runner

using SuiteFn = std::function<void(Harness&, const FieldCtx&, const Options&, std::uint64_t)>;

struct Suite {
    const char* name;
    bool per_field;
    SuiteFn fn;
};

const std::vector<Suite>& registry() {
    static const std::vector<Suite> suites{
        {"quadfield_laws", true, suite_field_laws},
        {"fundamental_unit_oracle", false, suite_unit_sweep},
        {"ideal_arithmetic", true, suite_ideal_arith},
        {"atkin_lehner_ideal_identities", true, suite_ak_identities},
        {"group_laws", true, suite_group_laws},
        {"eq10_and_cosets", true, suite_eq10_cosets},
        {"normalizer_and_unit_kernels", true, suite_normalizer_units},
        {"orthogonal_components", true, suite_ortho_component},
        {"gram_forms", true, suite_gram_forms},
        {"differential_oracle", true, suite_oracle_equiv},
        {"homomorphism", true, suite_homomorphism},
        {"gamma_kernel_containment", true, suite_kernel_containment},
        {"block_congruence_equivalence", true, suite_block_congruence},
        {"generator_shapes", true, suite_generator_shapes},
        {"phi_inverse_roundtrip", true, suite_roundtrip},
        {"congruence_correspondence", true, suite_congruence},
        {"ideal_kernel_containment", true, suite_ideal_kernel},
        {"hn_conjugation", true, suite_hn_conjugation},
        {"action_compatibility", true, suite_action},
    };
    return suites;
}

void merge_counterexamples(nlohmann::json& dst, const nlohmann::json& src) {
    for (const auto& ce : src) dst.push_back(ce);
    if (dst.size() > 1) {
        std::stable_sort(dst.begin(), dst.end(), [](const auto& a, const auto& b) {
            auto len = [](const nlohmann::json& j) {
                return j.contains("witness") ? j["witness"].get<std::string>().size() : size_t(0);
            };
            return len(a) < len(b);
        });
    }
    while (dst.size() > 8) dst.erase(dst.size() - 1);
}

}  // namespace

QuadElem pell_oracle_unit(long m, long ybound) {
    const bool half = (m % 4 == 1);
    for (Int y = 1; y <= ybound; ++y) {
        Int my2 = Int(m) * y * y;
        if (half) {
            // smallest (x + y sqrt(m))/2 with x^2 - m y^2 = +-4, x = y mod 2
            for (int sgn : {-1, +1}) {
                if (auto x = sqrt_exact(my2 + 4 * sgn)) {
                    if ((*x - y) % 2 == 0)
                        return QuadElem(Rat(*x) / 2, Rat(y) / 2, m);
                }
            }
        } else {
            for (int sgn : {-1, +1}) {
                if (auto x = sqrt_exact(my2 + sgn)) {
                    return QuadElem(Rat(*x), Rat(y), m);
                }
            }
        }
    }
    throw Error("pell_oracle_unit: bound exhausted");
}

SigmaElem sample_sigma(std::uint64_t seed, const FieldCtx& ctx) {
    std::mt19937_64 rng(seed);
    auto divisors = squarefree_divisors(ctx.disc);
    SigmaElem acc = SigmaElem::identity(ctx);
    const size_t len = 1 + rng() % 3;
    for (size_t i = 0; i < len; ++i) {
        switch (rng() % 4) {
            case 0:
                acc = mul(acc, sample_gamma(rng(), ctx), ctx);
                break;
            case 1:
                acc = mul(acc, atkin_lehner(divisors[rng() % divisors.size()], ctx), ctx);
                break;
            case 2: {
                long n = 2 + static_cast<long>(rng() % 5);
                MatK2 d;
                d << QuadElem(Rat(n)), QuadElem(0), QuadElem(0), QuadElem(1);
                acc = mul(acc, SigmaElem(d, Rat(n), ctx), ctx);
                break;
            }
            default: {
                long p = static_cast<long>(rng() % 9) - 4;
                long q = 1 + static_cast<long>(rng() % 3);
                MatK2 t;
                if (rng() % 2 == 0)
                    t << QuadElem(1), QuadElem(Rat(p, q)), QuadElem(0), QuadElem(1);
                else
                    t << QuadElem(1), QuadElem(0), QuadElem(Rat(p, q)), QuadElem(1);
                acc = mul(acc, SigmaElem::from_k_matrix(t, ctx), ctx);
                break;
            }
        }
    }
    return acc;
}

SigmaElem sample_gamma_star(std::uint64_t seed, const FieldCtx& ctx) {
    std::mt19937_64 rng(seed);
    auto divisors = squarefree_divisors(ctx.disc);
    SigmaElem v = atkin_lehner(divisors[rng() % divisors.size()], ctx);
    return mul(v, sample_gamma(rng(), ctx), ctx);
}

std::vector<SuiteResult> run_suites(const Options& opts) {
    const auto& suites = registry();
    std::vector<SuiteResult> results(suites.size());
    for (size_t i = 0; i < suites.size(); ++i) results[i].name = suites[i].name;

    auto run_field = [&](size_t mi) {
        std::vector<SuiteResult> shard(suites.size());
        FieldCtx f = make_field(opts.m_list[mi]);
        for (size_t i = 0; i < suites.size(); ++i) {
            if (!suites[i].per_field) continue;
            shard[i].name = suites[i].name;
            Harness h{&shard[i], opts.m_list[mi]};
            suites[i].fn(h, f, opts, mix(opts.seed, mix(i, opts.m_list[mi])));
        }
        return shard;
    };

    std::vector<std::vector<SuiteResult>> shards(opts.m_list.size());
    if (opts.workers > 1) {
        std::vector<std::future<std::vector<SuiteResult>>> futs;
        futs.reserve(opts.m_list.size());
        for (size_t mi = 0; mi < opts.m_list.size(); ++mi)
            futs.push_back(std::async(std::launch::async, run_field, mi));
        for (size_t mi = 0; mi < opts.m_list.size(); ++mi) shards[mi] = futs[mi].get();
    } else {
        for (size_t mi = 0; mi < opts.m_list.size(); ++mi) shards[mi] = run_field(mi);
    }
    // deterministic merge by shard index
    for (size_t mi = 0; mi < shards.size(); ++mi)
        for (size_t i = 0; i < suites.size(); ++i) {
            results[i].pass += shards[mi][i].pass;
            results[i].fail += shards[mi][i].fail;
            merge_counterexamples(results[i].counterexamples, shards[mi][i].counterexamples);
        }

    for (size_t i = 0; i < suites.size(); ++i) {
        if (suites[i].per_field) continue;
        FieldCtx f = make_field(opts.m_list.front());
        Harness h{&results[i], opts.m_list.front()};
        suites[i].fn(h, f, opts, mix(opts.seed, i));
    }
    return results;
}

nlohmann::json report_json(const std::vector<SuiteResult>& results, const Options& opts,
                           bool reproducible) {
    nlohmann::json j;
    j["schema"] = 1;
    j["seed"] = opts.seed;
    j["trials"] = opts.trials;
    j["m_list"] = opts.m_list;
    bool ok = true;
    nlohmann::json suites = nlohmann::json::array();
    for (const SuiteResult& r : results) {
        nlohmann::json s;
        s["name"] = r.name;
        s["pass"] = r.pass;
        s["fail"] = r.fail;
        if (!r.ok()) s["counterexamples"] = r.counterexamples;
        ok = ok && r.ok();
        suites.push_back(s);
    }
    j["suites"] = suites;
    j["ok"] = ok;
    if (!reproducible) {
        j["generated_at"] = std::chrono::duration_cast<std::chrono::seconds>(
                                std::chrono::system_clock::now().time_since_epoch())
                                .count();
    }
    return j;
}

}  // namespace hmso::verify
