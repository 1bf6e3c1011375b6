// Acceptance suite: the closed-form counts and exact property gates,
// one pass/fail line per criterion, zero tolerance throughout.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hmso/action.hpp"
#include "hmso/textio.hpp"
#include "hmso/verify.hpp"

using namespace hmso;

namespace {

const std::vector<long> kFields{2, 3, 5, 6, 7, 10, 13, 15, 17, 21, 33};

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::string&)> run;
};

BasisCtx pick_ideal_basis(const FieldCtx& f) {
    if (f.m == 5) return ideal_basis_ctx(make_gamma_ictx(IdealHNF{11, 1, 1, 5}, f), f);
    Int p = prime_factors(f.disc).front();
    return ideal_basis_ctx(make_gamma_ictx(A_ell(p, f), f), f);
}

bool criterion_index(std::string& why) {
    for (long m : kFields) {
        FieldCtx f = make_field(m);
        size_t nu = prime_factors(f.disc).size();
        if (coset_count(f) != (size_t(1) << (nu - 1))) {
            why = "index mismatch at m = " + std::to_string(m);
            return false;
        }
    }
    if (coset_count(make_field(6)) != 2 || coset_count(make_field(5)) != 1) {
        why = "m = 6 or m = 5 count off";
        return false;
    }
    return true;
}

bool criterion_normalizer(std::string& why) {
    for (long m : kFields) {
        FieldCtx f = make_field(m);
        // oracle conditions, independently of normalizer_class
        QuadElem eps = verify::pell_oracle_unit(m);
        bool norm_plus = (norm(eps) == 1);
        bool has_p3 = false;
        for (const Int& p : prime_factors(f.disc))
            if (mod_floor(p, 4) == 3) has_p3 = true;
        bool expect_equal = norm_plus && has_p3;

        NormalizerClass nc = normalizer_class(f);
        if (nc.extended != !expect_equal) {
            why = "classification off at m = " + std::to_string(m);
            return false;
        }
        if (nc.extended &&
            (!in_normalizer(*nc.m0, f) || in_gamma_star(*nc.m0, f))) {
            why = "M0 membership off at m = " + std::to_string(m);
            return false;
        }
    }
    for (long m : {3L, 6L, 21L}) {
        if (normalizer_class(make_field(m)).extended) {
            why = "expected Equal at m = " + std::to_string(m);
            return false;
        }
    }
    for (long m : {2L, 5L, 10L, 13L, 17L}) {
        if (!normalizer_class(make_field(m)).extended) {
            why = "expected Extended at m = " + std::to_string(m);
            return false;
        }
    }
    return true;
}

bool criterion_oracle(std::string& why) {
    for (long m : kFields) {
        FieldCtx f = make_field(m);
        BasisCtx bases[2] = {ok_basis_ctx(QuadElem(1), f.omega, f), pick_ideal_basis(f)};
        for (int bi = 0; bi < 2; ++bi) {
            for (int i = 0; i < 500; ++i) {
                SigmaElem s = verify::sample_sigma(mix(3000 + bi, mix(m, i)), f);
                if (phi_fast(s, bases[bi]) != base_change_oracle(s, bases[bi])) {
                    why = "oracle mismatch at m = " + std::to_string(m) + ": " + sigma_str(s);
                    return false;
                }
            }
        }
    }
    return true;
}

bool criterion_kernel_containment(std::string& why) {
    for (long m : kFields) {
        FieldCtx f = make_field(m);
        BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
        for (int i = 0; i < 500; ++i) {
            SigmaElem g = sample_gamma(mix(4000, mix(m, i)), f);
            if (!in_discriminant_kernel(phi_fast(g, b), b.S)) {
                why = "Gamma image outside D(S1;Z) at m = " + std::to_string(m);
                return false;
            }
        }
        for (const Int& ell : squarefree_divisors(f.disc)) {
            Mat4 u = phi_fast(atkin_lehner(ell, f), b);
            if (!mat_is_integral(u) || !in_SO0(u, b.S)) {
                why = "V_l image outside SO0(S1;Z) at m = " + std::to_string(m);
                return false;
            }
            bool trivial = (ell == 1 || ell == f.m);
            if (in_discriminant_kernel(u, b.S) != trivial) {
                why = "V_l kernel membership off at m = " + std::to_string(m) +
                      ", l = " + ell.str();
                return false;
            }
        }
    }
    return true;
}

bool criterion_block_congruence(std::string& why) {
    for (long m : kFields) {
        FieldCtx f = make_field(m);
        BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
        BasisCtx bi = pick_ideal_basis(f);
        GammaICtx ictx = make_gamma_ictx(bi.ideal, f);
        for (int i = 0; i < 100; ++i) {
            SigmaElem g = sample_gamma(mix(5000, mix(m, i)), f);
            if (middle_block_congruence(g, b) != dk_criterion_fm(g, b) || !dk_criterion_fm(g, b)) {
                why = "equivalence or Gamma criterion off at m = " + std::to_string(m);
                return false;
            }
        }
        for (const Int& ell : squarefree_divisors(f.disc)) {
            SigmaElem v = atkin_lehner(ell, f);
            SigmaElem g = mul(v, sample_gamma(mix(5100, mix(m, long(ell))), f), f);
            if (middle_block_congruence(v, b) != dk_criterion_fm(v, b) ||
                middle_block_congruence(g, b) != dk_criterion_fm(g, b)) {
                why = "Gamma* equivalence off at m = " + std::to_string(m);
                return false;
            }
            SigmaElem vi = atkin_lehner_ideal(ell, ictx, f);
            if (middle_block_congruence(vi, bi) != dk_criterion_fm(vi, bi)) {
                why = "ideal equivalence off at m = " + std::to_string(m);
                return false;
            }
            if (dk_criterion_fm(vi, bi) != (ell == 1 || ell == f.m)) {
                why = "ideal criterion value off at m = " + std::to_string(m) +
                      ", l = " + ell.str();
                return false;
            }
        }
    }
    return true;
}

bool criterion_action(std::string& why) {
    for (long m : kFields) {
        FieldCtx f = make_field(m);
        BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
        for (int i = 0; i < 100; ++i) {
            SigmaElem s = verify::sample_sigma(mix(6000, mix(m, i)), f);
            HTPoint z = sample_ht_point(b, mix(6001, mix(m, i)));
            if (!check_compat(s, b, z)) {
                why = "action compatibility failed at m = " + std::to_string(m) + ": " +
                      sigma_str(s);
                return false;
            }
            if (!automorphy_factor_check(s, b, z)) {
                why = "automorphy factor failed at m = " + std::to_string(m);
                return false;
            }
        }
    }
    return true;
}

bool criterion_congruence(std::string& why) {
    for (long m : kFields) {
        FieldCtx f = make_field(m);
        BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
        for (long n : {2L, 3L, 5L}) {
            Int N(n);
            for (int i = 0; i < 200; ++i) {
                std::uint64_t s = mix(7000 + n, mix(m, i));
                SampleKind kind = i % 3 == 0   ? SampleKind::LevelGroup
                                  : i % 3 == 1 ? SampleKind::PrincipalCongruence
                                               : SampleKind::Gamma;
                SigmaElem g = sample({kind, N}, s, f);
                Mat4 u = phi_fast(g, b);
                if (in_level_group(g, N, f) != level_group_image(u, N, b)) {
                    why = "level group mismatch at m = " + std::to_string(m);
                    return false;
                }
                if (kind == SampleKind::PrincipalCongruence && !principal_congruence_image(u, N, b)) {
                    why = "principal congruence containment failed at m = " + std::to_string(m);
                    return false;
                }
            }
        }
        for (const Int& N : squarefree_divisors(f.disc)) {
            if (N == 1) continue;
            BasisCtx b3 = ideal_basis_ctx(make_gamma_ictx(A_ell(N, f), f), f);
            for (int i = 0; i < 50; ++i) {
                std::uint64_t s = mix(7500, mix(m, i));
                SigmaElem g =
                    i % 2 == 0 ? sample({SampleKind::DivisorCongruence, N}, s, f) : sample_gamma(s, f);
                if (in_principal_congruence(g, A_ell(N, f), N, f) != divisor_congruence_image(phi_fast(g, b3), N, f)) {
                    why = "divisor congruence mismatch at m = " + std::to_string(m) + ", N = " + N.str();
                    return false;
                }
            }
        }
    }
    // ideal-map containment over the split ideal (11, 1) for m = 5
    FieldCtx f5 = make_field(5);
    GammaICtx ictx = make_gamma_ictx(IdealHNF{11, 1, 1, 5}, f5);
    BasisCtx bi = ideal_basis_ctx(ictx, f5);
    for (int i = 0; i < 200; ++i) {
        SigmaElem g = sample({SampleKind::GammaI, 0, &ictx}, mix(7900, i), f5);
        if (!in_gamma_I(g, ictx, f5) || !in_discriminant_kernel(psi(g, bi), *bi.T)) {
            why = "ideal-map containment failed for (11,1) over m = 5";
            return false;
        }
    }
    return true;
}

bool criterion_unit_kernels(std::string& why) {
    for (long m : kFields) {
        FieldCtx f = make_field(m);
        QuadElem step = f.eps0_norm == 1 ? f.eps0 : pow(f.eps0, 2);
        QuadElem e(1);
        for (int k = 1; k <= 5; ++k) {
            e = e * step;
            auto [q, divides] = unit_kernel_check(e, f);
            if (!divides) {
                why = "kernel " + q.str() + " does not divide d_K at m = " + std::to_string(m);
                return false;
            }
        }
    }
    return true;
}

bool criterion_roundtrip(std::string& why) {
    for (long m : kFields) {
        FieldCtx f = make_field(m);
        BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
        for (int i = 0; i < 200; ++i) {
            SigmaElem s = verify::sample_sigma(mix(9000, mix(m, i)), f);
            try {
                if (phi_inverse(phi_fast(s, b), b) != s) {
                    why = "round trip returned a different element at m = " +
                          std::to_string(m) + ": " + sigma_str(s);
                    return false;
                }
            } catch (const Error& e) {
                why = std::string("round trip raised: ") + e.what();
                return false;
            }
        }
    }
    return true;
}

bool criterion_goldens(std::string& why) {
    struct Golden {
        long m;
        QuadElem unit;
    };
    const std::vector<Golden> units{{2, QuadElem(Rat(1), Rat(1), 2)},
                                    {3, QuadElem(Rat(2), Rat(1), 3)},
                                    {5, QuadElem(Rat(1, 2), Rat(1, 2), 5)},
                                    {6, QuadElem(Rat(5), Rat(2), 6)},
                                    {13, QuadElem(Rat(3, 2), Rat(1, 2), 13)}};
    for (const Golden& g : units) {
        FieldCtx f = make_field(g.m);
        if (f.eps0 != g.unit || f.eps0 != verify::pell_oracle_unit(g.m)) {
            why = "fundamental unit off at m = " + std::to_string(g.m);
            return false;
        }
    }
    if (two_squares(13) != std::pair<long, long>(3, 2) ||
        two_squares(2) != std::pair<long, long>(1, 1)) {
        why = "two-squares decomposition off";
        return false;
    }
    bool rejected = false;
    try {
        two_squares(3);
    } catch (const NoRepresentation&) {
        rejected = true;
    }
    if (!rejected) {
        why = "two_squares(3) must fail";
        return false;
    }
    // every Atkin-Lehner matrix has determinant exactly 1 as a real
    // matrix: det L = ell
    for (long m : kFields) {
        FieldCtx f = make_field(m);
        for (const Int& ell : squarefree_divisors(f.disc)) {
            SigmaElem v = atkin_lehner(ell, f);
            QuadElem det = v.L()(0, 0) * v.L()(1, 1) - v.L()(0, 1) * v.L()(1, 0);
            if (det != QuadElem(Rat(v.ell()))) {
                why = "det V_l != ell at m = " + std::to_string(m);
                return false;
            }
        }
    }
    return true;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "index [Gamma*:Gamma] = 2^(nu-1) across the field set", criterion_index},
        {2, "normalizer classification and M0 membership", criterion_normalizer},
        {3, "phi_fast = base-change oracle on 500 samples per field and basis",
         criterion_oracle},
        {4, "kernel containment (Gamma, Gamma*, V_l)", criterion_kernel_containment},
        {5, "middle-block congruence iff the lattice criterion", criterion_block_congruence},
        {6, "action compatibility and automorphy factor on 100 pairs per field",
         criterion_action},
        {7, "congruence-subgroup correspondences and ideal-map containment",
         criterion_congruence},
        {8, "squarefree kernel of 2+eps+eps' divides d_K", criterion_remark1b},
        {9, "phi_inverse . phi_fast = +-id on 200 samples per field", criterion_roundtrip},
        {10, "unit, two-squares and determinant golden values", criterion_goldens},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string why;
        bool ok = false;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
        std::printf("%s criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.number,
                    c.title.c_str(), secs.count(), why.empty() ? "" : " -- ",
                    why.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
