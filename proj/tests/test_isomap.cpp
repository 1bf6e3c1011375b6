#include <doctest.h>

#include "hmso/action.hpp"
#include "hmso/verify.hpp"

using namespace hmso;

namespace {

SigmaElem upper(const QuadElem& b, const FieldCtx& f) {
    MatK2 t;
    t << QuadElem(1), b, QuadElem(0), QuadElem(1);
    return SigmaElem::from_k_matrix(t, f);
}

}  // namespace

TEST_CASE("basis contexts") {
    FieldCtx f5 = make_field(5);
    BasisCtx b = ok_basis_ctx(QuadElem(1), f5.omega, f5);
    CHECK(!b.is_ideal);
    CHECK(b.N == 1);
    CHECK(b.coords(f5.omega) == Vec2(Rat(0), Rat(1)));
    CHECK(b.from_coords(Vec2(Rat(2), Rat(-1))) == QuadElem(2) - f5.omega);

    // (omega, 1) is also a Z-basis of O_K
    ok_basis_ctx(f5.omega, QuadElem(1), f5);
    // (1, 2 omega) spans an index-2 sublattice only
    CHECK_THROWS_AS(ok_basis_ctx(QuadElem(1), QuadElem(2) * f5.omega, f5), DegenerateBasis);

    IdealHNF split11{11, 1, 1, 5};
    BasisCtx bi = ideal_basis_ctx(make_gamma_ictx(split11, f5), f5);
    CHECK(bi.is_ideal);
    CHECK(bi.N == 11);
    CHECK(bi.u == QuadElem(11));
    CHECK(bi.v == QuadElem(1) + f5.omega);
    CHECK(bi.T->is_even_integral());
    CHECK_THROWS_AS(ideal_basis_ctx(QuadElem(11), QuadElem(2) + f5.omega, split11, f5),
                    DegenerateBasis);
}

TEST_CASE("the pair embedding") {
    FieldCtx f5 = make_field(5);
    MatK4 id = omega_pair(SigmaElem::identity(f5), f5);
    CHECK(id == MatK4(MatK4::Identity()));

    MatK4 t = omega_pair(upper(QuadElem(1), f5), f5);
    CHECK(t(0, 0) == QuadElem(1));
    CHECK(t(0, 3) == QuadElem(-1));  // -beta beta'
    CHECK(t(0, 1) == QuadElem(-1));
    CHECK(t(0, 2) == QuadElem(-1));

    // multiplicative up to the sign of the conjugate pair
    SigmaElem a = verify::sample_sigma(5, f5), b = verify::sample_sigma(6, f5);
    MatK4 lhs = omega_pair(mul(a, b, f5), f5);
    MatK4 rhs = omega_pair(a, f5) * omega_pair(b, f5);
    MatK4 neg = rhs;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) neg(i, j) = -neg(i, j);
    CHECK((lhs == rhs || lhs == neg));
}

TEST_CASE("phi golden values") {
    FieldCtx f5 = make_field(5);
    BasisCtx b = ok_basis_ctx(QuadElem(1), f5.omega, f5);
    CHECK(phi_fast(SigmaElem::identity(f5), b) == Mat4(Mat4::Identity()));

    Mat4 u = phi_fast(upper(QuadElem(1), f5), b);
    Mat4 expect;
    expect << Rat(1), Rat(-2), Rat(-5), Rat(-1),
              Rat(0), Rat(1), Rat(0), Rat(1),
              Rat(0), Rat(0), Rat(1), Rat(0),
              Rat(0), Rat(0), Rat(0), Rat(1);
    CHECK(u == expect);
    CHECK(in_discriminant_kernel(u, b.S));
}

TEST_CASE("kernel containment") {
    // for m = 2 the divisor 2 equals m, so V_2 lies in Gamma and its
    // image lands inside the discriminant kernel
    FieldCtx f2 = make_field(2);
    BasisCtx b2 = ok_basis_ctx(QuadElem(1), f2.omega, f2);
    CHECK(in_discriminant_kernel(phi_fast(atkin_lehner(2, f2), b2), b2.S));

    // for m = 6 it does not
    FieldCtx f6 = make_field(6);
    BasisCtx b6 = ok_basis_ctx(QuadElem(1), f6.omega, f6);
    Mat4 v2 = phi_fast(atkin_lehner(2, f6), b6);
    CHECK(mat_is_integral(v2));
    CHECK(in_SO0(v2, b6.S));
    CHECK(!in_discriminant_kernel(v2, b6.S));

    for (std::uint64_t s = 1; s <= 10; ++s)
        CHECK(in_discriminant_kernel(phi_fast(sample_gamma(s, f6), b6), b6.S));
}

TEST_CASE("differential oracle agreement") {
    for (long m : {2, 5, 6}) {
        FieldCtx f = make_field(m);
        BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
        BasisCtx br = ok_basis_ctx(f.omega, QuadElem(1), f);
        for (std::uint64_t s = 1; s <= 25; ++s) {
            SigmaElem x = verify::sample_sigma(s, f);
            CHECK(phi_fast(x, b) == base_change_oracle(x, b));
            CHECK(phi_fast(x, br) == base_change_oracle(x, br));
        }
    }
}

TEST_CASE("phi inversion") {
    FieldCtx f6 = make_field(6);
    BasisCtx b = ok_basis_ctx(QuadElem(1), f6.omega, f6);
    CHECK(phi_inverse(Mat4::Identity(), b) == SigmaElem::identity(f6));
    for (std::uint64_t s = 1; s <= 30; ++s) {
        SigmaElem m = verify::sample_sigma(s, f6);
        CHECK(phi_inverse(phi_fast(m, b), b) == m);
    }
    Mat4 flip = Mat4::Identity();
    flip(0, 0) = flip(3, 3) = -1;
    CHECK_THROWS_AS(phi_inverse(flip, b), NotInImage);
    Mat4 junk = Mat4::Identity();
    junk(0, 1) = 1;
    CHECK_THROWS_AS(phi_inverse(junk, b), NotInImage);  // not orthogonal
}

TEST_CASE("discriminant kernel criterion") {
    FieldCtx f6 = make_field(6);
    BasisCtx b = ok_basis_ctx(QuadElem(1), f6.omega, f6);
    for (std::uint64_t s = 1; s <= 10; ++s) {
        SigmaElem g = sample_gamma(s, f6);
        CHECK(dk_criterion_fm(g, b));
        CHECK(middle_block_congruence(g, b));
    }
    CHECK(!dk_criterion_fm(atkin_lehner(2, f6), b));
    CHECK(!dk_criterion_fm(atkin_lehner(3, f6), b));
    CHECK(dk_criterion_fm(atkin_lehner(6, f6), b));
    CHECK(dk_criterion_fm(atkin_lehner(1, f6), b));

    // ideal variant: l in {1, m} passes, others fail
    FieldCtx f2 = make_field(2);
    GammaICtx i2 = make_gamma_ictx(A_ell(2, f2), f2);
    BasisCtx bi2 = ideal_basis_ctx(i2, f2);
    CHECK(dk_criterion_fm(atkin_lehner_ideal(1, i2, f2), bi2));
    CHECK(dk_criterion_fm(atkin_lehner_ideal(2, i2, f2), bi2));

    GammaICtx i6 = make_gamma_ictx(A_ell(2, f6), f6);
    BasisCtx bi6 = ideal_basis_ctx(i6, f6);
    CHECK(!dk_criterion_fm(atkin_lehner_ideal(2, i6, f6), bi6));
    CHECK(middle_block_congruence(atkin_lehner_ideal(2, i6, f6), bi6) ==
          dk_criterion_fm(atkin_lehner_ideal(2, i6, f6), bi6));

    // non-integral image is rejected
    MatK2 half;
    half << QuadElem(2), QuadElem(1), QuadElem(0), QuadElem(2);
    CHECK_THROWS_AS(dk_criterion_fm(SigmaElem(half, 4, f6), b), NotIntegralImage);
}

TEST_CASE("psi maps the general modular group into the kernel") {
    FieldCtx f5 = make_field(5);
    GammaICtx ictx = make_gamma_ictx(IdealHNF{11, 1, 1, 5}, f5);
    BasisCtx bi = ideal_basis_ctx(ictx, f5);
    CHECK(psi(SigmaElem::identity(f5), bi) == Mat4(Mat4::Identity()));
    CHECK_THROWS_AS(psi(SigmaElem::identity(f5), ok_basis_ctx(QuadElem(1), f5.omega, f5)),
                    Error);

    for (std::uint64_t s = 1; s <= 15; ++s) {
        SigmaElem m = sample({SampleKind::GammaI, 0, &ictx}, s, f5);
        CHECK(in_discriminant_kernel(psi(m, bi), *bi.T));
    }
    Mat4 pv = psi(atkin_lehner_ideal(5, ictx, f5), bi);
    CHECK(mat_is_integral(pv));
    CHECK(in_SO0(pv, *bi.T));
    CHECK(in_discriminant_kernel(pv, *bi.T));  // l = m = 5 is the trivial coset
}

TEST_CASE("congruence correspondences") {
    FieldCtx f5 = make_field(5);
    BasisCtx b = ok_basis_ctx(QuadElem(1), f5.omega, f5);
    CHECK(level_group_image(Mat4::Identity(), 3, b));
    CHECK(principal_congruence_image(Mat4::Identity(), 3, b));
    CHECK(divisor_congruence_image(Mat4::Identity(), 5, f5));

    for (std::uint64_t s = 1; s <= 15; ++s) {
        SigmaElem g = sample_gamma(s, f5);
        Mat4 u = phi_fast(g, b);
        for (long n : {2L, 3L, 5L}) {
            CHECK(in_level_group(g, n, f5) == level_group_image(u, n, b));
            CHECK(in_principal_congruence(g, ideal_scale(n, ok_ideal(f5)), n, f5) == principal_congruence_image(u, n, b));
        }
        SigmaElem pc = sample({SampleKind::PrincipalCongruence, 3}, s, f5);
        CHECK(principal_congruence_image(phi_fast(pc, b), 3, b));
    }

    BasisCtx b3 = ideal_basis_ctx(make_gamma_ictx(A_ell(5, f5), f5), f5);
    for (std::uint64_t s = 1; s <= 10; ++s) {
        SigmaElem m = sample({SampleKind::DivisorCongruence, 5}, s, f5);
        CHECK(in_principal_congruence(m, A_ell(5, f5), 5, f5));
        CHECK(divisor_congruence_image(phi_fast(m, b3), 5, f5));
        SigmaElem g = sample_gamma(s, f5);
        CHECK(in_principal_congruence(g, A_ell(5, f5), 5, f5) == divisor_congruence_image(phi_fast(g, b3), 5, f5));
    }
}

TEST_CASE("H_n conjugation of the general modular groups") {
    FieldCtx f5 = make_field(5);
    CHECK(hn_conjugation_check(ok_ideal(f5), 1, f5, 3, 5));
    CHECK(hn_conjugation_check(ok_ideal(f5), 2, f5, 4, 25));
    FieldCtx f6 = make_field(6);
    CHECK(hn_conjugation_check(A_ell(2, f6), 3, f6, 5, 25));
}
