#include <doctest.h>

#include "hmso/action.hpp"
#include "hmso/verify.hpp"

using namespace hmso;

namespace {

CPoint ipoint() { return CPoint(QuadElem(0), QuadElem(1)); }  // i

SigmaElem upper(const QuadElem& b, const FieldCtx& f) {
    MatK2 t;
    t << QuadElem(1), b, QuadElem(0), QuadElem(1);
    return SigmaElem::from_k_matrix(t, f);
}

}  // namespace

TEST_CASE("exact K(i) arithmetic") {
    CPoint a(QuadElem(Rat(1), Rat(2), 5), QuadElem(Rat(-1, 3)));
    CPoint b(QuadElem(Rat(2)), QuadElem(Rat(0), Rat(1), 5));
    CHECK((a * b) / b == a);
    CHECK(a + b - b == a);
    CHECK_THROWS_AS(a / CPoint(), Error);
}

TEST_CASE("Moebius action") {
    FieldCtx f2 = make_field(2);
    SigmaElem id = SigmaElem::identity(f2);
    CHECK(mobius(id, ipoint(), Embedding::First) == ipoint());

    CPoint translated = mobius(upper(QuadElem(1), f2), ipoint(), Embedding::First);
    CHECK(translated == CPoint(QuadElem(1), QuadElem(1)));

    // V_2 for m = 2 acting on (i, i): both images stay upper
    SigmaElem v2 = atkin_lehner(2, f2);
    CPoint w1 = mobius(v2, ipoint(), Embedding::First);
    CPoint w2 = mobius(v2, ipoint(), Embedding::Conjugate);
    CHECK(in_h2(w1, w2));

    MatK2 s;
    s << QuadElem(0), QuadElem(-1), QuadElem(1), QuadElem(0);
    CHECK_THROWS_AS(mobius(SigmaElem::from_k_matrix(s, f2), CPoint(QuadElem(0)),
                           Embedding::First),
                    PoleAtPoint);
}

TEST_CASE("H_P is the product of upper half planes") {
    Mat2 p;
    p << Rat(0), Rat(1), Rat(1), Rat(0);
    GramForm hp(p);
    HTPoint z{ipoint(), ipoint()};
    CHECK(in_half_space(z, hp));
    HTPoint zneg{CPoint(QuadElem(0), QuadElem(-1)), ipoint()};
    CHECK(!in_half_space(zneg, hp));
}

TEST_CASE("orthogonal action basics") {
    FieldCtx f5 = make_field(5);
    BasisCtx b = ok_basis_ctx(QuadElem(1), f5.omega, f5);
    HTPoint z = sample_ht_point(b, 17);
    CHECK(in_half_space(z, b.S));
    CHECK(in_half_space_component(z, b));

    HTPoint fixed = ortho_action(Mat4::Identity(), z, b.S);
    CHECK(fixed.z1 == z.z1);
    CHECK(fixed.z2 == z.z2);
    CHECK(automorphy(Mat4::Identity(), z, b.S) == CPoint(QuadElem(1)));
}

TEST_CASE("compatibility through the base change") {
    for (long m : {2, 3, 5, 6, 13}) {
        FieldCtx f = make_field(m);
        BasisCtx b = ok_basis_ctx(QuadElem(1), f.omega, f);
        for (std::uint64_t s = 1; s <= 10; ++s) {
            SigmaElem mat = verify::sample_sigma(s, f);
            HTPoint z = sample_ht_point(b, s + 100);
            CHECK(check_compat(mat, b, z));
            CHECK(automorphy_factor_check(mat, b, z));
        }
    }
}

TEST_CASE("cocycle identity") {
    FieldCtx f6 = make_field(6);
    BasisCtx b = ok_basis_ctx(QuadElem(1), f6.omega, f6);
    HTPoint z = sample_ht_point(b, 3);
    Mat4 u1 = phi_fast(verify::sample_sigma(8, f6), b);
    Mat4 u2 = phi_fast(verify::sample_sigma(9, f6), b);
    CPoint lhs = automorphy(Mat4(u1 * u2), z, b.S);
    CPoint rhs = automorphy(u1, ortho_action(u2, z, b.S), b.S) * automorphy(u2, z, b.S);
    CHECK(lhs == rhs);
}

TEST_CASE("a corrupted image fails compatibility") {
    FieldCtx f5 = make_field(5);
    BasisCtx b = ok_basis_ctx(QuadElem(1), f5.omega, f5);
    SigmaElem m = sample_gamma(2, f5);
    HTPoint z = sample_ht_point(b, 5);
    REQUIRE(check_compat(m, b, z));

    Mat4 bad = phi_fast(m, b);
    bad(1, 1) += 1;
    HTPoint lhs = ortho_action(bad, z, b.S);
    auto [tau1, tau2] = base_change_point(z, b);
    auto [g1, g2] = base_change_point(lhs, b);
    bool same = g1 == mobius(m, tau1, Embedding::First) &&
                g2 == mobius(m, tau2, Embedding::Conjugate);
    CHECK(!same);
}
