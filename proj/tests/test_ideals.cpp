#include <doctest.h>

#include "hmso/ideals.hpp"

using namespace hmso;

TEST_CASE("HNF from generators") {
    FieldCtx f2 = make_field(2);
    // {2, 2+sqrt2} generates A_2 for m = 2 (2+sqrt2 = omega)
    IdealHNF a2 = ideal_from_generators({QuadElem(2), f2.omega}, f2);
    CHECK(a2 == IdealHNF{2, 0, 1, 2});
    CHECK(a2.reduced_norm() == 2);

    CHECK(ideal_from_generators({QuadElem(1)}, f2) == ok_ideal(f2));

    FieldCtx f5 = make_field(5);
    IdealHNF nw = ideal_from_generators({f5.omega}, f5);
    CHECK(nw == IdealHNF{5, 0, 1, 5});  // norm(omega) = 5

    CHECK_THROWS_AS(ideal_from_generators({QuadElem(0)}, f5), ZeroIdeal);
    CHECK_THROWS_AS(ideal_from_generators({QuadElem(Rat(1, 2))}, f5), NotIntegral);

    // order of the generators is irrelevant
    QuadElem g1(Rat(3), Rat(1), 5), g2(Rat(0), Rat(2), 5);
    CHECK(ideal_from_generators({g1, g2}, f5) == ideal_from_generators({g2, g1}, f5));
}

TEST_CASE("products, equality, membership") {
    FieldCtx f6 = make_field(6);
    IdealHNF a2 = A_ell(2, f6), a3 = A_ell(3, f6), a6 = A_ell(6, f6);
    CHECK(ideal_mul(a2, a3, f6) == a6);
    CHECK(ideal_mul(a2, ok_ideal(f6), f6) == a2);
    CHECK(ideal_mul(a2, a2, f6) == ideal_scale(2, ok_ideal(f6)));

    CHECK(ideal_contains(a2, f6.omega, f6));
    CHECK(ideal_contains(a2, QuadElem(2), f6));
    CHECK(!ideal_contains(a2, QuadElem(1), f6));
    CHECK(!ideal_contains(a2, QuadElem(Rat(1, 2)), f6));
}

TEST_CASE("the ideals A_ell") {
    FieldCtx f6 = make_field(6);
    CHECK(A_ell(2, f6) == IdealHNF{2, 0, 1, 6});
    CHECK(A_ell(2, f6).reduced_norm() == 2);
    CHECK(A_ell(1, f6) == ok_ideal(f6));
    CHECK_THROWS_AS(A_ell(4, f6), BadDivisor);
    CHECK_THROWS_AS(A_ell(5, f6), BadDivisor);

    // A_m is sqrt(m) O_K; no other nontrivial A_k is principal of that shape
    for (long m : {2, 3, 5, 6, 13}) {
        FieldCtx f = make_field(m);
        CHECK(A_ell(Int(m), f) == principal_ideal(f.sqrtm(), f));
    }
}

TEST_CASE("primitivity and canonical bases") {
    FieldCtx f5 = make_field(5);
    IdealHNF split11{11, 1, 1, 5};
    CHECK(is_primitive(split11));
    auto [n, t] = canonical_basis(split11);
    CHECK(n == 11);
    CHECK(t == 1);
    // N | N(t + omega)
    CHECK(num(norm(QuadElem(Rat(t)) + f5.omega)) % n == 0);

    CHECK(canonical_basis(ok_ideal(f5)) == std::pair<Int, Int>(1, 0));
    CHECK_THROWS_AS(canonical_basis(ideal_scale(2, ok_ideal(f5))), NotPrimitive);
}

TEST_CASE("inverses of primitive ideals") {
    FieldCtx f6 = make_field(6);
    IdealHNF a2 = A_ell(2, f6);
    FracIdeal inv = ideal_inverse(a2, f6);
    CHECK(inv.den == 2);
    CHECK(inv.num == conj_ideal(a2, f6));
    CHECK(ideal_mul(a2, inv.num, f6) == ideal_scale(2, ok_ideal(f6)));

    CHECK(ideal_inverse(ok_ideal(f6), f6) == FracIdeal{ok_ideal(f6), 1});

    FieldCtx f5 = make_field(5);
    IdealHNF split11{11, 1, 1, 5};
    FracIdeal inv11 = ideal_inverse(split11, f5);
    CHECK(inv11.den == 11);
    CHECK(ideal_mul(split11, inv11.num, f5) == ideal_scale(11, ok_ideal(f5)));

    // 1/(1+omega) = (1+omega')/11 = (6-omega)/11 lies in the inverse;
    // (1+omega)/11 itself does not ((1+omega)^2/11 is not integral)
    CHECK(frac_contains(inv11, (QuadElem(6) - f5.omega) / QuadElem(11), f5));
    CHECK(!frac_contains(inv11, (QuadElem(1) + f5.omega) / QuadElem(11), f5));
    CHECK(!frac_contains(inv11, QuadElem(Rat(1, 11)), f5));
}

TEST_CASE("content ideals of matrices") {
    FieldCtx f2 = make_field(2);
    MatK2 l;
    l << QuadElem(2), QuadElem(0), QuadElem(0), QuadElem(1);
    CHECK(content_ideal(l, f2) == ok_ideal(f2));

    // entries of the Atkin-Lehner matrix for m = 2 generate A_2 and
    // A_2^2 = 2 O_K
    MatK2 v2;
    v2 << QuadElem(2), QuadElem(Rat(2), Rat(1), 2), QuadElem(Rat(2), Rat(-1), 2), QuadElem(2);
    IdealHNF c = content_ideal(v2, f2);
    CHECK(c == IdealHNF{2, 0, 1, 2});
    CHECK(ideal_mul(c, c, f2) == ideal_scale(2, ok_ideal(f2)));

    MatK2 scalar;
    scalar << QuadElem(3), QuadElem(0), QuadElem(0), QuadElem(3);
    CHECK(content_ideal(scalar, f2) == ideal_scale(3, ok_ideal(f2)));

    MatK2 zero = MatK2::Zero();
    CHECK_THROWS_AS(content_ideal(zero, f2), ZeroIdeal);
}

TEST_CASE("fractional reduction") {
    FieldCtx f6 = make_field(6);
    FracIdeal r = frac_reduce(ideal_scale(4, ok_ideal(f6)), 6);
    CHECK(r.den == 3);
    CHECK(r.num == ideal_scale(2, ok_ideal(f6)));
}
