#include <doctest.h>

#include "hmso/textio.hpp"

using namespace hmso;

TEST_CASE("rational parsing") {
    CHECK(parse_rat("3/4") == Rat(3, 4));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK(parse_rat(" 2/6 ") == Rat(1, 3));
    CHECK_THROWS_AS(parse_rat("3/"), ParseError);
    CHECK_THROWS_AS(parse_rat("x"), ParseError);
    CHECK_THROWS_AS(parse_rat(""), ParseError);
}

TEST_CASE("field element round trips") {
    FieldCtx f5 = make_field(5);
    for (const char* text : {"3", "sqrt(5)", "-1/2*sqrt(5)", "1/2+1/2*sqrt(5)", "-2-sqrt(5)"}) {
        QuadElem a = parse_quad(text, f5);
        CHECK(parse_quad(a.str(), f5) == a);
    }
    CHECK(parse_quad(" 1 + 2 * sqrt(5) ", f5) == QuadElem(Rat(1), Rat(2), 5));
    CHECK(parse_quad("sqrt(5)", f5) == QuadElem::sqrt_m(5));
    CHECK(parse_quad("3", f5) == QuadElem(3));

    CHECK_THROWS_AS(parse_quad("sqrt(7)", f5), ParseError);
    CHECK_THROWS_AS(parse_quad("1+*sqrt(5)", f5), ParseError);
    CHECK_THROWS_AS(parse_quad("", f5), ParseError);

    CHECK(QuadElem(Rat(1), Rat(-1), 5).str() == "1-sqrt(5)");
    CHECK(QuadElem(Rat(0), Rat(-2), 5).str() == "-2*sqrt(5)");
}

TEST_CASE("basis tokens accept omega") {
    FieldCtx f5 = make_field(5);
    CHECK(parse_quad_or_omega("w", f5) == f5.omega);
    CHECK(parse_quad_or_omega("1+w", f5) == QuadElem(1) + f5.omega);
    CHECK(parse_quad_or_omega("-2*w", f5) == QuadElem(-2) * f5.omega);
    CHECK(parse_quad_or_omega("11", f5) == QuadElem(11));
}

TEST_CASE("matrix text form") {
    FieldCtx f6 = make_field(6);
    SigmaElem v2 = atkin_lehner(2, f6);
    CHECK(parse_sigma(sigma_str(v2), f6) == v2);

    SigmaElem id = parse_sigma("[[1,0],[0,1]]", f6);
    CHECK(id == SigmaElem::identity(f6));
    CHECK(sigma_str(id) == "[[1,0],[0,1]]");

    // the suffix scales the determinant
    SigmaElem d = parse_sigma("[[2,0],[0,1]]/sqrt(2)", f6);
    CHECK(d.ell() == 2);

    CHECK_THROWS_AS(parse_sigma("[[1,1],[1,1]]", f6), Error);  // det 0
    CHECK_THROWS_AS(parse_sigma("[[1,0],[0]]", f6), ParseError);
    CHECK_THROWS_AS(parse_sigma("1,0,0,1", f6), ParseError);
}

TEST_CASE("ideal text form") {
    FieldCtx f6 = make_field(6);
    CHECK(ideal_str(ok_ideal(f6)) == "[1, w]");
    CHECK(ideal_str(A_ell(2, f6)) == "[2, w]");
    CHECK(ideal_str(IdealHNF{11, 1, 1, 5}) == "[11, 1+w]");
    CHECK(ideal_str(ideal_scale(2, ok_ideal(f6))) == "[2, 2*w]");
}

TEST_CASE("exact JSON matrices") {
    Mat4 u = Mat4::Identity();
    u(0, 3) = Rat(-7, 3);
    nlohmann::json j = mat4_json(u);
    CHECK(j[0][3] == "-7/3");
    CHECK(mat4_from_json(j) == u);
    CHECK(mat4_from_json(nlohmann::json::parse(
              "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]")) == Mat4(Mat4::Identity()));
    CHECK_THROWS_AS(mat4_from_json(nlohmann::json::parse("[[1,2],[3,4]]")), ParseError);
}
