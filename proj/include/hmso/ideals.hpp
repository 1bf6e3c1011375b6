#pragma once

#include <vector>

#include "hmso/quadfield.hpp"

namespace hmso {

/**
 * Integral ideal of O_K in Hermite normal form: the Z-basis is
 * {a, b + c*omega} with a, c > 0, 0 <= b < a, c | a and c | b. The
 * normal form is unique, so ideal equality is componentwise. The
 * reduced norm [O_K : I] equals a*c.
 */
struct IdealHNF {
    Int a, b, c;
    long m = 0;

    Int reduced_norm() const { return a * c; }
    /// Largest rational integer dividing the ideal.
    Int content() const { return c; }

    friend bool operator==(const IdealHNF& i, const IdealHNF& j) {
        assert(i.m == j.m);
        return i.a == j.a && i.b == j.b && i.c == j.c;
    }
    friend bool operator!=(const IdealHNF& i, const IdealHNF& j) { return !(i == j); }
};

/// Fractional ideal num/den with gcd(den, content(num)) = 1.
struct FracIdeal {
    IdealHNF num;
    Int den;

    friend bool operator==(const FracIdeal& f, const FracIdeal& g) {
        return f.den == g.den && f.num == g.num;
    }
};

/// HNF basis of the Z-lattice spanned by coordinate columns (p, q)
/// with respect to (1, omega). Requires rank 2 (DegenerateBasis).
IdealHNF zlattice_hnf(const std::vector<std::pair<Int, Int>>& cols, long m);

/// HNF basis of the O_K-ideal generated by gens.
/// Throws ZeroIdeal and NotIntegral.
IdealHNF ideal_from_generators(const std::vector<QuadElem>& gens, const FieldCtx& ctx);

inline IdealHNF principal_ideal(const QuadElem& g, const FieldCtx& ctx) {
    return ideal_from_generators({g}, ctx);
}

IdealHNF ideal_mul(const IdealHNF& i, const IdealHNF& j, const FieldCtx& ctx);

inline bool ideal_eq(const IdealHNF& i, const IdealHNF& j) { return i == j; }

inline IdealHNF ideal_scale(const Int& n, const IdealHNF& i) {
    assert(n > 0);
    return {n * i.a, n * i.b, n * i.c, i.m};
}

inline IdealHNF ok_ideal(const FieldCtx& ctx) { return {1, 0, 1, ctx.m}; }

/// Membership of a point with rational coordinates (p, q) wrt (1, omega).
bool lattice_contains(const IdealHNF& i, const Rat& p, const Rat& q);

bool ideal_contains(const IdealHNF& i, const QuadElem& a, const FieldCtx& ctx);

/// Membership z in num/den, i.e. den*z in num.
bool frac_contains(const FracIdeal& f, const QuadElem& z, const FieldCtx& ctx);

IdealHNF conj_ideal(const IdealHNF& i, const FieldCtx& ctx);

/// The ideal A_ell = Z*ell + Z*omega of reduced norm ell, for a
/// squarefree divisor ell of the discriminant. Throws BadDivisor.
IdealHNF A_ell(const Int& ell, const FieldCtx& ctx);

inline bool is_primitive(const IdealHNF& i) { return i.c == 1; }

/// Basis data (N, t) with I = {N, t + omega}, N the reduced norm,
/// 0 <= t < N and N | N(t + omega). Throws NotPrimitive.
std::pair<Int, Int> canonical_basis(const IdealHNF& i);

/// Inverse of a primitive ideal: (1/N) * conjugate(I), verified by
/// I * I' = N * O_K. Throws NotPrimitive.
FracIdeal ideal_inverse(const IdealHNF& i, const FieldCtx& ctx);

FracIdeal frac_mul(const FracIdeal& f, const FracIdeal& g, const FieldCtx& ctx);
FracIdeal frac_reduce(IdealHNF num, Int den);

/// Ideal generated by the entries of a nonzero integral 2x2 matrix.
IdealHNF content_ideal(const MatK2& L, const FieldCtx& ctx);

/// x*a + y*(b + c*omega) as a field element.
QuadElem ideal_element(const IdealHNF& i, const Int& x, const Int& y, const FieldCtx& ctx);

}  // namespace hmso
