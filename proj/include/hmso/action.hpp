#pragma once

#include "hmso/isomap.hpp"

namespace hmso {

/// Element re + i*im of K(i), exact.
struct CPoint {
    QuadElem re, im;

    CPoint() = default;
    CPoint(QuadElem r, QuadElem i) : re(std::move(r)), im(std::move(i)) {}
    explicit CPoint(const QuadElem& r) : re(r) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend CPoint operator+(const CPoint& a, const CPoint& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend CPoint operator-(const CPoint& a, const CPoint& b) {
        return {a.re - b.re, a.im - b.im};
    }
    CPoint operator-() const { return {-re, -im}; }
    friend CPoint operator*(const CPoint& a, const CPoint& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CPoint operator*(const QuadElem& s, const CPoint& b) {
        return {s * b.re, s * b.im};
    }
    friend CPoint operator/(const CPoint& a, const CPoint& b) {
        if (b.is_zero()) throw Error("CPoint: division by zero");
        QuadElem n = b.re * b.re + b.im * b.im;
        CPoint p = a * CPoint{b.re, -b.im};
        return {p.re / n, p.im / n};
    }
    friend bool operator==(const CPoint& a, const CPoint& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const CPoint& a, const CPoint& b) { return !(a == b); }
};

/// Point z = (z1, z2) of a tube domain H_T, coordinates in K(i).
struct HTPoint {
    CPoint z1, z2;
};

enum class Embedding { First, Conjugate };

/// Moebius action entry-wise in K(i); the 1/sqrt(ell) scale cancels.
/// which = Conjugate applies the conjugated matrix L'.
/// Throws PoleAtPoint when the denominator vanishes.
CPoint mobius(const SigmaElem& m, const CPoint& tau, Embedding which);

/// Upper half-plane pair membership, each factor in its own embedding.
bool in_h2(const CPoint& tau1, const CPoint& tau2);

/// z^T T z for the 2x2 core T.
CPoint tube_qform(const Mat2& core, const HTPoint& z);

/// Factor of automorphy M{z} = -1/2 gamma~ z^T T z + d^T T z + delta~.
CPoint automorphy(const Mat4& u, const HTPoint& z, const GramForm& t);

/// Orthogonal fractional-linear action
/// z -> (M{z})^-1 (-1/2 z^T T z * b + K z + c).
/// Throws SingularAutomorphy when M{z} = 0.
HTPoint ortho_action(const Mat4& u, const HTPoint& z, const GramForm& t);

/// Literal half-space membership: im z in the cone (y^T T y > 0) with
/// y1 > 0, signs under the fixed embedding.
bool in_half_space(const HTPoint& z, const GramForm& t);

/// Cone membership with the component pinned down through the base
/// change: sign(u y1 + v y2) > 0, which matches G z landing in H^2.
bool in_half_space_component(const HTPoint& z, const BasisCtx& ctx);

/// tau = G z over K(i).
std::pair<CPoint, CPoint> base_change_point(const HTPoint& z, const BasisCtx& ctx);

/// Compatibility of the two actions through the base change:
/// ortho_action(phi_fast(M), z) = G^-1 (M<tau1>, M'<tau2>).
bool check_compat(const SigmaElem& m, const BasisCtx& ctx, const HTPoint& z);

/// The closed-form factor of automorphy:
/// M~{z} = (gamma tau1 + delta)(gamma' tau2 + delta').
bool automorphy_factor_check(const SigmaElem& m, const BasisCtx& ctx, const HTPoint& z);

/// Deterministic point of H_S with rational coordinates (cone and
/// component memberships verified exactly).
HTPoint sample_ht_point(const BasisCtx& ctx, std::uint64_t seed);

}  // namespace hmso
