#pragma once

#include <optional>

#include "hmso/modgroup.hpp"
#include "hmso/ortho4.hpp"

namespace hmso {

/**
 * A Q-basis B = (u, v) of K together with the base-change data used by
 * the maps into SO(2,2): G = [[u, v], [u', v']], the Gram form
 * S = G^T P G extended by the hyperbolic plane, and, for a Z-basis of
 * an ideal I of reduced norm N, the rescaled core T = S/N.
 */
struct BasisCtx {
    FieldCtx field;
    QuadElem u, v;
    MatK2 G;
    GramForm S;                 // corner 1, core = gram of (u, v)
    bool is_ideal = false;
    IdealHNF ideal{};           // ideal role only
    Int N = 1;                  // reduced norm of the ideal (1 for O_K)
    std::optional<GramForm> T;  // corner 1, core S/N (ideal role only)

    /// Coordinate map of K onto Q^2 with respect to B.
    Vec2 coords(const QuadElem& w) const { return coords_wrt(w, u, v); }
    QuadElem from_coords(const Vec2& c) const {
        return QuadElem(c(0)) * u + QuadElem(c(1)) * v;
    }
};

/// Basis context for a Z-basis of O_K (validates Zu + Zv = O_K).
BasisCtx ok_basis_ctx(const QuadElem& u, const QuadElem& v, const FieldCtx& ctx);

/// Basis context for a Z-basis of a primitive ideal.
BasisCtx ideal_basis_ctx(const QuadElem& u, const QuadElem& v, const IdealHNF& ideal,
                         const FieldCtx& ctx);

/// Context on the canonical basis {N, t + omega} of the ideal.
BasisCtx ideal_basis_ctx(const GammaICtx& ictx, const FieldCtx& ctx);

/// The pair embedding of M: the 4x4 matrix over K built from all the
/// products of entries of M with conjugated entries; orthogonal for
/// the split form P1.
MatK4 omega_pair(const SigmaElem& m, const FieldCtx& ctx);

/// Image of M in SO0(S1; Q), assembled directly from norms, traces and
/// coordinates (never through the base change; see base_change_oracle
/// for the independent route).
Mat4 phi_fast(const SigmaElem& m, const BasisCtx& ctx);

/// Same map via Ghat^-1 * omega_pair(M) * Ghat computed over K.
/// Throws IrrationalEntry if an off-field entry survives (impossible
/// for genuine Sigma_K input). This is the differential-testing oracle
/// for phi_fast.
Mat4 base_change_oracle(const SigmaElem& m, const BasisCtx& ctx);

/// Preimage of U under phi_fast, up to sign: splits the middle block
/// into its multiplication and twist parts, rebuilds the rank-one
/// matrix of pair products and descends its determinant to a rational
/// square class. Verified by re-applying phi_fast (NotInImage).
SigmaElem phi_inverse(const Mat4& u, const BasisCtx& ctx);

/// Criterion F_M(sqrt(d_K) Lambda) in d_K Lambda, Lambda the lattice
/// spanned by B. Pre: phi_fast(M) integral (NotIntegralImage).
bool dk_criterion_fm(const SigmaElem& m, const BasisCtx& ctx);

/// The middle-block congruence K - I in Z^{2x2} S (T for ideal bases);
/// equivalent to dk_criterion_fm.
bool middle_block_congruence(const SigmaElem& m, const BasisCtx& ctx);

/// H_N^-1 phi_fast(M) H_N for an ideal basis context.
Mat4 psi(const SigmaElem& m, const BasisCtx& ctx);

// Orthogonal-side counterparts of the congruence subgroups: the maps
// carry the level group onto F_N D(S_N;Z) F_N^-1, the principal
// congruence subgroup onto D(N S1;Z), and the divisor-level subgroup
// (read through the basis (N, omega)) onto G_N^-1 D(T_N;Z) G_N.
bool level_group_image(const Mat4& u, const Int& N, const BasisCtx& ctx);
bool principal_congruence_image(const Mat4& u, const Int& N, const BasisCtx& ctx);
bool divisor_congruence_image(const Mat4& u, const Int& N, const FieldCtx& field);

/// phi_B(Gamma_K(nI)) = H_n phi_B(Gamma_K(I)) H_n^-1, checked on
/// sampled members of Gamma_K(nI); exact.
bool hn_conjugation_check(const IdealHNF& ideal, const Int& n, const FieldCtx& field,
                          std::uint64_t seed, int trials);

}  // namespace hmso
