#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hmso/ideals.hpp"

namespace hmso {

/**
 * Projective representative of +-(1/sqrt(ell)) L where L is an integral
 * 2x2 matrix over O_K with det L = ell in N, so the real matrix lies in
 * SL2(R). Everything in sight is a statement modulo {+-I}, so the sign
 * is normalized away at construction.
 *
 * Canonical form: denominators cleared, integer content divided out,
 * sqrt(m)-content divided out (e.g. (1/sqrt(2))[[2,2+sqrt2],[2-sqrt2,2]]
 * collapses into SL2(O_K) for m = 2), and the first nonzero entry made
 * positive under the embedding sqrt(m) > 0. Canonical forms are unique,
 * so equality is syntactic.
 */
class SigmaElem {
public:
    /// From (L, ell) with det L = ell; L may have fractional entries
    /// and ell may be rational, the representative is normalized here.
    SigmaElem(MatK2 L, Rat ell, const FieldCtx& ctx);

    static SigmaElem identity(const FieldCtx& ctx) {
        MatK2 I = MatK2::Identity();
        return SigmaElem(I, 1, ctx);
    }
    /// From an SL2(K) matrix (det 1).
    static SigmaElem from_k_matrix(const MatK2& M, const FieldCtx& ctx) {
        return SigmaElem(M, 1, ctx);
    }

    const MatK2& L() const { return L_; }
    const Int& ell() const { return ell_; }
    long m() const { return m_; }

    /// 1/sqrt(ell) as an element of K when sqrt(ell) is rational or a
    /// rational multiple of sqrt(m) (ell = k^2 or ell = m k^2).
    std::optional<QuadElem> inv_scale_in_k() const;
    /// True when the real matrix has entries in K.
    bool is_sl2k() const { return inv_scale_in_k().has_value(); }
    /// The SL2(K) matrix L / sqrt(ell); requires is_sl2k().
    MatK2 k_matrix() const;

    friend bool operator==(const SigmaElem& m1, const SigmaElem& m2) {
        return m1.ell_ == m2.ell_ && m1.L_ == m2.L_;
    }
    friend bool operator!=(const SigmaElem& m1, const SigmaElem& m2) {
        return !(m1 == m2);
    }

private:
    MatK2 L_;
    Int ell_;
    long m_;
};

/// Representative used by the orthogonal maps: the SL2(K) matrix with
/// scale 1 when sqrt(ell) lies in K (there the entrywise conjugate is
/// the honest one), else (L, ell) with the extension sqrt(ell)' =
/// sqrt(ell).
std::pair<MatK2, Rat> map_representative(const SigmaElem& m);

inline SigmaElem mul(const SigmaElem& m1, const SigmaElem& m2, const FieldCtx& ctx) {
    return SigmaElem(m1.L() * m2.L(), Rat(m1.ell() * m2.ell()), ctx);
}

inline SigmaElem inv(const SigmaElem& m, const FieldCtx& ctx) {
    MatK2 adj;
    adj << m.L()(1, 1), -m.L()(0, 1), -m.L()(1, 0), m.L()(0, 0);
    return SigmaElem(adj, Rat(m.ell()), ctx);
}

inline bool eq(const SigmaElem& m1, const SigmaElem& m2) { return m1 == m2; }

/// Membership in Gamma_K = SL2(O_K): the canonical form has ell = 1.
inline bool in_gamma(const SigmaElem& m) { return m.ell() == 1; }

/// Element (1/sqrt(delta)) L of the normalizer candidate set, delta =
/// det L in O_K positive under the fixed embedding.
struct NormalizerElem {
    MatK2 L;
    QuadElem delta;

    NormalizerElem(MatK2 Lm, const FieldCtx& ctx);
};

/// Hilbert modular group with respect to a primitive ideal I.
struct GammaICtx {
    IdealHNF ideal;
    FracIdeal inverse;
    Int N;  // reduced norm
    Int t;  // canonical basis {N, t + omega}
};

GammaICtx make_gamma_ictx(const IdealHNF& ideal, const FieldCtx& ctx);

bool in_gamma_I(const SigmaElem& m, const GammaICtx& ictx, const FieldCtx& ctx);

/// Normalizer membership: det L > 0 under the fixed embedding and
/// I(L)^2 = O_K det L.
bool in_normalizer(const NormalizerElem& n, const FieldCtx& ctx);
/// Hurwitz-Maass membership additionally needs det L totally positive.
bool in_gamma_star(const NormalizerElem& n, const FieldCtx& ctx);
bool in_gamma_star(const SigmaElem& m, const FieldCtx& ctx);

inline NormalizerElem to_normalizer(const SigmaElem& m, const FieldCtx& ctx) {
    MatK2 L = m.L();
    return NormalizerElem(L, ctx);
}

/// Generalized Atkin-Lehner matrix V_ell =
/// (1/sqrt(ell)) [[nu*ell, mu*(m+sqrt m)], [m-sqrt m, ell]] with
/// nu*ell - mu*m(m-1)/ell = 1, nu minimal positive.
/// Throws BadDivisor and NoBezout.
SigmaElem atkin_lehner(const Int& ell, const FieldCtx& ctx);

/// Atkin-Lehner representative for Gamma*_K(I), built from
/// u = ell/gcd(ell, N) + m + sqrt(m) and nu*ell - mu*N*u*u'/ell = 1.
SigmaElem atkin_lehner_ideal(const Int& ell, const GammaICtx& ictx, const FieldCtx& ctx);

/// Membership in Gamma*_K(I) as the union of the cosets
/// V_ell Gamma_K(I) over squarefree divisors ell of d_K.
bool in_gamma_star_ideal(const SigmaElem& m, const GammaICtx& ictx, const FieldCtx& ctx);

/// Exceptional normalizer element (1/sqrt(eps0)) diag(eps0, 1);
/// requires norm(eps0) = -1 (WrongCase).
NormalizerElem m0_unit(const FieldCtx& ctx);

/// Exceptional normalizer element from m = alpha^2 + beta^2, alpha odd
/// (WrongCase when no such decomposition exists).
NormalizerElem m0_two_squares(const FieldCtx& ctx);

struct NormalizerClass {
    bool extended = false;
    std::optional<NormalizerElem> m0;  // present iff extended
};

/// Classification of the normalizer N_K against Gamma*_K.
NormalizerClass normalizer_class(const FieldCtx& ctx);

inline bool coset_eq(const SigmaElem& vk, const SigmaElem& vl, const FieldCtx& ctx) {
    return in_gamma(mul(inv(vk, ctx), vl, ctx));
}

/// Coset classes of {V_ell} modulo Gamma_K, as lists of divisors ell.
std::vector<std::vector<Int>> coset_classes(const FieldCtx& ctx);

inline size_t coset_count(const FieldCtx& ctx) { return coset_classes(ctx).size(); }

inline std::vector<Int> khat_primes(const FieldCtx& ctx) { return prime_factors(ctx.disc); }

/// Squarefree kernel q of 2 + eps + eps' for a totally positive unit,
/// together with the verdict q | d_K. Throws NotTotallyPositiveUnit.
std::pair<Int, bool> unit_kernel_check(const QuadElem& eps, const FieldCtx& ctx);

/// The level-N group inside Gamma_K: alpha alpha' = delta delta' = 1
/// mod N and gamma in N O_K. Throws NotInGamma off Gamma_K.
bool in_level_group(const SigmaElem& m, const Int& N, const FieldCtx& ctx);

/// Principal congruence condition M = eps I mod the given modulus
/// ideal, where eps runs over the integer residues with eps^2 = 1 mod
/// level. Use modulus = N O_K for the classical subgroup and
/// modulus = A_N for the divisor-level variant (then N must be a
/// squarefree divisor of d_K). Throws NotInGamma.
bool in_principal_congruence(const SigmaElem& m, const IdealHNF& modulus, const Int& level,
                             const FieldCtx& ctx);

enum class SampleKind {
    Gamma,                // SL2(O_K)
    GammaI,               // beta in I, gamma in I^-1
    PrincipalCongruence,  // M = eps*I mod N*O_K
    LevelGroup,           // alpha*alpha' = delta*delta' = 1 mod N, gamma in N*O_K
    DivisorCongruence,    // M = eps*I mod A_N
};

struct SampleSpec {
    SampleKind kind = SampleKind::Gamma;
    Int N = 0;                         // for the congruence kinds
    const GammaICtx* ictx = nullptr;   // for GammaI
};

/// Pseudo-random member of the requested group: a bounded word in
/// elementary matrices and unit diagonals, deterministic in the seed.
SigmaElem sample(const SampleSpec& spec, std::uint64_t seed, const FieldCtx& ctx);

inline SigmaElem sample_gamma(std::uint64_t seed, const FieldCtx& ctx) {
    return sample({SampleKind::Gamma}, seed, ctx);
}

}  // namespace hmso
