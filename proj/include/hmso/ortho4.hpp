#pragma once

#include "hmso/quadfield.hpp"

namespace hmso {

/**
 * Even symmetric form data: a 2x2 core S with det S < 0 extended to
 * the 4x4 matrix T_N = [[0, 0, N], [0, S, 0], [N, 0, 0]] by the
 * rescaled hyperbolic plane. Construction computes (once) an exact
 * rational split basis R with R^T T_N R = diag(D+, D-), D+ positive
 * and D- negative definite; the identity-component test reads the
 * orientation of the positive plane off R. Signature defects raise
 * WrongSignature.
 */
class GramForm {
public:
    explicit GramForm(Mat2 core, Int corner = 1);

    const Mat2& core() const { return core_; }
    const Int& corner() const { return corner_; }
    const Mat4& mat4() const { return t4_; }
    const Mat4& mat4_inv() const { return t4i_; }
    const Mat4& split() const { return split_; }
    const Mat4& split_inv() const { return spliti_; }

    bool is_even_integral() const;

private:
    Mat2 core_;
    Int corner_;
    Mat4 t4_, t4i_, split_, spliti_;
};

/// Gram matrix S = [[2uu', uv'+u'v], [uv'+u'v, 2vv']] of a Q-basis of K.
GramForm gram_of_basis(const QuadElem& u, const QuadElem& v);

/// The split basis R of T (computed at construction, self-checked).
inline Mat4 split_basis(const GramForm& t) { return t.split(); }

/// U^T T4 U = T4 and det U = 1, exactly.
bool is_orthogonal(const Mat4& u, const GramForm& t);

/// Identity-component test: the positive-plane block of R^-1 U R has
/// positive determinant. Pre: is_orthogonal (NotOrthogonal otherwise).
bool in_SO0(const Mat4& u, const GramForm& t);

/// Discriminant kernel: integral, in SO0, and U - I in Z^{4x4} T4.
bool in_discriminant_kernel(const Mat4& u, const GramForm& t);

enum class Conjugator { F_N, G_N, H_N, H_n };

/// diag(1,1,1,N), diag(1,N,N,1), diag(N,1,1,1) or diag(n,1,1,1/n).
Mat4 conjugator(Conjugator kind, const Int& n);

}  // namespace hmso
