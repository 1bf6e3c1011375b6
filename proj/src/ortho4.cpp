#include "hmso/ortho4.hpp"

#include <array>

namespace hmso {

namespace {

/// Symmetric Lagrange reduction over Q: returns R with R^T A R diagonal.
Mat4 diagonalize(const Mat4& a0) {
    Mat4 a = a0;
    Mat4 r = Mat4::Identity();
    for (int k = 0; k < 4; ++k) {
        if (a(k, k) == 0) {
            int j = -1;
            for (int i = k + 1; i < 4; ++i)
                if (a(i, i) != 0) { j = i; break; }
            if (j >= 0) {
                a.col(k).swap(a.col(j));
                a.row(k).swap(a.row(j));
                r.col(k).swap(r.col(j));
            } else {
                for (int i = k + 1; i < 4; ++i)
                    if (a(k, i) != 0) { j = i; break; }
                if (j < 0) throw WrongSignature("degenerate block");
                // x +- y pivot substitution: col_k += col_j
                a.col(k) += a.col(j);
                a.row(k) += a.row(j);
                r.col(k) += r.col(j);
            }
        }
        for (int j = k + 1; j < 4; ++j) {
            if (a(k, j) == 0) continue;
            Rat f = a(k, j) / a(k, k);
            a.col(j) -= f * a.col(k);
            a.row(j) -= f * a.row(k);
            r.col(j) -= f * r.col(k);
        }
    }
    return r;
}

}  // namespace

GramForm::GramForm(Mat2 core, Int corner) : core_(std::move(core)), corner_(std::move(corner)) {
    if (core_(0, 1) != core_(1, 0)) throw Error("GramForm: core not symmetric");
    if (corner_ < 1) throw Error("GramForm: corner scale must be positive");
    if (core_.determinant() >= 0) throw WrongSignature("core determinant must be negative");

    t4_.setZero();
    t4_(0, 3) = t4_(3, 0) = Rat(corner_);
    t4_.block<2, 2>(1, 1) = core_;
    t4i_ = t4_.inverse();

    Mat4 r = diagonalize(t4_);
    Mat4 d = r.transpose() * t4_ * r;
    std::array<int, 4> order{};
    int np = 0, nn = 2;
    for (int i = 0; i < 4; ++i) {
        if (d(i, i) == 0) throw WrongSignature("split produced a zero");
        if (d(i, i) > 0) {
            if (np > 1) throw WrongSignature("not of signature (2,2)");
            order[np++] = i;
        } else {
            if (nn > 3) throw WrongSignature("not of signature (2,2)");
            order[nn++] = i;
        }
    }
    if (np != 2) throw WrongSignature("not of signature (2,2)");

    split_.setZero();
    for (int i = 0; i < 4; ++i) split_.col(i) = r.col(order[i]);
    spliti_ = split_.inverse();

    // self-check: the reordered congruence is block diag(D+, D-)
    Mat4 check = split_.transpose() * t4_ * split_;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) {
                assert((i < 2) == (check(i, j) > 0));
            } else {
                assert(check(i, j) == 0);
            }
        }
}

bool GramForm::is_even_integral() const {
    return mat_is_integral(core_) && num(core_(0, 0)) % 2 == 0 &&
           num(core_(1, 1)) % 2 == 0;
}

GramForm gram_of_basis(const QuadElem& u, const QuadElem& v) {
    if (u.x() * v.y() - v.x() * u.y() == 0) throw DegenerateBasis();
    Rat s11 = 2 * norm(u);
    Rat s22 = 2 * norm(v);
    Rat s12 = trace(u * conj(v));
    Mat2 s;
    s << s11, s12, s12, s22;
    return GramForm(s);
}

bool is_orthogonal(const Mat4& u, const GramForm& t) {
    return u.determinant() == 1 && u.transpose() * t.mat4() * u == t.mat4();
}

bool in_SO0(const Mat4& u, const GramForm& t) {
    if (!is_orthogonal(u, t)) throw NotOrthogonal();
    Mat4 v = t.split_inv() * u * t.split();
    return v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0) > 0;
}

bool in_discriminant_kernel(const Mat4& u, const GramForm& t) {
    if (!mat_is_integral(u) || !is_orthogonal(u, t) || !in_SO0(u, t)) return false;
    Mat4 x = (u - Mat4::Identity()) * t.mat4_inv();
    return mat_is_integral(x);
}

Mat4 conjugator(Conjugator kind, const Int& n) {
    if (n < 1) throw Error("conjugator: n must be positive");
    Mat4 d = Mat4::Identity();
    switch (kind) {
        case Conjugator::F_N: d(3, 3) = Rat(n); break;
        case Conjugator::G_N: d(1, 1) = d(2, 2) = Rat(n); break;
        case Conjugator::H_N: d(0, 0) = Rat(n); break;
        case Conjugator::H_n:
            d(0, 0) = Rat(n);
            d(3, 3) = Rat(1) / Rat(n);
            break;
    }
    return d;
}

}  // namespace hmso
