#pragma once

#include <cassert>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "hmso/rational.hpp"

namespace hmso {

/**
 * Element x + y*sqrt(m) of the real-quadratic field K = Q(sqrt(m)).
 *
 * The radicand m travels with the value (0 for plain rationals), but a
 * QuadElem holds no reference to a FieldCtx. Mixing elements of
 * different fields is a contract violation caught by asserts in debug
 * builds; rationals (y == 0) are compatible with every field.
 */
class QuadElem {
public:
    QuadElem() = default;
    QuadElem(int v) : x_(v) {}                 // NOLINT: Eigen needs Scalar(int)
    QuadElem(const Int& v) : x_(v) {}          // NOLINT
    QuadElem(const Rat& v) : x_(v) {}          // NOLINT
    QuadElem(Rat x, Rat y, long m) : x_(std::move(x)), y_(std::move(y)), m_(m) {
        if (y_ == 0) m_ = 0;
        assert(m_ >= 0);
    }

    static QuadElem sqrt_m(long m) { return QuadElem(Rat(0), Rat(1), m); }

    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }
    long m() const { return m_; }

    bool is_rational() const { return y_ == 0; }
    bool is_zero() const { return x_ == 0 && y_ == 0; }

    friend long join_m(const QuadElem& a, const QuadElem& b) {
        assert(a.m_ == 0 || b.m_ == 0 || a.m_ == b.m_);
        return a.m_ != 0 ? a.m_ : b.m_;
    }

    friend QuadElem operator+(const QuadElem& a, const QuadElem& b) {
        return {a.x_ + b.x_, a.y_ + b.y_, join_m(a, b)};
    }
    friend QuadElem operator-(const QuadElem& a, const QuadElem& b) {
        return {a.x_ - b.x_, a.y_ - b.y_, join_m(a, b)};
    }
    QuadElem operator-() const { return {-x_, -y_, m_}; }
    friend QuadElem operator*(const QuadElem& a, const QuadElem& b) {
        long m = join_m(a, b);
        return {a.x_ * b.x_ + Rat(m) * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_, m};
    }
    friend QuadElem operator/(const QuadElem& a, const QuadElem& b);

    QuadElem& operator+=(const QuadElem& o) { return *this = *this + o; }
    QuadElem& operator-=(const QuadElem& o) { return *this = *this - o; }
    QuadElem& operator*=(const QuadElem& o) { return *this = *this * o; }
    QuadElem& operator/=(const QuadElem& o) { return *this = *this / o; }

    friend bool operator==(const QuadElem& a, const QuadElem& b) {
        return a.x_ == b.x_ && a.y_ == b.y_ && a.m_ == b.m_;
    }
    friend bool operator!=(const QuadElem& a, const QuadElem& b) { return !(a == b); }

    /// Canonical text form "x+y*sqrt(m)" with reduced fractions.
    std::string str() const;

private:
    Rat x_{}, y_{};
    long m_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const QuadElem& a) {
    return os << a.str();
}

inline QuadElem conj(const QuadElem& a) { return {a.x(), -a.y(), a.m()}; }
inline Rat norm(const QuadElem& a) { return a.x() * a.x() - Rat(a.m()) * a.y() * a.y(); }
inline Rat trace(const QuadElem& a) { return 2 * a.x(); }

inline QuadElem operator/(const QuadElem& a, const QuadElem& b) {
    if (b.is_zero()) throw Error("QuadElem: division by zero");
    QuadElem p = a * conj(b);
    Rat n = norm(b);
    return {p.x() / n, p.y() / n, join_m(a, b)};
}

/// Sign of a under the embedding sqrt(m) > 0, decided by exact rational
/// comparisons (compare x^2 against m*y^2 when the coefficients differ
/// in sign).
int sign_emb1(const QuadElem& a);
inline int sign_emb2(const QuadElem& a) { return sign_emb1(conj(a)); }

inline bool is_totally_positive(const QuadElem& a) {
    return sign_emb1(a) > 0 && sign_emb2(a) > 0;
}

QuadElem pow(QuadElem base, long e);

/// Coordinates (alpha, beta) of a with respect to a Q-basis (u, v),
/// i.e. a = alpha*u + beta*v. Throws DegenerateBasis.
Vec2 coords_wrt(const QuadElem& a, const QuadElem& u, const QuadElem& v);

/**
 * Field context for K = Q(sqrt(m)): ring of integers Z + Z*omega,
 * discriminant, and the fundamental unit (computed once, by the
 * periodic continued-fraction expansion of omega).
 */
struct FieldCtx {
    long m = 0;
    QuadElem omega;      // (m+sqrt(m))/2 if m = 1 mod 4, else m+sqrt(m)
    Int disc;            // m or 4m
    Int omega_trace;
    Int omega_norm;
    QuadElem eps0;       // fundamental unit > 1
    int eps0_norm = 0;   // norm(eps0), +1 or -1

    QuadElem sqrtm() const { return QuadElem::sqrt_m(m); }
    QuadElem sqrt_disc() const {
        return QuadElem(Rat(0), Rat(m % 4 == 1 ? 1 : 2), m);
    }
};

/// Builds the field context. Throws TrivialField (m = 1) and
/// NotSquarefree.
FieldCtx make_field(long m);

inline QuadElem fundamental_unit(const FieldCtx& ctx) { return ctx.eps0; }

/// Coordinates of a with respect to (1, omega) when a is in O_K.
std::optional<std::pair<Int, Int>> ok_coords(const QuadElem& a, const FieldCtx& ctx);

inline bool is_integral(const QuadElem& a, const FieldCtx& ctx) {
    return ok_coords(a, ctx).has_value();
}

inline bool is_unit(const QuadElem& a, const FieldCtx& ctx) {
    Rat n = norm(a);
    return is_integral(a, ctx) && (n == 1 || n == -1);
}

/// Decomposition m = alpha^2 + beta^2 with alpha odd (smallest such
/// alpha). Throws NoRepresentation.
std::pair<long, long> two_squares(long m);

}  // namespace hmso

namespace Eigen {
template <>
struct NumTraits<hmso::QuadElem> : GenericNumTraits<hmso::QuadElem> {
    typedef hmso::QuadElem Real;
    typedef hmso::QuadElem NonInteger;
    typedef hmso::QuadElem Nested;
    typedef hmso::QuadElem Literal;
    static inline Real epsilon() { return hmso::QuadElem(0); }
    static inline Real dummy_precision() { return hmso::QuadElem(0); }
    static inline int digits10() { return 0; }
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 12,
        AddCost = 100,
        MulCost = 100,
    };
};
}  // namespace Eigen

namespace hmso {
using MatK2 = Eigen::Matrix<QuadElem, 2, 2>;
using MatK4 = Eigen::Matrix<QuadElem, 4, 4>;
using VecK2 = Eigen::Matrix<QuadElem, 2, 1>;
}  // namespace hmso
