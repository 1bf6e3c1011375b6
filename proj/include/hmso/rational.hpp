#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "hmso/errors.hpp"

namespace hmso {

// Exact scalars. Everything in this library is arbitrary-precision and
// exact; floating point appears only in test oracles.
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

using Mat2 = Eigen::Matrix<Rat, 2, 2>;
using Mat4 = Eigen::Matrix<Rat, 4, 4>;
using Vec2 = Eigen::Matrix<Rat, 2, 1>;
using Vec4 = Eigen::Matrix<Rat, 4, 1>;

inline Int num(const Rat& r) { return numerator(r); }
inline Int den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

/// Floor division with sign convention floor(a/b), b != 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) { return a - b * floor_div(a, b); }

/// Floor of a rational.
inline Int rat_floor(const Rat& r) { return floor_div(num(r), den(r)); }

/// Integer square root (floor). Requires n >= 0.
inline Int isqrt(const Int& n) { return boost::multiprecision::sqrt(n); }

inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int s = isqrt(n);
    return s * s == n;
}

/// Exact square root of a perfect square, std::nullopt otherwise.
inline std::optional<Int> sqrt_exact(const Int& n) {
    if (n < 0) return std::nullopt;
    Int s = isqrt(n);
    if (s * s == n) return s;
    return std::nullopt;
}

/// Exact square root of a rational square (nonnegative root).
inline std::optional<Rat> rat_sqrt_exact(const Rat& r) {
    if (r < 0) return std::nullopt;
    auto n = sqrt_exact(num(r));
    auto d = sqrt_exact(den(r));
    if (!n || !d) return std::nullopt;
    return Rat(*n) / Rat(*d);
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g = gcd(a,b) >= 0.
inline std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;  // truncated is fine for the invariant
        Int r = a - q * b;
        a = b; b = r;
        Int x2 = x0 - q * x1, y2 = y0 - q * y1;
        x0 = x1; y0 = y1; x1 = x2; y1 = y2;
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    return {a, x0, y0};
}

/// Distinct prime divisors of |n| in increasing order (trial division;
/// inputs in this library are small field discriminants).
inline std::vector<Int> prime_factors(Int n) {
    std::vector<Int> ps;
    if (n < 0) n = -n;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline bool is_squarefree(Int n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        while (n % p == 0) n /= p;
    }
    return true;
}

/// Largest squarefree q with n = q * (square), for n > 0.
inline Int squarefree_kernel(Int n) {
    Int q = 1;
    for (Int p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e & 1) q *= p;
    }
    return q * n;  // leftover n is 1 or a prime
}

/// Squarefree divisors of n > 0 in increasing order.
inline std::vector<Int> squarefree_divisors(const Int& n) {
    std::vector<Int> divs{1};
    for (const Int& p : prime_factors(n)) {
        size_t sz = divs.size();
        for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * p);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

template <typename Derived>
bool mat_is_integral(const Eigen::MatrixBase<Derived>& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!is_integer(a(i, j))) return false;
    return true;
}

}  // namespace hmso
