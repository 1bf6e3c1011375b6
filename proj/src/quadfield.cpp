#include "hmso/quadfield.hpp"

#include <map>
#include <sstream>

namespace hmso {

std::string QuadElem::str() const {
    if (y_ == 0) return x_.str();
    std::ostringstream os;
    std::string root = "sqrt(" + std::to_string(m_) + ")";
    if (x_ != 0) {
        os << x_.str();
        if (y_ > 0) os << "+";
    }
    if (y_ == 1) {
        os << root;
    } else if (y_ == -1) {
        os << "-" << root;
    } else {
        os << y_.str() << "*" << root;
    }
    return os.str();
}

namespace {
int rat_sign(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }
}  // namespace

int sign_emb1(const QuadElem& a) {
    int sx = rat_sign(a.x()), sy = rat_sign(a.y());
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    // x and y of opposite sign: the sign is decided by |x| vs |y|sqrt(m),
    // i.e. by x^2 vs m*y^2.
    Rat d = a.x() * a.x() - Rat(a.m()) * a.y() * a.y();
    int sd = rat_sign(d);
    if (sd == 0) return 0;  // unreachable for squarefree m > 1
    return sx > 0 ? sd : -sd;
}

QuadElem pow(QuadElem base, long e) {
    if (e < 0) return pow(QuadElem(1) / base, -e);
    QuadElem r(1);
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Vec2 coords_wrt(const QuadElem& a, const QuadElem& u, const QuadElem& v) {
    join_m(a, u);
    join_m(a, v);
    Rat det = u.x() * v.y() - v.x() * u.y();
    if (det == 0) throw DegenerateBasis();
    Vec2 c;
    c(0) = (a.x() * v.y() - v.x() * a.y()) / det;
    c(1) = (u.x() * a.y() - a.x() * u.y()) / det;
    return c;
}

std::optional<std::pair<Int, Int>> ok_coords(const QuadElem& a, const FieldCtx& ctx) {
    Vec2 c = coords_wrt(a, QuadElem(1), ctx.omega);
    if (!is_integer(c(0)) || !is_integer(c(1))) return std::nullopt;
    return std::make_pair(num(c(0)), num(c(1)));
}

namespace {

/// Fundamental unit by the continued-fraction expansion of omega,
/// written as (P + sqrt(D))/Q with D = d_K. The recurrence keeps the
/// invariant Q | D - P^2; the period is detected by state repetition
/// and one pass over the cycle of the (purely periodic) reduced tail
/// yields the unit.
QuadElem cf_fundamental_unit(long m, const Int& D) {
    const Int sq = isqrt(D);
    // floor((P + sqrt(D))/Q), exact: sqrt(D) lies strictly in (sq, sq+1)
    auto surd_floor = [&](const Int& P, const Int& Q) {
        return Q > 0 ? floor_div(P + sq, Q) : floor_div(P + sq + 1, Q);
    };

    Int P = (m % 4 == 1) ? Int(m) : Int(2 * m);
    Int Q = 2;

    std::map<std::pair<Int, Int>, size_t> seen;
    std::vector<Int> digits;
    std::vector<std::pair<Int, Int>> states;
    size_t cycle_start = 0;
    while (true) {
        auto state = std::make_pair(P, Q);
        auto it = seen.find(state);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen.emplace(state, states.size());
        states.push_back(state);
        Int a = surd_floor(P, Q);
        digits.push_back(a);
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }

    // Denominator convergents q_i over one period of the reduced surd.
    Int q_m2 = 1, q_m1 = 0;
    for (size_t i = cycle_start; i < digits.size(); ++i) {
        Int q = digits[i] * q_m1 + q_m2;
        q_m2 = q_m1;
        q_m1 = q;
    }

    // alpha = (P_j + sqrt(D))/Q_j with sqrt(D) = c*sqrt(m)
    const auto& [Pj, Qj] = states[cycle_start];
    Rat c(m % 4 == 1 ? 1 : 2);
    QuadElem alpha(Rat(Pj) / Rat(Qj), c / Rat(Qj), m);
    return QuadElem(Rat(q_m1)) * alpha + QuadElem(Rat(q_m2));
}

}  // namespace

FieldCtx make_field(long m) {
    if (m == 1) throw TrivialField("m = 1 gives the rational field");
    if (m < 1) throw Error("make_field: m must be a positive integer > 1");
    if (!is_squarefree(Int(m))) throw NotSquarefree("m = " + std::to_string(m));

    FieldCtx ctx;
    ctx.m = m;
    if (m % 4 == 1) {
        ctx.omega = QuadElem(Rat(m) / 2, Rat(1) / 2, m);
        ctx.disc = m;
    } else {
        ctx.omega = QuadElem(Rat(m), Rat(1), m);
        ctx.disc = Int(4) * m;
    }
    ctx.omega_trace = num(trace(ctx.omega));
    ctx.omega_norm = num(norm(ctx.omega));

    ctx.eps0 = cf_fundamental_unit(m, ctx.disc);
    Rat n = norm(ctx.eps0);
    if (n != 1 && n != -1)
        throw Error("make_field: continued fraction returned a non-unit");
    ctx.eps0_norm = (n == 1) ? 1 : -1;
    assert(sign_emb1(ctx.eps0 - QuadElem(1)) > 0);
    return ctx;
}

std::pair<long, long> two_squares(long m) {
    if (m <= 1 || !is_squarefree(Int(m))) throw Error("two_squares: need squarefree m > 1");
    for (long a = 1; a * a <= m; a += 2) {
        Int rem = Int(m) - Int(a) * a;
        if (rem <= 0) break;
        if (auto b = sqrt_exact(rem)) {
            return {a, static_cast<long>(*b)};
        }
    }
    throw NoRepresentation("m = " + std::to_string(m) +
                           " is not a sum alpha^2 + beta^2 with alpha odd");
}

}  // namespace hmso
