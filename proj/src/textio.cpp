#include "hmso/textio.hpp"

#include <algorithm>
#include <cctype>

namespace hmso {

namespace {

std::string strip_ws(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

/// Split a "+/-"-separated sum into signed terms (signs kept).
std::vector<std::string> split_terms(const std::string& s) {
    std::vector<std::string> terms;
    std::string cur;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == '+' || c == '-') && depth == 0 && i > 0) {
            terms.push_back(cur);
            cur.clear();
            if (c == '-') cur.push_back('-');
            continue;
        }
        cur.push_back(c);
    }
    if (!cur.empty()) terms.push_back(cur);
    return terms;
}

Rat parse_rat_strict(const std::string& s) {
    if (s.empty()) throw ParseError("empty number");
    std::string t = s;
    bool neg = false;
    if (t[0] == '+' || t[0] == '-') {
        neg = t[0] == '-';
        t = t.substr(1);
    }
    auto slash = t.find('/');
    std::string ns = slash == std::string::npos ? t : t.substr(0, slash);
    std::string ds = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (ns.empty() || ds.empty() ||
        !std::all_of(ns.begin(), ns.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        !std::all_of(ds.begin(), ds.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("bad rational '" + s + "'");
    Rat r{Int(ns), Int(ds)};
    return neg ? -r : r;
}

struct Term {
    Rat coef;
    enum { Rational, Root, Omega } kind;
    long radicand = 0;
};

Term parse_term(const std::string& term, bool allow_omega) {
    std::string t = term;
    Rat sign = 1;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        if (t[0] == '-') sign = -1;
        t = t.substr(1);
    }
    if (t.empty()) throw ParseError("empty term");

    auto root = t.find("sqrt(");
    if (root != std::string::npos) {
        if (t.back() != ')') throw ParseError("unterminated sqrt in '" + term + "'");
        std::string inside = t.substr(root + 5, t.size() - root - 6);
        if (inside.empty() ||
            !std::all_of(inside.begin(), inside.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("bad radicand in '" + term + "'");
        std::string coef = t.substr(0, root);
        if (!coef.empty()) {
            if (coef.back() != '*') throw ParseError("expected '*' before sqrt");
            coef.pop_back();
            if (coef.empty()) throw ParseError("missing coefficient before '*'");
        }
        return {sign * (coef.empty() ? Rat(1) : parse_rat_strict(coef)), Term::Root,
                std::stol(inside)};
    }
    if (allow_omega && t.back() == 'w') {
        std::string coef = t.substr(0, t.size() - 1);
        if (!coef.empty()) {
            if (coef.back() != '*') throw ParseError("expected '*' before w");
            coef.pop_back();
            if (coef.empty()) throw ParseError("missing coefficient before '*'");
        }
        return {sign * (coef.empty() ? Rat(1) : parse_rat_strict(coef)), Term::Omega, 0};
    }
    return {sign * parse_rat_strict(t), Term::Rational, 0};
}

QuadElem parse_quad_impl(const std::string& text, const FieldCtx& ctx, bool allow_omega) {
    std::string s = strip_ws(text);
    if (s.empty()) throw ParseError("empty field element");
    QuadElem out(0);
    for (const std::string& ts : split_terms(s)) {
        Term term = parse_term(ts, allow_omega);
        switch (term.kind) {
            case Term::Rational:
                out += QuadElem(term.coef);
                break;
            case Term::Root:
                if (term.radicand != ctx.m)
                    throw ParseError("radicand " + std::to_string(term.radicand) +
                                     " does not match the field m = " + std::to_string(ctx.m));
                out += QuadElem(Rat(0), term.coef, ctx.m);
                break;
            case Term::Omega:
                out += QuadElem(term.coef) * ctx.omega;
                break;
        }
    }
    return out;
}

}  // namespace

Rat parse_rat(const std::string& text) { return parse_rat_strict(strip_ws(text)); }

QuadElem parse_quad(const std::string& text, const FieldCtx& ctx) {
    return parse_quad_impl(text, ctx, false);
}

QuadElem parse_quad_or_omega(const std::string& text, const FieldCtx& ctx) {
    return parse_quad_impl(text, ctx, true);
}

SigmaElem parse_sigma(const std::string& text, const FieldCtx& ctx) {
    std::string s = strip_ws(text);
    Rat ell = 1;
    auto suffix = s.rfind("/sqrt(");
    if (suffix != std::string::npos) {
        if (s.back() != ')') throw ParseError("unterminated /sqrt(l)");
        ell = parse_rat_strict(s.substr(suffix + 6, s.size() - suffix - 7));
        s = s.substr(0, suffix);
    }
    if (s.size() < 4 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]")
        throw ParseError("matrix must look like [[a,b],[c,d]]");
    std::string inner = s.substr(2, s.size() - 4);
    auto rowsep = inner.find("],[");
    if (rowsep == std::string::npos) throw ParseError("matrix needs two rows");
    std::string rows[2] = {inner.substr(0, rowsep), inner.substr(rowsep + 3)};
    MatK2 L;
    for (int i = 0; i < 2; ++i) {
        int depth = 0;
        size_t split = std::string::npos;
        for (size_t k = 0; k < rows[i].size(); ++k) {
            if (rows[i][k] == '(') ++depth;
            if (rows[i][k] == ')') --depth;
            if (rows[i][k] == ',' && depth == 0) {
                split = k;
                break;
            }
        }
        if (split == std::string::npos) throw ParseError("row needs two entries");
        L(i, 0) = parse_quad(rows[i].substr(0, split), ctx);
        L(i, 1) = parse_quad(rows[i].substr(split + 1), ctx);
    }
    return SigmaElem(L, ell, ctx);
}

std::string sigma_str(const SigmaElem& m) {
    std::string s = "[[" + m.L()(0, 0).str() + "," + m.L()(0, 1).str() + "],[" +
                    m.L()(1, 0).str() + "," + m.L()(1, 1).str() + "]]";
    if (m.ell() != 1) s += "/sqrt(" + m.ell().str() + ")";
    return s;
}

std::string ideal_str(const IdealHNF& i) {
    std::string s = "[" + i.a.str() + ", ";
    if (i.b != 0) s += i.b.str() + "+";
    if (i.c != 1) s += i.c.str() + "*";
    return s + "w]";
}

nlohmann::json rat_json(const Rat& r) { return r.str(); }

nlohmann::json mat4_json(const Mat4& u) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < 4; ++j) row.push_back(rat_json(u(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Mat4 mat4_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 4) throw ParseError("matrix JSON must be 4 rows");
    Mat4 u;
    for (int i = 0; i < 4; ++i) {
        if (!j[i].is_array() || j[i].size() != 4) throw ParseError("matrix JSON row must have 4 entries");
        for (int k = 0; k < 4; ++k) {
            const auto& cell = j[i][k];
            if (cell.is_number_integer()) {
                u(i, k) = Rat(static_cast<long>(cell.get<long long>()));
            } else if (cell.is_string()) {
                u(i, k) = parse_rat(cell.get<std::string>());
            } else {
                throw ParseError("matrix JSON entries must be strings or integers");
            }
        }
    }
    return u;
}

}  // namespace hmso
