// Command-line front end: field analysis reports, the explicit maps
// between the Hilbert modular group and SO(2,2), and the randomized
// verification suites. All JSON output is exact (rationals as "p/q"
// strings, never floats).

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hmso/action.hpp"
#include "hmso/textio.hpp"
#include "hmso/verify.hpp"

namespace {

using namespace hmso;
using nlohmann::json;

json normalizer_json(const NormalizerClass& nc) {
    json j;
    j["kind"] = nc.extended ? "extended" : "equal";
    if (nc.extended) {
        const NormalizerElem& m0 = *nc.m0;
        json mat;
        mat["matrix"] = "[[" + m0.L(0, 0).str() + "," + m0.L(0, 1).str() + "],[" +
                        m0.L(1, 0).str() + "," + m0.L(1, 1).str() + "]]";
        mat["det"] = m0.delta.str();
        j["m0"] = mat;
    }
    return j;
}

IdealHNF parse_ideal_arg(const std::string& text, const FieldCtx& f) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw ParseError("--ideal expects \"N,t\"");
    Int N(text.substr(0, comma));
    Int t(text.substr(comma + 1));
    if (N < 1) throw ParseError("--ideal: N must be positive");
    IdealHNF cand{N, mod_floor(t, N), 1, f.m};
    QuadElem gen2 = QuadElem(Rat(cand.b)) + f.omega;
    if (ideal_from_generators({QuadElem(Rat(N)), gen2}, f) != cand)
        throw ParseError("--ideal: {N, t+w} is not an O_K-ideal");
    return cand;
}

json atkin_lehner_report(const FieldCtx& f) {
    json list = json::array();
    for (const Int& ell : squarefree_divisors(f.disc)) {
        SigmaElem v = atkin_lehner(ell, f);
        if (!in_gamma_star(v, f)) throw Error("V_l failed its own membership check");
        json e;
        e["ell"] = static_cast<long>(ell);
        e["matrix"] = sigma_str(v);
        list.push_back(e);
    }
    return list;
}

json coset_classes_json(const FieldCtx& f) {
    json classes = json::array();
    for (const auto& cls : coset_classes(f)) {
        json c = json::array();
        for (const Int& ell : cls) c.push_back(static_cast<long>(ell));
        classes.push_back(c);
    }
    return classes;
}

int cmd_analyze(long m, const std::string& ideal_arg) {
    FieldCtx f = make_field(m);
    json rep;
    rep["schema"] = 1;
    rep["m"] = m;
    rep["d_K"] = static_cast<long>(f.disc);
    rep["omega"] = f.omega.str();
    rep["fundamental_unit"] = {{"value", f.eps0.str()}, {"norm", f.eps0_norm}};

    size_t nu = khat_primes(f).size();
    rep["nu"] = nu;
    rep["index_gamma_star"] = 1L << (nu - 1);
    if (coset_count(f) != (size_t(1) << (nu - 1)))
        throw Error("coset count disagrees with the index formula");
    rep["atkin_lehner"] = atkin_lehner_report(f);
    rep["coset_classes"] = coset_classes_json(f);

    NormalizerClass nc = normalizer_class(f);
    if (nc.extended && (!in_normalizer(*nc.m0, f) || in_gamma_star(*nc.m0, f)))
        throw Error("M0 failed its membership checks");
    rep["normalizer_class"] = normalizer_json(nc);

    json primes = json::array();
    for (const Int& p : khat_primes(f)) primes.push_back(static_cast<long>(p));
    rep["khat_primes"] = primes;

    if (!ideal_arg.empty()) {
        IdealHNF ideal = parse_ideal_arg(ideal_arg, f);
        GammaICtx ictx = make_gamma_ictx(ideal, f);
        json ij;
        ij["basis"] = ideal_str(ideal);
        ij["N"] = static_cast<long>(ictx.N);
        ij["t"] = static_cast<long>(ictx.t);
        json list = json::array();
        std::vector<SigmaElem> reps;
        json classes = json::array();
        std::vector<size_t> class_of;
        for (const Int& ell : squarefree_divisors(f.disc)) {
            SigmaElem v = atkin_lehner_ideal(ell, ictx, f);
            if (!in_gamma_star_ideal(v, ictx, f))
                throw Error("ideal V_l failed its own membership check");
            json e;
            e["ell"] = static_cast<long>(ell);
            e["matrix"] = sigma_str(v);
            list.push_back(e);
            bool placed = false;
            for (size_t i = 0; i < reps.size() && !placed; ++i) {
                if (in_gamma_I(mul(inv(reps[i], f), v, f), ictx, f)) {
                    classes[i].push_back(static_cast<long>(ell));
                    placed = true;
                }
            }
            if (!placed) {
                reps.push_back(v);
                classes.push_back(json::array({static_cast<long>(ell)}));
            }
        }
        ij["atkin_lehner"] = list;
        ij["coset_classes"] = classes;
        if (classes.size() != (size_t(1) << (nu - 1)))
            throw Error("ideal coset count disagrees with the index formula");
        rep["ideal"] = ij;
    }

    std::cout << rep.dump(2) << "\n";
    return 0;
}

BasisCtx basis_from_arg(const std::string& text, const FieldCtx& f) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw ParseError("basis expects \"u,v\"");
    QuadElem u = parse_quad_or_omega(text.substr(0, comma), f);
    QuadElem v = parse_quad_or_omega(text.substr(comma + 1), f);
    auto cu = ok_coords(u, f), cv = ok_coords(v, f);
    if (!cu || !cv) throw ParseError("basis entries must lie in O_K");
    IdealHNF span = zlattice_hnf({*cu, *cv}, f.m);
    if (span == ok_ideal(f)) return ok_basis_ctx(u, v, f);
    if (!is_primitive(span) || ideal_from_generators({u, v}, f) != span)
        throw ParseError("basis spans neither O_K nor a primitive ideal");
    return ideal_basis_ctx(u, v, span, f);
}

int cmd_map(long m, const std::string& basis_arg, const std::string& matrix_arg, bool inverse) {
    FieldCtx f = make_field(m);
    BasisCtx b = basis_from_arg(basis_arg, f);
    json out;
    out["schema"] = 1;
    out["m"] = m;
    out["basis"] = {b.u.str(), b.v.str()};
    if (b.is_ideal) out["ideal"] = ideal_str(b.ideal);

    if (inverse) {
        Mat4 u = mat4_from_json(json::parse(matrix_arg));
        try {
            SigmaElem pre = phi_inverse(u, b);
            out["preimage"] = sigma_str(pre);
            out["ell"] = pre.ell().str();
        } catch (const NotInImage& e) {
            out["not_in_image"] = true;
            out["reason"] = e.what();
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    SigmaElem mat = parse_sigma(matrix_arg, f);
    Mat4 u = phi_fast(mat, b);
    out["matrix"] = mat4_json(u);
    out["orthogonal"] = is_orthogonal(u, b.S);
    out["in_SO0"] = is_orthogonal(u, b.S) && in_SO0(u, b.S);
    out["in_DK"] = in_discriminant_kernel(u, b.S);
    if (b.is_ideal) {
        Mat4 p = psi(mat, b);
        out["psi"] = mat4_json(p);
        out["psi_in_DK"] = in_discriminant_kernel(p, *b.T);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& mlist, std::uint64_t seed, long trials, bool reproducible,
               bool inject_bug, int workers) {
    verify::Options opts;
    if (!mlist.empty()) {
        opts.m_list.clear();
        std::string cur;
        for (char c : mlist + ",") {
            if (c == ',') {
                if (!cur.empty()) opts.m_list.push_back(std::stol(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (opts.m_list.empty()) throw ParseError("--m-list is empty");
    }
    opts.seed = seed;
    opts.trials = trials;
    opts.inject_sign_bug = inject_bug;
    opts.workers = workers;
    auto results = verify::run_suites(opts);
    json j = verify::report_json(results, opts, reproducible);
    std::cout << j.dump(2) << "\n";
    return j["ok"].get<bool>() ? 0 : 1;
}

int cmd_cosets(long m, const std::string& ideal_arg) {
    FieldCtx f = make_field(m);
    json out;
    out["schema"] = 1;
    out["m"] = m;
    out["d_K"] = static_cast<long>(f.disc);
    size_t nu = khat_primes(f).size();
    out["nu"] = nu;
    if (ideal_arg.empty()) {
        out["classes"] = coset_classes_json(f);
        out["count"] = coset_count(f);
    } else {
        IdealHNF ideal = parse_ideal_arg(ideal_arg, f);
        GammaICtx ictx = make_gamma_ictx(ideal, f);
        out["ideal"] = ideal_str(ideal);
        json classes = json::array();
        std::vector<SigmaElem> reps;
        for (const Int& ell : squarefree_divisors(f.disc)) {
            SigmaElem v = atkin_lehner_ideal(ell, ictx, f);
            bool placed = false;
            for (size_t i = 0; i < reps.size() && !placed; ++i) {
                if (in_gamma_I(mul(inv(reps[i], f), v, f), ictx, f)) {
                    classes[i].push_back(static_cast<long>(ell));
                    placed = true;
                }
            }
            if (!placed) {
                reps.push_back(v);
                classes.push_back(json::array({static_cast<long>(ell)}));
            }
        }
        out["classes"] = classes;
        out["count"] = classes.size();
    }
    if (out["count"].get<size_t>() != (size_t(1) << (nu - 1)))
        throw Error("coset count disagrees with the index formula");
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact isomorphisms between Hilbert modular groups over Q(sqrt(m)) "
                 "and arithmetic subgroups of SO(2,2)"};
    app.require_subcommand(1);

    long m = 0;
    std::string ideal_arg, basis_arg, matrix_arg, mlist;
    bool inverse = false, reproducible = false, inject_bug = false;
    std::uint64_t seed = 1;
    long trials = 100;
    int workers = 2;

    auto* analyze = app.add_subcommand("analyze", "Per-field report: units, Atkin-Lehner "
                                                  "cosets, normalizer class");
    analyze->add_option("m", m, "squarefree m > 1")->required();
    analyze->add_option("--ideal", ideal_arg, "primitive ideal as \"N,t\" (basis {N, t+w})");

    auto* map = app.add_subcommand("map", "Map a matrix through the isomorphism (or back "
                                          "with --inverse)");
    map->add_option("m", m, "squarefree m > 1")->required();
    map->add_option("basis", basis_arg, "basis of O_K or of a primitive ideal, e.g. \"1,w\"")
        ->required();
    map->add_option("matrix", matrix_arg,
                    "2x2 matrix \"[[a,b],[c,d]]/sqrt(l)\", or a 4x4 JSON array with --inverse")
        ->required();
    map->add_flag("--inverse", inverse, "recover the 2x2 preimage of a 4x4 matrix");

    auto* verify = app.add_subcommand("verify", "Run the randomized verification suites");
    verify->add_option("--m-list", mlist, "comma-separated m values (default: the 11-field set)");
    verify->add_option("--seed", seed, "PRNG seed");
    verify->add_option("--trials", trials, "samples per suite and field");
    verify->add_flag("--reproducible", reproducible, "suppress the timestamp field");
    verify->add_option("--workers", workers, "parallel field shards");
    verify->add_flag("--inject-sign-bug", inject_bug, "negative-control fixture: corrupt the map")
        ->group("");  // hidden

    auto* cosets = app.add_subcommand("cosets", "Atkin-Lehner coset classes");
    cosets->add_option("m", m, "squarefree m > 1")->required();
    cosets->add_option("--ideal", ideal_arg, "primitive ideal as \"N,t\"");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(m, ideal_arg);
        if (map->parsed()) return cmd_map(m, basis_arg, matrix_arg, inverse);
        if (verify->parsed())
            return cmd_verify(mlist, seed, trials, reproducible, inject_bug, workers);
        if (cosets->parsed()) return cmd_cosets(m, ideal_arg);
    } catch (const NotSquarefree& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const TrivialField& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BadDivisor& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotPrimitive& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateBasis& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotIntegral& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ZeroIdeal& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
