#include <doctest.h>

#include "hmso/verify.hpp"

using namespace hmso;

TEST_CASE("Pell oracle") {
    CHECK(verify::pell_oracle_unit(2) == QuadElem(Rat(1), Rat(1), 2));
    CHECK(verify::pell_oracle_unit(3) == QuadElem(Rat(2), Rat(1), 3));
    CHECK(verify::pell_oracle_unit(5) == QuadElem(Rat(1, 2), Rat(1, 2), 5));
    CHECK(verify::pell_oracle_unit(6) == QuadElem(Rat(5), Rat(2), 6));
    CHECK(verify::pell_oracle_unit(13) == QuadElem(Rat(3, 2), Rat(1, 2), 13));
}

TEST_CASE("suite runner on a small configuration") {
    verify::Options opts;
    opts.m_list = {5};
    opts.trials = 6;
    opts.seed = 11;
    opts.workers = 1;
    auto results = verify::run_suites(opts);
    for (const auto& r : results) {
        CAPTURE(r.name);
        CHECK(r.fail == 0);
        CHECK(r.pass > 0);
    }
    nlohmann::json j = verify::report_json(results, opts, true);
    CHECK(j["ok"] == true);
    CHECK(!j.contains("generated_at"));
    CHECK(verify::report_json(results, opts, false).contains("generated_at"));
}

TEST_CASE("injected sign bug is caught") {
    verify::Options opts;
    opts.m_list = {2, 5};
    opts.trials = 10;
    opts.seed = 3;
    opts.workers = 1;
    opts.inject_sign_bug = true;
    auto results = verify::run_suites(opts);
    bool oracle_failed = false, hom_failed = false;
    for (const auto& r : results) {
        if (r.name == "differential_oracle") oracle_failed = !r.ok();
        if (r.name == "homomorphism") hom_failed = !r.ok();
    }
    CHECK(oracle_failed);
    CHECK(hom_failed);
}

TEST_CASE("samplers are deterministic") {
    FieldCtx f = make_field(6);
    CHECK(verify::sample_sigma(99, f) == verify::sample_sigma(99, f));
    CHECK(verify::sample_gamma_star(99, f) == verify::sample_gamma_star(99, f));
    CHECK(in_gamma_star(verify::sample_gamma_star(7, f), f));
}
