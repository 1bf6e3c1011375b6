#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmso/action.hpp"

namespace hmso::verify {

struct SuiteResult {
    std::string name;
    long pass = 0;
    long fail = 0;
    nlohmann::json counterexamples = nlohmann::json::array();
    bool ok() const { return fail == 0; }
};

struct Options {
    std::vector<long> m_list{2, 3, 5, 6, 7, 10, 13, 15, 17, 21, 33};
    std::uint64_t seed = 1;
    long trials = 100;
    bool inject_sign_bug = false;  // negative-control fixture for the suites
    int workers = 2;               // per-field shards, merged by index
};

/// Brute-force Pell search for the smallest unit > 1; independent of
/// the continued-fraction path it checks.
QuadElem pell_oracle_unit(long m, long ybound = 200000);

/// A rich deterministic sample of Sigma_K (Gamma words, Atkin-Lehner
/// factors, scaled diagonals, rational elementaries).
SigmaElem sample_sigma(std::uint64_t seed, const FieldCtx& ctx);

/// Gamma*_K sample: coset representative times a Gamma_K word.
SigmaElem sample_gamma_star(std::uint64_t seed, const FieldCtx& ctx);

std::vector<SuiteResult> run_suites(const Options& opts);

nlohmann::json report_json(const std::vector<SuiteResult>& results, const Options& opts,
                           bool reproducible);

}  // namespace hmso::verify
