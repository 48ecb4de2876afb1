#pragma once

// Seeded cross-checks between the recursions, the rewriting oracle and the
// finite-dimensional product space.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ncm::suites {

struct Failure {
    std::string id;
    std::string expected;
    std::string got;
    double error = 0;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    std::vector<Failure> failures;
    std::map<std::string, double> max_error;  // numeric suites only
    bool pass() const { return failures.empty(); }
    nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();

// Symbolic suites compare normalized expressions over `cases` random inputs:
//   free      gm vs expand_free, index tuples of length <= 5
//   right     LM vs expand_right_lib, length <= 4
//   left      LM' vs expand_left_lib, length <= 3
//   strong    strong LM vs expand_strong_right, length <= 3
//   dilation  ss vs expand_dilation, n <= 4
// hilbert draws `cases` random CP-tuples (d = 2, truncation 6) and records
// the worst error of each numeric identity.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t cases);

struct HilbertTolerances {
    double gns = 1e-12;
    double stinespring = 1e-10;
    double corner = 1e-10;
    double theta = 1e-9;
    double vanishing = 1e-9;
    double lm_expectation = 1e-8;
    double ss_expectation = 1e-8;
    double discontinuity = 1e-8;
};

SuiteReport run_hilbert(std::uint64_t seed, std::size_t tuples, int trunc = 6, const HilbertTolerances& tol = {});

}  // namespace ncm::suites
