#pragma once

// Brute-force center/expand/simplify rewriting. Each pending word is rewritten
// one letter at a time until it vanishes or reduces to a scalar (free case), a
// B-word (right cases) or an A-word (left case). Shares only the IR with the
// moment recursions.

#include "ncm/words.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace ncm::oracle {

struct RewriteStep {
    std::string rule;
    Expr before;
    Expr after;
};

struct RewriteTrace {
    std::vector<RewriteStep> steps;
    Expr result;
    void dump_jsonl(std::ostream& os) const;
};

struct Options {
    // 0: first pending word, first applicable letter. Otherwise both are drawn
    // from an RNG seeded with this value.
    std::uint64_t schedule_seed = 0;
    std::uint64_t max_steps = 50'000'000;
    RewriteTrace* trace = nullptr;  // records top-level steps of the plain engines
};

class NonTermination : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Expr expand_free(const std::vector<unsigned>& iota, const std::vector<Expr>& a, const Options& opt = {});
Expr expand_right_lib(const RWord& x, const Options& opt = {});
Expr expand_left_lib(const LWord& y, const Options& opt = {});
Expr expand_strong_right(const RWord& x, const Options& opt = {});
Expr expand_dilation(const TimedWord& tw, const Options& opt = {});
// Branches on `structure`, writes `values` into the phi subscripts.
Expr expand_dilation_structured(const std::vector<Rational>& structure, const std::vector<Rational>& values,
                                const std::vector<Expr>& letters, const Options& opt = {});

// Seeded random inputs: lengths uniform in [0, max_len], generator ids 1..4,
// each entry a single generator with probability 3/4, else a product of two.
RWord random_rword(std::mt19937_64& rng, std::size_t max_len);
LWord random_lword(std::mt19937_64& rng, std::size_t max_len);
// n uniform in [1, max_len]; times drawn from {0} and at most two positive
// values chosen from {1/2, 1, 2, 3}.
TimedWord random_timed_word(std::mt19937_64& rng, std::size_t max_len);

}  // namespace ncm::oracle
