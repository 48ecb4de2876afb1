#pragma once

// Regression fixtures: JSON rows naming a function, its input and the expected
// canonical output.

#include "ncm/liberation.hpp"
#include "ncm/words.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncm::fixtures {

class FixtureIOError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FixtureFormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// fn is one of LC RC UC LC' RC' UC' (collapses, need iota), LM RM UM LM' RM'
// UM' SM SRM SUM (moments on `input`), Ss (times, optional letters) or SsGap
// (times, structure, optional letters): ss(times) - ss_structured(structure, times).
struct FixtureRow {
    std::string id;
    std::string fn;
    std::string input;
    std::optional<IndexSet> iota;
    std::string times;
    std::string structure;
    std::string letters;
    std::string paper;
    std::string paper_format = "dsl";  // or "latex" when the printed row does not parse
    std::string expect;
    bool paper_typo = false;
    // Typo rows without an oracle: a DSL expression built from consistent
    // rows or the definition, whose canonical form must equal `expect`.
    std::string witness;
    std::string note;
};

FixtureRow row_from_json(const nlohmann::json& j);
nlohmann::json row_to_json(const FixtureRow& row);
std::vector<FixtureRow> load(const std::string& path);
std::vector<FixtureRow> parse_fixtures(const std::string& text);

bool is_collapse(const std::string& fn);

// Canonical text of the implementation's output for the row.
std::string compute(const FixtureRow& row);
// Canonical text from the rewriting oracle; empty when the function has none
// (collapses, and RM/UM variants).
std::string compute_oracle(const FixtureRow& row);
// Canonical text of the row's `paper` field in the shape of the output, or
// nullopt when it is not in DSL form.
std::optional<std::string> canonical_paper(const FixtureRow& row);

struct RowResult {
    std::string id;
    bool pass = false;
    bool paper_typo = false;
    bool paper_matches = false;
    std::string expected;
    std::string got;
    std::string message;
};

// A row passes when the implementation reproduces `expect` exactly. Rows not
// marked paper_typo must also have a paper string whose canonical form is
// `expect`; typo rows must have `expect` equal to the oracle output or, when
// there is none, to the witness.
RowResult verify(const FixtureRow& row);

struct Report {
    std::vector<RowResult> rows;  // sorted by id
    std::size_t failures = 0;
    std::size_t typo_rows = 0;
};

Report verify_all(const std::vector<FixtureRow>& rows);

}  // namespace ncm::fixtures
