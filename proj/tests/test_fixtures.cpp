#include "doctest.h"

#include "ncm/fixtures.hpp"
#include "ncm/suites.hpp"
#include "ncm/text.hpp"

#include <algorithm>

using namespace ncm;
using namespace ncm::fixtures;

namespace {

const std::string kAppendix = std::string(NCM_FIXTURE_DIR) + "/appendix.json";

FixtureRow find(const std::vector<FixtureRow>& rows, const std::string& id) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const FixtureRow& r) { return r.id == id; });
    REQUIRE(it != rows.end());
    return *it;
}

}  // namespace

TEST_CASE("shipped fixture rows all verify") {
    auto rows = load(kAppendix);
    CHECK(rows.size() == 161);
    auto rep = verify_all(rows);
    for (const auto& r : rep.rows) {
        INFO(r.id << ": " << r.message << " expected " << r.expected << " got " << r.got);
        CHECK(r.pass);
    }
    CHECK(rep.failures == 0);
    CHECK(rep.typo_rows == 20);
    CHECK(std::is_sorted(rep.rows.begin(), rep.rows.end(),
                         [](const RowResult& a, const RowResult& b) { return a.id < b.id; }));
}

TEST_CASE("corrupted expectation fails") {
    auto rows = load(kAppendix);
    auto row = find(rows, "LM(x1)");
    CHECK(verify(row).pass);
    row.expect = canonical_text(parse(row.expect) + parse("w(a1)"));
    auto r = verify(row);
    CHECK_FALSE(r.pass);
    CHECK(r.message == "output differs from expectation");
}

TEST_CASE("printed transcription must agree unless flagged") {
    auto rows = load(kAppendix);
    auto row = find(rows, "LM(x1)");
    row.paper = "v(b0 b1) r(a1)";
    CHECK_FALSE(verify(row).pass);
    row.paper_typo = true;
    auto r = verify(row);
    CHECK(r.pass);
    CHECK(r.paper_typo);
    CHECK_FALSE(r.paper_matches);
}

TEST_CASE("typo rows are annotated and checked against oracle or witness") {
    auto rows = load(kAppendix);
    auto lc = find(rows, "LC(x2;{})");
    auto r = verify(lc);
    CHECK(r.pass);
    CHECK(r.paper_typo);
    CHECK_FALSE(r.paper_matches);
    lc.witness = lc.paper;
    CHECK_FALSE(verify(lc).pass);

    for (const auto& row : rows) {
        if (!row.paper_typo) continue;
        INFO(row.id);
        CHECK((!compute_oracle(row).empty() || !row.witness.empty()));
        CHECK_FALSE(row.note.empty());
    }
}

TEST_CASE("fixture format errors") {
    CHECK_THROWS_AS(load(std::string(NCM_FIXTURE_DIR) + "/missing.json"), FixtureIOError);
    CHECK_THROWS_AS(parse_fixtures("{"), FixtureFormatError);
    CHECK_THROWS_AS(parse_fixtures("{}"), FixtureFormatError);
    CHECK_THROWS_AS(parse_fixtures(R"j([{"id": "x", "fn": "QQ", "input": "b0", "expect": "b0"}])j"), FixtureFormatError);
    CHECK_THROWS_AS(parse_fixtures(R"j([{"id": "x", "fn": "LC", "input": "b0", "expect": "(b0)"}])j"), FixtureFormatError);
    CHECK_THROWS_AS(parse_fixtures(R"j([{"id": "x", "fn": "Ss", "expect": "w(a1)"}])j"), FixtureFormatError);
    CHECK_THROWS_AS(parse_fixtures(R"j([{"id": "x", "fn": "LM", "input": "b0", "expect": 3}])j"), FixtureFormatError);

    auto rows = parse_fixtures(R"j([{"id": "x", "fn": "LM", "input": "b0 q(a1) b1", "expect": "b0", "paper": "b0"}])j");
    auto r = verify(rows.at(0));
    CHECK_FALSE(r.pass);
    CHECK(r.message.rfind("evaluation failed", 0) == 0);
}

TEST_CASE("rows round-trip through json") {
    for (const auto& row : load(kAppendix)) {
        auto back = row_from_json(row_to_json(row));
        CHECK(row_to_json(back) == row_to_json(row));
    }
}

TEST_CASE("symbolic suites agree with the oracle") {
    for (const auto& name : suites::suite_names()) {
        if (name == "hilbert") continue;
        auto rep = suites::run_suite(name, 11, 40);
        INFO(rep.to_json().dump());
        CHECK(rep.pass());
        CHECK(rep.cases == 40);
    }
    CHECK_THROWS_AS(suites::run_suite("nope", 1, 1), std::invalid_argument);
}

TEST_CASE("hilbert suite") {
    auto rep = suites::run_hilbert(3, 1);
    INFO(rep.to_json().dump());
    CHECK(rep.pass());
    CHECK(rep.max_error.at("lm_expectation") < 1e-8);
    auto j = rep.to_json();
    CHECK(j.at("suite") == "hilbert");
    CHECK(j.at("failures").empty());
}
