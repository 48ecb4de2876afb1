#include "ncm/fixtures.hpp"

#include "ncm/dilation.hpp"
#include "ncm/expand_oracle.hpp"
#include "ncm/text.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace ncm::fixtures {

namespace {

struct FnInfo {
    enum Shape { RightCollapse, LeftCollapse, Right, Left, Strong, Dilation, Gap } shape;
    CollapseKind collapse = CollapseKind::LC;
    MomentKind moment = MomentKind::RightL;
};

const std::map<std::string, FnInfo>& functions() {
    static const std::map<std::string, FnInfo> m{
        {"LC", {FnInfo::RightCollapse, CollapseKind::LC}},
        {"RC", {FnInfo::RightCollapse, CollapseKind::RC}},
        {"UC", {FnInfo::RightCollapse, CollapseKind::UC}},
        {"LC'", {FnInfo::LeftCollapse, CollapseKind::LC}},
        {"RC'", {FnInfo::LeftCollapse, CollapseKind::RC}},
        {"UC'", {FnInfo::LeftCollapse, CollapseKind::UC}},
        {"LM", {FnInfo::Right, {}, MomentKind::RightL}},
        {"RM", {FnInfo::Right, {}, MomentKind::RightR}},
        {"UM", {FnInfo::Right, {}, MomentKind::RightU}},
        {"LM'", {FnInfo::Left, {}, MomentKind::LeftL}},
        {"RM'", {FnInfo::Left, {}, MomentKind::LeftR}},
        {"UM'", {FnInfo::Left, {}, MomentKind::LeftU}},
        {"SM", {FnInfo::Strong, {}, MomentKind::StrongL}},
        {"SRM", {FnInfo::Strong, {}, MomentKind::StrongR}},
        {"SUM", {FnInfo::Strong, {}, MomentKind::StrongU}},
        {"Ss", {FnInfo::Dilation}},
        {"SsGap", {FnInfo::Gap}},
    };
    return m;
}

const FnInfo& info(const std::string& fn) {
    auto it = functions().find(fn);
    if (it == functions().end()) throw FixtureFormatError("unknown function '" + fn + "'");
    return it->second;
}

TimedWord timed_word(const FixtureRow& row) {
    auto times = parse_times(row.times);
    if (row.letters.empty()) {
        TimedWord tw{times, {}};
        for (std::size_t i = 0; i < times.size(); ++i) tw.letters.push_back(Expr::a(static_cast<std::uint32_t>(i + 1)));
        return tw;
    }
    std::string letters = row.letters;
    if (letters.find('(') != 0) letters = "(" + letters + ")";
    return parse_timed_word(row.times, letters);
}

std::string str_field(const nlohmann::json& j, const char* key, bool required) {
    if (!j.contains(key)) {
        if (required) throw FixtureFormatError(std::string("fixture row lacks '") + key + "'");
        return {};
    }
    if (!j[key].is_string()) throw FixtureFormatError(std::string("fixture field '") + key + "' must be a string");
    return j[key].get<std::string>();
}

}  // namespace

bool is_collapse(const std::string& fn) {
    auto s = info(fn).shape;
    return s == FnInfo::RightCollapse || s == FnInfo::LeftCollapse;
}

FixtureRow row_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw FixtureFormatError("fixture row must be an object");
    FixtureRow r;
    r.id = str_field(j, "id", true);
    r.fn = str_field(j, "fn", true);
    const auto& fi = info(r.fn);
    r.input = str_field(j, "input", false);
    r.times = str_field(j, "times", false);
    r.structure = str_field(j, "structure", false);
    r.letters = str_field(j, "letters", false);
    r.paper = str_field(j, "paper", false);
    if (j.contains("paper_format")) r.paper_format = str_field(j, "paper_format", false);
    r.expect = str_field(j, "expect", true);
    r.note = str_field(j, "note", false);
    r.witness = str_field(j, "witness", false);
    if (j.contains("paper_typo")) {
        if (!j["paper_typo"].is_boolean()) throw FixtureFormatError("paper_typo must be a boolean");
        r.paper_typo = j["paper_typo"].get<bool>();
    }
    if (j.contains("iota")) {
        if (!j["iota"].is_array()) throw FixtureFormatError("iota must be an array");
        IndexSet s;
        for (const auto& v : j["iota"]) {
            if (!v.is_number_unsigned()) throw FixtureFormatError("iota entries must be positive integers");
            s.push_back(v.get<unsigned>());
        }
        r.iota = s;
    }
    bool needs_word = fi.shape != FnInfo::Dilation && fi.shape != FnInfo::Gap;
    if (needs_word && r.input.empty()) throw FixtureFormatError(r.id + ": missing input");
    if (!needs_word && r.times.empty()) throw FixtureFormatError(r.id + ": missing times");
    if (fi.shape == FnInfo::Gap && r.structure.empty()) throw FixtureFormatError(r.id + ": missing structure");
    if (is_collapse(r.fn) && !r.iota) throw FixtureFormatError(r.id + ": collapse rows need iota");
    return r;
}

nlohmann::json row_to_json(const FixtureRow& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["fn"] = r.fn;
    if (!r.input.empty()) j["input"] = r.input;
    if (r.iota) j["iota"] = *r.iota;
    if (!r.times.empty()) j["times"] = r.times;
    if (!r.structure.empty()) j["structure"] = r.structure;
    if (!r.letters.empty()) j["letters"] = r.letters;
    j["expect"] = r.expect;
    if (!r.paper.empty()) j["paper"] = r.paper;
    if (r.paper_format != "dsl") j["paper_format"] = r.paper_format;
    if (r.paper_typo) j["paper_typo"] = true;
    if (!r.witness.empty()) j["witness"] = r.witness;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::vector<FixtureRow> parse_fixtures(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FixtureFormatError(std::string("fixture JSON: ") + e.what());
    }
    if (!j.is_array()) throw FixtureFormatError("fixture file must hold a JSON array");
    std::vector<FixtureRow> rows;
    for (const auto& r : j) rows.push_back(row_from_json(r));
    return rows;
}

std::vector<FixtureRow> load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureIOError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_fixtures(ss.str());
}

std::string compute(const FixtureRow& row) {
    const auto& fi = info(row.fn);
    switch (fi.shape) {
        case FnInfo::RightCollapse:
            return to_text(right_collapse(fi.collapse, parse_rword(row.input), row.iota.value_or(IndexSet{})));
        case FnInfo::LeftCollapse:
            return to_text(left_collapse(fi.collapse, parse_lword(row.input), row.iota.value_or(IndexSet{})));
        case FnInfo::Right:
            return canonical_text(right_moment(fi.moment, parse_rword(row.input)));
        case FnInfo::Left:
            return canonical_text(left_moment(fi.moment, parse_lword(row.input)));
        case FnInfo::Strong:
            return canonical_text(strong_right_moment(fi.moment, parse_rword(row.input)));
        case FnInfo::Dilation:
            return canonical_text(ss(timed_word(row)));
        case FnInfo::Gap: {
            TimedWord tw = timed_word(row);
            auto structure = parse_times(row.structure);
            return canonical_text(ss(tw) - ss_structured(structure, tw.times, tw.letters));
        }
    }
    return {};
}

std::string compute_oracle(const FixtureRow& row) {
    const auto& fi = info(row.fn);
    switch (fi.shape) {
        case FnInfo::Right:
            if (fi.moment == MomentKind::RightL) return canonical_text(oracle::expand_right_lib(parse_rword(row.input)));
            return {};
        case FnInfo::Left:
            if (fi.moment == MomentKind::LeftL) return canonical_text(oracle::expand_left_lib(parse_lword(row.input)));
            return {};
        case FnInfo::Strong:
            if (fi.moment == MomentKind::StrongL) return canonical_text(oracle::expand_strong_right(parse_rword(row.input)));
            return {};
        case FnInfo::Dilation:
            return canonical_text(oracle::expand_dilation(timed_word(row)));
        case FnInfo::Gap: {
            TimedWord tw = timed_word(row);
            auto structure = parse_times(row.structure);
            return canonical_text(oracle::expand_dilation(tw) -
                                  oracle::expand_dilation_structured(structure, tw.times, tw.letters));
        }
        default:
            return {};
    }
}

std::optional<std::string> canonical_paper(const FixtureRow& row) {
    if (row.paper_format != "dsl" || row.paper.empty()) return std::nullopt;
    try {
        if (is_collapse(row.fn)) return to_text(parse_list(row.paper));
        return canonical_text(parse(row.paper));
    } catch (const ParseError&) {
        return std::nullopt;
    }
}

RowResult verify(const FixtureRow& row) {
    RowResult r;
    r.id = row.id;
    r.paper_typo = row.paper_typo;
    r.expected = row.expect;
    try {
        r.got = compute(row);
    } catch (const std::exception& e) {
        r.message = std::string("evaluation failed: ") + e.what();
        return r;
    }
    auto paper = canonical_paper(row);
    r.paper_matches = paper && *paper == row.expect;
    if (r.got != row.expect) {
        r.message = "output differs from expectation";
        return r;
    }
    if (!row.paper_typo) {
        if (!r.paper_matches) {
            r.message = "expectation does not match the transcribed printed row";
            return r;
        }
    } else {
        std::string o = compute_oracle(row);
        if (!o.empty()) {
            if (o != row.expect) {
                r.message = "typo row expectation differs from the rewriting oracle";
                return r;
            }
        } else {
            FixtureRow w = row;
            w.paper = row.witness;
            w.paper_format = "dsl";
            auto cw = canonical_paper(w);
            if (!cw || *cw != row.expect) {
                r.message = "typo row has no oracle and its witness does not match";
                return r;
            }
        }
    }
    r.pass = true;
    return r;
}

Report verify_all(const std::vector<FixtureRow>& rows) {
    Report rep;
    for (const auto& row : rows) rep.rows.push_back(verify(row));
    std::sort(rep.rows.begin(), rep.rows.end(), [](const RowResult& a, const RowResult& b) { return a.id < b.id; });
    for (const auto& r : rep.rows) {
        if (!r.pass) ++rep.failures;
        if (r.paper_typo) ++rep.typo_rows;
    }
    return rep;
}

}  // namespace ncm::fixtures
