// ncmoment: evaluate moment functions, replay fixtures, run oracle suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 I/O error.

#include "ncm/dilation.hpp"
#include "ncm/fixtures.hpp"
#include "ncm/liberation.hpp"
#include "ncm/markov.hpp"
#include "ncm/suites.hpp"
#include "ncm/text.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace ncm;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kIO = 3 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, MomentKind>& moment_kinds() {
    static const std::map<std::string, MomentKind> m{
        {"lm", MomentKind::RightL},  {"rm", MomentKind::RightR},  {"um", MomentKind::RightU},
        {"lm'", MomentKind::LeftL},  {"rm'", MomentKind::LeftR},  {"um'", MomentKind::LeftU},
        {"sm", MomentKind::StrongL}, {"srm", MomentKind::StrongR}, {"sum", MomentKind::StrongU},
    };
    return m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot read " + path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct EvalArgs {
    std::string fn, word, times, letters, format = "canonical";
};

int cmd_eval(const EvalArgs& a) {
    Expr out;
    if (a.fn == "ss") {
        if (a.times.empty()) throw UsageError("--fn ss needs --times");
        if (!a.word.empty()) throw UsageError("--fn ss takes --times and --letters, not --word");
        TimedWord tw;
        if (a.letters.empty()) {
            tw.times = parse_times(a.times);
            for (std::size_t i = 0; i < tw.times.size(); ++i)
                tw.letters.push_back(Expr::a(static_cast<std::uint32_t>(i + 1)));
        } else {
            tw = parse_timed_word(a.times, "(" + a.letters + ")");
        }
        out = ss(tw);
    } else {
        auto it = moment_kinds().find(a.fn);
        if (it == moment_kinds().end()) throw UsageError("unknown function '" + a.fn + "'");
        if (a.word.empty()) throw UsageError("--fn " + a.fn + " needs --word");
        MomentKind k = it->second;
        if (a.fn.back() == '\'')
            out = left_moment(k, parse_lword(a.word));
        else if (a.fn[0] == 's')
            out = strong_right_moment(k, parse_rword(a.word));
        else
            out = right_moment(k, parse_rword(a.word));
    }
    std::cout << (a.format == "latex" ? latex(out) : canonical_text(out)) << "\n";
    return kOk;
}

int cmd_verify(const std::string& path, bool quiet) {
    std::vector<fixtures::FixtureRow> rows;
    try {
        rows = fixtures::load(path);
    } catch (const fixtures::FixtureIOError& e) {
        throw IOError(e.what());
    }
    auto rep = fixtures::verify_all(rows);
    for (const auto& r : rep.rows) {
        if (r.pass && quiet && !r.paper_typo) continue;
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.id;
        if (r.paper_typo) std::cout << "  [paper-typo: printed row differs, checked against oracle or witness]";
        std::cout << "\n";
        if (!r.pass) {
            std::cout << "  " << r.message << "\n";
            std::cout << "  expected: " << r.expected << "\n";
            std::cout << "  got:      " << r.got << "\n";
        }
    }
    std::cout << rep.rows.size() << " rows, " << rep.rows.size() - rep.failures << " passed, " << rep.failures
              << " failed, " << rep.typo_rows << " typo-annotated\n";
    return rep.failures == 0 ? kOk : kFail;
}

int cmd_oracle(const std::string& suite, std::uint64_t seed, std::optional<std::size_t> cases) {
    const auto& names = suites::suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw UsageError("unknown suite '" + suite + "'");
    auto rep = suites::run_suite(suite, seed, cases.value_or(suite == "hilbert" ? 5 : 100));
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.pass() ? kOk : kFail;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

struct MarkovArgs {
    std::string q, gamma, t, values;
    std::uint64_t seed = 1;
    double tol = 1e-10;
};

int cmd_markov(const MarkovArgs& a) {
    std::string qtext = a.q;
    if (!qtext.empty() && qtext[0] == '@') qtext = read_file(qtext.substr(1));
    markov::RateMatrix q;
    std::vector<Rational> gamma;
    Rational t;
    try {
        q = markov::RateMatrix::from(markov::parse_rate_matrix_json(qtext));
        gamma = parse_times(a.gamma);
        t = parse_times(a.t).at(0);
    } catch (const std::out_of_range&) {
        throw UsageError("--t must be a rational");
    }
    auto x = markov::GridAlgebraElement::ones(gamma, q.states());
    if (a.values.empty()) {
        std::mt19937_64 rng(a.seed);
        std::uniform_real_distribution<double> u(-1, 1);
        for (auto& v : x.values) v = u(rng);
    } else {
        auto parts = split(a.values);
        if (parts.size() != static_cast<std::size_t>(x.values.size()))
            throw UsageError("--values needs " + std::to_string(x.values.size()) + " entries");
        for (std::size_t i = 0; i < parts.size(); ++i) {
            try {
                x.values(static_cast<Eigen::Index>(i)) = std::stod(parts[i]);
            } catch (const std::exception&) {
                throw UsageError("bad value '" + parts[i] + "'");
            }
        }
    }
    auto rep = markov::strong_dilation_check(q, x, t, a.tol);
    nlohmann::json j;
    j["gamma"] = nlohmann::json::array();
    for (const auto& g : rep.gamma) j["gamma"].push_back(to_string(g));
    j["t"] = to_string(rep.t);
    j["lhs"] = std::vector<double>(rep.lhs.begin(), rep.lhs.end());
    j["rhs"] = std::vector<double>(rep.rhs.begin(), rep.rhs.end());
    j["max_error"] = rep.max_error;
    j["tolerance"] = a.tol;
    j["pass"] = rep.pass;
    std::cout << j.dump(2) << "\n";
    return rep.pass ? kOk : kFail;
}

int cmd_count(std::size_t l) {
    if (l > 5) throw UsageError("--l must be at most 5");
    std::cout << term_count(MomentKind::RightL, l) << " ≤ " << term_count_bound(l) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noncommutative moment calculator"};
    app.require_subcommand(1, 1);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Evaluate a moment function");
    eval->add_option("--fn", ev.fn, "lm rm um lm' rm' um' sm srm sum ss")->required();
    eval->add_option("--word", ev.word, "Word in the text syntax, e.g. \"b0 a1 b1\"");
    eval->add_option("--times", ev.times, "Comma separated rationals (ss)");
    eval->add_option("--letters", ev.letters, "Comma separated letters (ss, default a1..an)");
    eval->add_option("--format", ev.format)->check(CLI::IsMember({"canonical", "latex"}));

    std::string fixture_path;
    bool quiet = false;
    auto* verify = app.add_subcommand("verify", "Replay a fixture file");
    verify->add_option("--fixtures", fixture_path)->required();
    verify->add_flag("--quiet", quiet, "Only print failures and typo-annotated rows");

    std::string suite;
    std::uint64_t seed = 1;
    std::optional<std::size_t> cases;
    auto* orc = app.add_subcommand("oracle", "Run a seeded cross-oracle suite");
    orc->add_option("--suite", suite)->required();
    orc->add_option("--seed", seed);
    orc->add_option("--cases", cases, "Random inputs (CP-tuples for hilbert)");

    MarkovArgs mk;
    auto* mkv = app.add_subcommand("markov", "Check the strong dilation property of a Markov chain");
    mkv->add_option("--q", mk.q, "Rate matrix as JSON, or @file")->required();
    mkv->add_option("--gamma", mk.gamma, "Comma separated times, must contain 0")->required();
    mkv->add_option("--t", mk.t, "Shift time")->required();
    mkv->add_option("--values", mk.values, "Values of the grid function, first time most significant");
    mkv->add_option("--seed", mk.seed, "Seed for random values");
    mkv->add_option("--tol", mk.tol);

    std::size_t l = 0;
    auto* cnt = app.add_subcommand("count", "Recursive invocation count of LM against its bound");
    cnt->add_option("--l", l)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*eval) return cmd_eval(ev);
        if (*verify) return cmd_verify(fixture_path, quiet);
        if (*orc) return cmd_oracle(suite, seed, cases);
        if (*mkv) return cmd_markov(mk);
        if (*cnt) return cmd_count(l);
    } catch (const IOError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIO;
    } catch (const fixtures::FixtureFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        // ParseError, MarkovError and usage errors
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
