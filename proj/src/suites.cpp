#include "ncm/suites.hpp"

#include "ncm/dilation.hpp"
#include "ncm/expand_oracle.hpp"
#include "ncm/free_moments.hpp"
#include "ncm/interpret.hpp"
#include "ncm/liberation.hpp"
#include "ncm/product_space.hpp"
#include "ncm/text.hpp"

#include <random>
#include <stdexcept>

namespace ncm::suites {

namespace {

void compare(SuiteReport& rep, std::size_t i, const std::string& input, const Expr& expected, const Expr& got) {
    if (expected == got) return;
    rep.failures.push_back({std::to_string(i) + ": " + input, canonical_text(expected), canonical_text(got), 1.0});
}

SuiteReport symbolic(const std::string& name, std::uint64_t seed, std::size_t cases) {
    SuiteReport rep{name, seed, cases, {}, {}};
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < cases; ++i) {
        if (name == "free") {
            std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
            IndexTuple iota;
            std::vector<Expr> a;
            for (std::size_t k = 0; k < n; ++k) {
                iota.push_back(std::uniform_int_distribution<unsigned>(1, 3)(rng));
                a.push_back(Expr::a(static_cast<std::uint32_t>(k + 1)));
            }
            std::string in = "(";
            for (auto k : iota) in += std::to_string(k);
            in += ")";
            compare(rep, i, in, oracle::expand_free(iota, a), gm(iota, a));
        } else if (name == "right") {
            RWord x = oracle::random_rword(rng, 4);
            compare(rep, i, to_text(x), oracle::expand_right_lib(x), lm(x));
        } else if (name == "left") {
            LWord y = oracle::random_lword(rng, 3);
            compare(rep, i, to_text(y), oracle::expand_left_lib(y), left_moment(MomentKind::LeftL, y));
        } else if (name == "strong") {
            RWord x = oracle::random_rword(rng, 3);
            compare(rep, i, to_text(x), oracle::expand_strong_right(x), strong_right_moment(MomentKind::StrongL, x));
        } else {
            TimedWord w = oracle::random_timed_word(rng, 4);
            compare(rep, i, to_text(w), oracle::expand_dilation(w), ss(w));
        }
    }
    return rep;
}

using hilbert::CPMapNumeric;
using hilbert::Letter;
using hilbert::Operator;
using hilbert::ProductSpace;
using hilbert::Side;
using hilbert::StateNumeric;

template <class Derived>
double max_entry(const Eigen::MatrixBase<Derived>& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

CMatrix centered(const StateNumeric& w, const CMatrix& x) {
    return x - w(x) * CMatrix::Identity(x.rows(), x.cols());
}

CVector random_low_vector(const ProductSpace& sp, std::mt19937_64& rng, int max_level) {
    std::normal_distribution<double> g;
    CVector v = CVector::Zero(static_cast<Eigen::Index>(sp.dim()));
    for (std::size_t i = 0; i < sp.dim(); ++i)
        if (sp.level_of(i) <= max_level) v(static_cast<Eigen::Index>(i)) = Complex(g(rng), g(rng));
    return v;
}

// All words over {L, R} without two equal neighbours, of length 1..3.
std::vector<std::vector<Side>> alternating_patterns() {
    std::vector<std::vector<Side>> out;
    for (std::size_t n = 1; n <= 3; ++n)
        for (Side first : {Side::R, Side::L}) {
            std::vector<Side> p;
            for (std::size_t k = 0; k < n; ++k) p.push_back((k % 2 == 0) == (first == Side::R) ? Side::R : Side::L);
            out.push_back(p);
        }
    return out;
}

}  // namespace

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["cases"] = cases;
    j["failures"] = nlohmann::json::array();
    for (const auto& f : failures)
        j["failures"].push_back({{"id", f.id}, {"expected", f.expected}, {"got", f.got}, {"error", f.error}});
    if (!max_error.empty()) j["max_error"] = max_error;
    j["pass"] = pass();
    return j;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"free", "right", "left", "strong", "dilation", "hilbert"};
    return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t cases) {
    if (name == "hilbert") return run_hilbert(seed, cases);
    for (const auto& n : suite_names())
        if (n == name) return symbolic(name, seed, cases);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

SuiteReport run_hilbert(std::uint64_t seed, std::size_t tuples, int trunc, const HilbertTolerances& tol) {
    SuiteReport rep{"hilbert", seed, tuples, {}, {}};
    const std::map<std::string, double> limits{
        {"gns", tol.gns},
        {"stinespring", tol.stinespring},
        {"corner_psi_L", tol.corner},
        {"theta_psi_L", tol.theta},
        {"vanishing", tol.vanishing},
        {"lm_expectation", tol.lm_expectation},
        {"ss_expectation", tol.ss_expectation},
        {"discontinuity_deficit", tol.discontinuity},
    };
    for (const auto& [k, v] : limits) rep.max_error[k] = 0;
    auto record = [&](const std::string& key, std::size_t tuple, double err) {
        double& m = rep.max_error[key];
        m = std::max(m, err);
        if (err > limits.at(key)) rep.failures.push_back({key + " tuple " + std::to_string(tuple), "", "", err});
    };

    std::mt19937_64 rng(seed);
    const int d = 2;
    for (std::size_t tuple = 0; tuple < tuples; ++tuple) {
        ProductSpace sp(CPMapNumeric::random_unital(rng, d, d, 2), StateNumeric::random_faithful(rng, d), trunc);
        const auto& phi = sp.phi();
        const auto& w = sp.omega();
        const auto& g = sp.gns_data();
        const auto& st = sp.stinespring();

        for (int i = 0; i < 10; ++i) {
            CMatrix b1 = hilbert::random_matrix(rng, d, d), b2 = hilbert::random_matrix(rng, d, d);
            CMatrix a = hilbert::random_matrix(rng, d, d);
            double e = max_entry(g.pi_R(b1 * b2) - g.pi_R(b1) * g.pi_R(b2));
            e = std::max(e, std::abs(g.omega_vec.dot(g.pi_R(b1) * g.omega_vec) - w(b1)));
            record("gns", tuple, e);
            record("stinespring", tuple, max_entry(st.V.adjoint() * st.pi_L(a) * st.V - g.pi_R(phi(a))));
        }

        CVector v = random_low_vector(sp, rng, 2);
        for (int i = 0; i < 3; ++i) {
            CMatrix a = hilbert::random_matrix(rng, d, d);
            Operator L = [&](const CVector& x) { return sp.psi_L(a, x); };
            Operator R = [&](const CVector& x) { return sp.psi_R(phi(a), x); };
            record("corner_psi_L", tuple, max_entry(sp.corner(L, v) - sp.corner(R, v)));
            record("theta_psi_L", tuple, max_entry(sp.theta(L).value - phi(a)));
        }

        for (int i = 0; i < 3; ++i) {
            CMatrix b0 = hilbert::random_matrix(rng, d, d);
            std::vector<CMatrix> as, bs;
            for (int k = 0; k < 3; ++k) {
                as.push_back(hilbert::random_matrix(rng, d, d));
                bs.push_back(k == 0 ? hilbert::random_matrix(rng, d, d) : centered(w, hilbert::random_matrix(rng, d, d)));
            }
            Operator T = [&](const CVector& x) {
                CVector y = x;
                for (std::size_t k = 0; k < 3; ++k) {
                    y = sp.psi_R(bs[k], y);
                    y = sp.psi_L(as[k], y) - sp.psi_R(phi(as[k]), y);
                }
                return sp.psi_R(b0, y);
            };
            record("vanishing", tuple, max_entry(sp.corner(T, v)));
        }

        // Alternating words against LM with rho = phi and nu = omega.
        InterpretationContext ctx;
        ctx.dim = d;
        ctx.rho = [&phi](const CMatrix& x) { return phi(x); };
        ctx.nu = [&w](const CMatrix& x) { return w(x); };
        ctx.omega = ctx.nu;
        ctx.phi = [&phi](const Rational& t, const CMatrix& x) {
            if (t == 0) return x;
            if (t == 1) return phi(x);
            throw std::invalid_argument("only one product stage is represented");
        };
        for (const auto& pattern : alternating_patterns()) {
            RWord x;
            x.b.push_back(Expr::one());
            std::vector<Letter> word;
            std::uint32_t next = 1;
            for (Side s : pattern) {
                CMatrix m = hilbert::random_matrix(rng, d, d);
                Algebra alg = s == Side::R ? Algebra::B : Algebra::A;
                ctx.set(alg, next, m);
                word.push_back({s, m});
                if (s == Side::R) {
                    x.b.back() = Expr::gen(alg, next);
                } else {
                    x.a.push_back(Expr::gen(alg, next));
                    x.b.push_back(Expr::one());
                }
                ++next;
            }
            record("lm_expectation", tuple, max_entry(sp.numeric_expectation(word) - evaluate_numeric(lm(x), ctx)));
        }

        // Two-time words: time 1 letters act on the left, time 0 on the right.
        for (std::size_t n = 1; n <= 3; ++n)
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                TimedWord tw;
                std::vector<Letter> word;
                for (std::size_t k = 0; k < n; ++k) {
                    bool late = mask >> k & 1;
                    CMatrix m = hilbert::random_matrix(rng, d, d);
                    ctx.set(Algebra::A, static_cast<std::uint32_t>(k + 1), m);
                    tw.times.push_back(late ? 1 : 0);
                    tw.letters.push_back(Expr::a(static_cast<std::uint32_t>(k + 1)));
                    word.push_back({late ? Side::L : Side::R, m});
                }
                record("ss_expectation", tuple, max_entry(sp.numeric_expectation(word) - evaluate_numeric(ss(tw), ctx)));
            }

        for (int i = 0; i < 4; ++i) {
            CMatrix a = centered(w, hilbert::random_matrix(rng, d, d));
            auto gap = sp.discontinuity_gap(a);
            record("discontinuity_deficit", tuple, std::max(0.0, gap.rhs - gap.lhs));
        }
    }
    return rep;
}

}  // namespace ncm::suites
