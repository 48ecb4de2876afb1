#include "doctest.h"

#include "ncm/markov.hpp"

#include <cmath>
#include <random>

using namespace ncm;
using namespace ncm::markov;

namespace {

RateMatrix two_state() {
    Matrix q(2, 2);
    q << -1, 1, 1, -1;
    return RateMatrix::from(q);
}

RateMatrix random_rates(std::mt19937_64& rng, Eigen::Index m) {
    std::uniform_real_distribution<double> u(0.1, 2.0);
    Matrix q = Matrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j)
            if (i != j) q(i, j) = u(rng);
        q(i, i) = -q.row(i).sum();
    }
    return RateMatrix::from(q);
}

Vector random_function(std::mt19937_64& rng, Eigen::Index m, double lo = -1, double hi = 1) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vector v(m);
    for (auto& x : v) x = u(rng);
    return v;
}

const std::vector<Rational> kPool{Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};

std::vector<Rational> random_grid(std::mt19937_64& rng, std::size_t n, bool with_zero) {
    std::vector<Rational> g;
    if (with_zero) g.push_back(0);
    while (g.size() < n) {
        Rational t = kPool[std::uniform_int_distribution<std::size_t>(0, kPool.size() - 1)(rng)];
        if (std::find(g.begin(), g.end(), t) == g.end()) g.push_back(t);
    }
    std::sort(g.begin(), g.end());
    return g;
}

GridAlgebraElement random_element(std::mt19937_64& rng, std::vector<Rational> gamma, Eigen::Index m) {
    auto x = GridAlgebraElement::ones(std::move(gamma), m);
    x.values = random_function(rng, x.values.size());
    return x;
}

}  // namespace

TEST_CASE("rate matrix validation") {
    Matrix bad(2, 2);
    bad << -1, 1, 1, -2;
    CHECK_THROWS_AS(RateMatrix::from(bad), MarkovError);
    bad << 1, -1, 1, -1;
    CHECK_THROWS_AS(RateMatrix::from(bad), MarkovError);
    CHECK_THROWS_AS(RateMatrix::from(Matrix(2, 3)), MarkovError);
    CHECK_THROWS_AS(semigroup_at(two_state(), Rational(-1)), MarkovError);
}

TEST_CASE("semigroup") {
    auto q = two_state();
    CHECK(semigroup_at(q, Rational(0)) == Matrix::Identity(2, 2));
    for (Rational t : {Rational(1, 3), Rational(1), Rational(5, 2)}) {
        double e = std::exp(-2 * to_double(t));
        Matrix expect(2, 2);
        expect << (1 + e) / 2, (1 - e) / 2, (1 - e) / 2, (1 + e) / 2;
        CHECK((semigroup_at(q, t) - expect).cwiseAbs().maxCoeff() < 1e-12);
    }

    std::mt19937_64 rng(5);
    double worst = 0, worst_row = 0;
    for (int i = 0; i < 100; ++i) {
        auto r = random_rates(rng, 2 + i % 4);
        double s = std::uniform_real_distribution<double>(0, 3)(rng);
        double t = std::uniform_real_distribution<double>(0, 3)(rng);
        Matrix ps = semigroup_at(r, s), pt = semigroup_at(r, t);
        worst = std::max(worst, (semigroup_at(r, s + t) - ps * pt).cwiseAbs().maxCoeff());
        worst_row = std::max(worst_row, (ps.rowwise().sum() - Vector::Ones(ps.rows())).cwiseAbs().maxCoeff());
        CHECK(ps.minCoeff() > -1e-12);
    }
    CHECK(worst < 1e-10);
    CHECK(worst_row < 1e-10);
}

TEST_CASE("theta_t") {
    std::mt19937_64 rng(9);
    auto q = random_rates(rng, 3);
    Vector f = random_function(rng, 3), g = random_function(rng, 3);
    Matrix F = f * g.transpose();  // F(y, x) = f(y) g(x)
    Vector expect = (semigroup_at(q, Rational(1, 2)) * f).cwiseProduct(g);
    CHECK((theta_t(q, F, Rational(1, 2)) - expect).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((theta_t(q, Matrix::Ones(3, 3), Rational(2)) - Vector::Ones(3)).cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 0; i < 100; ++i) {
        Matrix R = Matrix::NullaryExpr(3, 3, [&] { return std::uniform_real_distribution<double>(-1, 1)(rng); });
        CHECK(theta_t(q, R, Rational(i % 5, 2)).cwiseAbs().maxCoeff() <= R.cwiseAbs().maxCoeff() + 1e-12);
    }
}

TEST_CASE("grid elements") {
    Vector f(2), g(2);
    f << 1, 2;
    g << 3, 5;
    auto x = GridAlgebraElement::simple({0, 1}, {f, g});
    CHECK(x.values == (Vector(4) << 3, 5, 6, 10).finished());
    auto y = embed(x, {0, Rational(1, 2), 1});
    CHECK(y.values == GridAlgebraElement::simple({0, Rational(1, 2), 1}, {f, Vector::Ones(2), g}).values);
    CHECK_THROWS_AS(embed(x, {0, 2}), MarkovError);
    CHECK_THROWS_AS(GridAlgebraElement::simple({1, 0}, {f, g}), MarkovError);
    CHECK(shift(x, 2).gamma == std::vector<Rational>{2, 3});
}

TEST_CASE("epsilon") {
    std::mt19937_64 rng(17);
    auto q = random_rates(rng, 3);
    Vector f = random_function(rng, 3), g = random_function(rng, 3), h = random_function(rng, 3);

    CHECK(epsilon(q, GridAlgebraElement::simple({0}, {f})) == f);
    CHECK((epsilon(q, GridAlgebraElement::ones({0, 1, 2}, 3)) - Vector::Ones(3)).cwiseAbs().maxCoeff() < 1e-12);

    Matrix p1 = semigroup_at(q, Rational(1));
    Vector expect = f.cwiseProduct(p1 * g);
    auto x = GridAlgebraElement::simple({0, 1}, {f, g});
    CHECK((epsilon(q, x) - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((epsilon_path_sum(q, x) - expect).cwiseAbs().maxCoeff() < 1e-12);

    Matrix ph = semigroup_at(q, Rational(1, 2));
    auto z = GridAlgebraElement::simple({Rational(1, 2), 1, 2}, {f, g, h});
    Vector nested = ph * f.cwiseProduct(ph * g.cwiseProduct(p1 * h));
    CHECK((epsilon(q, z) - nested).cwiseAbs().maxCoeff() < 1e-12);

    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        auto r = random_rates(rng, 2 + i % 3);
        auto e = random_element(rng, random_grid(rng, 1 + i % 4, i % 2 == 0), r.states());
        worst = std::max(worst, (epsilon(r, e) - epsilon_path_sum(r, e)).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("epsilon is positive, contractive and consistent") {
    std::mt19937_64 rng(23);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        auto r = random_rates(rng, 2 + i % 3);
        auto gamma = random_grid(rng, 2 + i % 4, true);
        auto x = random_element(rng, gamma, r.states());
        Vector ex = epsilon(r, x);
        CHECK(ex.cwiseAbs().maxCoeff() <= x.values.cwiseAbs().maxCoeff() + 1e-12);

        auto pos = x;
        pos.values = x.values.cwiseAbs();
        CHECK(epsilon(r, pos).minCoeff() >= -1e-14);

        // Drop random non-minimal times to get beta.
        std::vector<Rational> beta{gamma[0]};
        for (std::size_t k = 1; k < gamma.size(); ++k)
            if (rng() % 2) beta.push_back(gamma[k]);
        auto xb = random_element(rng, beta, r.states());
        worst = std::max(worst, consistency_error(r, xb, gamma));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("strong dilation") {
    std::mt19937_64 rng(31);
    auto q = random_rates(rng, 3);
    auto x = random_element(rng, {0, Rational(3, 2)}, 3);
    auto exact = strong_dilation_check(q, x, 0);
    CHECK(exact.pass);
    CHECK(exact.max_error == 0.0);

    for (int i = 0; i < 50; ++i) {
        auto r = random_rates(rng, 2 + i % 3);
        auto gamma = random_grid(rng, 2 + i % 3, true);
        auto y = random_element(rng, gamma, r.states());
        auto rep = strong_dilation_check(r, y, Rational(1, 2));
        CHECK(rep.pass);
        CHECK(rep.max_error < 1e-10);
    }

    auto bad = strong_dilation_check(q, x, Rational(1, 2), 1e-10, 0.25);
    CHECK_FALSE(bad.pass);
    CHECK_THROWS_AS(strong_dilation_check(q, shift(x, 1), 1), MarkovError);
}

TEST_CASE("Sauvageot moments differ from the tensor dilation") {
    Vector mu(2), f1(2), f2(2), f3(2);
    mu << 0.5, 0.5;
    f1 << 1, 0;
    f2 << 1, 0;
    f3 << 1, 0;
    double gap = sauvageot_tensor_gap(two_state(), mu, {f1, f2, f3});
    // (f2 - mu(f2)) (P1(f1 f3) - P1 f1 P1 f3) = 1/2 * (1 - e^-4)/4 at either state.
    CHECK(gap == doctest::Approx((1 - std::exp(-4.0)) / 8).epsilon(1e-10));
    CHECK(gap > 0.01);
}

TEST_CASE("rate matrix json") {
    CHECK(parse_rate_matrix_json("[[-1, 1], [2, -2]]") == (Matrix(2, 2) << -1, 1, 2, -2).finished());
    CHECK_THROWS_AS(parse_rate_matrix_json("[[-1, 1], [2]]"), MarkovError);
    CHECK_THROWS_AS(parse_rate_matrix_json("{"), MarkovError);
}
