#include "ncm/markov.hpp"

#include "ncm/dilation.hpp"
#include "ncm/interpret.hpp"

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace ncm::markov {

namespace {

Eigen::Index power(Eigen::Index m, std::size_t n) {
    Eigen::Index r = 1;
    for (std::size_t i = 0; i < n; ++i) r *= m;
    return r;
}

void check_grid(const std::vector<Rational>& gamma) {
    if (gamma.empty()) throw MarkovError("empty time grid");
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (gamma[i] < 0) throw MarkovError("negative time");
        if (i > 0 && !(gamma[i - 1] < gamma[i])) throw MarkovError("times must be strictly increasing");
    }
}

void check_element(const GridAlgebraElement& x) {
    check_grid(x.gamma);
    if (x.states <= 0 || x.values.size() != power(x.states, x.size()))
        throw MarkovError("tensor size does not match the grid");
}

}  // namespace

RateMatrix RateMatrix::from(const Matrix& q) {
    if (q.rows() == 0 || q.rows() != q.cols()) throw MarkovError("rate matrix must be square and nonempty");
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        for (Eigen::Index j = 0; j < q.cols(); ++j)
            if (i != j && q(i, j) < 0) throw MarkovError("negative off-diagonal rate");
        if (std::abs(q.row(i).sum()) > 1e-12) throw MarkovError("rate matrix rows must sum to 0");
    }
    return RateMatrix{q};
}

Matrix semigroup_at(const RateMatrix& q, double t) {
    if (t < 0) throw MarkovError("negative time");
    if (t == 0) return Matrix::Identity(q.states(), q.states());
    Matrix tq = t * q.Q;
    return tq.exp();
}

Matrix semigroup_at(const RateMatrix& q, const Rational& t) { return semigroup_at(q, to_double(t)); }

Vector theta_t(const RateMatrix& q, const Matrix& F, const Rational& t) {
    const Eigen::Index m = q.states();
    if (F.rows() != m || F.cols() != m) throw MarkovError("theta_t: F must be m x m");
    Matrix p = semigroup_at(q, t);
    Vector out(m);
    for (Eigen::Index x = 0; x < m; ++x) out(x) = p.row(x).dot(F.col(x));
    return out;
}

GridAlgebraElement GridAlgebraElement::ones(std::vector<Rational> gamma, Eigen::Index states) {
    check_grid(gamma);
    GridAlgebraElement e{std::move(gamma), states, {}};
    e.values = Vector::Ones(power(states, e.size()));
    return e;
}

GridAlgebraElement GridAlgebraElement::simple(std::vector<Rational> gamma, const std::vector<Vector>& factors) {
    check_grid(gamma);
    if (factors.size() != gamma.size()) throw MarkovError("one factor per time required");
    const Eigen::Index m = factors[0].size();
    for (const auto& f : factors)
        if (f.size() != m) throw MarkovError("factors must have equal length");
    Vector v = Vector::Ones(1);
    for (const auto& f : factors) {
        Vector next(v.size() * m);
        for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(i * m, m) = v(i) * f;
        v = std::move(next);
    }
    return {std::move(gamma), m, std::move(v)};
}

GridAlgebraElement embed(const GridAlgebraElement& x, const std::vector<Rational>& gamma) {
    check_element(x);
    check_grid(gamma);
    std::vector<int> source(gamma.size(), -1);
    std::size_t k = 0;
    for (std::size_t i = 0; i < gamma.size() && k < x.size(); ++i)
        if (gamma[i] == x.gamma[k]) source[i] = static_cast<int>(k++);
    if (k != x.size()) throw MarkovError("embed: grid is not a superset");

    const Eigen::Index m = x.states;
    GridAlgebraElement out{gamma, m, Vector(power(m, gamma.size()))};
    std::vector<Eigen::Index> digit(gamma.size());
    for (Eigen::Index idx = 0; idx < out.values.size(); ++idx) {
        Eigen::Index r = idx;
        for (std::size_t i = gamma.size(); i-- > 0;) {
            digit[i] = r % m;
            r /= m;
        }
        Eigen::Index src = 0;
        for (std::size_t i = 0; i < gamma.size(); ++i)
            if (source[i] >= 0) src = src * m + digit[i];
        out.values(idx) = x.values(src);
    }
    return out;
}

GridAlgebraElement shift(const GridAlgebraElement& x, const Rational& t) {
    GridAlgebraElement out = x;
    for (auto& g : out.gamma) g += t;
    check_grid(out.gamma);
    return out;
}

Vector epsilon(const RateMatrix& q, const GridAlgebraElement& x) {
    check_element(x);
    if (x.states != q.states()) throw MarkovError("state count mismatch");
    const Eigen::Index m = x.states;
    // Contract the last coordinate against the transition kernel, repeatedly.
    Vector g = x.values;
    for (std::size_t k = x.size(); k-- > 1;) {
        Matrix p = semigroup_at(q, Rational(x.gamma[k] - x.gamma[k - 1]));
        Eigen::Index outer = g.size() / m;
        Vector h(outer);
        for (Eigen::Index i = 0; i < outer; ++i) {
            Eigen::Index s = i % m;
            h(i) = p.row(s).dot(g.segment(i * m, m));
        }
        g = std::move(h);
    }
    return semigroup_at(q, x.gamma[0]) * g;
}

Vector epsilon_path_sum(const RateMatrix& q, const GridAlgebraElement& x) {
    check_element(x);
    const Eigen::Index m = x.states;
    const std::size_t n = x.size();
    std::vector<Matrix> kernels;
    kernels.push_back(semigroup_at(q, x.gamma[0]));
    for (std::size_t k = 1; k < n; ++k) kernels.push_back(semigroup_at(q, Rational(x.gamma[k] - x.gamma[k - 1])));

    Vector out = Vector::Zero(m);
    std::vector<Eigen::Index> path(n);
    for (Eigen::Index start = 0; start < m; ++start) {
        double total = 0;
        for (Eigen::Index idx = 0; idx < x.values.size(); ++idx) {
            Eigen::Index r = idx;
            for (std::size_t i = n; i-- > 0;) {
                path[i] = r % m;
                r /= m;
            }
            double w = kernels[0](start, path[0]);
            for (std::size_t k = 1; k < n; ++k) w *= kernels[k](path[k - 1], path[k]);
            total += w * x.values(idx);
        }
        out(start) = total;
    }
    return out;
}

double consistency_error(const RateMatrix& q, const GridAlgebraElement& x, const std::vector<Rational>& gamma) {
    return (epsilon(q, embed(x, gamma)) - epsilon(q, x)).cwiseAbs().maxCoeff();
}

StrongDilationReport strong_dilation_check(const RateMatrix& q, const GridAlgebraElement& x, const Rational& t,
                                           double tol, double time_error) {
    if (t < 0) throw MarkovError("negative shift");
    if (std::find(x.gamma.begin(), x.gamma.end(), Rational(0)) == x.gamma.end())
        throw MarkovError("strong dilation check requires 0 in the grid");
    StrongDilationReport rep;
    rep.gamma = x.gamma;
    rep.t = t;
    GridAlgebraElement shifted = shift(x, t);
    if (t != 0) {
        std::vector<Rational> grid{Rational(0)};
        grid.insert(grid.end(), shifted.gamma.begin(), shifted.gamma.end());
        shifted = embed(shifted, grid);
    }
    rep.lhs = epsilon(q, shifted);
    rep.rhs = semigroup_at(q, to_double(t) + time_error) * epsilon(q, x);
    rep.max_error = (rep.lhs - rep.rhs).cwiseAbs().maxCoeff();
    rep.pass = rep.max_error <= tol;
    return rep;
}

double sauvageot_tensor_gap(const RateMatrix& q, const Vector& mu, const std::vector<Vector>& f) {
    if (f.size() != 3) throw MarkovError("three functions required");
    const Eigen::Index m = q.states();
    if (mu.size() != m) throw MarkovError("initial law has the wrong size");
    for (const auto& v : f)
        if (v.size() != m) throw MarkovError("function has the wrong size");

    InterpretationContext ctx;
    ctx.dim = m;
    for (std::uint32_t i = 0; i < 3; ++i) ctx.set(Algebra::A, i + 1, f[i].cast<Complex>().asDiagonal().toDenseMatrix());
    ctx.phi = [&q](const Rational& t, const CMatrix& x) {
        Vector d = x.diagonal().real();
        return CMatrix((semigroup_at(q, t) * d).cast<Complex>().asDiagonal());
    };
    ctx.omega = [&mu](const CMatrix& x) { return Complex(mu.dot(x.diagonal().real())); };
    TimedWord tw{{1, 0, 1}, {Expr::a(1), Expr::a(2), Expr::a(3)}};
    Vector sauvageot = evaluate_numeric(ss(tw), ctx).diagonal().real();

    // The two time-1 functions multiply pointwise in the commutative algebra.
    auto x = GridAlgebraElement::simple({0, 1}, {f[1], Vector(f[0].cwiseProduct(f[2]))});
    return (sauvageot - epsilon(q, x)).cwiseAbs().maxCoeff();
}

Matrix parse_rate_matrix_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MarkovError(std::string("rate matrix JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty()) throw MarkovError("rate matrix JSON must be a nonempty array of rows");
    const auto m = static_cast<Eigen::Index>(j.size());
    Matrix q(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m) throw MarkovError("rate matrix JSON must be square");
        for (Eigen::Index k = 0; k < m; ++k) {
            if (!row[static_cast<std::size_t>(k)].is_number()) throw MarkovError("rate matrix entries must be numbers");
            q(i, k) = row[static_cast<std::size_t>(k)].get<double>();
        }
    }
    return q;
}

}  // namespace ncm::markov
