#include "doctest.h"

#include "ncm/liberation.hpp"
#include "ncm/product_space.hpp"

using namespace ncm;
using namespace ncm::hilbert;

namespace {

template <class Derived>
double max_entry(const Eigen::MatrixBase<Derived>& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

CVector random_vector_below(const ProductSpace& sp, std::mt19937_64& rng, int max_level) {
    std::normal_distribution<double> g;
    CVector v = CVector::Zero(static_cast<Eigen::Index>(sp.dim()));
    for (std::size_t i = 0; i < sp.dim(); ++i)
        if (sp.level_of(i) <= max_level) v(static_cast<Eigen::Index>(i)) = Complex(g(rng), g(rng));
    return v;
}

CMatrix centered(const StateNumeric& w, CMatrix x) {
    Complex s = w(x);
    return x - s * CMatrix::Identity(x.rows(), x.cols());
}

}  // namespace

TEST_CASE("CP maps and states") {
    std::mt19937_64 rng(1);
    auto phi = CPMapNumeric::random_unital(rng, 2, 2, 2);
    CHECK(phi.unital);
    CHECK(phi.kraus().size() == 2);
    CHECK(CPMapNumeric::depolarizing(2).kraus().size() == 4);
    CHECK(CPMapNumeric::identity(2).kraus().size() == 1);
    CMatrix a = random_matrix(rng, 2, 2);
    CHECK(max_entry(CPMapNumeric::depolarizing(2)(a) - 0.5 * a.trace() * CMatrix::Identity(2, 2)) < 1e-12);
    CHECK_THROWS_AS(StateNumeric::from_density(CMatrix::Identity(2, 2)), HilbertError);
    CHECK_FALSE(StateNumeric::from_density((CMatrix(2, 2) << 1, 0, 0, 0).finished()).faithful);
}

TEST_CASE("GNS") {
    std::mt19937_64 rng(2);
    auto g = gns(StateNumeric::tracial(2));
    CHECK(g.dim == 4);
    CHECK(std::abs(g.omega_vec.norm() - 1.0) < 1e-14);
    auto w = StateNumeric::random_faithful(rng, 2);
    auto h = gns(w);
    for (int i = 0; i < 50; ++i) {
        CMatrix b1 = random_matrix(rng, 2, 2), b2 = random_matrix(rng, 2, 2);
        CHECK(max_entry(h.pi_R(b1 * b2) - h.pi_R(b1) * h.pi_R(b2)) < 1e-12);
        CHECK(std::abs(h.omega_vec.dot(h.pi_R(b1) * h.omega_vec) - w(b1)) < 1e-12);
    }
    CHECK_THROWS_AS(gns(StateNumeric::from_density((CMatrix(2, 2) << 1, 0, 0, 0).finished())), HilbertError);
}

TEST_CASE("Stinespring") {
    std::mt19937_64 rng(3);
    auto w = StateNumeric::random_faithful(rng, 2);
    auto g = gns(w);
    auto phi = CPMapNumeric::random_unital(rng, 2, 2, 2);
    auto s = stinespring_minimal(phi, g);
    CHECK(max_entry(s.V.adjoint() * s.V - CMatrix::Identity(4, 4)) < 1e-10);
    CHECK(s.span_dimension() == s.K_dim);
    for (int i = 0; i < 20; ++i) {
        CMatrix a = random_matrix(rng, 2, 2);
        CHECK(max_entry(s.V.adjoint() * s.pi_L(a) * s.V - g.pi_R(phi(a))) < 1e-10);
    }
    auto id = stinespring_minimal(CPMapNumeric::identity(2), g);
    CHECK(id.K_dim == g.dim);
    CHECK(max_entry(id.V * id.V.adjoint() - CMatrix::Identity(4, 4)) < 1e-10);
    CMatrix a = random_matrix(rng, 2, 2);
    CHECK(max_entry(id.V.adjoint() * id.pi_L(a) * id.V - g.pi_R(a)) < 1e-10);
    CHECK(stinespring_minimal(CPMapNumeric::depolarizing(2), g).rank == 4);
}

TEST_CASE("product space layout") {
    CHECK(product_space_dimension(4, 2, 1) == 45);
    std::mt19937_64 rng(4);
    ProductSpace sp(CPMapNumeric::random_unital(rng, 2, 2, 2), StateNumeric::random_faithful(rng, 2), 3);
    CHECK(sp.dim_h() == 4);
    CHECK(sp.dim_l() == 4);
    CHECK(sp.dim() == product_space_dimension(3, 4, 3));
    std::size_t next = 0;
    for (const auto& s : sp.summands()) {
        CHECK(s.offset == next);
        next += s.size;
    }
    CHECK(next == sp.dim());
    int h;
    std::vector<int> seq;
    for (std::size_t i = 0; i < sp.dim(); i += 7) {
        sp.decode(i, h, seq);
        CHECK(sp.index(h, seq) == i);
    }
    CHECK(sp.h_prime().cols() == 0);
    CHECK_THROWS_AS(ProductSpace(CPMapNumeric::identity(2), StateNumeric::tracial(2), 3), HilbertError);
}

TEST_CASE("block representations") {
    std::mt19937_64 rng(5);
    ProductSpace sp(CPMapNumeric::random_unital(rng, 2, 2, 2), StateNumeric::random_faithful(rng, 2), 4);
    const auto& w = sp.omega();
    CVector v = random_vector_below(sp, rng, 4);
    CHECK(max_entry(sp.psi_R(CMatrix::Identity(2, 2), v) - v) < 1e-14);
    CHECK(max_entry(sp.psi_L(CMatrix::Identity(2, 2), random_vector_below(sp, rng, 3)) -
                    random_vector_below(sp, rng, -1)) > 0);  // sanity: distinct vectors

    CVector safe = random_vector_below(sp, rng, 1);
    for (int i = 0; i < 10; ++i) {
        CMatrix a1 = random_matrix(rng, 2, 2), a2 = random_matrix(rng, 2, 2);
        CMatrix b1 = random_matrix(rng, 2, 2), b2 = random_matrix(rng, 2, 2);
        Track t;
        CVector lhs = sp.psi_L(a1 * a2, safe, &t);
        CHECK_FALSE(t.overflow);
        CHECK(max_entry(lhs - sp.psi_L(a1, sp.psi_L(a2, safe))) < 1e-10);
        CHECK(max_entry(sp.psi_R(b1 * b2, v) - sp.psi_R(b1, sp.psi_R(b2, v))) < 1e-10);
        CHECK(max_entry(sp.psi_L(CMatrix::Identity(2, 2), safe) - safe) < 1e-14);
    }

    // [psi_L(a) - psi_R(phi(a))] psi_R(b) maps E_n into E_n + E_{n+1}
    for (int n = 0; n < 3; ++n) {
        CVector zeta = CVector::Zero(static_cast<Eigen::Index>(sp.dim()));
        for (const auto& s : sp.summands())
            if (s.level == n && s.name.rfind("L+", 0) == 0)
                for (std::size_t i = 0; i < s.size; ++i) zeta(static_cast<Eigen::Index>(s.offset + i)) = Complex(1.0 + i, 0.5);
        CMatrix a = random_matrix(rng, 2, 2), b = centered(w, random_matrix(rng, 2, 2));
        CVector x = sp.psi_R(b, zeta);
        CVector y = sp.psi_L(a, x) - sp.psi_R(sp.phi()(a), x);
        double outside = 0;
        for (const auto& s : sp.summands()) {
            bool allowed = (s.level == n || s.level == n + 1) && s.name.rfind("L+", 0) == 0;
            if (!allowed) outside = std::max(outside, max_entry(CVector(y.segment(static_cast<Eigen::Index>(s.offset), static_cast<Eigen::Index>(s.size)))));
        }
        CHECK(outside < 1e-12);
    }

    // overflow is flagged at the top level
    Track t;
    CVector top = random_vector_below(sp, rng, 4);
    sp.psi_L(random_matrix(rng, 2, 2), top, &t);
    CHECK(t.overflow);
}

TEST_CASE("Sauvageot products of operators") {
    std::mt19937_64 rng(6);
    ProductSpace sp(CPMapNumeric::random_unital(rng, 2, 2, 2), StateNumeric::random_faithful(rng, 2), 1);
    const auto n = static_cast<Eigen::Index>(sp.dim());
    CVector v = random_vector_below(sp, rng, 1);
    CMatrix ih = CMatrix::Identity(4, 4), il = CMatrix::Identity(4, 4), ik = CMatrix::Identity(8, 8);
    CHECK(max_entry(sp.star(ih, il, v) - v) < 1e-14);
    CHECK(max_entry(sp.hstar(ik, il, v) - v) < 1e-14);

    auto dense = [&](auto&& op) {
        CMatrix m(n, n);
        for (Eigen::Index j = 0; j < n; ++j) m.col(j) = op(sp.basis(static_cast<std::size_t>(j)));
        return m;
    };
    auto norm = [](const CMatrix& m) {
        return std::sqrt(Eigen::SelfAdjointEigenSolver<CMatrix>(m.adjoint() * m).eigenvalues().maxCoeff());
    };
    // contractions of norm exactly 1
    auto contraction = [&rng] {
        CMatrix m = random_matrix(rng, 4, 4);
        return CMatrix(m / Eigen::JacobiSVD<CMatrix>(m).singularValues()(0));
    };
    for (int i = 0; i < 5; ++i) {
        CMatrix s1 = random_matrix(rng, 4, 4), s2 = random_matrix(rng, 4, 4);
        CMatrix v1 = contraction(), v2 = contraction();
        CHECK(max_entry(sp.star(s2, v2, sp.star(s1, v1, v)) - sp.star(s2 * s1, v2 * v1, v)) < 1e-10);
    }
    for (int i = 0; i < 50; ++i) {
        CMatrix s = random_matrix(rng, 4, 4), t = random_matrix(rng, 8, 8), c = contraction();
        CMatrix m = dense([&](const CVector& x) { return sp.star(s, c, x); });
        CHECK(norm(m) <= norm(s) * norm(c) + 1e-10);
        CHECK(max_entry(m.adjoint() - dense([&](const CVector& x) { return sp.star(s.adjoint(), c.adjoint(), x); })) < 1e-12);
        CHECK(norm(dense([&](const CVector& x) { return sp.hstar(t, c, x); })) <= norm(t) * norm(c) + 1e-10);
    }
    // V^+ fixes Omega, so a strict contraction does not shrink S * V: S * 0 still has norm |S|.
    CMatrix s = random_matrix(rng, 4, 4);
    CHECK(std::abs(norm(dense([&](const CVector& x) { return sp.star(s, CMatrix::Zero(4, 4), x); })) - norm(s)) < 1e-10);
}

TEST_CASE("corner map and retraction") {
    std::mt19937_64 rng(7);
    ProductSpace sp(CPMapNumeric::random_unital(rng, 2, 2, 2), StateNumeric::random_faithful(rng, 2), 4);
    const auto& w = sp.omega();
    const auto& phi = sp.phi();
    CVector v = random_vector_below(sp, rng, 2);
    for (int i = 0; i < 50; ++i) {
        CMatrix a = random_matrix(rng, 2, 2), b1 = random_matrix(rng, 2, 2), b2 = random_matrix(rng, 2, 2);
        Operator L = [&](const CVector& x) { return sp.psi_L(a, x); };
        Operator Rphi = [&](const CVector& x) { return sp.psi_R(phi(a), x); };
        CHECK(max_entry(sp.corner(L, v) - sp.corner(Rphi, v)) < 1e-10);
        Operator C = [&](const CVector& x) { return sp.corner(L, x); };
        CHECK(max_entry(sp.corner(C, v) - sp.corner(L, v)) < 1e-12);
        Operator sandwich = [&](const CVector& x) { return sp.psi_R(b1, sp.psi_L(a, sp.psi_R(b2, x))); };
        CHECK(max_entry(sp.corner(sandwich, v) - sp.psi_R(b1, sp.corner(L, sp.psi_R(b2, v)))) < 1e-10);
        CHECK(max_entry(sp.theta([&](const CVector& x) { return sp.psi_R(b1, x); }).value - b1) < 1e-10);
        auto th = sp.theta(L);
        CHECK(max_entry(th.value - phi(a)) < 1e-9);
        CHECK(th.residual < 1e-10);
    }

    // vanishing on alternating centered words
    for (int i = 0; i < 20; ++i) {
        CMatrix b0 = random_matrix(rng, 2, 2);
        std::vector<CMatrix> as, bs;
        for (int k = 0; k < 3; ++k) {
            as.push_back(random_matrix(rng, 2, 2));
            bs.push_back(k == 0 ? random_matrix(rng, 2, 2) : centered(w, random_matrix(rng, 2, 2)));
        }
        Operator T = [&](const CVector& x) {
            CVector y = x;
            for (int k = 0; k < 3; ++k) {
                y = sp.psi_R(bs[static_cast<std::size_t>(k)], y);
                y = sp.psi_L(as[static_cast<std::size_t>(k)], y) - sp.psi_R(phi(as[static_cast<std::size_t>(k)]), y);
            }
            return sp.psi_R(b0, y);
        };
        CHECK(max_entry(sp.corner(T, v)) < 1e-9);
    }
}

TEST_CASE("numeric expectation against the right moment") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 3; ++trial) {
        ProductSpace sp(CPMapNumeric::random_unital(rng, 2, 2, 2), StateNumeric::random_faithful(rng, 2), 5);
        InterpretationContext ctx;
        ctx.dim = 2;
        for (std::uint32_t j = 0; j <= 3; ++j) {
            ctx.set(Algebra::A, j, random_matrix(rng, 2, 2));
            ctx.set(Algebra::B, j, random_matrix(rng, 2, 2));
        }
        ctx.rho = [&sp](const CMatrix& x) { return sp.phi()(x); };
        ctx.nu = [&sp](const CMatrix& x) { return sp.omega()(x); };
        CHECK(max_entry(sp.numeric_expectation({}) - CMatrix::Identity(2, 2)) < 1e-14);
        CHECK(max_entry(sp.numeric_expectation({{Side::R, ctx.generators.at({Algebra::B, 1})}}) -
                        ctx.generators.at({Algebra::B, 1})) < 1e-10);
        for (std::size_t l = 0; l <= 1; ++l) {
            RWord x = RWord::generic(l);
            std::vector<Letter> word;
            for (std::size_t j = 0; j <= l; ++j) {
                word.push_back({Side::R, ctx.generators.at({Algebra::B, static_cast<std::uint32_t>(j)})});
                if (j < l) word.push_back({Side::L, ctx.generators.at({Algebra::A, static_cast<std::uint32_t>(j + 1)})});
            }
            CHECK(max_entry(sp.numeric_expectation(word) - evaluate_numeric(lm(x), ctx)) < 1e-8);
        }
        CHECK_THROWS_AS(sp.numeric_expectation(std::vector<Letter>(4, {Side::L, CMatrix::Identity(2, 2)})), HilbertError);
    }
}

TEST_CASE("truncation safety") {
    std::mt19937_64 rng(9);
    auto phi = CPMapNumeric::random_unital(rng, 2, 2, 2);
    auto w = StateNumeric::random_faithful(rng, 2);
    ProductSpace small(phi, w, 4), big(phi, w, 6);
    std::vector<Letter> word;
    for (int k = 0; k < 2; ++k) word.push_back({k % 2 ? Side::R : Side::L, random_matrix(rng, 2, 2)});
    CMatrix a = small.numeric_expectation(word), b = big.numeric_expectation(word);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("discontinuity") {
    std::mt19937_64 rng(10);
    ProductSpace sp(CPMapNumeric::random_unital(rng, 2, 2, 2), StateNumeric::tracial(2), 2);
    CMatrix z = CMatrix::Zero(2, 2);
    z(0, 0) = 1;
    z(1, 1) = -1;
    auto g = sp.discontinuity_gap(z);
    CHECK(std::abs(g.rhs - 1.0) < 1e-12);
    CHECK(g.lhs >= g.rhs - 1e-8);
    CHECK_THROWS_AS(sp.discontinuity_gap(CMatrix::Identity(2, 2)), HilbertError);
    for (int i = 0; i < 20; ++i) {
        CMatrix a = centered(sp.omega(), random_matrix(rng, 2, 2));
        auto r = sp.discontinuity_gap(a);
        CHECK(std::abs(r.rhs - std::sqrt(std::abs(sp.omega()(a.adjoint() * a)))) < 1e-10);
        CHECK(r.lhs >= r.rhs - 1e-8);
    }
}
