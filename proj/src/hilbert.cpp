#include "ncm/hilbert.hpp"

#include <Eigen/Eigenvalues>

namespace ncm::hilbert {

namespace {

CMatrix psd_sqrt(const CMatrix& m, bool inverse) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    Eigen::VectorXd f = ev.cwiseSqrt();
    if (inverse) f = f.cwiseInverse();
    return es.eigenvectors() * f.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

CMatrix CPMapNumeric::operator()(const CMatrix& a) const {
    if (a.rows() != d_in || a.cols() != d_in) throw HilbertError("CP map: dimension mismatch");
    CMatrix out = CMatrix::Zero(d_out, d_out);
    for (int i = 0; i < d_in; ++i)
        for (int j = 0; j < d_in; ++j)
            if (a(i, j) != Complex(0)) out += a(i, j) * choi.block(i * d_out, j * d_out, d_out, d_out);
    return out;
}

std::vector<CMatrix> CPMapNumeric::kraus(double tol) const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(choi);
    if (es.eigenvalues().minCoeff() < -1e-10) throw HilbertError("Choi matrix is not positive: map is not CP");
    std::vector<CMatrix> out;
    for (Eigen::Index k = 0; k < choi.rows(); ++k) {
        double lambda = es.eigenvalues()(k);
        if (lambda <= tol) continue;
        CVector u = std::sqrt(lambda) * es.eigenvectors().col(k);
        CMatrix kstar(d_out, d_in);  // column i is block i of u
        for (int i = 0; i < d_in; ++i) kstar.col(i) = u.segment(i * d_out, d_out);
        out.push_back(kstar.adjoint());
    }
    return out;
}

CPMapNumeric CPMapNumeric::from_kraus(const std::vector<CMatrix>& ks) {
    if (ks.empty()) throw HilbertError("no Kraus operators");
    CPMapNumeric m;
    m.d_in = static_cast<int>(ks[0].rows());
    m.d_out = static_cast<int>(ks[0].cols());
    m.choi = CMatrix::Zero(m.d_in * m.d_out, m.d_in * m.d_out);
    for (const auto& k : ks) {
        CVector u(m.d_in * m.d_out);
        CMatrix kstar = k.adjoint();
        for (int i = 0; i < m.d_in; ++i) u.segment(i * m.d_out, m.d_out) = kstar.col(i);
        m.choi += u * u.adjoint();
    }
    m.unital = (m(CMatrix::Identity(m.d_in, m.d_in)) - CMatrix::Identity(m.d_out, m.d_out)).norm() < 1e-10;
    return m;
}

CPMapNumeric CPMapNumeric::identity(int d) { return from_kraus({CMatrix::Identity(d, d)}); }

CPMapNumeric CPMapNumeric::depolarizing(int d) {
    std::vector<CMatrix> ks;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            CMatrix k = CMatrix::Zero(d, d);
            k(i, j) = 1.0 / std::sqrt(static_cast<double>(d));
            ks.push_back(k);
        }
    return from_kraus(ks);
}

CPMapNumeric CPMapNumeric::random_unital(std::mt19937_64& rng, int d_in, int d_out, int rank) {
    std::vector<CMatrix> g;
    CMatrix s = CMatrix::Zero(d_out, d_out);
    for (int k = 0; k < rank; ++k) {
        g.push_back(random_matrix(rng, d_in, d_out));
        s += g.back().adjoint() * g.back();
    }
    CMatrix norm = psd_sqrt(s, true);
    for (auto& k : g) k = k * norm;
    return from_kraus(g);
}

StateNumeric StateNumeric::from_density(CMatrix rho) {
    StateNumeric s;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-10 || std::abs(rho.trace() - Complex(1)) > 1e-10)
        throw HilbertError("not a density matrix");
    s.faithful = es.eigenvalues().minCoeff() > 1e-8;
    s.density = std::move(rho);
    return s;
}

StateNumeric StateNumeric::tracial(int d) { return from_density(CMatrix::Identity(d, d) / static_cast<double>(d)); }

StateNumeric StateNumeric::random_faithful(std::mt19937_64& rng, int d) {
    CMatrix w = random_matrix(rng, d, d);
    CMatrix rho = w * w.adjoint() + 0.1 * CMatrix::Identity(d, d);
    rho /= rho.trace();
    return from_density(rho);
}

CMatrix GNSData::pi_R(const CMatrix& b) const {
    if (b.rows() != d || b.cols() != d) throw HilbertError("pi_R: dimension mismatch");
    CMatrix out = CMatrix::Zero(dim, dim);
    for (int q = 0; q < d; ++q) out.block(q * d, q * d, d, d) = b;
    return out;
}

GNSData gns(const StateNumeric& omega) {
    if (!omega.faithful) throw HilbertError("GNS: state is not faithful");
    GNSData g;
    g.d = static_cast<int>(omega.density.rows());
    g.dim = g.d * g.d;
    CMatrix root = psd_sqrt(omega.density, false);
    g.omega_vec = Eigen::Map<const CVector>(root.data(), g.dim);  // column-major: p + d q
    return g;
}

CMatrix StinespringData::pi_L(const CMatrix& a) const {
    if (a.rows() != d_a || a.cols() != d_a) throw HilbertError("pi_L: dimension mismatch");
    const int outer = K_dim / d_a;
    CMatrix out = CMatrix::Zero(K_dim, K_dim);
    for (int k = 0; k < outer; ++k) out.block(k * d_a, k * d_a, d_a, d_a) = a;
    return out;
}

int StinespringData::span_dimension() const {
    CMatrix cols(K_dim, 0);
    for (int i = 0; i < d_a; ++i)
        for (int j = 0; j < d_a; ++j) {
            CMatrix e = CMatrix::Zero(d_a, d_a);
            e(i, j) = 1;
            CMatrix block = pi_L(e) * V;
            cols.conservativeResize(K_dim, cols.cols() + block.cols());
            cols.rightCols(block.cols()) = block;
        }
    Eigen::JacobiSVD<CMatrix> svd(cols);
    svd.setThreshold(1e-10);
    return static_cast<int>(svd.rank());
}

StinespringData stinespring_minimal(const CPMapNumeric& phi, const GNSData& rep) {
    if (!phi.unital) throw HilbertError("Stinespring: map is not unital");
    if (phi.d_out != rep.d) throw HilbertError("Stinespring: dimension mismatch");
    auto ks = phi.kraus();
    StinespringData s;
    s.d_a = phi.d_in;
    s.rank = static_cast<int>(ks.size());
    const int r = s.rank, da = s.d_a, d = rep.d;
    CMatrix w(r * da, d);
    for (int k = 0; k < r; ++k) w.block(k * da, 0, da, d) = ks[static_cast<std::size_t>(k)];
    s.K_dim = d * r * da;
    s.V = CMatrix::Zero(s.K_dim, rep.dim);
    for (int q = 0; q < d; ++q) s.V.block(q * r * da, q * d, r * da, d) = w;
    if ((s.V.adjoint() * s.V - CMatrix::Identity(rep.dim, rep.dim)).norm() > 1e-10)
        throw HilbertError("Stinespring: V is not an isometry");
    return s;
}

}  // namespace ncm::hilbert
