#include "ncm/product_space.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <climits>

namespace ncm::hilbert {

namespace {

// Orthonormal completion whose first column is the unit vector v.
CMatrix unitary_with_first(const CVector& v) {
    const Eigen::Index n = v.size();
    CMatrix m(n, n + 1);
    m.col(0) = v;
    m.rightCols(n) = CMatrix::Identity(n, n);
    Eigen::HouseholderQR<CMatrix> qr(m);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    q.col(0) = v;  // parallel to v up to a phase
    return q;
}

}  // namespace

std::size_t product_space_dimension(std::size_t dim_hminus, std::size_t dim_l, int trunc) {
    std::size_t total = dim_hminus + 1, power = 1;
    for (int n = 0; n <= trunc; ++n) {
        total += dim_l * power * (1 + dim_hminus);
        power *= dim_l + 1;
    }
    return total;
}

ProductSpace::ProductSpace(CPMapNumeric phi, StateNumeric omega, int trunc)
    : phi_(std::move(phi)), omega_(std::move(omega)), gns_(gns(omega_)), st_(stinespring_minimal(phi_, gns_)),
      trunc_(trunc) {
    if (trunc < 1) throw HilbertError("product space: truncation level must be at least 1");
    dh_ = gns_.dim;
    dk_ = st_.K_dim;
    dl_ = dk_ - dh_;
    if (dl_ <= 0) throw HilbertError("product space: L = K - VH is zero (phi is a homomorphism)");

    uh_ = unitary_with_first(gns_.omega_vec);
    Eigen::HouseholderQR<CMatrix> qr(st_.V);
    CMatrix qk = qr.householderQ() * CMatrix::Identity(dk_, dk_);
    uk_.resize(dk_, dk_);
    uk_.leftCols(dh_) = st_.V * uh_;
    uk_.rightCols(dl_) = qk.rightCols(dl_);

    CMatrix cyc(dh_, gns_.d * gns_.d);
    for (int i = 0; i < gns_.d; ++i)
        for (int j = 0; j < gns_.d; ++j) {
            CMatrix e = CMatrix::Zero(gns_.d, gns_.d);
            e(i, j) = 1;
            cyc.col(i + gns_.d * j) = gns_.pi_R(e) * gns_.omega_vec;
        }
    Eigen::JacobiSVD<CMatrix> svd(cyc, Eigen::ComputeFullU);
    svd.setThreshold(1e-10);
    const auto rank = svd.rank();
    hprime_ = svd.matrixU().rightCols(dh_ - rank);
    hprime_proj_ = uh_.adjoint() * hprime_ * hprime_.adjoint() * uh_;

    summands_.push_back({"H+", -1, 0, static_cast<std::size_t>(dh_)});
    std::size_t offset = static_cast<std::size_t>(dh_), esize = static_cast<std::size_t>(dl_);
    for (int n = 0; n <= trunc_; ++n) {
        level_offset_.push_back(offset);
        level_block_.push_back(esize);
        std::string tag = std::to_string(n);
        summands_.push_back({"L+^" + tag + "(x)L", n, offset, esize});
        summands_.push_back({"H-(x)L+^" + tag + "(x)L", n, offset + esize, esize * static_cast<std::size_t>(dh_ - 1)});
        offset += esize * static_cast<std::size_t>(dh_);
        esize *= static_cast<std::size_t>(dl_ + 1);
    }
    total_ = offset;
}

int ProductSpace::level_of(std::size_t idx) const {
    if (idx < static_cast<std::size_t>(dh_)) return -1;
    int n = 0;
    while (n < trunc_ && idx >= level_offset_[static_cast<std::size_t>(n + 1)]) ++n;
    return n;
}

std::size_t ProductSpace::index(int h, const std::vector<int>& seq) const {
    if (seq.empty()) return static_cast<std::size_t>(h);
    const std::size_t n = seq.size() - 1;
    std::size_t e = 0;
    for (std::size_t i = 0; i < n; ++i) e = e * static_cast<std::size_t>(dl_ + 1) + static_cast<std::size_t>(seq[i]);
    e = e * static_cast<std::size_t>(dl_) + static_cast<std::size_t>(seq[n] - 1);
    return level_offset_[n] + static_cast<std::size_t>(h) * level_block_[n] + e;
}

void ProductSpace::decode(std::size_t idx, int& h, std::vector<int>& seq) const {
    seq.clear();
    int n = level_of(idx);
    if (n < 0) {
        h = static_cast<int>(idx);
        return;
    }
    std::size_t rel = idx - level_offset_[static_cast<std::size_t>(n)];
    std::size_t esize = level_block_[static_cast<std::size_t>(n)];
    h = static_cast<int>(rel / esize);
    std::size_t e = rel % esize;
    seq.assign(static_cast<std::size_t>(n + 1), 0);
    seq[static_cast<std::size_t>(n)] = static_cast<int>(e % static_cast<std::size_t>(dl_)) + 1;
    e /= static_cast<std::size_t>(dl_);
    for (int i = n - 1; i >= 0; --i) {
        seq[static_cast<std::size_t>(i)] = static_cast<int>(e % static_cast<std::size_t>(dl_ + 1));
        e /= static_cast<std::size_t>(dl_ + 1);
    }
}

CVector ProductSpace::basis(std::size_t idx) const {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(total_));
    v(static_cast<Eigen::Index>(idx)) = 1;
    return v;
}

CVector ProductSpace::embed_h(const CVector& h) const {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(total_));
    v.head(dh_) = uh_.adjoint() * h;
    return v;
}

void ProductSpace::note(Track* t, int level) const {
    if (t && level > t->max_level) t->max_level = level;
}

CVector ProductSpace::apply_h(const CMatrix& s, const CVector& x, Track* t, int only_level) const {
    CVector out = CVector::Zero(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x(i) == Complex(0)) continue;
        const auto idx = static_cast<std::size_t>(i);
        int n = level_of(idx);
        if (only_level != INT_MIN && n != only_level) continue;
        std::size_t stride = n < 0 ? 1 : level_block_[static_cast<std::size_t>(n)];
        std::size_t base = n < 0 ? 0 : level_offset_[static_cast<std::size_t>(n)];
        std::size_t rel = idx - base;
        int h = static_cast<int>(rel / stride);
        std::size_t low = rel % stride;
        note(t, n);
        for (int hp = 0; hp < dh_; ++hp) {
            Complex c = s(hp, h);
            if (c == Complex(0)) continue;
            out(static_cast<Eigen::Index>(base + static_cast<std::size_t>(hp) * stride + low)) += c * x(i);
        }
    }
    return out;
}

CVector ProductSpace::apply_k(const CMatrix& tk, const CVector& x, Track* t) const {
    CVector out = CVector::Zero(x.size());
    int h;
    std::vector<int> seq, tail, outseq;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x(i) == Complex(0)) continue;
        decode(static_cast<std::size_t>(i), h, seq);
        int k;
        if (h != 0) {
            k = h;
            tail = seq;
        } else if (seq.empty()) {
            k = 0;
            tail.clear();
        } else {
            k = seq[0] == 0 ? 0 : dh_ - 1 + seq[0];
            tail.assign(seq.begin() + 1, seq.end());
        }
        for (int kp = 0; kp < dk_; ++kp) {
            Complex c = tk(kp, k);
            if (c == Complex(0)) continue;
            int hp;
            if (kp >= 1 && kp < dh_) {
                hp = kp;
                outseq = tail;
            } else {
                hp = 0;
                int l = kp == 0 ? 0 : kp - dh_ + 1;
                outseq.assign(1, l);
                outseq.insert(outseq.end(), tail.begin(), tail.end());
                if (tail.empty() && l == 0) outseq.clear();
            }
            int level = static_cast<int>(outseq.size()) - 1;
            if (level > trunc_) {
                if (t) t->overflow = true;
                continue;
            }
            note(t, level);
            out(static_cast<Eigen::Index>(index(hp, outseq))) += c * x(i);
        }
    }
    return out;
}

CVector ProductSpace::apply_tail(const CMatrix& v, const CVector& x, bool skip_k_slot) const {
    if (v.rows() != dl_ || v.cols() != dl_) throw HilbertError("contraction on L: dimension mismatch");
    CVector cur = x;
    int h;
    std::vector<int> seq;
    for (int p = 0; p <= trunc_; ++p) {
        CVector out = CVector::Zero(x.size());
        for (Eigen::Index i = 0; i < cur.size(); ++i) {
            if (cur(i) == Complex(0)) continue;
            decode(static_cast<std::size_t>(i), h, seq);
            const auto pos = static_cast<std::size_t>(p);
            if (seq.size() <= pos || seq[pos] == 0 || (skip_k_slot && h == 0 && p == 0)) {
                out(i) += cur(i);
                continue;
            }
            int l = seq[pos];
            for (int lp = 1; lp <= dl_; ++lp) {
                Complex c = v(lp - 1, l - 1);
                if (c == Complex(0)) continue;
                seq[pos] = lp;
                out(static_cast<Eigen::Index>(index(h, seq))) += c * cur(i);
            }
        }
        cur = std::move(out);
    }
    return cur;
}

CVector ProductSpace::star(const CMatrix& s, const CMatrix& v, const CVector& x, Track* t) const {
    if (s.rows() != dh_ || s.cols() != dh_) throw HilbertError("S * V: dimension mismatch");
    return apply_tail(v, apply_h(uh_.adjoint() * s * uh_, x, t, INT_MIN), false);
}

CVector ProductSpace::hstar(const CMatrix& tk, const CMatrix& v, const CVector& x, Track* t) const {
    if (tk.rows() != dk_ || tk.cols() != dk_) throw HilbertError("T (*) V: dimension mismatch");
    return apply_k(uk_.adjoint() * tk * uk_, apply_tail(v, x, true), t);
}

CVector ProductSpace::psi_R(const CMatrix& b, const CVector& x, Track* t) const {
    return apply_h(uh_.adjoint() * gns_.pi_R(b) * uh_, x, t, INT_MIN);
}

CVector ProductSpace::psi_L(const CMatrix& a, const CVector& x, Track* t) const {
    return apply_k(uk_.adjoint() * st_.pi_L(a) * uk_, x, t);
}

CVector ProductSpace::apply_word(const std::vector<Letter>& word, const CVector& x, Track* t) const {
    CVector v = x;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        v = it->side == Side::L ? psi_L(it->x, v, t) : psi_R(it->x, v, t);
    return v;
}

CVector ProductSpace::corner(const Operator& op, const CVector& x) const {
    CVector y = CVector::Zero(x.size());
    y.head(dh_) = x.head(dh_);
    CVector r = CVector::Zero(x.size());
    r.head(dh_) = op(y).head(dh_);
    if (hprime_.cols() == 0) return r;
    for (int n = 0; n <= trunc_; ++n) {
        CVector yn = apply_h(hprime_proj_, x, nullptr, n);
        r += apply_h(hprime_proj_, op(yn), nullptr, n);
    }
    return r;
}

ThetaResult ProductSpace::theta(const Operator& op) const {
    // pi_R is injective, so the H block of the corner determines theta.
    CMatrix m(dh_, dh_);
    for (int j = 0; j < dh_; ++j) m.col(j) = op(basis(static_cast<std::size_t>(j))).head(dh_);
    CMatrix target = uh_ * m * uh_.adjoint();
    const int d = gns_.d;
    CMatrix design(dh_ * dh_, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            CMatrix e = CMatrix::Zero(d, d);
            e(i, j) = 1;
            CMatrix p = gns_.pi_R(e);
            design.col(i + d * j) = Eigen::Map<const CVector>(p.data(), dh_ * dh_);
        }
    Eigen::JacobiSVD<CMatrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    ThetaResult r;
    r.condition = sv(0) / sv(sv.size() - 1);
    if (!(r.condition < 1e8)) throw HilbertError("theta: ill-conditioned solve");
    CVector rhs = Eigen::Map<const CVector>(target.data(), dh_ * dh_);
    CVector sol = svd.solve(rhs);
    r.residual = (design * sol - rhs).cwiseAbs().maxCoeff();
    r.value = Eigen::Map<const CMatrix>(sol.data(), d, d);
    return r;
}

CMatrix ProductSpace::numeric_expectation(const std::vector<Letter>& word) const {
    if (static_cast<int>(word.size()) + 1 >= trunc_) throw HilbertError("word too long for the truncation level");
    if (word.empty()) return CMatrix::Identity(gns_.d, gns_.d);
    return theta([this, &word](const CVector& x) { return apply_word(word, x); }).value;
}

GapResult ProductSpace::discontinuity_gap(const CMatrix& a) const {
    if (std::abs(omega_(a)) > 1e-10) throw HilbertError("discontinuity gap: omega(a) != 0");
    if (a.norm() == 0) throw HilbertError("discontinuity gap: a = 0");
    const std::size_t cols = level_offset_[1];
    const std::size_t rows = trunc_ >= 2 ? level_offset_[2] : total_;
    CMatrix d(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t j = 0; j < cols; ++j) {
        CVector e = basis(j);
        CVector diff = psi_L(a, e) - psi_R(a, e);
        d.col(static_cast<Eigen::Index>(j)) = diff.head(static_cast<Eigen::Index>(rows));
    }
    GapResult g;
    g.lhs = Eigen::JacobiSVD<CMatrix>(d).singularValues()(0);
    g.rhs = (gns_.pi_R(a) * gns_.omega_vec).norm();
    return g;
}

}  // namespace ncm::hilbert
