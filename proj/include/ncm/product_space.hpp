#pragma once

// Truncated Sauvageot product H^- * L of a represented CP-tuple, with the
// block representations psi_L, psi_R, the corner map and the retraction.
//
// Layout: [H (= (H^-)^+)], then for n = 0..N the level block
// [L^{+n} (x) L, H^- (x) L^{+n} (x) L]. Inside a level an entry is labelled
// (h, l_1 .. l_{n+1}) with h = 0 the vector Omega, l_i = 0 the vector Omega
// of L^+, and l_{n+1} != 0.

#include "ncm/hilbert.hpp"

#include <functional>
#include <string>

namespace ncm::hilbert {

struct Track {
    bool overflow = false;  // some component was pushed above level N
    int max_level = -1;     // -1: only the H summand was touched
};

enum class Side { L, R };

struct Letter {
    Side side;
    CMatrix x;
};

using Operator = std::function<CVector(const CVector&)>;

struct Summand {
    std::string name;
    int level;  // -1 for the H summand
    std::size_t offset, size;
};

struct ThetaResult {
    CMatrix value;
    double residual = 0;
    double condition = 0;
};

struct GapResult {
    double lhs = 0, rhs = 0;
};

std::size_t product_space_dimension(std::size_t dim_hminus, std::size_t dim_l, int trunc);

class ProductSpace {
public:
    ProductSpace(CPMapNumeric phi, StateNumeric omega, int trunc);

    int trunc() const { return trunc_; }
    std::size_t dim() const { return total_; }
    int dim_h() const { return dh_; }
    int dim_l() const { return dl_; }
    const GNSData& gns_data() const { return gns_; }
    const StinespringData& stinespring() const { return st_; }
    const CPMapNumeric& phi() const { return phi_; }
    const StateNumeric& omega() const { return omega_; }
    const std::vector<Summand>& summands() const { return summands_; }
    int level_of(std::size_t index) const;

    std::size_t index(int h, const std::vector<int>& seq) const;
    void decode(std::size_t index, int& h, std::vector<int>& seq) const;
    CVector basis(std::size_t index) const;
    CVector embed_h(const CVector& h) const;  // H summand, original coordinates

    // S * V and T (*) V; S acts on H, T on K (original coordinates), V on L
    // in the orthonormal basis of L chosen here.
    CVector star(const CMatrix& s, const CMatrix& v, const CVector& x, Track* t = nullptr) const;
    CVector hstar(const CMatrix& tk, const CMatrix& v, const CVector& x, Track* t = nullptr) const;
    CVector psi_R(const CMatrix& b, const CVector& x, Track* t = nullptr) const;
    CVector psi_L(const CMatrix& a, const CVector& x, Track* t = nullptr) const;
    CVector apply_word(const std::vector<Letter>& word, const CVector& x, Track* t = nullptr) const;

    CVector corner(const Operator& op, const CVector& x) const;
    ThetaResult theta(const Operator& op) const;
    CMatrix numeric_expectation(const std::vector<Letter>& word) const;
    GapResult discontinuity_gap(const CMatrix& a) const;

    // Orthonormal basis of H' = H - span pi_R(B) Omega (original coordinates).
    const CMatrix& h_prime() const { return hprime_; }

private:
    CPMapNumeric phi_;
    StateNumeric omega_;
    GNSData gns_;
    StinespringData st_;
    int trunc_;
    int dh_, dk_, dl_;
    CMatrix uh_;       // columns: Omega, then H^-
    CMatrix uk_;       // columns: V uh_, then L
    CMatrix hprime_proj_;  // adapted coordinates
    CMatrix hprime_;
    std::vector<std::size_t> level_offset_, level_block_;
    std::vector<Summand> summands_;
    std::size_t total_;

    CVector apply_h(const CMatrix& s_adapted, const CVector& x, Track* t, int only_level) const;
    CVector apply_k(const CMatrix& t_adapted, const CVector& x, Track* t) const;
    CVector apply_tail(const CMatrix& v, const CVector& x, bool skip_k_slot) const;
    void note(Track* t, int level) const;
};

}  // namespace ncm::hilbert
