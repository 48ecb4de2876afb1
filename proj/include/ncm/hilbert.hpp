#pragma once

// Finite-dimensional CP-tuples over full matrix algebras: states, unital CP
// maps given by Choi matrices, GNS and minimal Stinespring representations.

#include "ncm/interpret.hpp"

#include <random>
#include <vector>

namespace ncm::hilbert {

class HilbertError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// choi = sum_ij E_ij (x) phi(E_ij), blocks of size d_out.
struct CPMapNumeric {
    CMatrix choi;
    int d_in = 0, d_out = 0;
    bool unital = false;

    CMatrix operator()(const CMatrix& a) const;
    std::vector<CMatrix> kraus(double tol = 1e-12) const;  // phi(a) = sum K* a K

    static CPMapNumeric from_kraus(const std::vector<CMatrix>& k);
    static CPMapNumeric identity(int d);
    static CPMapNumeric depolarizing(int d);  // tr(a)/d 1
    static CPMapNumeric random_unital(std::mt19937_64& rng, int d_in, int d_out, int rank);
};

struct StateNumeric {
    CMatrix density;
    bool faithful = false;

    Complex operator()(const CMatrix& b) const { return (density * b).trace(); }

    static StateNumeric from_density(CMatrix rho);
    static StateNumeric tracial(int d);
    static StateNumeric random_faithful(std::mt19937_64& rng, int d);
};

// H = M_d with Omega = rho^{1/2}; index p + d q holds the (p, q) entry.
struct GNSData {
    int d = 0;
    int dim = 0;
    CVector omega_vec;
    CMatrix pi_R(const CMatrix& b) const;
};

GNSData gns(const StateNumeric& omega);

// K = C^d (x) C^r (x) C^{d_A}, V = I (x) W with W the stacked Kraus operators.
struct StinespringData {
    int K_dim = 0;
    int d_a = 0;
    int rank = 0;
    CMatrix V;
    CMatrix pi_L(const CMatrix& a) const;
    int span_dimension() const;  // dim span pi_L(A) V H
};

StinespringData stinespring_minimal(const CPMapNumeric& phi, const GNSData& rep);

CMatrix random_matrix(std::mt19937_64& rng, int rows, int cols);

}  // namespace ncm::hilbert
