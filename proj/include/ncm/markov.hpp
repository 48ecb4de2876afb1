#pragma once

// Finite-state Markov chains: transition semigroups, the maps theta_t and the
// tensor-product retractions eps_gamma on grid algebras.

#include "ncm/rational.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace ncm::markov {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

class MarkovError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RateMatrix {
    Matrix Q;
    Eigen::Index states() const { return Q.rows(); }
    // Square, off-diagonal >= 0, row sums 0 within 1e-12.
    static RateMatrix from(const Matrix& q);
};

Matrix semigroup_at(const RateMatrix& q, const Rational& t);
Matrix semigroup_at(const RateMatrix& q, double t);

// (theta_t F)(x) = sum_y P_t(x, y) F(y, x).
Vector theta_t(const RateMatrix& q, const Matrix& F, const Rational& t);

// A function on S^gamma. Coordinate k belongs to gamma[k]; the first coordinate
// is the most significant in `values`.
struct GridAlgebraElement {
    std::vector<Rational> gamma;
    Eigen::Index states = 0;
    Vector values;

    std::size_t size() const { return gamma.size(); }
    static GridAlgebraElement ones(std::vector<Rational> gamma, Eigen::Index states);
    static GridAlgebraElement simple(std::vector<Rational> gamma, const std::vector<Vector>& factors);
};

// Tensor with ones in the coordinates of `gamma` missing from x.gamma.
GridAlgebraElement embed(const GridAlgebraElement& x, const std::vector<Rational>& gamma);
GridAlgebraElement shift(const GridAlgebraElement& x, const Rational& t);

// Expectation of the path functional given the state at time 0:
// P_{t1}(f1 P_{t2-t1}(f2 ... P_{tn-tn-1}(fn))) on simple tensors.
Vector epsilon(const RateMatrix& q, const GridAlgebraElement& x);
// Same quantity by summing over all of S^n against the path kernel.
Vector epsilon_path_sum(const RateMatrix& q, const GridAlgebraElement& x);

// max |eps_gamma(embed(x)) - eps_beta(x)|.
double consistency_error(const RateMatrix& q, const GridAlgebraElement& x, const std::vector<Rational>& gamma);

struct StrongDilationReport {
    std::vector<Rational> gamma;
    Rational t;
    Vector lhs;  // eps over {0} u (gamma + t), applied to the shifted element
    Vector rhs;  // P_t applied to eps_gamma
    double max_error = 0;
    bool pass = false;
};

// Requires 0 in gamma. `time_error` perturbs the time used on the right-hand
// side; any nonzero value is a negative control.
StrongDilationReport strong_dilation_check(const RateMatrix& q, const GridAlgebraElement& x, const Rational& t,
                                           double tol = 1e-10, double time_error = 0);

// Three functions at times (1, 0, 1) on a chain with initial law mu. Returns the
// sup norm of the difference between the Sauvageot moment of the word and the
// tensor-product retraction of the same commuting word.
double sauvageot_tensor_gap(const RateMatrix& q, const Vector& mu, const std::vector<Vector>& f);

Matrix parse_rate_matrix_json(const std::string& text);

}  // namespace ncm::markov
