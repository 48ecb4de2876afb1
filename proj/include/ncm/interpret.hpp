#pragma once

// Numeric evaluation of expressions by substituting matrices.

#include "ncm/expr.hpp"
#include "ncm/text.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <map>
#include <utility>

namespace ncm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

class InterpretError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InterpretationContext {
    Eigen::Index dim = 0;
    std::map<std::pair<Algebra, std::uint32_t>, CMatrix> generators;
    std::function<CMatrix(const CMatrix&)> rho;
    std::function<CMatrix(const CMatrix&)> cap_r;
    std::function<CMatrix(const Rational&, const CMatrix&)> phi;
    std::function<Complex(const CMatrix&)> omega;
    std::function<Complex(const CMatrix&)> nu;

    void set(Algebra alg, std::uint32_t id, CMatrix m) { generators[{alg, id}] = std::move(m); }
};

CMatrix evaluate_numeric(const Expr& e, const InterpretationContext& ctx);
CMatrix evaluate_numeric(const RawExpr& e, const InterpretationContext& ctx);
CMatrix evaluate_numeric(const Word& w, const InterpretationContext& ctx);

}  // namespace ncm
