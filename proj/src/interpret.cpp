#include "ncm/interpret.hpp"

namespace ncm {

namespace {

CMatrix identity(const InterpretationContext& ctx) { return CMatrix::Identity(ctx.dim, ctx.dim); }

CMatrix apply(const MapSymbol& m, const CMatrix& x, const InterpretationContext& ctx) {
    switch (m.kind) {
        case MapKind::Rho:
            if (!ctx.rho) throw InterpretError("no interpretation for rho");
            return ctx.rho(x);
        case MapKind::CapR:
            if (!ctx.cap_r) throw InterpretError("no interpretation for R");
            return ctx.cap_r(x);
        case MapKind::Phi:
            if (!ctx.phi) throw InterpretError("no interpretation for phi_t");
            return ctx.phi(m.time, x);
    }
    return x;
}

Complex functional(FunctionalKind f, const CMatrix& x, const InterpretationContext& ctx) {
    const auto& fn = f == FunctionalKind::Omega ? ctx.omega : ctx.nu;
    if (!fn) throw InterpretError(f == FunctionalKind::Omega ? "no interpretation for omega" : "no interpretation for nu");
    return fn(x);
}

Complex to_complex(const Rational& q) { return {q.get_d(), 0.0}; }

}  // namespace

CMatrix evaluate_numeric(const Word& w, const InterpretationContext& ctx) {
    CMatrix acc = identity(ctx);
    for (const auto& a : w) {
        CMatrix m;
        if (a.is_generator()) {
            auto it = ctx.generators.find({a.algebra(), a.id()});
            if (it == ctx.generators.end()) {
                throw InterpretError(std::string("no matrix for generator ") +
                                     (a.algebra() == Algebra::A ? "a" : "b") + std::to_string(a.id()));
            }
            m = a.adjoint() ? CMatrix(it->second.adjoint()) : it->second;
        } else {
            m = apply(a.map(), evaluate_numeric(a.arg(), ctx), ctx);
        }
        if (m.rows() != ctx.dim || m.cols() != ctx.dim) throw InterpretError("dimension mismatch");
        acc = acc * m;
    }
    return acc;
}

CMatrix evaluate_numeric(const Expr& e, const InterpretationContext& ctx) {
    CMatrix acc = CMatrix::Zero(ctx.dim, ctx.dim);
    for (const auto& t : e.terms()) {
        Complex c = to_complex(t.coeff);
        for (const auto& s : t.scalars) c *= functional(s.kind, evaluate_numeric(s.arg, ctx), ctx);
        acc += c * evaluate_numeric(t.word, ctx);
    }
    return acc;
}

CMatrix evaluate_numeric(const RawExpr& e, const InterpretationContext& ctx) {
    switch (e.kind) {
        case RawExpr::Kind::Number: return to_complex(e.number) * identity(ctx);
        case RawExpr::Kind::Generator: {
            Word w{Atom::generator(e.algebra, e.id, e.adjoint)};
            return evaluate_numeric(w, ctx);
        }
        case RawExpr::Kind::Sum: {
            CMatrix acc = CMatrix::Zero(ctx.dim, ctx.dim);
            for (const auto& c : e.children) acc += evaluate_numeric(c, ctx);
            return acc;
        }
        case RawExpr::Kind::Product: {
            CMatrix acc = identity(ctx);
            for (const auto& c : e.children) acc = acc * evaluate_numeric(c, ctx);
            return acc;
        }
        case RawExpr::Kind::Map: return apply(e.map, evaluate_numeric(e.children.at(0), ctx), ctx);
        case RawExpr::Kind::Functional:
            return functional(e.functional, evaluate_numeric(e.children.at(0), ctx), ctx) * identity(ctx);
    }
    return identity(ctx);
}

}  // namespace ncm
