#pragma once

// Operators in span{I, x, p, x^2, p^2, xp + px}. This span is closed under
// commutators, so exp(-G) H exp(G) with G and H in it stays in it and can be
// computed exactly as a 6x6 matrix exponential acting on coefficients. That
// avoids forming exp(G) for unbounded (squeezing) generators, whose truncated
// Fock matrices are far too ill-conditioned to multiply out.

#include <Eigen/Dense>

#include "swanson/fockspace.hpp"

namespace swanson {

using Coeff6 = Eigen::Matrix<Complex, 6, 1>;
using Adjoint6 = Eigen::Matrix<Complex, 6, 6>;

struct QuadraticOperator {
    Complex identity{0.0};
    Complex x{0.0};
    Complex p{0.0};
    Complex xx{0.0};
    Complex pp{0.0};
    Complex xp_sym{0.0};  // coefficient of (xp + px)

    Coeff6 vec() const;
    static QuadraticOperator from_vec(const Coeff6& v);

    QuadraticOperator operator+(const QuadraticOperator& o) const { return from_vec(vec() + o.vec()); }
    QuadraticOperator operator-(const QuadraticOperator& o) const { return from_vec(vec() - o.vec()); }
    QuadraticOperator operator*(Complex s) const { return from_vec(s * vec()); }
};

/// nu1 p^2 + nu2 x^2 + i nu3 (xp+px) + i nu4 p + nu5 x + constant.
QuadraticOperator from_phase_space(const PhaseSpaceParams& nu, Complex constant = 0.0);

/// (scale/(m0 w0)) (p^2 + m0^2 w0^2 x^2) + constant.
QuadraticOperator oscillator_operator(Complex scale, const OscillatorUnits& u, Complex constant = 0.0);

FockOperator assemble(const QuadraticOperator& q, const LadderMatrices& ops);

/// Least-squares coefficients of the leading `block` x `block` part of M in the
/// six basis matrices. `residual` is the relative size of what is left over.
struct Projection {
    QuadraticOperator op;
    double residual = 0.0;
};
Projection project(const Matrix& M, const LadderMatrices& ops, Eigen::Index block);

/// Matrix of X -> [G, X] in the six-element basis, read off from truncated
/// Fock commutators on the interior block. `closure_residual` is the worst
/// relative projection residual over the six columns.
struct AdjointMatrix {
    Adjoint6 ad;
    double closure_residual = 0.0;
};
AdjointMatrix adjoint_matrix(const FockOperator& G, const LadderMatrices& ops, Eigen::Index block);

/// exp(-G) H exp(G) = exp(-ad_G) H.
struct Conjugation {
    QuadraticOperator op;
    double closure_residual = 0.0;
};
Conjugation conjugate_in_algebra(const FockOperator& G, const QuadraticOperator& H, const LadderMatrices& ops,
                                 Eigen::Index block);

}  // namespace swanson
