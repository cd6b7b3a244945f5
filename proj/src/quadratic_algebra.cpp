#include "swanson/quadratic_algebra.hpp"

#include <algorithm>
#include <array>

#include "swanson/errors.hpp"

namespace swanson {

namespace {

const Complex I{0.0, 1.0};

std::array<Matrix, 6> basis(const LadderMatrices& ops) {
    const Matrix& x = ops.x.matrix();
    const Matrix& p = ops.p.matrix();
    const Eigen::Index n = x.rows();
    return {Matrix::Identity(n, n), x, p, x * x, p * p, x * p + p * x};
}

// Columns are the vectorized interior blocks of the basis matrices.
Eigen::MatrixXcd design(const std::array<Matrix, 6>& b, Eigen::Index block) {
    Eigen::MatrixXcd D(block * block, 6);
    for (int j = 0; j < 6; ++j) D.col(j) = b[j].topLeftCorner(block, block).reshaped();
    return D;
}

void check_block(const LadderMatrices& ops, Eigen::Index block) {
    if (block < 3 || block > ops.x.dim())
        throw Error(ErrorKind::DimensionMismatch, "interior block must lie in [3, dim]");
}

}  // namespace

Coeff6 QuadraticOperator::vec() const {
    Coeff6 v;
    v << identity, x, p, xx, pp, xp_sym;
    return v;
}

QuadraticOperator QuadraticOperator::from_vec(const Coeff6& v) { return {v[0], v[1], v[2], v[3], v[4], v[5]}; }

QuadraticOperator from_phase_space(const PhaseSpaceParams& nu, Complex constant) {
    return {constant, nu.nu5, I * nu.nu4, nu.nu2, nu.nu1, I * nu.nu3};
}

QuadraticOperator oscillator_operator(Complex scale, const OscillatorUnits& u, Complex constant) {
    const double mw = u.m0 * u.omega0;
    return {constant, 0.0, 0.0, scale * mw, scale / mw, 0.0};
}

FockOperator assemble(const QuadraticOperator& q, const LadderMatrices& ops) {
    const auto b = basis(ops);
    const Coeff6 v = q.vec();
    Matrix M = Matrix::Zero(b[0].rows(), b[0].cols());
    for (int j = 0; j < 6; ++j) M += v[j] * b[j];
    return FockOperator(std::move(M), ops.x.units());
}

Projection project(const Matrix& M, const LadderMatrices& ops, Eigen::Index block) {
    check_block(ops, block);
    if (M.rows() != ops.x.dim() || M.cols() != ops.x.dim())
        throw Error(ErrorKind::DimensionMismatch, "project: matrix and ladder dimensions differ");
    const Eigen::MatrixXcd D = design(basis(ops), block);
    const Eigen::VectorXcd rhs = M.topLeftCorner(block, block).reshaped();
    const Eigen::VectorXcd c = D.colPivHouseholderQr().solve(rhs);
    const double denom = rhs.norm();
    Projection out;
    out.op = QuadraticOperator::from_vec(c);
    out.residual = denom > 0.0 ? (D * c - rhs).norm() / denom : 0.0;
    return out;
}

AdjointMatrix adjoint_matrix(const FockOperator& G, const LadderMatrices& ops, Eigen::Index block) {
    check_block(ops, block);
    if (G.dim() != ops.x.dim()) throw Error(ErrorKind::DimensionMismatch, "adjoint_matrix: dimension mismatch");
    // Commutators with a quadratic G reach a few levels past the block edge, so
    // the block must stay clear of the truncation edge by that much.
    if (block + 4 > G.dim()) throw Error(ErrorKind::DimensionMismatch, "adjoint_matrix: block too close to dim");
    const auto b = basis(ops);
    const Eigen::MatrixXcd D = design(b, block);
    const auto qr = D.colPivHouseholderQr();
    const Matrix& g = G.matrix();
    AdjointMatrix out;
    for (int j = 0; j < 6; ++j) {
        const Matrix C = g * b[j] - b[j] * g;
        const Eigen::VectorXcd rhs = C.topLeftCorner(block, block).reshaped();
        const Eigen::VectorXcd c = qr.solve(rhs);
        out.ad.col(j) = c;
        const double denom = rhs.norm();
        if (denom > 0.0) out.closure_residual = std::max(out.closure_residual, (D * c - rhs).norm() / denom);
    }
    return out;
}

Conjugation conjugate_in_algebra(const FockOperator& G, const QuadraticOperator& H, const LadderMatrices& ops,
                                 Eigen::Index block) {
    const AdjointMatrix adj = adjoint_matrix(G, ops, block);
    const Matrix E = matrix_exponential(Matrix(-adj.ad));
    const Coeff6 out = E * H.vec();
    if (!out.allFinite()) throw Error(ErrorKind::Overflow, "conjugate_in_algebra: non-finite coefficients");
    return {QuadraticOperator::from_vec(out), adj.closure_residual};
}

}  // namespace swanson
