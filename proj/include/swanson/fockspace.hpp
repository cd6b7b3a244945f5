#pragma once

// Truncated number-basis linear algebra: ladder, position and momentum
// matrices, dense Hamiltonian assembly, non-Hermitian eigenvalues, matrix
// exponentials and similarity conjugation.

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swanson/coefficients.hpp"

namespace swanson {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense complex operator in the first `dim` number states. Carries the
/// (m0, omega0) scaling that was used to build x and p.
class FockOperator {
public:
    FockOperator(Matrix data, OscillatorUnits units);

    Eigen::Index dim() const { return data_.rows(); }
    const Matrix& matrix() const { return data_; }
    const OscillatorUnits& units() const { return units_; }

    /// Leading `n` x `n` block.
    Matrix block(Eigen::Index n) const;

private:
    Matrix data_;
    OscillatorUnits units_;
};

struct LadderMatrices {
    FockOperator a;
    FockOperator a_dag;
    FockOperator x;  // (a + a^+) / sqrt(2 m0 w0)
    FockOperator p;  // -i sqrt(m0 w0 / 2) (a - a^+)
};

/// a(n, n+1) = sqrt(n+1). Requires dim >= 2.
LadderMatrices ladder_matrices(int dim, double m0, double omega0);
inline LadderMatrices ladder_matrices(int dim, const OscillatorUnits& u) {
    return ladder_matrices(dim, u.m0, u.omega0);
}

/// H = nu1 p^2 + nu2 x^2 + i nu3 (xp + px) + i nu4 p + nu5 x + extra_const.
/// Products are taken between the truncated x and p matrices.
FockOperator assemble_hamiltonian(const PhaseSpaceParams& nu, Complex extra_const, const LadderMatrices& ops);

/// Eigenvalues sorted by (Re, Im). `residuals[k]` is ||H v - l v|| / (||H|| ||v||)
/// for the computed eigenvector (empty when not requested).
struct SpectrumResult {
    std::vector<Complex> eigenvalues;
    std::vector<double> residuals;
    std::size_t converged_count = 0;  // 0 until assessed by converged_spectrum
};

/// Dense complex eigenvalues via Hessenberg reduction and shifted QR (complex
/// Schur form, LAPACK zgeev). Throws Error(NoConvergence) if the QR iteration stalls.
SpectrumResult eigenvalues(const FockOperator& H, bool with_residuals = true);

/// Spectrum at `dim`, with converged_count set to the number of leading
/// eigenvalues that agree with the spectrum at 2*dim to `rel_tol`.
SpectrumResult converged_spectrum(const std::function<FockOperator(int)>& build, int dim,
                                  double rel_tol = 1e-8, bool with_residuals = false);

/// exp(A) by scaling and squaring with a degree-13 Pade kernel. The kernel
/// degree is reduced for small norms; `tol` bounds the backward error target.
/// Throws Error(Overflow) if the scaled norm or result is not representable.
Matrix matrix_exponential(const Matrix& A, double tol = 1e-13);
FockOperator matrix_exponential(const FockOperator& A, double tol = 1e-13);

/// Similarity S = exp(G) kept by its generator, so S^{-1} = exp(-G).
class ExpOperator {
public:
    explicit ExpOperator(FockOperator generator);

    const FockOperator& generator() const { return generator_; }
    FockOperator forward() const;
    FockOperator inverse() const;

private:
    FockOperator generator_;
};

/// exp(-G) H exp(G). Throws Error(DimensionMismatch).
FockOperator similarity_conjugate(const ExpOperator& S, const FockOperator& H);

/// Plain-text dump: header "dim=N", then N rows of N entries "re+imi",
/// whitespace separated, 17 significant digits.
std::string debug_dump(const FockOperator& op);
Matrix parse_debug_dump(const std::string& text);

}  // namespace swanson
