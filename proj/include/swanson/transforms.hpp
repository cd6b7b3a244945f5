#pragma once

// Non-unitary generators that take the generalized Swanson Hamiltonian to a
// harmonic oscillator, and the checks that they do.
//
// Convention: with |psi> = exp(G)|phi>, the transformed Hamiltonian is
// exp(-G) H exp(G).

#include <json.hpp>

#include "swanson/coefficients.hpp"
#include "swanson/fockspace.hpp"
#include "swanson/quadratic_algebra.hpp"

namespace swanson {

/// G = c_x x + c_p p.
struct LinearGenerator {
    Complex c_x{0.0};
    Complex c_p{0.0};
};

/// G = c_xx x^2 + c_pp p^2 + c_xp (xp + px).
struct QuadraticGenerator {
    Complex c_xx{0.0};
    Complex c_pp{0.0};
    Complex c_xp{0.0};
};

QuadraticOperator to_operator(const LinearGenerator& g);
QuadraticOperator to_operator(const QuadraticGenerator& g);

/// Exponent of the displacement that removes the linear terms of the forced
/// oscillator (alpha2 = beta2 = 0):
///   G = -[m0 w0 (alpha1 - beta1) x - i (alpha1 + beta1) p] / (2 theta sqrt(2 m0 w0)).
/// Throws Error(ZeroTheta) for |theta| < 1e-12, Error(InvalidArgument) when
/// alpha2 or beta2 is nonzero.
LinearGenerator eta_forced_coefficients(const LadderCoefficients& c, const OscillatorUnits& u);
FockOperator eta_forced_generator(const LadderCoefficients& c, const LadderMatrices& ops);

/// Energy shift of the forced oscillator, -w0 alpha1 beta1 / (2 theta).
Complex forced_energy_shift(const LadderCoefficients& c, const OscillatorUnits& u);

struct Eta1Parameters {
    Complex kappa{0.0};
    Complex vartheta{0.0};
};

/// kappa and vartheta of the first (displacement) transformation. vartheta uses
/// the form i atanh[(nu3 nu5 - nu2 nu4) / (m0 w0 (nu3 nu4 + nu1 nu5))], which
/// stays defined at nu4 = 0. Throws Error(DegenerateDirection) when
/// nu3 nu4 + nu1 nu5 or 1 - y^2 vanishes with (nu4, nu5) != 0, and
/// Error(DivisionByZero) when nu1 nu2 + nu3^2 vanishes.
Eta1Parameters eta1_parameters(const PhaseSpaceParams& nu, const OscillatorUnits& u);

/// vartheta as printed, i atanh[(nu3 nu5/nu4 - nu2) / (m0 w0 (nu3 + nu1 nu5/nu4))].
/// Requires nu4 != 0.
Complex eta1_vartheta_printed(const PhaseSpaceParams& nu, const OscillatorUnits& u);

/// G1 = i kappa [sqrt(m0 w0/2) sin(vartheta) x + cos(vartheta) p / sqrt(2 m0 w0)].
LinearGenerator eta1_generator(const Eta1Parameters& e, const OscillatorUnits& u);

/// Pieces of the second (squeezing) transformation.
///   A = nu2/(2 m0 w0) + nu1 m0 w0/2,  B = nu2/(2 m0 w0) - nu1 m0 w0/2,
///   R = sqrt(B^2 - nu3^2),  L = ln[sqrt(nu1 nu2 + nu3^2) / (A + R)].
struct Eta2Parameters {
    Complex A{0.0};
    Complex B{0.0};
    Complex R{0.0};
    Complex log_prefactor{0.0};  // L
    Complex L_over_R{0.0};       // finite limit -1/A at R = 0
};

/// Throws Error(ExceptionalPoint) when nu1 nu2 + nu3^2, A, or A + R vanishes
/// within 1e-12, or when R vanishes with Re(A) <= 0.
Eta2Parameters eta2_parameters(const PhaseSpaceParams& nu, const OscillatorUnits& u);

/// Generator that takes nu1 p^2 + nu2 x^2 + i nu3 (xp + px) to
/// (sqrt(nu1 nu2 + nu3^2)/(m0 w0)) (p^2 + m0^2 w0^2 x^2):
///   G2 = -(L/R) [ (nu3/2) (m0 w0 x^2/2 - p^2/(2 m0 w0)) + i (B/4) (xp + px) ].
QuadraticGenerator eta2_generator(const PhaseSpaceParams& nu, const OscillatorUnits& u);

/// The exponent exactly as printed in the source derivation,
///   (L/(2R)) [ nu3 (m0 w0 x^2/2 - p^2/(2 m0 w0)) + i A (xp + px) ].
/// Kept to document that it does not perform the reduction.
QuadraticGenerator eta2_generator_as_printed(const PhaseSpaceParams& nu, const OscillatorUnits& u);

struct ReducedOscillator {
    Complex omega_tilde{0.0};  // 2 sqrt(nu1 nu2 + nu3^2)
    Complex delta{0.0};        // [nu2 nu4^2 - nu5 (nu1 nu5 + 2 nu3 nu4)] / (4 (nu1 nu2 + nu3^2))
};

/// Throws Error(DivisionByZero) when nu1 nu2 + nu3^2 vanishes within 1e-12.
ReducedOscillator reduced_oscillator(const PhaseSpaceParams& nu);

struct TransformSpec {
    OscillatorUnits units;
    Eta1Parameters eta1;
    QuadraticGenerator eta2;
    Complex eta2_log_prefactor{0.0};
    ReducedOscillator reduced;
};

TransformSpec make_transform_spec(const PhaseSpaceParams& nu, const OscillatorUnits& u);

struct ReductionReport {
    double residual = 0.0;           // interior-block Frobenius residual / block norm of H
    double linear_residual = 0.0;    // linear part after eta1 only, same normalization
    double closure_residual = 0.0;   // worst adjoint projection residual
    double projection_residual = 0.0;  // how far H is from the quadratic span
    int dim = 0;
    Complex omega_tilde{0.0};
    Complex delta{0.0};

    /// {"residual", "dim", "omega_tilde": [re, im], "delta": [re, im]}
    nlohmann::json to_json() const;
};

/// Conjugates H by exp(G1) then exp(G2) and compares with
/// (omega_tilde/(2 m0 w0)) (p^2 + m0^2 w0^2 x^2) + delta on the leading dim/2
/// block. H is read into the quadratic span by projection on that block.
ReductionReport verify_reduction(const FockOperator& H, const TransformSpec& spec);

/// Convenience: assembles H from nu at the given dimension.
ReductionReport verify_reduction(const PhaseSpaceParams& nu, const OscillatorUnits& u, int dim);

struct ForcedReductionReport {
    double residual = 0.0;  // against the displaced oscillator with the exact shift
    Complex constant{0.0};  // measured shift (mean diagonal offset on the block)
    Complex expected_constant{0.0};
    double linear_residual = 0.0;
};

/// Dense Fock-space check: exp(-G) H exp(G) for the forced oscillator against
/// (theta/m0)(p^2 + m0^2 w0^2 x^2) - w0 alpha1 beta1/(2 theta), on the leading
/// dim/2 block.
ForcedReductionReport verify_forced_reduction(const LadderCoefficients& c, const OscillatorUnits& u, int dim);

}  // namespace swanson
