#pragma once

// Closed-form spectra, propagator factorizations and the exact Gaussian
// solution of the complex-mass scenario.

#include <string>
#include <vector>

#include "swanson/coefficients.hpp"
#include "swanson/fockspace.hpp"
#include "swanson/gaussian.hpp"
#include "swanson/quadratic_algebra.hpp"
#include "swanson/wavefunction.hpp"

namespace swanson {

// -- spectra ------------------------------------------------------------------

/// E_n = sqrt(nu1 nu2 + nu3^2)(2n + 1) + delta, n = 0..n_max.
/// Throws Error(DivisionByZero) at nu1 nu2 + nu3^2 = 0.
std::vector<Complex> spectrum_general(const PhaseSpaceParams& nu, int n_max);

/// E_n = theta w0 (2n + 1) - w0 alpha1 beta1 / (2 theta).
std::vector<Complex> spectrum_forced(const LadderCoefficients& c, const OscillatorUnits& u, int n_max);

/// E_n = (sqrt(w0^2 + Gamma^2)/2)(2n + 1) - Gamma nu0^2 m0 w0 / (w0^2 + Gamma^2).
std::vector<double> spectrum_caldirola_kanai(double Gamma, double nu0, const OscillatorUnits& u, int n_max);

/// Static Hamiltonian left after removing the exp(2 i Gamma t) mass law:
/// nu1 = 1/(2 m0), nu2 = m0 w0^2/2, nu3 = Gamma/2, nu4 = nu0, nu5 = nu0 m0 w0.
PhaseSpaceParams caldirola_kanai_detimed(double Gamma, double nu0, const OscillatorUnits& u);

// -- complex-mass propagator --------------------------------------------------

struct GaussianInitial {
    double sigma = 1.0;
    double x0 = 0.0;

    /// Throws Error(InvalidArgument) unless sigma > 0.
    ComplexGaussian gaussian() const;
    Complex operator()(double x) const { return gaussian()(x); }
};

/// Scalars of the factorized complex-mass propagator
///   s^(1/4) exp(gamma p) exp[(i/2) ln(s) xp] exp[-i k p^2] exp[-i v x^2] exp[-i k p^2],
/// s = 1 - 2 i t Omega0.
struct PropagatorFactors {
    Complex prefactor{1.0};          // s^(1/4)
    Complex translation_shift{0.0};  // gamma = nu0 t / sqrt(s)
    Complex dilation_log{0.0};       // (i/2) ln s
    Complex kinetic_coeff{0.0};      // k = tan(w0 t/2) / (2 m0 w0)
    Complex potential_coeff{0.0};    // v = (m0 w0/2) sin(w0 t)
};

/// Throws Error(TanSingularity) within 1e-9 of w0 t = pi (mod 2 pi).
PropagatorFactors propagator_factors(const ComplexMass& cm, const OscillatorUnits& u, double t);

/// Applies the factorized propagator to the initial Gaussian, one factor at a
/// time, on the Gaussian parameters.
ComplexGaussian gaussian_factor_chain(const ComplexMass& cm, const OscillatorUnits& u,
                                      const GaussianInitial& init, double t);

/// Unfactored route: Mehler evolution then the dilation and complex
/// translation, psi = s^(1/4) chi(sqrt(s) x - i nu0 t, t). Regular at all t.
ComplexGaussian gaussian_mehler(const ComplexMass& cm, const OscillatorUnits& u, const GaussianInitial& init,
                                double t);

/// The closed-form psi(x, t) evaluated term by term as written in the
/// derivation. The sqrt of cos(w0 t) + (2i/(m0 w0))(1/(4 sigma^2)) sin(w0 t)
/// is taken on the branch continuous in t. Throws Error(TanSingularity).
Complex closed_form_psi(const ComplexMass& cm, const OscillatorUnits& u, const GaussianInitial& init, double x,
                        double t);

/// Samples the closed form on the grid; within 1e-3 of a tan singularity the
/// Mehler route is used instead. Output is not normalized. t >= 0.
WavefunctionGrid evolve_gaussian(const ComplexMass& cm, const OscillatorUnits& u, const GaussianInitial& init,
                                 double t, const GridDescriptor& grid);

// -- exact propagator chains --------------------------------------------------

/// One factor exp(Q) of an exact propagator, Q in the quadratic span.
struct PropagatorFactor {
    std::string label;
    QuadraticOperator exponent;
};

/// psi(t) = factors[0] factors[1] ... factors[n-1] psi(0).
struct PropagatorChain {
    std::vector<PropagatorFactor> factors;
    OscillatorUnits units;
};

/// exp(i w0 alpha1 beta1 t/(2 theta)) eta exp[-i (theta/m0)(p^2 + m0^2 w0^2 x^2) t] eta^-1.
PropagatorChain exact_propagator_forced(const LadderCoefficients& c, const OscillatorUnits& u, double t);

/// exp(-i delta t) eta1 eta2 exp[-i omega_tilde t (p^2 + m0^2 w0^2 x^2)/(2 m0 w0)] eta2^-1 eta1^-1.
PropagatorChain exact_propagator_general(const PhaseSpaceParams& nu, const OscillatorUnits& u, double t);

/// exp(-Gamma t (xp + px)/2) followed by the general chain of the de-timed
/// Hamiltonian; the scalar phase is exp(i Gamma nu0^2 m0 w0 t/(w0^2 + Gamma^2)).
PropagatorChain exact_propagator_caldirola_kanai(double Gamma, double nu0, const OscillatorUnits& u, double t);

/// Product of the factors as dense matrices in the first `dim` number states.
Matrix compose_in_fock(const PropagatorChain& chain, int dim);

}  // namespace swanson
