#include "swanson/closedform.hpp"

#include <cmath>
#include <numbers>

#include "swanson/errors.hpp"
#include "swanson/transforms.hpp"

namespace swanson {

namespace {

const Complex I{0.0, 1.0};
constexpr double kTanTol = 1e-9;
constexpr double kMehlerWindow = 1e-3;

// Distance of w t from the nearest odd multiple of pi.
double distance_to_tan_pole(double wt) {
    return std::abs(std::remainder(wt - std::numbers::pi, 2.0 * std::numbers::pi));
}

void require_n_max(int n_max) {
    if (n_max < 0) throw Error(ErrorKind::InvalidArgument, "n_max must be non-negative");
}

}  // namespace

// -- spectra ------------------------------------------------------------------

std::vector<Complex> spectrum_general(const PhaseSpaceParams& nu, int n_max) {
    require_n_max(n_max);
    const ReducedOscillator r = reduced_oscillator(nu);
    std::vector<Complex> E(n_max + 1);
    for (int n = 0; n <= n_max; ++n) E[n] = 0.5 * r.omega_tilde * (2.0 * n + 1.0) + r.delta;
    return E;
}

std::vector<Complex> spectrum_forced(const LadderCoefficients& c, const OscillatorUnits& u, int n_max) {
    require_n_max(n_max);
    const Complex shift = forced_energy_shift(c, u);
    std::vector<Complex> E(n_max + 1);
    for (int n = 0; n <= n_max; ++n) E[n] = c.theta * u.omega0 * (2.0 * n + 1.0) + shift;
    return E;
}

std::vector<double> spectrum_caldirola_kanai(double Gamma, double nu0, const OscillatorUnits& u, int n_max) {
    require_n_max(n_max);
    validate(u);
    const double w2 = u.omega0 * u.omega0 + Gamma * Gamma;
    const double shift = -Gamma * nu0 * nu0 * u.m0 * u.omega0 / w2;
    std::vector<double> E(n_max + 1);
    for (int n = 0; n <= n_max; ++n) E[n] = 0.5 * std::sqrt(w2) * (2.0 * n + 1.0) + shift;
    return E;
}

PhaseSpaceParams caldirola_kanai_detimed(double Gamma, double nu0, const OscillatorUnits& u) {
    validate(u);
    return {1.0 / (2.0 * u.m0), u.m0 * u.omega0 * u.omega0 / 2.0, Gamma / 2.0, nu0, nu0 * u.m0 * u.omega0};
}

// -- complex-mass propagator --------------------------------------------------

ComplexGaussian GaussianInitial::gaussian() const { return initial_gaussian(sigma, x0); }

PropagatorFactors propagator_factors(const ComplexMass& cm, const OscillatorUnits& u, double t) {
    validate(u);
    const double wt = u.omega0 * t;
    if (distance_to_tan_pole(wt) < kTanTol)
        throw Error(ErrorKind::TanSingularity, "factorized propagator is singular at w0 t = pi (mod 2 pi)");
    const Complex s = complex_mass_factor(cm, t);
    PropagatorFactors f;
    f.prefactor = std::pow(s, 0.25);
    f.translation_shift = complex_mass_translation(cm, t);
    f.dilation_log = complex_mass_dilation(cm, t);
    f.kinetic_coeff = std::tan(wt / 2.0) / (2.0 * u.m0 * u.omega0);
    f.potential_coeff = 0.5 * u.m0 * u.omega0 * std::sin(wt);
    return f;
}

ComplexGaussian gaussian_factor_chain(const ComplexMass& cm, const OscillatorUnits& u,
                                      const GaussianInitial& init, double t) {
    const PropagatorFactors f = propagator_factors(cm, u, t);
    const Complex s = complex_mass_factor(cm, t);
    // Rightmost factor first. exp(-i k p^2) = exp(i k d^2/dx^2), exp(gamma p) = exp(-i gamma d/dx)
    // and exp((i/2) ln(s) xp) = exp((1/2) ln(s) x d/dx).
    // Each kinetic factor carries a principal square root, which flips sign
    // whenever w0 t crosses an odd multiple of pi; undo that to stay continuous in t.
    const double crossings = std::floor((u.omega0 * t + std::numbers::pi) / (2.0 * std::numbers::pi));
    return init.gaussian()
        .kinetic(I * f.kinetic_coeff)
        .chirp(f.potential_coeff)
        .kinetic(I * f.kinetic_coeff)
        .dilation(0.5 * std::log(s))
        .translation(-I * f.translation_shift)
        .scaled(0.25 * std::log(s) + I * std::numbers::pi * crossings);
}

ComplexGaussian gaussian_mehler(const ComplexMass& cm, const OscillatorUnits& u, const GaussianInitial& init,
                                double t) {
    validate(u);
    const Complex s = complex_mass_factor(cm, t);
    return oscillator_evolve(init.gaussian(), u.m0, u.omega0, t)
        .dilation(0.5 * std::log(s))
        .translation(-I * complex_mass_translation(cm, t))
        .scaled(0.25 * std::log(s));
}

Complex closed_form_psi(const ComplexMass& cm, const OscillatorUnits& u, const GaussianInitial& init, double x,
                        double t) {
    validate(u);
    const double m = u.m0, w = u.omega0, sig = init.sigma, x0 = init.x0;
    if (!(sig > 0.0)) throw Error(ErrorKind::InvalidArgument, "Gaussian width must be positive");
    const double wt = w * t;
    if (distance_to_tan_pole(wt) < kTanTol)
        throw Error(ErrorKind::TanSingularity, "closed form contains tan(w0 t/2), singular at w0 t = pi (mod 2 pi)");
    const Complex s = complex_mass_factor(cm, t);
    const Complex root_s = std::sqrt(s);
    const double q = 1.0 / (4.0 * sig * sig);
    const double T = std::tan(wt / 2.0);
    const Complex Z = std::cos(wt) + (2.0 * I / (m * w)) * q * std::sin(wt);
    const Complex root_Z = std::exp(0.5 * continuous_log(Z, wt));
    const Complex kq = (I * m * w / 2.0) * T + q;

    const Complex amp = std::pow(s, 0.25) / (std::sqrt(sig * std::sqrt(2.0 * std::numbers::pi)) * root_Z);
    const Complex shifted = x - I * cm.nu0 * t / root_s;
    const Complex inner = x * root_s - I * cm.nu0 * t - x0 / (1.0 + 2.0 * I * sig * sig * m * w * T);
    // near the poles the individual exponents are huge with opposite signs, so add them first
    const Complex expo = (x0 * q) * (x0 * q) / kq - x0 * x0 * q - I * (m * w / 2.0) * T * s * shifted * shifted -
                         kq / Z * inner * inner;
    return amp * std::exp(expo);
}

WavefunctionGrid evolve_gaussian(const ComplexMass& cm, const OscillatorUnits& u, const GaussianInitial& init,
                                 double t, const GridDescriptor& grid) {
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "evolve_gaussian requires t >= 0");
    validate(u);
    if (distance_to_tan_pole(u.omega0 * t) < kMehlerWindow) {
        const ComplexGaussian g = gaussian_mehler(cm, u, init, t);
        return WavefunctionGrid::sample(grid, [&](double x) { return g(x); }, t);
    }
    return WavefunctionGrid::sample(grid, [&](double x) { return closed_form_psi(cm, u, init, x, t); }, t);
}

// -- exact propagator chains --------------------------------------------------

PropagatorChain exact_propagator_forced(const LadderCoefficients& c, const OscillatorUnits& u, double t) {
    const QuadraticOperator eta = to_operator(eta_forced_coefficients(c, u));
    PropagatorChain ch;
    ch.units = u;
    QuadraticOperator phase;
    phase.identity = -I * forced_energy_shift(c, u) * t;
    ch.factors.push_back({"phase", phase});
    ch.factors.push_back({"eta", eta});
    ch.factors.push_back({"oscillator", oscillator_operator(-I * t * c.theta * u.omega0, u)});
    ch.factors.push_back({"eta^-1", eta * -1.0});
    return ch;
}

PropagatorChain exact_propagator_general(const PhaseSpaceParams& nu, const OscillatorUnits& u, double t) {
    const TransformSpec spec = make_transform_spec(nu, u);
    const QuadraticOperator g1 = to_operator(eta1_generator(spec.eta1, u));
    const QuadraticOperator g2 = to_operator(spec.eta2);
    PropagatorChain ch;
    ch.units = u;
    QuadraticOperator phase;
    phase.identity = -I * spec.reduced.delta * t;
    ch.factors.push_back({"phase", phase});
    ch.factors.push_back({"eta1", g1});
    ch.factors.push_back({"eta2", g2});
    ch.factors.push_back({"oscillator", oscillator_operator(-I * t * spec.reduced.omega_tilde / 2.0, u)});
    // Inverse of eta1 eta2 is eta2^-1 eta1^-1.
    ch.factors.push_back({"eta2^-1", g2 * -1.0});
    ch.factors.push_back({"eta1^-1", g1 * -1.0});
    return ch;
}

PropagatorChain exact_propagator_caldirola_kanai(double Gamma, double nu0, const OscillatorUnits& u, double t) {
    PropagatorChain inner = exact_propagator_general(caldirola_kanai_detimed(Gamma, nu0, u), u, t);
    QuadraticOperator detime;
    detime.xp_sym = -Gamma * t / 2.0;
    PropagatorChain ch;
    ch.units = u;
    ch.factors.push_back({"detime", detime});
    ch.factors.insert(ch.factors.end(), inner.factors.begin(), inner.factors.end());
    return ch;
}

Matrix compose_in_fock(const PropagatorChain& chain, int dim) {
    const LadderMatrices ops = ladder_matrices(dim, chain.units);
    Matrix U = Matrix::Identity(dim, dim);
    for (const PropagatorFactor& f : chain.factors) U = U * matrix_exponential(assemble(f.exponent, ops).matrix());
    return U;
}

}  // namespace swanson
