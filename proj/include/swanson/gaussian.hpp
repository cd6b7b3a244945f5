#pragma once

// Complex Gaussians exp(-a x^2 + b x + c) and the exact action of the
// operators that appear in quadratic propagators on them.

#include <complex>

namespace swanson {

using Complex = std::complex<double>;

struct ComplexGaussian {
    Complex a{0.0};
    Complex b{0.0};
    Complex c{0.0};  // log of the prefactor

    Complex operator()(Complex x) const { return std::exp(-a * x * x + b * x + c); }

    /// exp(tau d^2/dx^2). Uses the principal branch of sqrt(1 + 4 a tau), which
    /// is correct whenever Re(1 + 4 a tau) > 0 along the path from tau = 0.
    ComplexGaussian kinetic(Complex tau) const;
    /// Multiplication by exp(-i lambda x^2).
    ComplexGaussian chirp(Complex lambda) const;
    /// exp(lambda x d/dx): f(x) -> f(e^lambda x).
    ComplexGaussian dilation(Complex lambda) const;
    /// exp(lambda d/dx): f(x) -> f(x + lambda).
    ComplexGaussian translation(Complex lambda) const;
    /// Multiplication by exp(log_factor).
    ComplexGaussian scaled(Complex log_factor) const;
};

/// (sigma sqrt(2 pi))^(-1/2) exp(-(x - x0)^2 / (4 sigma^2)).
ComplexGaussian initial_gaussian(double sigma, double x0);

/// Harmonic-oscillator evolution exp(-i t (p^2/(2m) + m w^2 x^2/2)) applied
/// exactly (Mehler kernel). Regular for every t. The log of the normalizing
/// factor Z = cos(wt) + i (2a/(m w)) sin(wt) is taken on the branch continuous
/// in t, exact when a is real and positive.
ComplexGaussian oscillator_evolve(const ComplexGaussian& g, double m, double w, double t);

/// ln z with the imaginary part taken on the sheet closest to phase_hint.
Complex continuous_log(Complex z, double phase_hint);

}  // namespace swanson
