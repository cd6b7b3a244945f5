#include "swanson/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "swanson/errors.hpp"

namespace swanson {

namespace {
const Complex I{0.0, 1.0};
}

ComplexGaussian ComplexGaussian::kinetic(Complex tau) const {
    const Complex q = 1.0 + 4.0 * a * tau;
    if (std::abs(q) == 0.0) throw Error(ErrorKind::DivisionByZero, "kinetic factor collapses the Gaussian");
    return {a / q, b / q, c + b * b * tau / q - 0.5 * std::log(q)};
}

ComplexGaussian ComplexGaussian::chirp(Complex lambda) const { return {a + I * lambda, b, c}; }

ComplexGaussian ComplexGaussian::dilation(Complex lambda) const {
    const Complex e = std::exp(lambda);
    return {a * e * e, b * e, c};
}

ComplexGaussian ComplexGaussian::translation(Complex lambda) const {
    return {a, b - 2.0 * a * lambda, c - a * lambda * lambda + b * lambda};
}

ComplexGaussian ComplexGaussian::scaled(Complex log_factor) const { return {a, b, c + log_factor}; }

ComplexGaussian initial_gaussian(double sigma, double x0) {
    if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "Gaussian width must be positive");
    const double a0 = 1.0 / (4.0 * sigma * sigma);
    const double lognorm = -0.5 * std::log(sigma * std::sqrt(2.0 * std::numbers::pi));
    return {a0, 2.0 * a0 * x0, lognorm - a0 * x0 * x0};
}

Complex continuous_log(Complex z, double phase_hint) {
    const double two_pi = 2.0 * std::numbers::pi;
    double arg = std::arg(z);
    arg += two_pi * std::round((phase_hint - arg) / two_pi);
    return {std::log(std::abs(z)), arg};
}

ComplexGaussian oscillator_evolve(const ComplexGaussian& g, double m, double w, double t) {
    const double K = m * w / 2.0;
    const double C = std::cos(w * t);
    const double S = std::sin(w * t);
    const Complex Z = C + I * (g.a / K) * S;
    if (std::abs(Z) == 0.0) throw Error(ErrorKind::DivisionByZero, "oscillator evolution: singular Gaussian");
    ComplexGaussian out;
    out.a = (g.a * C + I * K * S) / Z;
    out.b = g.b / Z;
    out.c = g.c - 0.5 * continuous_log(Z, w * t) + I * g.b * g.b * S / (4.0 * K * Z);
    return out;
}

}  // namespace swanson
