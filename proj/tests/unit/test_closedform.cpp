#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "swanson/closedform.hpp"
#include "swanson/errors.hpp"
#include "swanson/pdeverify.hpp"

using namespace swanson;

namespace {

const Complex I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no swanson::Error thrown");
    return ErrorKind::InvalidArgument;
}

// Oscillator eigenfunctions on a grid by the stable three-term recurrence.
std::vector<std::vector<double>> hermite_functions(const GridDescriptor& g, double mw, int count) {
    std::vector<std::vector<double>> phi(count, std::vector<double>(g.n_points));
    const double norm0 = std::pow(mw / kPi, 0.25);
    for (int j = 0; j < g.n_points; ++j) {
        const double xi = std::sqrt(mw) * g.x(j);
        phi[0][j] = norm0 * std::exp(-0.5 * xi * xi);
        if (count > 1) phi[1][j] = std::sqrt(2.0) * xi * phi[0][j];
        for (int n = 1; n + 1 < count; ++n)
            phi[n + 1][j] = std::sqrt(2.0 / (n + 1)) * xi * phi[n][j] - std::sqrt(double(n) / (n + 1)) * phi[n - 1][j];
    }
    return phi;
}

// exp(-i H_HO t) by expansion in the eigenbasis, truncated at `count` levels.
WavefunctionGrid fock_evolve(const WavefunctionGrid& psi0, const OscillatorUnits& u, double t, int count) {
    const GridDescriptor& g = psi0.grid;
    const auto phi = hermite_functions(g, u.m0 * u.omega0, count);
    WavefunctionGrid out{g, std::vector<Complex>(g.n_points), t};
    for (int n = 0; n < count; ++n) {
        Complex c = 0.0;
        for (int j = 0; j < g.n_points; ++j) c += phi[n][j] * psi0.values[j];
        c *= g.dx() * std::exp(-I * u.omega0 * (n + 0.5) * t);
        for (int j = 0; j < g.n_points; ++j) out.values[j] += c * phi[n][j];
    }
    return out;
}

double peak_density(const WavefunctionGrid& psi) {
    double m = 0.0;
    for (const Complex& v : psi.values) m = std::max(m, std::norm(v));
    return m;
}

const OscillatorUnits kFigUnits{1.0, 2.0};
const GaussianInitial kFigInit{1.0 / std::sqrt(2.0), 2.0};
const ComplexMass kPanelA{0.015, 0.00015};
const ComplexMass kPanelB{0.01, 0.015};

}  // namespace

TEST_SUITE("closedform") {

TEST_CASE("general spectrum of the bare oscillator") {
    const auto E = spectrum_general({0.5, 0.5, 0.0, 0.0, 0.0}, 6);
    REQUIRE(E.size() == 7);
    for (int n = 0; n <= 6; ++n) CHECK(std::abs(E[n] - Complex(n + 0.5)) < 1e-15);
}

TEST_CASE("general spectrum worked example") {
    const auto E = spectrum_general({0.5, 2.0, -0.5, -1.0, 2.0}, 10);
    CHECK(std::abs(E[0] - Complex(std::sqrt(1.25) - 0.4)) < 1e-15);
    CHECK(std::abs(E[0].real() - 0.718034) < 1e-6);
    for (int n = 0; n < 10; ++n) CHECK(std::abs(E[n + 1] - E[n] - 2.0 * std::sqrt(1.25)) < 1e-14);
}

TEST_CASE("forced spectrum") {
    LadderCoefficients c;
    c.theta = 0.5;
    c.alpha1 = 1.0;
    c.beta1 = 1.0;
    const auto E = spectrum_forced(c, {1.0, 1.0}, 5);
    for (int n = 0; n <= 5; ++n) CHECK(std::abs(E[n] - Complex(n + 0.5 - 1.0)) < 1e-15);
    CHECK_THROWS_AS(spectrum_forced(c, {1.0, 1.0}, -1), Error);
}

TEST_CASE("forced spectrum agrees with the Fock eigenvalues") {
    LadderCoefficients c;
    c.theta = 0.7;
    c.alpha1 = 0.4;
    c.beta1 = Complex(0.3, 0.2);
    const OscillatorUnits u{1.2, 1.5};
    const auto E = spectrum_forced(c, u, 8);
    const auto build = [&](int d) { return assemble_hamiltonian(ladder_to_phase_space(c, u), 0.0, ladder_matrices(d, u)); };
    const SpectrumResult r = converged_spectrum(build, 128);
    REQUIRE(r.converged_count >= 9);
    for (int n = 0; n <= 8; ++n) CHECK(std::abs(r.eigenvalues[n] - E[n]) < 1e-8 * std::abs(E[n]));
}

TEST_CASE("Caldirola-Kanai spectrum") {
    const auto E0 = spectrum_caldirola_kanai(0.0, 0.0, {1.3, 2.0}, 4);
    for (int n = 0; n <= 4; ++n) CHECK(std::abs(E0[n] - (2 * n + 1)) < 1e-15);
    const auto E = spectrum_caldirola_kanai(1.0, 1.0, {1.0, 2.0}, 3);
    CHECK(std::abs(E[0] - (std::sqrt(5.0) / 2.0 - 0.4)) < 1e-15);
    CHECK(std::abs(E[0] - 0.718034) < 1e-6);
}

TEST_CASE("Caldirola-Kanai spectrum matches the general formula") {
    for (int k = 0; k < 20; ++k) {
        const double G = testutil::uniform(0.0, 2.0), nu0 = testutil::uniform(0.0, 2.0);
        const OscillatorUnits u{testutil::uniform(0.5, 2.0), testutil::uniform(0.5, 2.0)};
        const auto a = spectrum_caldirola_kanai(G, nu0, u, 10);
        const auto b = spectrum_general(caldirola_kanai_detimed(G, nu0, u), 10);
        for (int n = 0; n <= 10; ++n) CHECK(std::abs(a[n] - b[n]) < 1e-12 * std::abs(a[n]));
    }
}

TEST_CASE("propagator factors") {
    const PropagatorFactors f0 = propagator_factors({0.3, 0.2}, kFigUnits, 0.0);
    CHECK(std::abs(f0.prefactor - 1.0) == 0.0);
    CHECK(std::abs(f0.kinetic_coeff) + std::abs(f0.potential_coeff) + std::abs(f0.dilation_log) +
              std::abs(f0.translation_shift) ==
          0.0);
    const PropagatorFactors f = propagator_factors({0.0, 0.0}, kFigUnits, kPi / 4.0);
    CHECK(std::abs(f.kinetic_coeff - 0.25) < 1e-15);
    CHECK(std::abs(f.potential_coeff - 1.0) < 1e-15);
    const ComplexMass cm{0.2, 0.5};
    const PropagatorFactors g = propagator_factors(cm, kFigUnits, 0.7);
    const Complex s{1.0, -2.0 * 0.7 * 0.2};
    CHECK(std::abs(g.prefactor - std::pow(s, 0.25)) < 1e-15);
    CHECK(std::abs(g.dilation_log - 0.5 * I * std::log(s)) < 1e-15);
    CHECK(std::abs(g.translation_shift - 0.5 * 0.7 / std::sqrt(s)) < 1e-15);
}

TEST_CASE("tan singularity is reported") {
    CHECK(kind_of([] { propagator_factors({}, kFigUnits, kPi / 2.0); }) == ErrorKind::TanSingularity);
    CHECK(kind_of([] { propagator_factors({}, kFigUnits, 3.0 * kPi / 2.0); }) == ErrorKind::TanSingularity);
    CHECK(kind_of([] { closed_form_psi({}, kFigUnits, kFigInit, 0.3, kPi / 2.0); }) == ErrorKind::TanSingularity);
    CHECK_NOTHROW(propagator_factors({}, kFigUnits, kPi / 2.0 + 1e-6));
}

TEST_CASE("closed form at t = 0 is the initial Gaussian") {
    const GridDescriptor g{-6.0, 10.0, 512};
    for (const ComplexMass& cm : {kPanelA, kPanelB, ComplexMass{0.4, 0.9}}) {
        const WavefunctionGrid psi = evolve_gaussian(cm, kFigUnits, kFigInit, 0.0, g);
        for (int j = 0; j < g.n_points; ++j) {
            const double x = g.x(j), s = kFigInit.sigma;
            const double want =
                std::exp(-(x - 2.0) * (x - 2.0) / (4.0 * s * s)) / std::sqrt(s * std::sqrt(2.0 * kPi));
            CHECK(std::abs(psi.values[j] - want) <= 1e-15 * std::max(1.0, want));
        }
    }
    CHECK(kind_of([&] { evolve_gaussian(kPanelA, kFigUnits, kFigInit, -0.1, g); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("ground state density is stationary") {
    const OscillatorUnits u{1.0, 2.0};
    const GaussianInitial ground{std::sqrt(1.0 / (2.0 * u.m0 * u.omega0)), 0.0};
    const GridDescriptor g{-5.0, 5.0, 256};
    const WavefunctionGrid psi0 = evolve_gaussian({}, u, ground, 0.0, g);
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double t = 2.0 * kPi / u.omega0 * k / 200.0;
        const WavefunctionGrid psi = evolve_gaussian({}, u, ground, t, g);
        for (int j = 0; j < g.n_points; ++j)
            worst = std::max(worst, std::abs(std::norm(psi.values[j]) - std::norm(psi0.values[j])));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("literal closed form equals the factor chain and the Mehler form") {
    for (const ComplexMass& cm : {kPanelA, kPanelB, ComplexMass{0.2, 0.3}}) {
        for (double t = 0.013; t < 10.0; t += 0.047) {
            if (std::abs(std::remainder(kFigUnits.omega0 * t - kPi, 2.0 * kPi)) < 1e-3) continue;
            const ComplexGaussian chain = gaussian_factor_chain(cm, kFigUnits, kFigInit, t);
            const ComplexGaussian mehler = gaussian_mehler(cm, kFigUnits, kFigInit, t);
            for (double x : {-1.0, 0.5, 1.3, 2.5, 3.1}) {
                const Complex lit = closed_form_psi(cm, kFigUnits, kFigInit, x, t);
                CHECK(std::abs(chain(x) - lit) < 1e-10 * std::abs(lit));
                CHECK(std::abs(mehler(x) - lit) < 1e-10 * std::abs(lit));
            }
        }
    }
}

TEST_CASE("evolution is continuous through the tan poles") {
    const GridDescriptor g{-8.0, 12.0, 1024};
    const double tp = kPi / kFigUnits.omega0;
    const auto gap = [&](double dt) {
        const WavefunctionGrid a = evolve_gaussian(kPanelB, kFigUnits, kFigInit, tp - dt, g);
        const WavefunctionGrid b = evolve_gaussian(kPanelB, kFigUnits, kFigInit, tp + dt, g);
        return wavefunction_error(a, b).l2_rel;
    };
    // a sign flip across the pole would leave a gap of order 2
    CHECK(gap(1e-6) < 1e-4);
    CHECK(gap(2e-3) / gap(1e-3) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("small-t continuity is linear") {
    const GridDescriptor g{-6.0, 10.0, 1024};
    const WavefunctionGrid psi0 = evolve_gaussian(kPanelB, kFigUnits, kFigInit, 0.0, g);
    const double e1 = wavefunction_error(psi0, evolve_gaussian(kPanelB, kFigUnits, kFigInit, 1e-3, g)).l2_rel;
    const double e2 = wavefunction_error(psi0, evolve_gaussian(kPanelB, kFigUnits, kFigInit, 5e-4, g)).l2_rel;
    CHECK(e1 > 0.0);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("switched-off closed form matches eigenbasis propagation") {
    const GridDescriptor g{-10.0, 10.0, 2048};
    for (const GaussianInitial& init : {GaussianInitial{0.5, 1.0}, kFigInit}) {
        const WavefunctionGrid psi0 = evolve_gaussian({}, kFigUnits, init, 0.0, g);
        for (double t : {0.4, 1.3, 2.9}) {
            const WavefunctionGrid want = fock_evolve(psi0, kFigUnits, t, 128);
            const WavefunctionGrid got = evolve_gaussian({}, kFigUnits, init, t, g);
            CHECK(wavefunction_error(want, got).l2_rel < 1e-6);
        }
    }
}

TEST_CASE("reference densities oscillate and grow faster in panel b") {
    const GridDescriptor g = auto_grid(kFigInit, kPanelB, 2.0, 2e-2);
    std::vector<double> a, b;
    for (int k = 0; k <= 64; ++k) {
        const double t = 2.0 * k / 64.0;
        a.push_back(peak_density(evolve_gaussian(kPanelA, kFigUnits, kFigInit, t, g)));
        b.push_back(peak_density(evolve_gaussian(kPanelB, kFigUnits, kFigInit, t, g)));
    }
    const auto turns = [](const std::vector<double>& v) {
        int n = 0;
        for (std::size_t k = 1; k + 1 < v.size(); ++k)
            if ((v[k] - v[k - 1]) * (v[k + 1] - v[k]) < 0.0) ++n;
        return n;
    };
    CHECK(turns(a) >= 2);
    CHECK(turns(b) >= 2);
    CHECK(b.back() > a.back());
    // local maxima of the peak density rise with time
    CHECK(*std::max_element(b.begin() + 48, b.end()) > *std::max_element(b.begin(), b.begin() + 16));
}

TEST_CASE("propagator chains are the identity at t = 0") {
    const int dim = 128;
    LadderCoefficients c;
    c.theta = 0.6;
    c.alpha1 = 0.5;
    c.beta1 = -0.3;
    const OscillatorUnits u{1.0, 2.0};
    const Matrix Id = Matrix::Identity(dim, dim);
    CHECK((compose_in_fock(exact_propagator_forced(c, u, 0.0), dim) - Id).norm() < 1e-9);
    CHECK((compose_in_fock(exact_propagator_general({0.5, 2.0, 0.1, 0.2, 0.3}, u, 0.0), dim) - Id).norm() < 1e-9);
    // the eta factors of this case are unbounded enough that rounding grows near the truncation edge
    const Matrix ck = compose_in_fock(exact_propagator_caldirola_kanai(0.4, 0.3, u, 0.0), dim);
    CHECK((ck - Id).topLeftCorner(24, 24).norm() < 1e-9);
}

TEST_CASE("propagator chain phases") {
    LadderCoefficients c;
    c.theta = 0.6;
    c.alpha1 = 0.5;
    c.beta1 = -0.3;
    const OscillatorUnits u{1.2, 2.0};
    const double t = 0.8;
    const PropagatorChain f = exact_propagator_forced(c, u, t);
    REQUIRE(f.factors.front().label == "phase");
    CHECK(std::abs(f.factors.front().exponent.identity - I * u.omega0 * 0.5 * -0.3 * t / 1.2) < 1e-15);

    const double G = 0.4, nu0 = 0.3;
    const PropagatorChain ck = exact_propagator_caldirola_kanai(G, nu0, u, t);
    const auto it = std::find_if(ck.factors.begin(), ck.factors.end(), [](const auto& p) { return p.label == "phase"; });
    REQUIRE(it != ck.factors.end());
    const double w2 = u.omega0 * u.omega0 + G * G;
    CHECK(std::abs(it->exponent.identity - I * G * nu0 * nu0 * u.m0 * u.omega0 * t / w2) < 1e-15);
}

TEST_CASE("forced propagator chain equals exp(-iHt)") {
    const int dim = 128;
    LadderCoefficients c;
    c.theta = 0.6;
    c.alpha1 = 0.5;
    c.beta1 = -0.3;
    const OscillatorUnits u{1.0, 2.0};
    const LadderMatrices ops = ladder_matrices(dim, u);
    const Matrix H = assemble_hamiltonian(ladder_to_phase_space(c, u), 0.0, ops).matrix();
    for (double t : {0.2, 0.9}) {
        const Matrix U = compose_in_fock(exact_propagator_forced(c, u, t), dim);
        const Matrix want = matrix_exponential(Matrix(-I * t * H));
        CHECK((U - want).topLeftCorner(24, 24).norm() < 1e-8);
    }
}

TEST_CASE("Caldirola-Kanai chain solves the time-dependent equation") {
    // i dU/dt = H(t) U on the interior block, fourth-order difference in t
    const int dim = 128;
    const OscillatorUnits u{1.0, 2.0};
    const double G = 0.3, nu0 = 0.2;
    const LadderMatrices ops = ladder_matrices(dim, u);
    const auto U_at = [&](double t) { return compose_in_fock(exact_propagator_caldirola_kanai(G, nu0, u, t), dim); };
    for (double t : {0.25, 0.6}) {
        const double h = 1e-3;
        const Matrix U = U_at(t);
        const Matrix dU = (U_at(t - 2 * h) - 8.0 * U_at(t - h) + 8.0 * U_at(t + h) - U_at(t + 2 * h)) / (12.0 * h);
        const Complex e = std::exp(I * G * t);
        const PhaseSpaceParams nu{1.0 / (2.0 * u.m0) / (e * e), u.m0 * u.omega0 * u.omega0 / 2.0 * e * e, 0.0,
                                  nu0 / e, nu0 * u.m0 * u.omega0 * e};
        const Matrix H = assemble_hamiltonian(nu, 0.0, ops).matrix();
        const Matrix lhs = I * dU;
        const Matrix rhs = H * U;
        const int k = 16;
        CHECK((lhs - rhs).topLeftCorner(k, k).norm() < 1e-6 * rhs.topLeftCorner(k, k).norm());
    }
}

}  // TEST_SUITE
