// Runs the eight acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "swanson/cli.hpp"
#include "swanson/closedform.hpp"
#include "swanson/errors.hpp"
#include "swanson/fockspace.hpp"
#include "swanson/pdeverify.hpp"
#include "swanson/transforms.hpp"

using namespace swanson;
namespace fs = std::filesystem;

namespace {

const Complex I{0.0, 1.0};

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::mt19937_64 gen(20240917);
double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }

const OscillatorUnits kFigUnits{1.0, 2.0};
const GaussianInitial kFigInit{1.0 / std::sqrt(2.0), 2.0};
const ComplexMass kPanelA{0.015, 0.00015};

// slope of log(err) against log(h) between neighbouring rungs
std::vector<double> orders(const std::vector<double>& h, const std::vector<double>& err) {
    std::vector<double> p;
    for (std::size_t k = 0; k + 1 < h.size(); ++k) p.push_back(std::log(err[k] / err[k + 1]) / std::log(h[k] / h[k + 1]));
    return p;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + sci(x);
    return s;
}

Outcome spectrum_reproduction() {
    const PhaseSpaceParams nu{0.5, 2.0, -0.5, -1.0, 2.0};
    const OscillatorUnits u{1.0, 2.0};
    const auto closed = spectrum_general(nu, 10);
    const SpectrumResult r = eigenvalues(assemble_hamiltonian(nu, 0.0, ladder_matrices(512, u)), false);
    double worst_rel = 0.0, worst_im = 0.0;
    for (int n = 0; n <= 10; ++n) {
        worst_rel = std::max(worst_rel, std::abs(r.eigenvalues[n].real() - closed[n].real()) / std::abs(closed[n]));
        worst_im = std::max(worst_im, std::abs(r.eigenvalues[n].imag()));
    }
    const double e0 = std::sqrt(1.25) - 0.4;
    const bool formula = std::abs(closed[0].real() - e0) < 1e-14;
    return {worst_rel < 1e-7 && worst_im < 1e-8 && formula, "max rel " + sci(worst_rel) + ", max |Im| " + sci(worst_im)};
}

Outcome caldirola_kanai_spectrum() {
    double worst = 0.0;
    const OscillatorUnits u{1.0, 2.0};
    for (int k = 0; k < 20; ++k) {
        const double G = uniform(0.0, 2.0), nu0 = uniform(0.0, 2.0);
        const auto a = spectrum_caldirola_kanai(G, nu0, u, 10);
        const auto b = spectrum_general(caldirola_kanai_detimed(G, nu0, u), 10);
        for (int n = 0; n <= 10; ++n) worst = std::max(worst, std::abs(a[n] - b[n]) / std::abs(a[n]));
    }
    return {worst < 1e-12, "20 draws, max rel " + sci(worst)};
}

Outcome forced_reduction() {
    LadderCoefficients c;
    c.theta = 0.6;
    c.alpha1 = 0.5;
    c.beta1 = -0.3;
    const OscillatorUnits u{1.0, 2.0};
    const ForcedReductionReport r = verify_forced_reduction(c, u, 256);
    const Complex want = -u.omega0 * c.alpha1 * c.beta1 / (2.0 * c.theta);
    const double dc = std::abs(r.constant - want);
    return {r.residual < 1e-7 && dc < 1e-9, "residual " + sci(r.residual) + ", constant error " + sci(dc)};
}

// real draws with |nu| <= 2 kept `margin` away from every vanishing denominator
PhaseSpaceParams draw_non_degenerate(const OscillatorUnits& u, double margin) {
    for (;;) {
        const PhaseSpaceParams nu{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
        const double mw = u.m0 * u.omega0;
        const Complex D = nu.nu1 * nu.nu2 + nu.nu3 * nu.nu3;
        const Complex N = nu.nu3 * nu.nu4 + nu.nu1 * nu.nu5;
        const Complex A = nu.nu2 / (2 * mw) + nu.nu1 * mw / 2.0;
        const Complex B = nu.nu2 / (2 * mw) - nu.nu1 * mw / 2.0;
        const Complex R2 = B * B - nu.nu3 * nu.nu3;
        const Complex R = std::sqrt(R2);
        if (std::abs(D) < margin || std::abs(N) < margin || std::abs(A) < margin || std::abs(R2) < margin ||
            std::abs(A + R) < margin)
            continue;
        const Complex y = (nu.nu3 * nu.nu5 - nu.nu2 * nu.nu4) / (mw * N);
        if (std::abs(1.0 - y * y) < margin) continue;
        return nu;
    }
}

Outcome two_step_reduction() {
    const OscillatorUnits u{1.0, 2.0};
    double worst = 0.0;
    int failed = 0;
    for (int k = 0; k < 50; ++k) {
        const PhaseSpaceParams nu = draw_non_degenerate(u, 1e-3);
        try {
            const double r = verify_reduction(nu, u, 256).residual;
            worst = std::max(worst, r);
            if (!(r < 1e-7)) ++failed;
        } catch (const Error& e) {
            ++failed;
            std::printf("  draw %d threw %s: %s\n", k, std::string(to_string(e.kind())).c_str(), e.what());
        }
    }
    return {failed == 0, "50 draws, " + std::to_string(failed) + " failed, max residual " + sci(worst)};
}

Outcome wavefunction_arbiter() {
    const TimePhaseSpaceParams tp(SwansonParams::complex_mass(kPanelA, kFigUnits));
    const GridDescriptor g = auto_grid(kFigInit, kPanelA, 2.0, 5e-3);
    const Candidate c = [&](double t) { return evolve_gaussian(kPanelA, kFigUnits, kFigInit, t, g); };
    std::vector<double> res;
    for (double t : {0.3, 0.7, 1.2}) res.push_back(schrodinger_residual(tp, c, t, 1e-5));
    const double worst = *std::max_element(res.begin(), res.end());
    return {worst < 1e-4, "residuals " + join(res)};
}

Outcome integrator_cross_validation() {
    const TimePhaseSpaceParams tp(SwansonParams::complex_mass(kPanelA, kFigUnits));
    const GridDescriptor g = auto_grid(kFigInit, kPanelA, 2.0, 5e-3);
    const WavefunctionGrid psi0 = evolve_gaussian(kPanelA, kFigUnits, kFigInit, 0.0, g);
    const WavefunctionGrid exact = evolve_gaussian(kPanelA, kFigUnits, kFigInit, 1.0, g);
    const auto err = [&](double dt) { return wavefunction_error(exact, crank_nicolson_evolve(tp, psi0, 1.0, dt)).l2_rel; };
    const double e = err(1e-3);
    const double ratio = err(1e-2) / err(5e-3);
    return {e < 1e-3 && ratio >= 3.3 && ratio <= 4.7,
            "L2 at dt=1e-3 " + sci(e) + ", ratio dt 1e-2 -> 5e-3 " + sci(ratio)};
}

// per-time peak density of a (t, x, abs2) surface
std::vector<std::pair<double, double>> peaks(const std::string& path) {
    std::ifstream is(path);
    std::string line;
    std::getline(is, line);
    std::vector<std::pair<double, double>> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double t, x, d;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &d) != 3) continue;
        if (out.empty() || out.back().first != t) out.emplace_back(t, d);
        else out.back().second = std::max(out.back().second, d);
    }
    return out;
}

int turning_points(const std::vector<std::pair<double, double>>& p) {
    int n = 0;
    for (std::size_t k = 1; k + 1 < p.size(); ++k)
        if ((p[k].second - p[k - 1].second) * (p[k + 1].second - p[k].second) < 0.0) ++n;
    return n;
}

double late_peak(const std::vector<std::pair<double, double>>& p) {
    double m = 0.0;
    for (const auto& [t, d] : p)
        if (t >= 1.5) m = std::max(m, d);
    return m;
}

Outcome density_surfaces() {
    const fs::path dir = fs::temp_directory_path() / ("swanson_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    cli::RunConfig cfg;
    cfg.command = cli::Command::Fig1;
    cfg.out_prefix = (dir / "fig").string();
    std::ostringstream log, err;
    const cli::RunResult r = cli::run(cfg, log, err);
    if (r.exit_code != 0) {
        fs::remove_all(dir);
        return {false, "fig1 exited with " + std::to_string(r.exit_code) + ": " + err.str()};
    }
    const auto a = peaks(cfg.out_prefix + "_fig1a.csv");
    const auto b = peaks(cfg.out_prefix + "_fig1b.csv");
    fs::remove_all(dir);
    const int ta = turning_points(a), tb = turning_points(b);
    const double ratio = late_peak(b) / late_peak(a);
    const bool ok = a.size() == 64 && b.size() == 64 && a.back().first == 2.0 && ta >= 2 && tb >= 2 && ratio > 1.0;
    return {ok, "turning points " + std::to_string(ta) + "/" + std::to_string(tb) + ", late peak ratio b/a " + sci(ratio)};
}

Outcome property_suite() {
    std::vector<std::string> failures;
    const auto expect = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };
    const OscillatorUnits u{1.3, 0.7};

    // [a, a+] = 1 except the last diagonal entry, 1 - N
    const int n = 48;
    const LadderMatrices ops = ladder_matrices(n, u);
    const Matrix comm = ops.a.matrix() * ops.a_dag.matrix() - ops.a_dag.matrix() * ops.a.matrix();
    Matrix want = Matrix::Identity(n, n);
    want(n - 1, n - 1) = 1.0 - n;
    expect((comm - want).norm() < 1e-12, "commutator truncation law");
    const Matrix xp = ops.x.matrix() * ops.p.matrix() - ops.p.matrix() * ops.x.matrix();
    expect((xp - I * want).norm() < 1e-12, "[x, p] truncation law");

    // exp(A) exp(-A) = I
    Matrix A = Matrix::Random(24, 24);
    const Matrix prod = matrix_exponential(A) * matrix_exponential(Matrix(-A));
    expect((prod - Matrix::Identity(24, 24)).norm() < 1e-10, "exp(A)exp(-A)");

    // Hermitian coefficients give a Hermitian matrix with a real spectrum
    LadderCoefficients h;
    h.theta = 0.8;
    h.alpha1 = Complex(0.3, -0.2);
    h.beta1 = std::conj(h.alpha1);
    h.alpha2 = Complex(0.1, 0.25);
    h.beta2 = std::conj(h.alpha2);
    const FockOperator H = assemble_hamiltonian(ladder_to_phase_space(h, u), 0.0, ladder_matrices(128, u));
    double worst_im = 0.0;
    for (const Complex& e : eigenvalues(H, false).eigenvalues) worst_im = std::max(worst_im, std::abs(e.imag()));
    expect(worst_im < 1e-10, "Hermitian spectrum real (max |Im| " + sci(worst_im) + ")");

    // conjugation by a bounded similarity keeps the converged spectrum
    const PhaseSpaceParams pt{0.5, 2.0, -0.5, 0.0, 0.0};
    const auto build = [&](int d) { return assemble_hamiltonian(pt, 0.0, ladder_matrices(d, kFigUnits)); };
    const SpectrumResult before = converged_spectrum(build, 128);
    const LadderMatrices ops2 = ladder_matrices(128, kFigUnits);
    const FockOperator G(0.3 * I * ops2.p.matrix() + 0.2 * ops2.x.matrix(), kFigUnits);
    const SpectrumResult after = eigenvalues(similarity_conjugate(ExpOperator(G), build(128)), false);
    double worst_shift = 0.0;
    for (std::size_t k = 0; k < std::min<std::size_t>(before.converged_count, 20); ++k)
        worst_shift = std::max(worst_shift, std::abs(after.eigenvalues[k] - before.eigenvalues[k]) /
                                                std::abs(before.eigenvalues[k]));
    expect(before.converged_count >= 11 && worst_shift < 1e-8, "similarity invariance (" + sci(worst_shift) + ")");

    // discretization orders: residual in dx, Crank-Nicolson in dt
    const TimePhaseSpaceParams tp(SwansonParams::complex_mass(kPanelA, kFigUnits));
    const std::vector<double> dxs{1e-2, 5e-3, 2.5e-3, 1.25e-3};
    std::vector<double> res;
    for (double dx : dxs) {
        const GridDescriptor g = auto_grid(kFigInit, kPanelA, 2.0, dx);
        const Candidate c = [&](double t) { return evolve_gaussian(kPanelA, kFigUnits, kFigInit, t, g); };
        res.push_back(schrodinger_residual(tp, c, 0.3, 1e-5));
    }
    const GridDescriptor g = auto_grid(kFigInit, kPanelA, 2.0, 5e-3);
    const WavefunctionGrid psi0 = evolve_gaussian(kPanelA, kFigUnits, kFigInit, 0.0, g);
    const WavefunctionGrid exact = evolve_gaussian(kPanelA, kFigUnits, kFigInit, 1.0, g);
    const std::vector<double> dts{2e-2, 1e-2, 5e-3, 2.5e-3};
    std::vector<double> cn;
    for (double dt : dts) cn.push_back(wavefunction_error(exact, crank_nicolson_evolve(tp, psi0, 1.0, dt)).l2_rel);
    const auto px = orders(dxs, res), pt_ = orders(dts, cn);
    const auto in_band = [](const std::vector<double>& p) {
        return std::all_of(p.begin(), p.end(), [](double q) { return q >= 1.7 && q <= 2.3; });
    };
    expect(in_band(px), "dx order " + join(px));
    expect(in_band(pt_), "dt order " + join(pt_));

    std::string detail = "dx orders " + join(px) + ", dt orders " + join(pt_);
    for (const auto& f : failures) detail += "; FAILED " + f;
    return {failures.empty(), detail};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "spectrum reproduction", 30.0, spectrum_reproduction},
        {2, "Caldirola-Kanai spectrum", 1.0, caldirola_kanai_spectrum},
        {3, "forced-oscillator reduction", 10.0, forced_reduction},
        {4, "two-step reduction", 300.0, two_step_reduction},
        {5, "exact wavefunction residual", 60.0, wavefunction_arbiter},
        {6, "integrator cross-validation", 120.0, integrator_cross_validation},
        {7, "density surfaces", 120.0, density_surfaces},
        {8, "property suite", 300.0, property_suite},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            o.pass = false;
            o.detail += ", over the " + sci(c.budget_s) + " s budget";
        }
        if (!o.pass) ++failed;
        std::printf("CRITERION %d %s: %s (%s; %.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
    }
    return failed;
}
