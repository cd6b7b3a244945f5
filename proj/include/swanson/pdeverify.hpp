#pragma once

// Position-grid arbiter: finite-difference application of the time-dependent
// Hamiltonian, Schrodinger residuals of candidate solutions, and a
// Crank-Nicolson integrator.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "swanson/closedform.hpp"
#include "swanson/coefficients.hpp"
#include "swanson/wavefunction.hpp"

namespace swanson {

/// H psi with p = -i d/dx:
///   -(1/2m) psi'' + (m w^2/2) x^2 psi + (Omega/2)(2x psi' + psi) + nu psi' + F x psi + v0 psi,
/// central differences with zero ghost values past both ends.
WavefunctionGrid apply_position_hamiltonian(const TimePhaseSpaceSample& h, const WavefunctionGrid& psi);
WavefunctionGrid apply_position_hamiltonian(const TimePhaseSpaceParams& tp, double t, const WavefunctionGrid& psi);

using Candidate = std::function<WavefunctionGrid(double t)>;

/// || i (psi(t+dt) - psi(t-dt))/(2dt) - H(t) psi(t) || / || H(t) psi(t) || over
/// interior samples. Throws Error(UntrustedSupport) if psi(t) reaches the
/// grid ends.
double schrodinger_residual(const TimePhaseSpaceParams& tp, const Candidate& candidate, double t, double dt_probe);

/// Default probe step 1e-5 (2 pi / w0).
double default_dt_probe(const OscillatorUnits& u);

struct CrankNicolsonOptions {
    /// Check support containment every this many steps (0: only at the end).
    int support_check_every = 0;
    double support_tol = 1e-8;
};

/// (I + i dt/2 H(t + dt/2)) psi_{n+1} = (I - i dt/2 H(t + dt/2)) psi_n, with dt
/// shrunk so that an integer number of steps lands on t_final. Starts at
/// psi0.time_tag. Throws Error(SolverBreakdown) on a zero pivot and
/// Error(UntrustedSupport) when the solution reaches the grid ends.
WavefunctionGrid crank_nicolson_evolve(const TimePhaseSpaceParams& tp, const WavefunctionGrid& psi0, double t_final,
                                       double dt, const CrankNicolsonOptions& opts = {});

/// Solves the tridiagonal system lower[j] u[j-1] + diag[j] u[j] + upper[j] u[j+1] = rhs[j]
/// in place (Thomas algorithm, no pivoting). Throws Error(SolverBreakdown).
void solve_tridiagonal(const std::vector<Complex>& lower, const std::vector<Complex>& diag,
                       const std::vector<Complex>& upper, std::vector<Complex>& rhs);

struct WavefunctionError {
    double l2_rel = 0.0;    // ||a - b|| / ||a||
    double linf_rel = 0.0;  // max|a - b| / max|a|
};

/// Interior samples only. Throws Error(GridMismatch) for different grids.
WavefunctionError wavefunction_error(const WavefunctionGrid& a, const WavefunctionGrid& b);

/// x0 -/+ (10 sigma + |nu0| t_final + 2 |x0|), sampled at spacing <= dx.
GridDescriptor auto_grid(const GaussianInitial& init, const ComplexMass& cm, double t_final, double dx);

struct RunManifest {
    nlohmann::json scenario;
    GridDescriptor grid;
    double dt = 0.0;
    double t_final = 0.0;
    std::vector<std::pair<double, double>> residuals;  // (t, residual)

    nlohmann::json to_json() const;
};

}  // namespace swanson
