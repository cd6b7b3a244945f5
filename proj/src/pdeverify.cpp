#include "swanson/pdeverify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "swanson/errors.hpp"

namespace swanson {

namespace {

const Complex I{0.0, 1.0};

struct Tridiagonal {
    std::vector<Complex> lower, diag, upper;
};

// Rows of the finite-difference H. Row j couples psi[j-1], psi[j], psi[j+1];
// the ghost values past either end are zero.
Tridiagonal hamiltonian_rows(const TimePhaseSpaceSample& h, const GridDescriptor& g) {
    const int n = g.n_points;
    const double dx = g.dx();
    const Complex kin = -1.0 / (2.0 * h.mass * dx * dx);
    const Complex pot = h.mass * h.omega_sq / 2.0;
    Tridiagonal T{std::vector<Complex>(n), std::vector<Complex>(n), std::vector<Complex>(n)};
    for (int j = 0; j < n; ++j) {
        const double x = g.x(j);
        const Complex drift = (h.Omega * x + h.nu) / (2.0 * dx);
        T.lower[j] = kin - drift;
        T.upper[j] = kin + drift;
        T.diag[j] = -2.0 * kin + pot * x * x + h.Omega / 2.0 + h.F * x + h.v0;
    }
    return T;
}

double interior_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (std::size_t j = 1; j + 1 < v.size(); ++j) s += std::norm(v[j]);
    return std::sqrt(s);
}

}  // namespace

WavefunctionGrid apply_position_hamiltonian(const TimePhaseSpaceSample& h, const WavefunctionGrid& psi) {
    const GridDescriptor& g = psi.grid;
    g.validate();
    if (static_cast<int>(psi.values.size()) != g.n_points)
        throw Error(ErrorKind::GridMismatch, "wavefunction sample count differs from its grid");
    const Tridiagonal T = hamiltonian_rows(h, g);
    const auto& v = psi.values;
    const int n = g.n_points;
    WavefunctionGrid out{g, std::vector<Complex>(n), psi.time_tag};
    for (int j = 0; j < n; ++j) {
        Complex acc = T.diag[j] * v[j];
        if (j > 0) acc += T.lower[j] * v[j - 1];
        if (j + 1 < n) acc += T.upper[j] * v[j + 1];
        out.values[j] = acc;
    }
    return out;
}

WavefunctionGrid apply_position_hamiltonian(const TimePhaseSpaceParams& tp, double t, const WavefunctionGrid& psi) {
    return apply_position_hamiltonian(tp.at(t), psi);
}

double default_dt_probe(const OscillatorUnits& u) { return 1e-5 * 2.0 * std::numbers::pi / u.omega0; }

double schrodinger_residual(const TimePhaseSpaceParams& tp, const Candidate& candidate, double t, double dt_probe) {
    if (!(dt_probe > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt_probe must be positive");
    const WavefunctionGrid now = candidate(t);
    now.require_support();
    const WavefunctionGrid fwd = candidate(t + dt_probe);
    const WavefunctionGrid back = candidate(t - dt_probe);
    if (!(fwd.grid == now.grid) || !(back.grid == now.grid))
        throw Error(ErrorKind::GridMismatch, "candidate changed grid between probe times");
    const WavefunctionGrid Hpsi = apply_position_hamiltonian(tp, t, now);
    std::vector<Complex> diff(now.values.size());
    for (std::size_t j = 0; j < diff.size(); ++j)
        diff[j] = I * (fwd.values[j] - back.values[j]) / (2.0 * dt_probe) - Hpsi.values[j];
    const double denom = interior_norm(Hpsi.values);
    if (!(denom > 0.0)) throw Error(ErrorKind::DivisionByZero, "H psi vanishes on the interior");
    return interior_norm(diff) / denom;
}

void solve_tridiagonal(const std::vector<Complex>& lower, const std::vector<Complex>& diag,
                       const std::vector<Complex>& upper, std::vector<Complex>& rhs) {
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n)
        throw Error(ErrorKind::DimensionMismatch, "tridiagonal: inconsistent sizes");
    std::vector<Complex> c(n);
    Complex piv = diag[0];
    auto check = [](Complex p, std::size_t j) {
        const double mag = std::max(std::abs(p.real()), std::abs(p.imag()));
        if (!(mag > 1e-300) || !std::isfinite(mag)) {
            std::ostringstream os;
            os << "tridiagonal elimination hit a zero pivot at row " << j;
            throw Error(ErrorKind::SolverBreakdown, os.str());
        }
    };
    check(piv, 0);
    c[0] = upper[0] / piv;
    rhs[0] /= piv;
    for (std::size_t j = 1; j < n; ++j) {
        piv = diag[j] - lower[j] * c[j - 1];
        check(piv, j);
        const Complex inv = 1.0 / piv;
        c[j] = upper[j] * inv;
        rhs[j] = (rhs[j] - lower[j] * rhs[j - 1]) * inv;
    }
    for (std::size_t j = n - 1; j-- > 0;) rhs[j] -= c[j] * rhs[j + 1];
}

WavefunctionGrid crank_nicolson_evolve(const TimePhaseSpaceParams& tp, const WavefunctionGrid& psi0, double t_final,
                                       double dt, const CrankNicolsonOptions& opts) {
    if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "Crank-Nicolson requires dt > 0");
    const double t0 = psi0.time_tag;
    if (!(t_final >= t0)) throw Error(ErrorKind::InvalidArgument, "t_final precedes the initial time");
    const GridDescriptor& g = psi0.grid;
    g.validate();
    const int n = g.n_points;
    if (static_cast<int>(psi0.values.size()) != n)
        throw Error(ErrorKind::GridMismatch, "wavefunction sample count differs from its grid");

    const long steps = std::max(1L, std::lround(std::ceil((t_final - t0) / dt - 1e-9)));
    const double h = (t_final - t0) / static_cast<double>(steps);
    std::vector<Complex> psi = psi0.values;
    std::vector<Complex> rhs(n), lo(n), di(n), up(n);
    for (long k = 0; k < steps; ++k) {
        const double t_mid = t0 + (static_cast<double>(k) + 0.5) * h;
        const Tridiagonal T = hamiltonian_rows(tp.at(t_mid), g);
        const Complex f = 0.5 * I * h;
        for (int j = 0; j < n; ++j) {
            Complex Hpsi = T.diag[j] * psi[j];
            if (j > 0) Hpsi += T.lower[j] * psi[j - 1];
            if (j + 1 < n) Hpsi += T.upper[j] * psi[j + 1];
            rhs[j] = psi[j] - f * Hpsi;
            lo[j] = f * T.lower[j];
            di[j] = 1.0 + f * T.diag[j];
            up[j] = f * T.upper[j];
        }
        solve_tridiagonal(lo, di, up, rhs);
        psi.swap(rhs);
        if (opts.support_check_every > 0 && (k + 1) % opts.support_check_every == 0)
            WavefunctionGrid{g, psi, t0 + (k + 1) * h}.require_support(opts.support_tol);
    }
    WavefunctionGrid out{g, std::move(psi), t_final};
    out.require_support(opts.support_tol);
    return out;
}

WavefunctionError wavefunction_error(const WavefunctionGrid& a, const WavefunctionGrid& b) {
    if (!(a.grid == b.grid) || a.values.size() != b.values.size())
        throw Error(ErrorKind::GridMismatch, "wavefunctions live on different grids");
    double num2 = 0.0, den2 = 0.0, num_inf = 0.0, den_inf = 0.0;
    for (std::size_t j = 1; j + 1 < a.values.size(); ++j) {
        const double d = std::abs(a.values[j] - b.values[j]);
        const double r = std::abs(a.values[j]);
        num2 += d * d;
        den2 += r * r;
        num_inf = std::max(num_inf, d);
        den_inf = std::max(den_inf, r);
    }
    if (!(den2 > 0.0)) throw Error(ErrorKind::DivisionByZero, "reference wavefunction vanishes on the interior");
    return {std::sqrt(num2 / den2), num_inf / den_inf};
}

GridDescriptor auto_grid(const GaussianInitial& init, const ComplexMass& cm, double t_final, double dx) {
    if (!(init.sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "Gaussian width must be positive");
    const double half = 10.0 * init.sigma + std::abs(cm.nu0) * t_final + 2.0 * std::abs(init.x0);
    return GridDescriptor::with_spacing(init.x0 - half, init.x0 + half, dx);
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [t, r] : residuals) rows.push_back({{"t", t}, {"residual", r}});
    return {{"scenario", scenario},
            {"grid", {{"x_min", grid.x_min}, {"x_max", grid.x_max}, {"n_points", grid.n_points}}},
            {"dt", dt},
            {"t_final", t_final},
            {"residuals", rows}};
}

}  // namespace swanson
