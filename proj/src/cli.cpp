#include "swanson/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "swanson/closedform.hpp"
#include "swanson/errors.hpp"
#include "swanson/fockspace.hpp"
#include "swanson/pdeverify.hpp"
#include "swanson/transforms.hpp"
#include "swanson/wavefunction.hpp"

namespace swanson::cli {

namespace {

// Reference parameter sets of the fig1 command.
constexpr double kFigM0 = 1.0;
constexpr double kFigOmega0 = 2.0;
constexpr double kFigX0 = 2.0;
const double kFigSigma = 1.0 / std::numbers::sqrt2;
constexpr ComplexMass kFigPanelA{0.015, 0.00015};
constexpr ComplexMass kFigPanelB{0.01, 0.015};

std::string fmt(double v) { return format_number(v); }

struct Context {
    const RunConfig& cfg;
    std::ostream& log;
    RunResult result;

    std::ofstream open(const std::string& suffix) {
        const std::string path = cfg.out_prefix + suffix;
        std::ofstream os(path, std::ios::binary);
        if (!os) throw ConfigError("cannot write '" + path + "'");
        result.artifacts.push_back(path);
        return os;
    }
};

Scenario load_scenario(const RunConfig& cfg) {
    if (cfg.scenario_json) return scenario_from_json(*cfg.scenario_json);
    if (!cfg.config_path) throw ConfigError("this command needs a scenario (--config <path>)");
    std::ifstream in(*cfg.config_path);
    if (!in) throw ConfigError("cannot read config '" + *cfg.config_path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

void forbid(bool present, const char* option, Command c) {
    if (present) throw ConfigError(std::string("option ") + option + " is not accepted by '" + command_name(c) + "'");
}

void forbid_grid_options(const RunConfig& cfg) {
    forbid(cfg.dt.has_value(), "--dt", cfg.command);
    forbid(cfg.t_final.has_value(), "--t-final", cfg.command);
    forbid(cfg.t_samples.has_value(), "--t-samples", cfg.command);
    forbid(cfg.dx.has_value(), "--dx", cfg.command);
    forbid(cfg.sigma.has_value(), "--sigma", cfg.command);
    forbid(cfg.x0.has_value(), "--x0", cfg.command);
}

int positive_int(const std::optional<int>& v, int fallback, const char* name, int min_value) {
    const int x = v.value_or(fallback);
    if (x < min_value) throw ConfigError(std::string(name) + " must be >= " + std::to_string(min_value));
    return x;
}

double positive_double(const std::optional<double>& v, double fallback, const char* name) {
    const double x = v.value_or(fallback);
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(name) + " must be positive");
    return x;
}

const ComplexMass& require_complex_mass(const Scenario& s, Command c) {
    if (const auto* cm = std::get_if<ComplexMass>(&s.params)) return *cm;
    throw ConfigError("'" + command_name(c) + "' needs a complex_mass scenario (got " + scenario_name(s) + ")");
}

std::vector<double> sample_times(double t_final, int n, bool include_zero) {
    std::vector<double> ts(n);
    for (int k = 0; k < n; ++k)
        ts[k] = include_zero ? (n == 1 ? t_final : t_final * k / (n - 1)) : t_final * (k + 1) / n;
    return ts;
}

// -- commands -----------------------------------------------------------------

void run_spectrum(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    forbid_grid_options(cfg);
    const int dim = positive_int(cfg.dim, kDefaultDim, "--dim", 2);
    const int n_max = positive_int(cfg.n_max, kDefaultNmax, "--nmax", 0);
    if (n_max >= dim) throw ConfigError("--nmax must be smaller than --dim");
    const Scenario s = load_scenario(cfg);

    std::vector<Complex> closed;
    PhaseSpaceParams nu;
    if (std::holds_alternative<ForcedOscillator>(s.params)) {
        const LadderCoefficients c = build_scenario(s).constant_coefficients();
        closed = spectrum_forced(c, s.units, n_max);
        nu = ladder_to_phase_space(c, s.units);
    } else if (const auto* ck = std::get_if<CaldirolaKanai>(&s.params)) {
        for (double e : spectrum_caldirola_kanai(ck->gamma, ck->nu0, s.units, n_max)) closed.emplace_back(e);
        nu = caldirola_kanai_detimed(ck->gamma, ck->nu0, s.units);
    } else {
        throw ConfigError("'spectrum' has no stationary spectrum for the complex_mass scenario");
    }

    const auto build = [&](int d) { return assemble_hamiltonian(nu, 0.0, ladder_matrices(d, s.units)); };
    const SpectrumResult numeric = converged_spectrum(build, dim);

    auto os = ctx.open("_spectrum.csv");
    os << "n,re_E,im_E,re_E_numeric,im_E_numeric,converged\n";
    for (int n = 0; n <= n_max; ++n) {
        const Complex e = closed[n];
        const Complex z = numeric.eigenvalues[n];
        const bool ok = static_cast<std::size_t>(n) < numeric.converged_count;
        os << n << ',' << fmt(e.real()) << ',' << fmt(e.imag()) << ',' << fmt(z.real()) << ',' << fmt(z.imag())
           << ',' << (ok ? "true" : "false") << '\n';
    }
    ctx.log << "spectrum: " << numeric.converged_count << " of " << dim << " eigenvalues stable under dim -> "
            << 2 * dim << "\n";
}

void run_reduce(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    forbid_grid_options(cfg);
    forbid(cfg.n_max.has_value(), "--nmax", cfg.command);
    const int dim = positive_int(cfg.dim, kDefaultDim, "--dim", 16);
    const Scenario s = load_scenario(cfg);

    nlohmann::json out;
    if (std::holds_alternative<ForcedOscillator>(s.params)) {
        const LadderCoefficients c = build_scenario(s).constant_coefficients();
        const ForcedReductionReport r = verify_forced_reduction(c, s.units, dim);
        const Complex wt = 2.0 * c.theta * s.units.omega0;
        out = {{"residual", r.residual},
               {"dim", dim},
               {"omega_tilde", {wt.real(), wt.imag()}},
               {"delta", {r.expected_constant.real(), r.expected_constant.imag()}}};
    } else {
        PhaseSpaceParams nu;
        if (const auto* ck = std::get_if<CaldirolaKanai>(&s.params))
            nu = caldirola_kanai_detimed(ck->gamma, ck->nu0, s.units);
        else
            nu = ladder_to_phase_space_t(build_scenario(s), 0.0).as_phase_space();
        out = verify_reduction(nu, s.units, dim).to_json();
    }
    out["scenario"] = scenario_to_json(s);
    auto os = ctx.open("_reduce.json");
    os << out.dump(2) << '\n';
}

struct WaveSetup {
    Scenario scenario;
    ComplexMass cm;
    GaussianInitial init;
    double t_final;
    int t_samples;
    GridDescriptor grid;
};

WaveSetup wave_setup(const RunConfig& cfg, double dx_default) {
    WaveSetup w;
    w.scenario = load_scenario(cfg);
    w.cm = require_complex_mass(w.scenario, cfg.command);
    w.init.sigma = positive_double(cfg.sigma, kFigSigma, "--sigma");
    w.init.x0 = cfg.x0.value_or(kFigX0);
    if (!std::isfinite(w.init.x0)) throw ConfigError("--x0 must be finite");
    w.t_final = positive_double(cfg.t_final, kDefaultTFinal, "--t-final");
    w.t_samples = positive_int(cfg.t_samples, kDefaultTSamples, "--t-samples", 1);
    w.grid = auto_grid(w.init, w.cm, w.t_final, positive_double(cfg.dx, dx_default, "--dx"));
    return w;
}

void run_evolve(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    forbid(cfg.dim.has_value(), "--dim", cfg.command);
    forbid(cfg.n_max.has_value(), "--nmax", cfg.command);
    forbid(cfg.dt.has_value(), "--dt", cfg.command);
    const WaveSetup w = wave_setup(cfg, kDefaultDx);
    auto index = ctx.open("_evolve_index.csv");
    index << "k,t,file\n";
    const auto ts = sample_times(w.t_final, w.t_samples, true);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const WavefunctionGrid psi = evolve_gaussian(w.cm, w.scenario.units, w.init, ts[k], w.grid);
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "_evolve_%04zu.csv", k);
        auto os = ctx.open(suffix);
        write_csv(os, psi);
        index << k << ',' << fmt(ts[k]) << ',' << cfg.out_prefix + suffix << '\n';
    }
}

void run_verify(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    forbid(cfg.dim.has_value(), "--dim", cfg.command);
    forbid(cfg.n_max.has_value(), "--nmax", cfg.command);
    const WaveSetup w = wave_setup(cfg, kDefaultDx);
    const double dt = positive_double(cfg.dt, kDefaultDt, "--dt");
    const OscillatorUnits& u = w.scenario.units;
    const TimePhaseSpaceParams tp(build_scenario(w.scenario));
    const double probe = default_dt_probe(u);
    const Candidate candidate = [&](double t) { return evolve_gaussian(w.cm, u, w.init, t, w.grid); };

    RunManifest manifest;
    manifest.scenario = scenario_to_json(w.scenario);
    manifest.grid = w.grid;
    manifest.dt = dt;
    manifest.t_final = w.t_final;

    auto os = ctx.open("_verify.csv");
    os << "t,residual,cn_l2_rel,cn_linf_rel\n";
    // The CN columns are a side check. Once the integrator loses the support
    // (complex mass at small dt amplifies grid-scale noise) they read nan and
    // the residual table carries on.
    WavefunctionGrid cn = candidate(0.0);
    std::optional<std::string> cn_failure;
    for (double t : sample_times(w.t_final, w.t_samples, false)) {
        const double r = schrodinger_residual(tp, candidate, t, probe);
        WavefunctionError e{std::nan(""), std::nan("")};
        if (!cn_failure) {
            try {
                cn = crank_nicolson_evolve(tp, cn, t, dt);
                e = wavefunction_error(candidate(t), cn);
            } catch (const Error& ex) {
                if (ex.kind() != ErrorKind::UntrustedSupport && ex.kind() != ErrorKind::SolverBreakdown) throw;
                cn_failure = ex.what();
                ctx.log << "verify: Crank-Nicolson stopped at t=" << fmt(t) << ": " << ex.what() << '\n';
            }
        }
        os << fmt(t) << ',' << fmt(r) << ',' << fmt(e.l2_rel) << ',' << fmt(e.linf_rel) << '\n';
        manifest.residuals.emplace_back(t, r);
    }
    nlohmann::json mj = manifest.to_json();
    mj["crank_nicolson"] = cn_failure ? nlohmann::json{{"status", "stopped"}, {"message", *cn_failure}}
                                      : nlohmann::json{{"status", "ok"}};
    auto ms = ctx.open("_verify_manifest.json");
    ms << mj.dump(2) << '\n';
}

void write_surface(std::ostream& os, const ComplexMass& cm, const OscillatorUnits& u, const GaussianInitial& init,
                   const std::vector<double>& ts, const GridDescriptor& grid) {
    os << "t,x,abs2\n";
    for (double t : ts) {
        const WavefunctionGrid psi = evolve_gaussian(cm, u, init, t, grid);
        for (int j = 0; j < grid.n_points; ++j)
            os << fmt(t) << ',' << fmt(grid.x(j)) << ',' << fmt(std::norm(psi.values[j])) << '\n';
        os << '\n';  // blank line between scans for gnuplot pm3d
    }
}

void run_fig1(Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    forbid(cfg.config_path.has_value() || cfg.scenario_json.has_value(), "--config", cfg.command);
    forbid(cfg.dim.has_value(), "--dim", cfg.command);
    forbid(cfg.n_max.has_value(), "--nmax", cfg.command);
    forbid(cfg.dt.has_value(), "--dt", cfg.command);
    forbid(cfg.sigma.has_value(), "--sigma", cfg.command);
    forbid(cfg.x0.has_value(), "--x0", cfg.command);

    const OscillatorUnits u{kFigM0, kFigOmega0};
    const GaussianInitial init{kFigSigma, kFigX0};
    const double t_final = positive_double(cfg.t_final, kDefaultTFinal, "--t-final");
    const int n_t = positive_int(cfg.t_samples, kDefaultTSamples, "--t-samples", 2);
    const double dx = positive_double(cfg.dx, kDefaultFigDx, "--dx");
    // One grid for both panels so the heatmaps share axes.
    const double nu_max = std::max(kFigPanelA.nu0, kFigPanelB.nu0);
    const GridDescriptor grid = auto_grid(init, ComplexMass{0.0, nu_max}, t_final, dx);
    const auto ts = sample_times(t_final, n_t, true);

    {
        auto os = ctx.open("_fig1a.csv");
        write_surface(os, kFigPanelA, u, init, ts, grid);
    }
    {
        auto os = ctx.open("_fig1b.csv");
        write_surface(os, kFigPanelB, u, init, ts, grid);
    }
    auto gp = ctx.open("_fig1.gp");
    const std::string base = cfg.out_prefix;
    gp << "# gnuplot " << base << "_fig1.gp\n"
       << "set terminal pngcairo size 1200,500\n"
       << "set output '" << base << "_fig1.png'\n"
       << "set datafile separator ','\n"
       << "set multiplot layout 1,2\n"
       << "set key autotitle columnhead\n"
       << "set view map\n"
       << "set xlabel 'x'\n"
       << "set ylabel 't'\n"
       << "set cblabel '|psi|^2'\n"
       << "set title '(a) Omega0=" << kFigPanelA.Omega0 << ", nu0=" << kFigPanelA.nu0 << "'\n"
       << "splot '" << base << "_fig1a.csv' using 2:1:3 with pm3d notitle\n"
       << "set title '(b) Omega0=" << kFigPanelB.Omega0 << ", nu0=" << kFigPanelB.nu0 << "'\n"
       << "splot '" << base << "_fig1b.csv' using 2:1:3 with pm3d notitle\n"
       << "unset multiplot\n";
}

void write_error(std::ostream& err, const std::string& category, const std::string& kind, const std::string& msg) {
    err << nlohmann::json{{"error", category}, {"kind", kind}, {"message", msg}}.dump() << '\n';
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
    if (name == "spectrum") return Command::Spectrum;
    if (name == "reduce") return Command::Reduce;
    if (name == "evolve") return Command::Evolve;
    if (name == "verify") return Command::Verify;
    if (name == "fig1") return Command::Fig1;
    return std::nullopt;
}

std::string command_name(Command c) {
    switch (c) {
        case Command::Spectrum: return "spectrum";
        case Command::Reduce: return "reduce";
        case Command::Evolve: return "evolve";
        case Command::Verify: return "verify";
        case Command::Fig1: return "fig1";
    }
    return "?";
}

RunResult run(const RunConfig& config, std::ostream& log, std::ostream& err) {
    Context ctx{config, log, {}};
    try {
        switch (config.command) {
            case Command::Spectrum: run_spectrum(ctx); break;
            case Command::Reduce: run_reduce(ctx); break;
            case Command::Evolve: run_evolve(ctx); break;
            case Command::Verify: run_verify(ctx); break;
            case Command::Fig1: run_fig1(ctx); break;
        }
    } catch (const ConfigError& e) {
        write_error(err, "config", "InvalidConfig", e.what());
        ctx.result.exit_code = 1;
    } catch (const Error& e) {
        const bool numerical = is_numerical(e.kind());
        write_error(err, numerical ? "numerical" : "config", std::string(to_string(e.kind())), e.what());
        ctx.result.exit_code = numerical ? 2 : 1;
    }
    return ctx.result;
}

}  // namespace swanson::cli
