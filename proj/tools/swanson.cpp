#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "swanson/cli.hpp"

namespace {

template <class T>
void optional_flag(CLI::App& app, const std::string& name, std::optional<T>& target, const std::string& help) {
    app.add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
    using swanson::cli::Command;
    swanson::cli::RunConfig cfg;

    CLI::App app{"Generalized Swanson oscillator: spectra, reductions and exact wavefunctions"};
    app.require_subcommand(1);

    const std::pair<Command, const char*> commands[] = {
        {Command::Spectrum, "closed-form spectrum next to truncated Fock eigenvalues"},
        {Command::Reduce, "residual of the reduction to a harmonic oscillator (JSON)"},
        {Command::Evolve, "exact Gaussian wavefunction of the complex-mass scenario at t_samples times"},
        {Command::Verify, "Schrodinger residual and Crank-Nicolson comparison of the exact wavefunction"},
        {Command::Fig1, "probability-density surfaces for the two reference parameter sets plus a gnuplot script"},
    };
    for (const auto& [cmd, help] : commands) {
        CLI::App* sub = app.add_subcommand(swanson::cli::command_name(cmd), help);
        sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
        sub->add_option_function<std::string>(
            "--config", [&cfg](const std::string& p) { cfg.config_path = p; }, "scenario JSON file");
        sub->add_option("--out", cfg.out_prefix, "output path prefix")->capture_default_str();
        optional_flag(*sub, "--dim", cfg.dim, "Fock truncation dimension (default 256)");
        optional_flag(*sub, "--nmax", cfg.n_max, "highest level reported (default 10)");
        optional_flag(*sub, "--dt", cfg.dt, "Crank-Nicolson time step (default 1e-4)");
        optional_flag(*sub, "--t-final", cfg.t_final, "final time (default 2)");
        optional_flag(*sub, "--t-samples", cfg.t_samples, "number of output times (default 64)");
        optional_flag(*sub, "--dx", cfg.dx, "grid spacing (default 5e-3, fig1 2e-2)");
        optional_flag(*sub, "--sigma", cfg.sigma, "initial Gaussian width (default 1/sqrt(2))");
        optional_flag(*sub, "--x0", cfg.x0, "initial Gaussian centre (default 2)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return swanson::cli::run(cfg, std::cout, std::cerr).exit_code;
}
