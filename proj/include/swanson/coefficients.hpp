#pragma once

// Parameterizations of the generalized Swanson Hamiltonian
//
//   H/w0 = theta (a^+ a + a a^+) + alpha1 a^+ + beta1 a + alpha2 a^+^2 + beta2 a^2
//
// and the exact maps to the phase-space form
//
//   H = nu1 p^2 + nu2 x^2 + i nu3 (xp + px) + i nu4 p + nu5 x
//
// together with the time-dependent scenarios. hbar = 1 throughout.

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

namespace swanson {

using Complex = std::complex<double>;

/// Mass and frequency scale of the underlying oscillator basis.
struct OscillatorUnits {
    double m0 = 1.0;
    double omega0 = 1.0;
};

/// Throws Error(InvalidArgument) unless m0 > 0 and omega0 > 0.
void validate(const OscillatorUnits& units);

/// Static values of the ladder-operator coefficients.
///
/// `v0` is the additive scalar as it appears in the position-space
/// Hamiltonian, i.e. already multiplied out (energy units).
struct LadderCoefficients {
    Complex theta{0.0};
    Complex alpha1{0.0};
    Complex beta1{0.0};
    Complex alpha2{0.0};
    Complex beta2{0.0};
    Complex v0{0.0};
};

/// Hermitian iff theta and v0 are real and beta_j == conj(alpha_j).
bool is_hermitian(const LadderCoefficients& c, double tol = 1e-12);

struct PhaseSpaceParams {
    Complex nu1{0.0};  // 1/mass
    Complex nu2{0.0};  // mass * freq^2
    Complex nu3{0.0};  // freq
    Complex nu4{0.0};  // velocity
    Complex nu5{0.0};  // force
};

// Named scenarios.

/// alpha2 = beta2 = 0, real coefficients.
struct ForcedOscillator {
    double theta = 0.5;
    double alpha1 = 0.0;
    double beta1 = 0.0;
};

/// Non-Hermitian Caldirola-Kanai profile, mass m0 exp(2 i Gamma t).
struct CaldirolaKanai {
    double gamma = 0.0;
    double nu0 = 0.0;
};

/// Complex mass growing as m0 (1 - 2 i t Omega0).
struct ComplexMass {
    double Omega0 = 0.0;
    double nu0 = 0.0;
};

struct Scenario {
    std::variant<ForcedOscillator, CaldirolaKanai, ComplexMass> params;
    OscillatorUnits units;
};

std::string scenario_name(const Scenario& s);

/// Coefficients that are either constants or a scenario-tagged closed form
/// in t. Immutable once built.
class SwansonParams {
public:
    static SwansonParams constant(const LadderCoefficients& c, OscillatorUnits units);
    static SwansonParams caldirola_kanai(const CaldirolaKanai& ck, OscillatorUnits units);
    static SwansonParams complex_mass(const ComplexMass& cm, OscillatorUnits units);

    LadderCoefficients at(double t) const;
    bool time_dependent() const;
    bool hermitian_at(double t) const { return is_hermitian(at(t)); }
    const OscillatorUnits& units() const { return units_; }

    /// Constant coefficients; throws Error(InvalidArgument) for a time profile.
    const LadderCoefficients& constant_coefficients() const;

private:
    using Profile = std::variant<LadderCoefficients, CaldirolaKanai, ComplexMass>;
    SwansonParams(Profile profile, OscillatorUnits units);

    Profile profile_;
    OscillatorUnits units_;
};

SwansonParams build_scenario(const Scenario& s);

PhaseSpaceParams ladder_to_phase_space(const LadderCoefficients& c, const OscillatorUnits& units);
PhaseSpaceParams ladder_to_phase_space(const SwansonParams& p);

/// Inverse of ladder_to_phase_space on the five operator coefficients (v0 is
/// not represented in PhaseSpaceParams and comes back as zero). Solved as a
/// 5x5 linear system assembled from the forward map.
LadderCoefficients phase_space_to_ladder(const PhaseSpaceParams& nu, const OscillatorUnits& units);

/// Instantaneous phase-space coefficients m(t), w^2(t), Omega(t), nu(t), F(t)
/// and the additive constant.
struct TimePhaseSpaceSample {
    Complex mass;
    Complex omega_sq;
    Complex Omega;
    Complex nu;
    Complex F;
    Complex v0;

    /// nu1 = 1/(2m), nu2 = m w^2/2, nu3 = Omega/2, nu4 = nu, nu5 = F.
    PhaseSpaceParams as_phase_space() const;
};

/// Throws Error(MassSingularity) when 2 theta - (alpha2 + beta2) vanishes
/// within 1e-12.
TimePhaseSpaceSample ladder_to_phase_space_t(const SwansonParams& p, double t);

struct ValidityWindow {
    double t_begin = 0.0;
    double t_end = 100.0;
};

/// Time-dependent phase-space Hamiltonian. Construction samples the validity
/// window and rejects profiles whose mass is singular there.
class TimePhaseSpaceParams {
public:
    explicit TimePhaseSpaceParams(SwansonParams source, ValidityWindow window = {},
                                  int samples = 4001);

    TimePhaseSpaceSample at(double t) const { return ladder_to_phase_space_t(source_, t); }
    const SwansonParams& source() const { return source_; }
    const OscillatorUnits& units() const { return source_.units(); }
    const ValidityWindow& window() const { return window_; }

private:
    SwansonParams source_;
    ValidityWindow window_;
};

// Complex-mass auxiliaries. The argument 1 - 2 i t Omega0 always has real part
// 1, so the principal branches of sqrt and log never meet their cut.

Complex complex_mass_factor(const ComplexMass& cm, double t);            // 1 - 2 i t Omega0
Complex complex_mass_translation(const ComplexMass& cm, double t);       // gamma(t) = nu0 t / sqrt(1 - 2 i t Omega0)
Complex complex_mass_dilation(const ComplexMass& cm, double t);          // delta(t) = (i/2) ln(1 - 2 i t Omega0)

// JSON scenario descriptor:
//   {"scenario": "caldirola_kanai"|"complex_mass"|"forced", "m0": f, "omega0": f,
//    "Gamma": f, "nu0": f, "Omega0": f, "theta": f, "alpha1": f, "beta1": f}
// Keys outside that set, or belonging to a different scenario, are rejected.

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

}  // namespace swanson
