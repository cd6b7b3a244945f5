#include "swanson/coefficients.hpp"

#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "swanson/errors.hpp"

namespace swanson {

namespace {

constexpr double kMassSingularityTol = 1e-12;
const Complex I{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

LadderCoefficients caldirola_kanai_at(const CaldirolaKanai& ck, const OscillatorUnits& u, double t) {
    const double amp = std::sqrt(2.0 * u.m0 / u.omega0) * ck.nu0;
    const double g = ck.gamma;
    LadderCoefficients c;
    c.theta = 0.5 * std::cos(2.0 * g * t);
    c.alpha1 = amp * std::cos(g * t);
    c.beta1 = I * amp * std::sin(g * t);
    c.alpha2 = 0.5 * I * std::sin(2.0 * g * t);
    c.beta2 = c.alpha2;
    c.v0 = 0.0;
    return c;
}

LadderCoefficients complex_mass_at(const ComplexMass& cm, const OscillatorUnits& u, double t) {
    const double w0 = u.omega0;
    const double O = cm.Omega0;
    const Complex s = complex_mass_factor(cm, t);
    const Complex root_s = std::sqrt(s);
    const double amp1 = cm.nu0 * std::sqrt(u.m0 / (2.0 * w0));
    const double t2 = 2.0 * t * t * w0 * O;

    LadderCoefficients c;
    c.theta = (1.0 + s * s) / (4.0 * s);
    c.alpha1 = -amp1 * (1.0 + I * t * w0 + t2) / root_s;
    c.beta1 = amp1 * (1.0 - I * t * w0 - t2) / root_s;
    c.alpha2 = -O * (1.0 + 2.0 * I * t * w0 + t2) / (2.0 * w0 * s);
    c.beta2 = O * (1.0 - 2.0 * I * t * w0 - t2) / (2.0 * w0 * s);
    const Complex gamma = complex_mass_translation(cm, t);
    c.v0 = -0.5 * gamma * gamma * u.m0 * w0 * w0 * s;
    return c;
}

bool approx_real(Complex z, double tol) { return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z)); }

bool approx_equal(Complex a, Complex b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

void validate(const OscillatorUnits& units) {
    if (!(units.m0 > 0.0) || !(units.omega0 > 0.0) || !std::isfinite(units.m0) ||
        !std::isfinite(units.omega0)) {
        std::ostringstream os;
        os << "oscillator units require m0 > 0 and omega0 > 0 (got m0=" << units.m0
           << ", omega0=" << units.omega0 << ")";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
}

bool is_hermitian(const LadderCoefficients& c, double tol) {
    return approx_real(c.theta, tol) && approx_real(c.v0, tol) &&
           approx_equal(c.beta1, std::conj(c.alpha1), tol) &&
           approx_equal(c.beta2, std::conj(c.alpha2), tol);
}

std::string scenario_name(const Scenario& s) {
    return std::visit(overloaded{[](const ForcedOscillator&) { return std::string("forced"); },
                                 [](const CaldirolaKanai&) { return std::string("caldirola_kanai"); },
                                 [](const ComplexMass&) { return std::string("complex_mass"); }},
                      s.params);
}

// -- SwansonParams ------------------------------------------------------------

SwansonParams::SwansonParams(Profile profile, OscillatorUnits units)
    : profile_(std::move(profile)), units_(units) {
    validate(units_);
}

SwansonParams SwansonParams::constant(const LadderCoefficients& c, OscillatorUnits units) {
    return SwansonParams(c, units);
}

SwansonParams SwansonParams::caldirola_kanai(const CaldirolaKanai& ck, OscillatorUnits units) {
    if (ck.gamma < 0.0 || ck.nu0 < 0.0)
        throw Error(ErrorKind::InvalidArgument, "Caldirola-Kanai scenario requires Gamma >= 0 and nu0 >= 0");
    return SwansonParams(ck, units);
}

SwansonParams SwansonParams::complex_mass(const ComplexMass& cm, OscillatorUnits units) {
    if (cm.Omega0 < 0.0 || cm.nu0 < 0.0)
        throw Error(ErrorKind::InvalidArgument, "complex-mass scenario requires Omega0 >= 0 and nu0 >= 0");
    return SwansonParams(cm, units);
}

LadderCoefficients SwansonParams::at(double t) const {
    return std::visit(overloaded{[](const LadderCoefficients& c) { return c; },
                                 [&](const CaldirolaKanai& ck) { return caldirola_kanai_at(ck, units_, t); },
                                 [&](const ComplexMass& cm) { return complex_mass_at(cm, units_, t); }},
                      profile_);
}

bool SwansonParams::time_dependent() const { return !std::holds_alternative<LadderCoefficients>(profile_); }

const LadderCoefficients& SwansonParams::constant_coefficients() const {
    if (const auto* c = std::get_if<LadderCoefficients>(&profile_)) return *c;
    throw Error(ErrorKind::InvalidArgument, "coefficients are a time profile, not constants");
}

SwansonParams build_scenario(const Scenario& s) {
    return std::visit(overloaded{[&](const ForcedOscillator& f) {
                                     LadderCoefficients c;
                                     c.theta = f.theta;
                                     c.alpha1 = f.alpha1;
                                     c.beta1 = f.beta1;
                                     return SwansonParams::constant(c, s.units);
                                 },
                                 [&](const CaldirolaKanai& ck) { return SwansonParams::caldirola_kanai(ck, s.units); },
                                 [&](const ComplexMass& cm) { return SwansonParams::complex_mass(cm, s.units); }},
                      s.params);
}

// -- phase-space maps ---------------------------------------------------------

PhaseSpaceParams ladder_to_phase_space(const LadderCoefficients& c, const OscillatorUnits& u) {
    validate(u);
    const double m0 = u.m0;
    const double w0 = u.omega0;
    PhaseSpaceParams nu;
    nu.nu1 = (2.0 * c.theta - (c.alpha2 + c.beta2)) / (2.0 * m0);
    nu.nu2 = 0.5 * m0 * w0 * w0 * (2.0 * c.theta + c.alpha2 + c.beta2);
    nu.nu3 = 0.5 * w0 * (c.beta2 - c.alpha2);
    nu.nu4 = std::sqrt(w0 / (2.0 * m0)) * (c.beta1 - c.alpha1);
    nu.nu5 = std::sqrt(0.5 * m0 * w0 * w0 * w0) * (c.alpha1 + c.beta1);
    return nu;
}

PhaseSpaceParams ladder_to_phase_space(const SwansonParams& p) {
    return ladder_to_phase_space(p.constant_coefficients(), p.units());
}

LadderCoefficients phase_space_to_ladder(const PhaseSpaceParams& nu, const OscillatorUnits& units) {
    // Columns of the forward map, taken from unit ladder coefficients.
    Eigen::Matrix<Complex, 5, 5> forward;
    for (int k = 0; k < 5; ++k) {
        LadderCoefficients e;
        Complex* fields[5] = {&e.theta, &e.alpha1, &e.beta1, &e.alpha2, &e.beta2};
        *fields[k] = 1.0;
        const PhaseSpaceParams col = ladder_to_phase_space(e, units);
        forward.col(k) << col.nu1, col.nu2, col.nu3, col.nu4, col.nu5;
    }
    Eigen::Matrix<Complex, 5, 1> rhs;
    rhs << nu.nu1, nu.nu2, nu.nu3, nu.nu4, nu.nu5;
    const Eigen::Matrix<Complex, 5, 1> sol = forward.partialPivLu().solve(rhs);

    LadderCoefficients c;
    c.theta = sol(0);
    c.alpha1 = sol(1);
    c.beta1 = sol(2);
    c.alpha2 = sol(3);
    c.beta2 = sol(4);
    return c;
}

PhaseSpaceParams TimePhaseSpaceSample::as_phase_space() const {
    PhaseSpaceParams p;
    p.nu1 = 1.0 / (2.0 * mass);
    p.nu2 = 0.5 * mass * omega_sq;
    p.nu3 = 0.5 * Omega;
    p.nu4 = nu;
    p.nu5 = F;
    return p;
}

TimePhaseSpaceSample ladder_to_phase_space_t(const SwansonParams& p, double t) {
    const LadderCoefficients c = p.at(t);
    const OscillatorUnits& u = p.units();
    const double m0 = u.m0;
    const double w0 = u.omega0;

    const Complex mass_den = 2.0 * c.theta - (c.alpha2 + c.beta2);
    if (std::abs(mass_den) < kMassSingularityTol) {
        std::ostringstream os;
        os << "mass singularity at t=" << t << ": 2 theta - (alpha2 + beta2) = " << mass_den;
        throw Error(ErrorKind::MassSingularity, os.str());
    }
    const Complex sum2 = c.alpha2 + c.beta2;

    TimePhaseSpaceSample s;
    s.mass = m0 / mass_den;
    s.omega_sq = w0 * w0 * (4.0 * c.theta * c.theta - sum2 * sum2);
    s.Omega = -w0 * (c.alpha2 - c.beta2);
    s.nu = -std::sqrt(w0 / (2.0 * m0)) * (c.alpha1 - c.beta1);
    s.F = std::sqrt(0.5 * m0 * w0 * w0 * w0) * (c.alpha1 + c.beta1);
    s.v0 = c.v0;
    return s;
}

TimePhaseSpaceParams::TimePhaseSpaceParams(SwansonParams source, ValidityWindow window, int samples)
    : source_(std::move(source)), window_(window) {
    if (!(window_.t_end >= window_.t_begin) || samples < 2)
        throw Error(ErrorKind::InvalidArgument, "validity window must satisfy t_end >= t_begin, samples >= 2");
    const double span = window_.t_end - window_.t_begin;
    for (int k = 0; k < samples; ++k) {
        const double t = window_.t_begin + span * k / (samples - 1);
        (void)ladder_to_phase_space_t(source_, t);
    }
}

// -- complex-mass auxiliaries -------------------------------------------------

Complex complex_mass_factor(const ComplexMass& cm, double t) { return {1.0, -2.0 * t * cm.Omega0}; }

Complex complex_mass_translation(const ComplexMass& cm, double t) {
    return cm.nu0 * t / std::sqrt(complex_mass_factor(cm, t));
}

Complex complex_mass_dilation(const ComplexMass& cm, double t) {
    return 0.5 * I * std::log(complex_mass_factor(cm, t));
}

// -- JSON ---------------------------------------------------------------------

namespace {

double number_field(const nlohmann::json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string("scenario key '") + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(std::string("scenario key '") + key + "' must be finite");
    return d;
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("scenario descriptor must be a JSON object");

    static const std::set<std::string> common{"scenario", "m0", "omega0"};
    static const std::set<std::string> forced_keys{"theta", "alpha1", "beta1"};
    static const std::set<std::string> ck_keys{"Gamma", "nu0"};
    static const std::set<std::string> cm_keys{"Omega0", "nu0"};

    if (!j.contains("scenario") || !j.at("scenario").is_string())
        throw ConfigError("scenario descriptor needs a string 'scenario' field");
    const std::string name = j.at("scenario").get<std::string>();

    const std::set<std::string>* own = nullptr;
    if (name == "forced")
        own = &forced_keys;
    else if (name == "caldirola_kanai")
        own = &ck_keys;
    else if (name == "complex_mass")
        own = &cm_keys;
    else
        throw ConfigError("unknown scenario '" + name + "' (expected forced, caldirola_kanai or complex_mass)");

    for (const auto& item : j.items()) {
        if (common.count(item.key()) || own->count(item.key())) continue;
        throw ConfigError("key '" + item.key() + "' is not valid for scenario '" + name + "'");
    }

    Scenario s;
    s.units.m0 = number_field(j, "m0", 1.0);
    s.units.omega0 = number_field(j, "omega0", 1.0);
    if (!(s.units.m0 > 0.0) || !(s.units.omega0 > 0.0)) throw ConfigError("m0 and omega0 must be positive");

    if (name == "forced") {
        ForcedOscillator f;
        f.theta = number_field(j, "theta", 0.5);
        f.alpha1 = number_field(j, "alpha1", 0.0);
        f.beta1 = number_field(j, "beta1", 0.0);
        s.params = f;
    } else if (name == "caldirola_kanai") {
        CaldirolaKanai ck;
        ck.gamma = number_field(j, "Gamma", 0.0);
        ck.nu0 = number_field(j, "nu0", 0.0);
        if (ck.gamma < 0.0 || ck.nu0 < 0.0) throw ConfigError("Gamma and nu0 must be >= 0");
        s.params = ck;
    } else {
        ComplexMass cm;
        cm.Omega0 = number_field(j, "Omega0", 0.0);
        cm.nu0 = number_field(j, "nu0", 0.0);
        if (cm.Omega0 < 0.0 || cm.nu0 < 0.0) throw ConfigError("Omega0 and nu0 must be >= 0");
        s.params = cm;
    }
    return s;
}

nlohmann::json scenario_to_json(const Scenario& s) {
    nlohmann::json j;
    j["scenario"] = scenario_name(s);
    j["m0"] = s.units.m0;
    j["omega0"] = s.units.omega0;
    std::visit(overloaded{[&](const ForcedOscillator& f) {
                              j["theta"] = f.theta;
                              j["alpha1"] = f.alpha1;
                              j["beta1"] = f.beta1;
                          },
                          [&](const CaldirolaKanai& ck) {
                              j["Gamma"] = ck.gamma;
                              j["nu0"] = ck.nu0;
                          },
                          [&](const ComplexMass& cm) {
                              j["Omega0"] = cm.Omega0;
                              j["nu0"] = cm.nu0;
                          }},
               s.params);
    return j;
}

}  // namespace swanson
