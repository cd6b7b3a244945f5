#include "swanson/transforms.hpp"

#include <cmath>
#include <sstream>

#include "swanson/errors.hpp"

namespace swanson {

namespace {

const Complex I{0.0, 1.0};
constexpr double kZeroTol = 1e-12;

Complex delta_of(const PhaseSpaceParams& nu) { return nu.nu1 * nu.nu2 + nu.nu3 * nu.nu3; }

double block_norm(const Matrix& M, Eigen::Index k) { return M.topLeftCorner(k, k).norm(); }

}  // namespace

QuadraticOperator to_operator(const LinearGenerator& g) { return {0.0, g.c_x, g.c_p, 0.0, 0.0, 0.0}; }

QuadraticOperator to_operator(const QuadraticGenerator& g) { return {0.0, 0.0, 0.0, g.c_xx, g.c_pp, g.c_xp}; }

// -- forced oscillator --------------------------------------------------------

LinearGenerator eta_forced_coefficients(const LadderCoefficients& c, const OscillatorUnits& u) {
    if (std::abs(c.alpha2) > 0.0 || std::abs(c.beta2) > 0.0)
        throw Error(ErrorKind::InvalidArgument, "forced oscillator requires alpha2 = beta2 = 0");
    if (std::abs(c.theta) < kZeroTol) throw Error(ErrorKind::ZeroTheta, "forced oscillator generator needs theta != 0");
    const double mw = u.m0 * u.omega0;
    const Complex denom = 2.0 * c.theta * std::sqrt(2.0 * mw);
    return {-mw * (c.alpha1 - c.beta1) / denom, I * (c.alpha1 + c.beta1) / denom};
}

FockOperator eta_forced_generator(const LadderCoefficients& c, const LadderMatrices& ops) {
    const LinearGenerator g = eta_forced_coefficients(c, ops.x.units());
    return FockOperator(g.c_x * ops.x.matrix() + g.c_p * ops.p.matrix(), ops.x.units());
}

Complex forced_energy_shift(const LadderCoefficients& c, const OscillatorUnits& u) {
    if (std::abs(c.theta) < kZeroTol) throw Error(ErrorKind::ZeroTheta, "forced oscillator needs theta != 0");
    return -u.omega0 * c.alpha1 * c.beta1 / (2.0 * c.theta);
}

// -- eta1 ---------------------------------------------------------------------

Eta1Parameters eta1_parameters(const PhaseSpaceParams& nu, const OscillatorUnits& u) {
    if (std::abs(nu.nu4) == 0.0 && std::abs(nu.nu5) == 0.0) return {};
    const Complex D = delta_of(nu);
    if (std::abs(D) < kZeroTol) throw Error(ErrorKind::DivisionByZero, "eta1: nu1 nu2 + nu3^2 vanishes");
    const Complex N = nu.nu3 * nu.nu4 + nu.nu1 * nu.nu5;
    if (std::abs(N) < kZeroTol)
        throw Error(ErrorKind::DegenerateDirection, "eta1: nu3 nu4 + nu1 nu5 vanishes with nonzero linear terms");
    const double mw = u.m0 * u.omega0;
    const Complex y = (nu.nu3 * nu.nu5 - nu.nu2 * nu.nu4) / (mw * N);
    const Complex one_minus_y2 = 1.0 - y * y;
    if (std::abs(one_minus_y2) < kZeroTol)
        throw Error(ErrorKind::DegenerateDirection, "eta1: arctanh argument at +-1");
    Eta1Parameters e;
    e.vartheta = I * std::atanh(y);
    Complex root = std::sqrt(one_minus_y2);
    // kappa cos(vartheta) must equal sqrt(m0 w0/2) N/D. cosh(atanh y) is
    // 1/sqrt(1 - y^2) only up to sign off the principal sheet.
    if (std::abs(root * std::cos(e.vartheta) - 1.0) > 1e-8) root = -root;
    e.kappa = std::sqrt(mw / 2.0) * (N / D) * root;
    return e;
}

Complex eta1_vartheta_printed(const PhaseSpaceParams& nu, const OscillatorUnits& u) {
    if (std::abs(nu.nu4) < kZeroTol) throw Error(ErrorKind::DivisionByZero, "printed vartheta needs nu4 != 0");
    const double mw = u.m0 * u.omega0;
    const Complex arg = (nu.nu3 * nu.nu5 / nu.nu4 - nu.nu2) / (mw * (nu.nu3 + nu.nu1 * nu.nu5 / nu.nu4));
    return I * std::atanh(arg);
}

LinearGenerator eta1_generator(const Eta1Parameters& e, const OscillatorUnits& u) {
    const double mw = u.m0 * u.omega0;
    return {I * e.kappa * std::sqrt(mw / 2.0) * std::sin(e.vartheta),
            I * e.kappa * std::cos(e.vartheta) / std::sqrt(2.0 * mw)};
}

// -- eta2 ---------------------------------------------------------------------

Eta2Parameters eta2_parameters(const PhaseSpaceParams& nu, const OscillatorUnits& u) {
    const double mw = u.m0 * u.omega0;
    Eta2Parameters e;
    e.A = nu.nu2 / (2.0 * mw) + nu.nu1 * mw / 2.0;
    e.B = nu.nu2 / (2.0 * mw) - nu.nu1 * mw / 2.0;
    e.R = std::sqrt(e.B * e.B - nu.nu3 * nu.nu3);
    const Complex D = delta_of(nu);
    if (std::abs(D) < kZeroTol) throw Error(ErrorKind::ExceptionalPoint, "eta2: nu1 nu2 + nu3^2 vanishes");
    if (std::abs(e.A) < kZeroTol) throw Error(ErrorKind::ExceptionalPoint, "eta2: A vanishes");
    if (std::abs(e.A + e.R) < kZeroTol) throw Error(ErrorKind::ExceptionalPoint, "eta2: A + R vanishes");
    e.log_prefactor = std::log(std::sqrt(D) / (e.A + e.R));
    const Complex z = e.R / e.A;
    if (std::abs(z) < 1e-3) {
        // L = -atanh(R/A) on this side, so L/R has the finite limit -1/A.
        if (e.A.real() <= 0.0)
            throw Error(ErrorKind::ExceptionalPoint, "eta2: R vanishes with Re(A) <= 0");
        const Complex z2 = z * z;
        e.L_over_R = -(1.0 + z2 / 3.0 + z2 * z2 / 5.0 + z2 * z2 * z2 / 7.0) / e.A;
    } else {
        e.L_over_R = e.log_prefactor / e.R;
    }
    return e;
}

QuadraticGenerator eta2_generator(const PhaseSpaceParams& nu, const OscillatorUnits& u) {
    const Eta2Parameters e = eta2_parameters(nu, u);
    const double mw = u.m0 * u.omega0;
    const Complex s = -e.L_over_R;
    return {s * nu.nu3 * mw / 4.0, -s * nu.nu3 / (4.0 * mw), s * I * e.B / 4.0};
}

QuadraticGenerator eta2_generator_as_printed(const PhaseSpaceParams& nu, const OscillatorUnits& u) {
    const Eta2Parameters e = eta2_parameters(nu, u);
    if (std::abs(e.R) < kZeroTol) throw Error(ErrorKind::ExceptionalPoint, "printed eta2: R vanishes");
    const double mw = u.m0 * u.omega0;
    const Complex s = e.log_prefactor / (2.0 * e.R);
    return {s * nu.nu3 * mw / 2.0, -s * nu.nu3 / (2.0 * mw), s * I * e.A};
}

// -- reduced oscillator -------------------------------------------------------

ReducedOscillator reduced_oscillator(const PhaseSpaceParams& nu) {
    const Complex D = delta_of(nu);
    if (std::abs(D) < kZeroTol) throw Error(ErrorKind::DivisionByZero, "nu1 nu2 + nu3^2 vanishes");
    return {2.0 * std::sqrt(D),
            (nu.nu2 * nu.nu4 * nu.nu4 - nu.nu5 * (nu.nu1 * nu.nu5 + 2.0 * nu.nu3 * nu.nu4)) / (4.0 * D)};
}

TransformSpec make_transform_spec(const PhaseSpaceParams& nu, const OscillatorUnits& u) {
    validate(u);
    TransformSpec s;
    s.units = u;
    s.reduced = reduced_oscillator(nu);
    s.eta1 = eta1_parameters(nu, u);
    s.eta2 = eta2_generator(nu, u);
    s.eta2_log_prefactor = eta2_parameters(nu, u).log_prefactor;
    return s;
}

// -- verification -------------------------------------------------------------

nlohmann::json ReductionReport::to_json() const {
    return {{"residual", residual},
            {"dim", dim},
            {"omega_tilde", {omega_tilde.real(), omega_tilde.imag()}},
            {"delta", {delta.real(), delta.imag()}}};
}

ReductionReport verify_reduction(const FockOperator& H, const TransformSpec& spec) {
    const int dim = static_cast<int>(H.dim());
    const Eigen::Index k = dim / 2;
    const LadderMatrices ops = ladder_matrices(dim, spec.units);
    const Projection proj = project(H.matrix(), ops, k);

    const OscillatorUnits& u = spec.units;
    const FockOperator G1 = assemble(to_operator(eta1_generator(spec.eta1, u)), ops);
    const FockOperator G2 = assemble(to_operator(spec.eta2), ops);
    const Conjugation step1 = conjugate_in_algebra(G1, proj.op, ops, k);
    const Conjugation step2 = conjugate_in_algebra(G2, step1.op, ops, k);

    const double hnorm = block_norm(H.matrix(), k);
    if (!(hnorm > 0.0)) throw Error(ErrorKind::DivisionByZero, "verify_reduction: H vanishes on the block");

    const QuadraticOperator target =
        oscillator_operator(spec.reduced.omega_tilde / 2.0, u, spec.reduced.delta);
    const Matrix diff = assemble(step2.op, ops).matrix() - assemble(target, ops).matrix();

    QuadraticOperator linear;
    linear.x = step1.op.x;
    linear.p = step1.op.p;

    ReductionReport r;
    r.dim = dim;
    r.residual = block_norm(diff, k) / hnorm;
    r.linear_residual = block_norm(assemble(linear, ops).matrix(), k) / hnorm;
    r.closure_residual = std::max(step1.closure_residual, step2.closure_residual);
    r.projection_residual = proj.residual;
    r.omega_tilde = spec.reduced.omega_tilde;
    r.delta = spec.reduced.delta;
    return r;
}

ReductionReport verify_reduction(const PhaseSpaceParams& nu, const OscillatorUnits& u, int dim) {
    const LadderMatrices ops = ladder_matrices(dim, u);
    return verify_reduction(assemble_hamiltonian(nu, 0.0, ops), make_transform_spec(nu, u));
}

ForcedReductionReport verify_forced_reduction(const LadderCoefficients& c, const OscillatorUnits& u, int dim) {
    const LadderMatrices ops = ladder_matrices(dim, u);
    LadderCoefficients op_only = c;
    op_only.v0 = 0.0;
    const FockOperator H = assemble_hamiltonian(ladder_to_phase_space(op_only, u), 0.0, ops);
    const ExpOperator eta(eta_forced_generator(c, ops));
    const Matrix conj = similarity_conjugate(eta, H).matrix();

    const Eigen::Index k = dim / 2;
    const QuadraticOperator ho = oscillator_operator(c.theta * u.omega0, u);
    const Matrix offset = conj - assemble(ho, ops).matrix();

    ForcedReductionReport r;
    r.expected_constant = forced_energy_shift(c, u);
    r.constant = offset.topLeftCorner(k, k).trace() / static_cast<double>(k);
    Matrix diff = offset;
    diff.diagonal().array() -= r.expected_constant;
    const double hnorm = block_norm(H.matrix(), k);
    r.residual = block_norm(diff, k) / hnorm;
    const Projection proj = project(conj, ops, k);
    QuadraticOperator linear;
    linear.x = proj.op.x;
    linear.p = proj.op.p;
    r.linear_residual = block_norm(assemble(linear, ops).matrix(), k) / hnorm;
    return r;
}

}  // namespace swanson
