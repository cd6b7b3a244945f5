#include "swanson/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <lapacke.h>

#include "swanson/errors.hpp"

namespace swanson {

namespace {

const Complex I{0.0, 1.0};

void require_same_dim(const FockOperator& a, const FockOperator& b, const char* where) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << where << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Pade approximant of exp of degree m applied to A (already scaled).
// Coefficients and the theta_m thresholds follow Higham's 2005 scaling and
// squaring analysis.
Matrix pade_exp(const Matrix& A, int m) {
    static const double b3[] = {120, 60, 12, 1};
    static const double b5[] = {30240, 15120, 3360, 420, 30, 1};
    static const double b7[] = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
    static const double b9[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                                2162160.,     110880.,     3960.,       90.,        1.};
    static const double b13[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                                 1187353796428800.,  129060195264000.,   10559470521600.,
                                 670442572800.,      33522128640.,       1323241920.,
                                 40840800.,          960960.,            16380.,
                                 182.,               1.};
    const Eigen::Index n = A.rows();
    const Matrix Id = Matrix::Identity(n, n);
    const Matrix A2 = A * A;
    Matrix U, V;
    if (m == 13) {
        const double* b = b13;
        const Matrix A4 = A2 * A2;
        const Matrix A6 = A4 * A2;
        Matrix tmp = b[13] * A6 + b[11] * A4 + b[9] * A2;
        U = A * (A6 * tmp + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * Id);
        tmp = b[12] * A6 + b[10] * A4 + b[8] * A2;
        V = A6 * tmp + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * Id;
    } else {
        const double* b = m == 3 ? b3 : m == 5 ? b5 : m == 7 ? b7 : b9;
        Matrix Ak = Id;
        Matrix u = Matrix::Zero(n, n);
        V = Matrix::Zero(n, n);
        for (int k = 0; k <= m; k += 2) {
            u += b[k + 1] * Ak;
            V += b[k] * Ak;
            if (k + 2 <= m) Ak = Ak * A2;
        }
        U = A * u;
    }
    const Matrix P = V + U;
    const Matrix Q = V - U;
    return Q.partialPivLu().solve(P);
}

bool all_finite(const Matrix& M) { return M.allFinite(); }

}  // namespace

FockOperator::FockOperator(Matrix data, OscillatorUnits units) : data_(std::move(data)), units_(units) {
    if (data_.rows() != data_.cols())
        throw Error(ErrorKind::DimensionMismatch, "FockOperator must be square");
    if (data_.rows() < 2) throw Error(ErrorKind::InvalidArgument, "FockOperator requires dim >= 2");
}

Matrix FockOperator::block(Eigen::Index n) const {
    if (n < 1 || n > dim()) throw Error(ErrorKind::DimensionMismatch, "block size outside [1, dim]");
    return data_.topLeftCorner(n, n);
}

LadderMatrices ladder_matrices(int dim, double m0, double omega0) {
    if (dim < 2) throw Error(ErrorKind::InvalidArgument, "ladder_matrices requires dim >= 2");
    const OscillatorUnits u{m0, omega0};
    validate(u);
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) a(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    const Matrix ad = a.transpose();
    const Matrix x = (a + ad) / std::sqrt(2.0 * m0 * omega0);
    const Matrix p = -I * std::sqrt(m0 * omega0 / 2.0) * (a - ad);
    return {FockOperator(a, u), FockOperator(ad, u), FockOperator(x, u), FockOperator(p, u)};
}

FockOperator assemble_hamiltonian(const PhaseSpaceParams& nu, Complex extra_const, const LadderMatrices& ops) {
    require_same_dim(ops.x, ops.p, "assemble_hamiltonian");
    const Matrix& x = ops.x.matrix();
    const Matrix& p = ops.p.matrix();
    Matrix H = nu.nu1 * (p * p) + nu.nu2 * (x * x) + I * nu.nu3 * (x * p + p * x) + I * nu.nu4 * p +
               nu.nu5 * x;
    H.diagonal().array() += extra_const;
    return FockOperator(std::move(H), ops.x.units());
}

SpectrumResult eigenvalues(const FockOperator& H, bool with_residuals) {
    const Matrix& M = H.matrix();
    if (!all_finite(M)) throw Error(ErrorKind::InvalidArgument, "eigenvalues: non-finite matrix entries");
    const lapack_int n = static_cast<lapack_int>(M.rows());
    Matrix work = M;  // zgeev overwrites its input
    Vector vals(n);
    Matrix vecs(with_residuals ? n : 1, with_residuals ? n : 1);
    auto lc = [](Complex* p) { return reinterpret_cast<lapack_complex_double*>(p); };
    const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', with_residuals ? 'V' : 'N', n, lc(work.data()), n,
                                          lc(vals.data()), nullptr, 1, lc(vecs.data()), with_residuals ? n : 1);
    if (info != 0) {
        std::ostringstream os;
        os << "QR iteration failed to converge (zgeev info " << info << ", dim " << n << ")";
        throw Error(info > 0 ? ErrorKind::NoConvergence : ErrorKind::InvalidArgument, os.str());
    }
    std::vector<Eigen::Index> order(n);
    for (Eigen::Index k = 0; k < n; ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return lex_less(vals[a], vals[b]); });

    SpectrumResult out;
    out.eigenvalues.reserve(order.size());
    for (auto k : order) out.eigenvalues.push_back(vals[k]);
    if (with_residuals) {
        const double hnorm = std::max(M.norm(), std::numeric_limits<double>::min());
        out.residuals.reserve(order.size());
        for (auto k : order) {
            const Vector v = vecs.col(k);
            const double r = (M * v - vals[k] * v).norm() / (hnorm * v.norm());
            out.residuals.push_back(r);
        }
    }
    return out;
}

SpectrumResult converged_spectrum(const std::function<FockOperator(int)>& build, int dim, double rel_tol,
                                  bool with_residuals) {
    SpectrumResult base = eigenvalues(build(dim), with_residuals);
    const SpectrumResult doubled = eigenvalues(build(2 * dim), false);
    std::size_t count = 0;
    for (const Complex& z : base.eigenvalues) {
        double best = std::numeric_limits<double>::infinity();
        for (const Complex& w : doubled.eigenvalues) best = std::min(best, std::abs(z - w));
        if (best > rel_tol * std::max(1.0, std::abs(z))) break;
        ++count;
    }
    base.converged_count = count;
    return base;
}

Matrix matrix_exponential(const Matrix& A, double tol) {
    if (A.rows() != A.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix_exponential: non-square");
    if (!all_finite(A)) throw Error(ErrorKind::Overflow, "matrix_exponential: non-finite input");
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "matrix_exponential: tol must be positive");
    // theta_m bound the scaled norm so that the Pade backward error stays at unit
    // roundoff; a loose tol (>= 1e-8) swaps the degree-13 kernel for degree 9.
    const double norm1 = A.cwiseAbs().colwise().sum().maxCoeff();
    static const std::pair<int, double> small[] = {
        {3, 1.495585217958292e-2}, {5, 2.539398330063230e-1}, {7, 9.504178996162932e-1}, {9, 2.097847961257068}};
    for (const auto& [m, theta] : small)
        if (norm1 <= theta) return pade_exp(A, m);

    const double theta13 = 5.371920351148152;
    const int degree = tol >= 1e-8 ? 9 : 13;
    int s = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
    if (s > 1000) throw Error(ErrorKind::Overflow, "matrix_exponential: norm too large to scale");
    if (degree == 9) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / 2.097847961257068))));
    Matrix E = pade_exp(A / std::ldexp(1.0, s), degree);
    for (int k = 0; k < s; ++k) {
        E = E * E;
        if (!all_finite(E)) throw Error(ErrorKind::Overflow, "matrix_exponential: overflow while squaring");
    }
    if (!all_finite(E)) throw Error(ErrorKind::Overflow, "matrix_exponential: non-finite result");
    return E;
}

FockOperator matrix_exponential(const FockOperator& A, double tol) {
    return FockOperator(matrix_exponential(A.matrix(), tol), A.units());
}

ExpOperator::ExpOperator(FockOperator generator) : generator_(std::move(generator)) {}

FockOperator ExpOperator::forward() const { return matrix_exponential(generator_); }

FockOperator ExpOperator::inverse() const {
    return FockOperator(matrix_exponential(Matrix(-generator_.matrix())), generator_.units());
}

FockOperator similarity_conjugate(const ExpOperator& S, const FockOperator& H) {
    require_same_dim(S.generator(), H, "similarity_conjugate");
    const Matrix fwd = S.forward().matrix();
    const Matrix inv = S.inverse().matrix();
    return FockOperator(inv * H.matrix() * fwd, H.units());
}

std::string debug_dump(const FockOperator& op) {
    const Matrix& M = op.matrix();
    std::string out = "dim=" + std::to_string(M.rows()) + "\n";
    char buf[64];
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        for (Eigen::Index c = 0; c < M.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g%+.17gi", M(r, c).real(), M(r, c).imag());
            if (c) out += ' ';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

Matrix parse_debug_dump(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header.rfind("dim=", 0) != 0)
        throw Error(ErrorKind::InvalidArgument, "debug dump: missing dim= header");
    const long n = std::strtol(header.c_str() + 4, nullptr, 10);
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "debug dump: bad dimension");
    Matrix M(n, n);
    std::string tok;
    for (long k = 0; k < n * n; ++k) {
        if (!(in >> tok)) throw Error(ErrorKind::DimensionMismatch, "debug dump: too few entries");
        const char* s = tok.c_str();
        char* end = nullptr;
        const double re = std::strtod(s, &end);
        const char* rest = end;
        const double im = std::strtod(rest, &end);
        if (end == rest || *end != 'i' || end[1] != '\0')
            throw Error(ErrorKind::InvalidArgument, "debug dump: malformed entry '" + tok + "'");
        M(k / n, k % n) = Complex(re, im);
    }
    if (in >> tok) throw Error(ErrorKind::DimensionMismatch, "debug dump: too many entries");
    return M;
}

}  // namespace swanson
