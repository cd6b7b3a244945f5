#include "swanson/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "swanson/errors.hpp"

namespace swanson {

void GridDescriptor::validate() const {
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
        throw Error(ErrorKind::InvalidArgument, "grid requires x_max > x_min");
    if (n_points < 64) throw Error(ErrorKind::InvalidArgument, "grid requires at least 64 points");
}

GridDescriptor GridDescriptor::with_spacing(double x_min, double x_max, double dx) {
    if (!(dx > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid spacing must be positive");
    GridDescriptor g{x_min, x_max, static_cast<int>(std::ceil((x_max - x_min) / dx - 1e-9)) + 1};
    g.validate();
    return g;
}

WavefunctionGrid WavefunctionGrid::sample(const GridDescriptor& g, const std::function<Complex(double)>& f,
                                          double t) {
    g.validate();
    WavefunctionGrid out{g, std::vector<Complex>(g.n_points), t};
    for (int j = 0; j < g.n_points; ++j) out.values[j] = f(g.x(j));
    return out;
}

bool WavefunctionGrid::support_contained(double tol) const {
    if (values.empty()) return true;
    return std::abs(values.front()) < tol && std::abs(values.back()) < tol;
}

void WavefunctionGrid::require_support(double tol) const {
    if (!support_contained(tol)) {
        std::ostringstream os;
        os << "wavefunction reaches the grid boundary at t=" << time_tag << " (|psi| at an end sample >= " << tol << ")";
        throw Error(ErrorKind::UntrustedSupport, os.str());
    }
}

double WavefunctionGrid::l2_norm() const {
    double s = 0.0;
    for (const Complex& v : values) s += std::norm(v);
    return std::sqrt(s * grid.dx());
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const WavefunctionGrid& psi) {
    os << "x,re,im,abs2\n";
    for (int j = 0; j < psi.grid.n_points; ++j) {
        const Complex v = psi.values[j];
        os << format_number(psi.grid.x(j)) << ',' << format_number(v.real()) << ',' << format_number(v.imag())
           << ',' << format_number(std::norm(v)) << '\n';
    }
}

std::string to_csv(const WavefunctionGrid& psi) {
    std::ostringstream os;
    write_csv(os, psi);
    return os.str();
}

WavefunctionGrid read_csv(std::istream& is, double time_tag) {
    std::string line;
    if (!std::getline(is, line) || line != "x,re,im,abs2")
        throw Error(ErrorKind::InvalidArgument, "wavefunction CSV: bad header");
    std::vector<double> xs;
    std::vector<Complex> vals;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double x, re, im, a2;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &re, &im, &a2) != 4)
            throw Error(ErrorKind::InvalidArgument, "wavefunction CSV: malformed row '" + line + "'");
        xs.push_back(x);
        vals.emplace_back(re, im);
    }
    if (xs.size() < 2) throw Error(ErrorKind::InvalidArgument, "wavefunction CSV: too few rows");
    GridDescriptor g{xs.front(), xs.back(), static_cast<int>(xs.size())};
    g.validate();
    return {g, std::move(vals), time_tag};
}

}  // namespace swanson
