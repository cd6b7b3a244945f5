#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace swanson {

using Complex = std::complex<double>;

/// Uniform grid x_j = x_min + j dx, j = 0..n_points-1, dx = (x_max - x_min)/(n_points - 1).
struct GridDescriptor {
    double x_min = -10.0;
    double x_max = 10.0;
    int n_points = 2048;

    double dx() const { return (x_max - x_min) / (n_points - 1); }
    double x(int j) const { return x_min + j * dx(); }

    /// Throws Error(InvalidArgument) unless x_max > x_min and n_points >= 64.
    void validate() const;

    /// Grid with spacing as close to `dx` as possible (never coarser).
    static GridDescriptor with_spacing(double x_min, double x_max, double dx);

    bool operator==(const GridDescriptor&) const = default;
};

struct WavefunctionGrid {
    GridDescriptor grid;
    std::vector<Complex> values;
    double time_tag = 0.0;

    /// Samples f on the grid.
    static WavefunctionGrid sample(const GridDescriptor& g, const std::function<Complex(double)>& f, double t);

    /// |psi| below `tol` at both end samples.
    bool support_contained(double tol = 1e-8) const;
    /// Throws Error(UntrustedSupport) when support_contained() is false.
    void require_support(double tol = 1e-8) const;

    double l2_norm() const;  // sqrt(sum |psi|^2 dx)
};

/// Header "x,re,im,abs2", 17 significant digits.
void write_csv(std::ostream& os, const WavefunctionGrid& psi);
std::string to_csv(const WavefunctionGrid& psi);
WavefunctionGrid read_csv(std::istream& is, double time_tag = 0.0);

/// printf("%.17g").
std::string format_number(double v);

}  // namespace swanson
