#pragma once

#include <algorithm>
#include <complex>
#include <random>

#include "swanson/coefficients.hpp"

namespace testutil {

using swanson::Complex;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240917);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Complex random_complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }

inline bool close(Complex a, Complex b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

inline double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

}  // namespace testutil
