// Poincare-disk hyperbolic distance and the Xi function built from it.
#pragma once

#include <cmath>
#include <complex>

#include "arma_geodesy/errors.hpp"
#include "arma_geodesy/model.hpp"

namespace arma_geodesy {

namespace detail {

// log(1 - |w|^2) evaluated as log1p(-|w|) + log1p(|w|), which keeps full
// precision as the modulus approaches 1.
inline double log_one_minus_sq(const DiskPoint& w) {
    const double m = w.modulus();
    return std::log1p(-m) + std::log1p(m);
}

// The two log(1-|.|^2) terms are summed before subtracting so the value is
// bitwise symmetric in u and v.
inline double xi_direct(const DiskPoint& u, const DiskPoint& v) {
    const cplx cross = 1.0 - u.value() * std::conj(v.value());
    return 2.0 * std::log(std::abs(cross)) - (log_one_minus_sq(u) + log_one_minus_sq(v));
}

} // namespace detail

// rho(u, v) = log((|1-u conj(v)| + |u-v|) / (|1-u conj(v)| - |u-v|)).
// The denominator is expanded through |1-u conj(v)|^2 - |u-v|^2 =
// (1-|u|^2)(1-|v|^2), so nothing cancels near the boundary.
inline double hyperbolic_distance(const DiskPoint& u, const DiskPoint& v) {
    if (u == v) return 0.0;
    const double a = std::abs(1.0 - u.value() * std::conj(v.value()));
    const double b = std::abs(u.value() - v.value());
    const double rho = 2.0 * std::log(a + b) -
                       (detail::log_one_minus_sq(u) + detail::log_one_minus_sq(v));
    return rho < 0.0 ? 0.0 : rho;
}

// Xi(u, v) = log(cosh^2(rho/2)) = log|1-u conj(v)|^2 - log(1-|u|^2) - log(1-|v|^2).
// Both forms are evaluated on every call; a mismatch beyond 1e-10 means the
// implementation itself is broken.
inline double xi(const DiskPoint& u, const DiskPoint& v) {
    if (u == v) return 0.0;
    const double direct = detail::xi_direct(u, v);
    const double half_rho = 0.5 * hyperbolic_distance(u, v);
    const double via_rho = 2.0 * std::log(std::cosh(half_rho));
    if (std::abs(direct - via_rho) > 1e-10)
        throw Error(errc::internal_inconsistency,
                    "Xi formulas disagree: direct=" + std::to_string(direct) +
                        " via-rho=" + std::to_string(via_rho));
    return direct < 0.0 ? 0.0 : direct;
}

} // namespace arma_geodesy
