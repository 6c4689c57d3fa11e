// Maps AR/MA polynomial coefficients to pole/zero locations.
#pragma once

#include <algorithm>
#include <complex>
#include <span>
#include <sstream>
#include <vector>

#include "arma_geodesy/errors.hpp"
#include "arma_geodesy/model.hpp"

namespace arma_geodesy {

enum class RootKind { pole, zero };

namespace detail {

inline cplx horner(std::span<const cplx> coeffs, cplx x) {
    cplx acc = 0.0;
    for (const cplx& c : coeffs) acc = acc * x + c;
    return acc;
}

} // namespace detail

// Roots of P(w) = coeffs[0] + coeffs[1] w + ... + coeffs[d] w^d in w = z^-1,
// mapped to pole/zero locations. A factor (1 - a w) contributes the location
// a, so the locations are the roots of the monic reversal
// R(x) = coeffs[0] x^d + coeffs[1] x^(d-1) + ... + coeffs[d].
// Solved by Durand-Kerner simultaneous iteration.
inline std::vector<DiskPoint> roots_from_poly(std::span<const cplx> coeffs, RootKind kind,
                                              double stability_margin = default_stability_margin,
                                              double tol = 1e-12, int max_iter = 1000) {
    if (coeffs.size() < 2)
        throw Error(errc::invalid_argument, "polynomial degree must be at least 1");
    if (coeffs[0] != cplx(1.0))
        throw Error(errc::invalid_argument, "leading coefficient must be 1");

    const std::size_t d = coeffs.size() - 1;
    std::vector<cplx> monic(coeffs.begin(), coeffs.end()); // R(x), already monic

    double coeff_scale = 0.0;
    for (const cplx& c : monic) coeff_scale += std::abs(c);

    // Standard spread of initial guesses, not a root of unity pattern.
    std::vector<cplx> x(d);
    const cplx seed(0.4, 0.9);
    cplx pw = seed;
    for (std::size_t i = 0; i < d; ++i, pw *= seed) x[i] = pw;

    bool converged = false;
    for (int iter = 0; iter < max_iter && !converged; ++iter) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            cplx denom = 1.0;
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) denom *= x[i] - x[j];
            if (denom == cplx(0.0)) {
                // Collided iterates; nudge apart and retry next sweep.
                x[i] += cplx(1e-8, 1e-8);
                max_step = 1.0;
                continue;
            }
            const cplx delta = detail::horner(monic, x[i]) / denom;
            x[i] -= delta;
            max_step = std::max(max_step, std::abs(delta));
        }
        if (max_step <= tol) {
            converged = true;
            break;
        }
        // Multiple roots stall the iterates at the cluster radius while the
        // residuals keep shrinking; accept on residual as well.
        double max_resid = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            max_resid = std::max(max_resid, std::abs(detail::horner(monic, x[i])));
        if (max_resid <= tol * std::max(1.0, coeff_scale)) converged = true;
    }
    if (!converged)
        throw Error(errc::no_convergence, "root iteration did not converge within " +
                                              std::to_string(max_iter) + " sweeps");

    std::sort(x.begin(), x.end(), [](const cplx& a, const cplx& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });

    std::vector<DiskPoint> out;
    out.reserve(d);
    const char* kind_name = kind == RootKind::pole ? "pole" : "zero";
    for (std::size_t i = 0; i < d; ++i) {
        const double m = std::abs(x[i]);
        if (m >= 1.0 - stability_margin) {
            std::ostringstream os;
            os << kind_name << " root " << i << " at modulus " << m
               << " lies outside the stationarity disk";
            throw Error(errc::root_outside_disk, os.str());
        }
        out.push_back(disk_point(x[i]));
    }
    return out;
}

} // namespace arma_geodesy
