// Weighted Hardy norms and distances of logarithmic transfer functions,
// summed as cepstrum series with a closed-form bound on the omitted tail.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <vector>

#include "arma_geodesy/errors.hpp"
#include "arma_geodesy/model.hpp"
#include "arma_geodesy/weights.hpp"

namespace arma_geodesy {

struct SeriesResult {
    double value = 0.0;         // the norm/distance itself
    double value_squared = 0.0; // sum of weighted squared cepstrum gaps
    long terms_used = 0;        // series summed through s = terms_used
    double tail_bound = 0.0;    // bound on the omitted tail of value_squared
};

namespace detail {

inline constexpr long series_floor = 8;       // never stop before this index
inline constexpr long series_cap = 1'000'000; // hard cap on summed terms

// Upper bound on sum_{s>N} s^j x^s for 0 < x < 1. Evaluated through logs so
// large j cannot overflow intermediate powers. For j > 0 the term ratio is
// bounded by q = x ((N+2)/(N+1))^j; when q >= 1 the bound is +inf and the
// caller must grow N.
inline double poly_geom_tail(int j, double x, long N) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return std::numeric_limits<double>::infinity();
    const double logt = j * std::log(static_cast<double>(N + 1)) +
                        static_cast<double>(N + 1) * std::log(x);
    if (j <= 0) return std::exp(logt) / (1.0 - x);
    const double q = x * std::pow(static_cast<double>(N + 2) / static_cast<double>(N + 1), j);
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return std::exp(logt) / (1.0 - q);
}

// Bound on sum_{s>N} w_s |c_s - c_s'|^2 given |c_s - c_s'| <= K r^s / s.
inline double tail_bound_kr(int K, double r, const WeightScheme& scheme, long N) {
    if (K == 0 || r == 0.0) return 0.0;
    const double k2 = static_cast<double>(K) * static_cast<double>(K);
    const double x = r * r;
    switch (scheme.kind) {
        case WeightScheme::Kind::hardy:
            return k2 * poly_geom_tail(-2, x, N);
        case WeightScheme::Kind::dirichlet:
            // K^2 r^(2(N+1)) / (1 - r^2), dropping the harmless 1/s factor.
            return k2 * poly_geom_tail(0, x, N);
        case WeightScheme::Kind::bergman:
            return k2 * poly_geom_tail(-2, x, N) / static_cast<double>(N + 2);
        case WeightScheme::Kind::sobolev:
            // w_s <= (m+1) s^(2m) for s >= 1
            return k2 * (scheme.order + 1) * poly_geom_tail(2 * scheme.order - 2, x, N);
        case WeightScheme::Kind::diff_semi_norm:
            return k2 * poly_geom_tail(scheme.order - 2, x, N);
    }
    throw Error(errc::invalid_argument, "unknown weight scheme");
}

// Smallest N >= series_floor whose tail bound drops below tol.
inline long pick_truncation(int K, double r, const WeightScheme& scheme, double tol) {
    for (long n = series_floor; n <= series_cap; ++n)
        if (tail_bound_kr(K, r, scheme, n) < tol) return n;
    throw Error(errc::tolerance_unreachable,
                "tail bound does not reach tolerance within " +
                    std::to_string(series_cap) + " terms (moduli too close to 1)");
}

// Signed root list representing s -> c_s(a) - c_s(b): poles of a with +1,
// zeros of a with -1, and the opposite signs for b.
struct CepstrumGap {
    std::vector<cplx> roots;
    std::vector<double> signs;
    double gap_c0 = 0.0;
    int strength = 0;  // K
    double radius = 0.0; // r

    void add(const ArmaModel& m, double flip) {
        for (const auto& pt : m.poles()) {
            roots.push_back(pt.value());
            signs.push_back(flip * CepstrumConvention::sign_pole);
        }
        for (const auto& pt : m.zeros()) {
            roots.push_back(pt.value());
            signs.push_back(flip * CepstrumConvention::sign_zero);
        }
        strength += m.p() + m.q();
        radius = std::max(radius, m.max_root_modulus());
        gap_c0 += flip * std::log(m.gain());
    }

    // Sort roots by location and merge bitwise-equal ones. Swapping the two
    // models then negates every coefficient elementwise, which negates all
    // partial sums exactly, making the distance symmetric to the last bit;
    // exactly coincident pole/zero pairs cancel to an identically empty list.
    void canonicalize() {
        std::vector<std::size_t> idx(roots.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (roots[a].real() != roots[b].real()) return roots[a].real() < roots[b].real();
            return roots[a].imag() < roots[b].imag();
        });
        std::vector<cplx> merged_roots;
        std::vector<double> merged_signs;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const cplx z = roots[idx[k]];
            double coeff = signs[idx[k]];
            while (k + 1 < idx.size() && roots[idx[k + 1]] == z) coeff += signs[idx[++k]];
            if (coeff != 0.0) {
                merged_roots.push_back(z);
                merged_signs.push_back(coeff);
            }
        }
        roots = std::move(merged_roots);
        signs = std::move(merged_signs);
    }
};

inline SeriesResult sum_weighted_series(CepstrumGap gap, const WeightScheme& scheme,
                                        double tol) {
    if (!(tol > 0.0)) throw Error(errc::invalid_argument, "tolerance must be positive");
    gap.canonicalize();
    const long cutoff = pick_truncation(gap.strength, gap.radius, scheme, tol);

    double sum = 0.0, comp = 0.0; // Kahan accumulator
    auto accumulate = [&](double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };

    if (gap.gap_c0 != 0.0) {
        const double w0 = weight_at(scheme, 0);
        if (w0 != 0.0) accumulate(w0 * gap.gap_c0 * gap.gap_c0);
    }

    std::vector<cplx> powers(gap.roots.size(), cplx(1.0));
    for (long s = 1; s <= cutoff; ++s) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < powers.size(); ++i) {
            powers[i] *= gap.roots[i];
            acc += gap.signs[i] * powers[i];
        }
        const double num = std::norm(acc);
        if (num == 0.0) continue;
        const double sd = static_cast<double>(s);
        accumulate(weight_at(scheme, s) * (num / (sd * sd)));
    }

    SeriesResult result;
    result.value_squared = sum;
    result.value = std::sqrt(sum);
    result.terms_used = cutoff;
    result.tail_bound = tail_bound_kr(gap.strength, gap.radius, scheme, cutoff);
    return result;
}

} // namespace detail

// Bound on the tail sum_{s>n_terms} w_s |c_s|^2 of a single model's series.
inline double truncation_bound(const ArmaModel& a, const WeightScheme& scheme, long n_terms) {
    if (n_terms < 1) throw Error(errc::invalid_argument, "n_terms must be >= 1");
    return detail::tail_bound_kr(a.p() + a.q(), a.max_root_modulus(), scheme, n_terms);
}

// Same for the gap series of a model pair: |c_s - c_s'| <= K r^s / s with
// K = p+q+p'+q' and r the largest modulus across both models.
inline double truncation_bound(const ArmaModel& a, const ArmaModel& b,
                               const WeightScheme& scheme, long n_terms) {
    if (n_terms < 1) throw Error(errc::invalid_argument, "n_terms must be >= 1");
    return detail::tail_bound_kr(a.p() + a.q() + b.p() + b.q(),
                                 std::max(a.max_root_modulus(), b.max_root_modulus()), scheme,
                                 n_terms);
}

// I_w(M) = (sum_s w_s |c_s|^2)^(1/2), the distance to the identity filter.
inline SeriesResult weighted_norm_series(const ArmaModel& model, const WeightScheme& scheme,
                                         double tol) {
    detail::CepstrumGap gap;
    gap.add(model, +1.0);
    return detail::sum_weighted_series(gap, scheme, tol);
}

// I_w(M, M') = (sum_s w_s |c_s - c_s'|^2)^(1/2); symmetric in its arguments.
inline SeriesResult weighted_distance_series(const ArmaModel& a, const ArmaModel& b,
                                             const WeightScheme& scheme, double tol) {
    detail::CepstrumGap gap;
    gap.add(a, +1.0);
    gap.add(b, -1.0);
    return detail::sum_weighted_series(gap, scheme, tol);
}

} // namespace arma_geodesy
