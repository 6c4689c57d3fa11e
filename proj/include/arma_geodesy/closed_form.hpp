// Closed-form Dirichlet norm/distance between ARMA models and its
// decomposition into hyperbolic-distance terms over pole/zero pairs.
#pragma once

#include <cmath>
#include <vector>

#include "arma_geodesy/hyperbolic.hpp"
#include "arma_geodesy/model.hpp"
#include "arma_geodesy/series.hpp"

namespace arma_geodesy {

// Squared-distance pieces over pole/zero pairs. ar_ar, ma_ma and
// ar_ma_cross are signed sums of Xi; residual is relative_order_delta times
// residual_log_ratio and vanishes when both models share the same relative
// order p - q.
struct DecompositionReport {
    double ar_ar = 0.0;
    double ma_ma = 0.0;
    double ar_ma_cross = 0.0;
    double residual = 0.0;
    double residual_log_ratio = 0.0;
    double total_squared = 0.0;
    int relative_order_delta = 0;
};

namespace detail {

// log |1 - x conj(y)|^2 for one ordered pair; bitwise-equal arguments take
// the boundary-stable path so coincident roots cancel exactly downstream.
inline double log_cross_sq(const DiskPoint& x, const DiskPoint& y) {
    if (x == y) return 2.0 * log_one_minus_sq(x);
    return 2.0 * std::log(std::abs(1.0 - x.value() * std::conj(y.value())));
}

inline double sum_log_one_minus_sq(const std::vector<DiskPoint>& xs) {
    double acc = 0.0;
    for (const auto& x : xs) acc += log_one_minus_sq(x);
    return acc;
}

} // namespace detail

// Squared Dirichlet distance, evaluated as -sum_{i,j} c_i c_j log(1 - x_i
// conj(x_j)) over the canonicalized signed root gap of the pair. The (i,j),
// (j,i) terms combine into one real log |.|^2 each. Canonicalization merges
// bitwise-equal roots first, so coincident configurations give exactly zero
// and swapping the arguments only negates every coefficient.
inline double dirichlet_distance_squared_closed(const ArmaModel& a, const ArmaModel& b) {
    detail::CepstrumGap gap;
    gap.add(a, +1.0);
    gap.add(b, -1.0);
    gap.canonicalize();

    double acc = 0.0;
    for (std::size_t i = 0; i < gap.roots.size(); ++i) {
        const DiskPoint xi_pt = disk_point(gap.roots[i]);
        acc -= gap.signs[i] * gap.signs[i] * detail::log_one_minus_sq(xi_pt);
        for (std::size_t j = i + 1; j < gap.roots.size(); ++j)
            acc -= gap.signs[i] * gap.signs[j] *
                   detail::log_cross_sq(xi_pt, disk_point(gap.roots[j]));
    }
    return acc;
}

inline double dirichlet_distance_closed(const ArmaModel& a, const ArmaModel& b) {
    const double sq = dirichlet_distance_squared_closed(a, b);
    return std::sqrt(sq < 0.0 ? 0.0 : sq);
}

// Norm = distance to the identity filter.
inline double dirichlet_norm_closed(const ArmaModel& model) {
    return dirichlet_distance_closed(model, ArmaModel::identity());
}

// Hyperbolic decomposition of the squared Dirichlet distance: signed Xi
// sums over pole/zero pairs plus the relative-order residual.
inline DecompositionReport decompose(const ArmaModel& a, const ArmaModel& b) {
    const auto& lam = a.poles();
    const auto& mu = a.zeros();
    const auto& lam2 = b.poles();
    const auto& mu2 = b.zeros();

    auto xi_cross = [](const std::vector<DiskPoint>& xs, const std::vector<DiskPoint>& ys) {
        double acc = 0.0;
        for (const auto& x : xs)
            for (const auto& y : ys) acc += xi(x, y);
        return acc;
    };
    auto xi_pairs = [](const std::vector<DiskPoint>& xs) {
        double acc = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j) acc += xi(xs[i], xs[j]);
        return acc;
    };

    DecompositionReport report;
    report.ar_ar = xi_cross(lam, lam2) - xi_pairs(lam) - xi_pairs(lam2);
    report.ma_ma = xi_cross(mu, mu2) - xi_pairs(mu) - xi_pairs(mu2);
    report.ar_ma_cross = xi_cross(lam, mu) + xi_cross(lam2, mu2) - xi_cross(lam, mu2) -
                         xi_cross(mu, lam2);
    report.relative_order_delta = (a.p() - a.q()) - (b.p() - b.q());
    report.residual_log_ratio =
        detail::sum_log_one_minus_sq(lam2) + detail::sum_log_one_minus_sq(mu) -
        detail::sum_log_one_minus_sq(lam) - detail::sum_log_one_minus_sq(mu2);
    report.residual = report.relative_order_delta == 0
                          ? 0.0
                          : report.relative_order_delta * report.residual_log_ratio;
    report.total_squared = dirichlet_distance_squared_closed(a, b);
    return report;
}

} // namespace arma_geodesy
