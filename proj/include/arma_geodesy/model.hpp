// ARMA models on the open unit disk: validation, transfer function,
// spectral density, and complex cepstrum coefficients.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "arma_geodesy/errors.hpp"

namespace arma_geodesy {

using cplx = std::complex<double>;

// Margin kept between every root modulus and the unit circle. Roots with
// modulus >= 1 - margin are rejected so that all cepstrum series admit a
// computable geometric tail bound.
inline constexpr double default_stability_margin = 1e-9;

// A pole or zero location strictly inside the unit disk.
struct DiskPoint {
    double re = 0.0;
    double im = 0.0;

    cplx value() const noexcept { return {re, im}; }
    double modulus() const noexcept { return std::hypot(re, im); }

    friend bool operator==(const DiskPoint&, const DiskPoint&) = default;
};

inline DiskPoint disk_point(cplx z) noexcept { return {z.real(), z.imag()}; }

namespace detail {

// Integer power by repeated squaring; exact zeros stay exact and real
// inputs stay real, unlike the exp/log path of std::pow.
inline cplx ipow(cplx base, long n) noexcept {
    cplx result = 1.0;
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

} // namespace detail

// Sign convention for the cepstrum expansion of log h: poles enter power
// sums with +1, zeros with -1, i.e. c_s = (sum_i lambda_i^s - sum_j mu_j^s)/s
// for s >= 1. Recorded explicitly wherever signed coordinates are reported.
struct CepstrumConvention {
    static constexpr int sign_pole = +1;
    static constexpr int sign_zero = -1;
};

class ArmaModel;
ArmaModel validate(double raw_gain, std::span<const cplx> raw_poles,
                   std::span<const cplx> raw_zeros, double stability_margin);

// Gain prefactor plus pole and zero lists, all inside the unit disk.
// Instances are created through validate() and immutable afterwards.
class ArmaModel {
public:
    double gain() const noexcept { return gain_; }
    const std::vector<DiskPoint>& poles() const noexcept { return poles_; }
    const std::vector<DiskPoint>& zeros() const noexcept { return zeros_; }
    int p() const noexcept { return static_cast<int>(poles_.size()); }
    int q() const noexcept { return static_cast<int>(zeros_.size()); }
    double stability_margin() const noexcept { return margin_; }

    // Largest modulus over poles and zeros; 0 for the identity filter.
    double max_root_modulus() const noexcept { return max_modulus_; }

    bool is_identity() const noexcept {
        return poles_.empty() && zeros_.empty() && gain_ == 1.0;
    }

    static ArmaModel identity() { return validate(1.0, {}, {}, default_stability_margin); }

private:
    friend ArmaModel validate(double, std::span<const cplx>, std::span<const cplx>, double);

    ArmaModel(double gain, std::vector<DiskPoint> poles, std::vector<DiskPoint> zeros,
              double margin, double max_modulus)
        : gain_(gain), poles_(std::move(poles)), zeros_(std::move(zeros)),
          margin_(margin), max_modulus_(max_modulus) {}

    double gain_;
    std::vector<DiskPoint> poles_;
    std::vector<DiskPoint> zeros_;
    double margin_;
    double max_modulus_;
};

// Checks gain positivity and that every root keeps the stability margin.
// p = q = 0 with gain 1 is the identity filter.
inline ArmaModel validate(double raw_gain, std::span<const cplx> raw_poles,
                          std::span<const cplx> raw_zeros,
                          double stability_margin = default_stability_margin) {
    if (!(raw_gain > 0.0) || !std::isfinite(raw_gain))
        throw Error(errc::non_positive_gain,
                    "gain must be a positive finite real, got " + std::to_string(raw_gain));
    if (!(stability_margin > 0.0) || stability_margin >= 1.0)
        throw Error(errc::invalid_argument, "stability margin must lie in (0, 1)");

    double max_mod = 0.0;
    auto check = [&](std::span<const cplx> pts, const char* kind) {
        std::vector<DiskPoint> out;
        out.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double m = std::abs(pts[i]);
            if (!std::isfinite(m) || m >= 1.0 - stability_margin) {
                std::ostringstream os;
                os << kind << "[" << i << "] has modulus " << m
                   << " >= " << 1.0 - stability_margin << " (stationarity violated)";
                throw Error(errc::unstable_point, os.str());
            }
            max_mod = std::max(max_mod, m);
            out.push_back(disk_point(pts[i]));
        }
        return out;
    };

    std::vector<DiskPoint> poles = check(raw_poles, "pole");
    std::vector<DiskPoint> zeros = check(raw_zeros, "zero");
    return ArmaModel(raw_gain, std::move(poles), std::move(zeros), stability_margin, max_mod);
}

// h(z) = gain * prod_j (1 - mu_j z^-1) / prod_i (1 - lambda_i z^-1), |z| = 1.
inline cplx transfer_at(const ArmaModel& model, cplx z) {
    const cplx zinv = 1.0 / z;
    cplx num = 1.0, den = 1.0;
    for (const auto& mu : model.zeros()) num *= 1.0 - mu.value() * zinv;
    for (const auto& lam : model.poles()) den *= 1.0 - lam.value() * zinv;
    return model.gain() * num / den;
}

// S(z) = |h(z)|^2 on the unit circle.
inline double spectral_density_at(const ArmaModel& model, cplx z) {
    return std::norm(transfer_at(model, z));
}

// Complex cepstrum coefficient c_s of log h. For s >= 1,
// c_s = (sum_i lambda_i^s - sum_j mu_j^s)/s; c_0 = log(gain).
inline cplx cepstrum(const ArmaModel& model, long s) {
    if (s < 0) throw Error(errc::invalid_argument, "cepstrum index must be nonnegative");
    if (s == 0) return {std::log(model.gain()), 0.0};
    cplx acc = 0.0;
    for (const auto& lam : model.poles())
        acc += static_cast<double>(CepstrumConvention::sign_pole) * detail::ipow(lam.value(), s);
    for (const auto& mu : model.zeros())
        acc += static_cast<double>(CepstrumConvention::sign_zero) * detail::ipow(mu.value(), s);
    return acc / static_cast<double>(s);
}

} // namespace arma_geodesy
