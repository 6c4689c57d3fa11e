// The five weight sequences selecting Hardy, Sobolev, Dirichlet, Bergman,
// and differentiation semi-norm spaces.
#pragma once

#include <cmath>
#include <string>

#include "arma_geodesy/errors.hpp"

namespace arma_geodesy {

struct WeightScheme {
    enum class Kind { hardy, sobolev, dirichlet, bergman, diff_semi_norm };

    Kind kind = Kind::hardy;
    int order = 0; // m for sobolev / diff_semi_norm

    static WeightScheme hardy() { return {Kind::hardy, 0}; }
    static WeightScheme dirichlet() { return {Kind::dirichlet, 0}; }
    static WeightScheme bergman() { return {Kind::bergman, 0}; }
    static WeightScheme sobolev(int m) {
        if (m < 1) throw Error(errc::invalid_argument, "sobolev order must be >= 1");
        return {Kind::sobolev, m};
    }
    static WeightScheme diff_semi_norm(int m) {
        if (m < 0) throw Error(errc::invalid_argument, "diffsemi order must be >= 0");
        return {Kind::diff_semi_norm, m};
    }

    friend bool operator==(const WeightScheme&, const WeightScheme&) = default;
};

// w_s for a nonnegative index s. Conventions at s = 0: 0^0 := 1, so the
// Sobolev weight is 1 and diffsemi:0 coincides with the Hardy weight.
inline double weight_at(const WeightScheme& scheme, long s) {
    if (s < 0) throw Error(errc::invalid_argument, "weight index must be nonnegative");
    const double sd = static_cast<double>(s);
    switch (scheme.kind) {
        case WeightScheme::Kind::hardy:
            return 1.0;
        case WeightScheme::Kind::sobolev: {
            double acc = 1.0, s2 = sd * sd, term = 1.0;
            for (int k = 1; k <= scheme.order; ++k) {
                term *= s2;
                acc += term;
            }
            return acc;
        }
        case WeightScheme::Kind::dirichlet:
            return sd;
        case WeightScheme::Kind::bergman:
            return 1.0 / (1.0 + sd);
        case WeightScheme::Kind::diff_semi_norm:
            if (s == 0) return scheme.order == 0 ? 1.0 : 0.0;
            return std::pow(sd, scheme.order);
    }
    throw Error(errc::invalid_argument, "unknown weight scheme");
}

// CLI spelling: hardy | sobolev:m | dirichlet | bergman | diffsemi:m
inline WeightScheme parse_weight_scheme(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    int order = -1;
    if (colon != std::string::npos) {
        try {
            std::size_t used = 0;
            order = std::stoi(text.substr(colon + 1), &used);
            if (used != text.size() - colon - 1) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw Error(errc::parse_error, "bad weight order in '" + text + "'");
        }
    }
    if (name == "hardy" && order < 0) return WeightScheme::hardy();
    if (name == "dirichlet" && order < 0) return WeightScheme::dirichlet();
    if (name == "bergman" && order < 0) return WeightScheme::bergman();
    if (name == "sobolev" && order >= 0) {
        if (order < 1)
            throw Error(errc::parse_error, "sobolev order must be >= 1 in '" + text + "'");
        return WeightScheme::sobolev(order);
    }
    if (name == "diffsemi" && order >= 0) return WeightScheme::diff_semi_norm(order);
    throw Error(errc::parse_error, "unknown weight scheme '" + text + "'");
}

inline std::string to_string(const WeightScheme& scheme) {
    switch (scheme.kind) {
        case WeightScheme::Kind::hardy: return "hardy";
        case WeightScheme::Kind::sobolev: return "sobolev:" + std::to_string(scheme.order);
        case WeightScheme::Kind::dirichlet: return "dirichlet";
        case WeightScheme::Kind::bergman: return "bergman";
        case WeightScheme::Kind::diff_semi_norm: return "diffsemi:" + std::to_string(scheme.order);
    }
    return "?";
}

} // namespace arma_geodesy
