// Kahler geometry of the pole/zero manifold: potential, metric tensor and
// Levi-Civita connection, with closed Dirichlet forms plus finite-difference
// and contour-quadrature evaluations used as independent cross-checks.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <vector>

#include "arma_geodesy/errors.hpp"
#include "arma_geodesy/model.hpp"
#include "arma_geodesy/series.hpp"
#include "arma_geodesy/weights.hpp"

namespace arma_geodesy {

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

private:
    std::size_t n_ = 0;
    std::vector<cplx> data_;
};

class ComplexRank3 {
public:
    ComplexRank3() = default;
    explicit ComplexRank3(std::size_t n) : n_(n), data_(n * n * n) {}

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    cplx& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return data_[(i * n_ + j) * n_ + k];
    }
    const cplx& operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(i * n_ + j) * n_ + k];
    }

private:
    std::size_t n_ = 0;
    std::vector<cplx> data_;
};

// Coordinates are the poles followed by the zeros; signs carry +1 per pole
// and -1 per zero. The gain is a flat direction and is not a coordinate.
struct GeometryReport {
    std::vector<DiskPoint> coords;
    std::vector<int> signs;
    ComplexMatrix metric;
    ComplexRank3 connection;
    bool singular_metric = false;
};

namespace detail {

inline GeometryReport geometry_skeleton(const ArmaModel& model) {
    GeometryReport report;
    report.coords.reserve(model.poles().size() + model.zeros().size());
    for (const auto& lam : model.poles()) {
        report.coords.push_back(lam);
        report.signs.push_back(CepstrumConvention::sign_pole);
    }
    for (const auto& mu : model.zeros()) {
        report.coords.push_back(mu);
        report.signs.push_back(CepstrumConvention::sign_zero);
    }
    return report;
}

inline constexpr double coincidence_tol = 1e-10;

inline bool has_coincident_coords(const std::vector<DiskPoint>& coords) {
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = i + 1; j < coords.size(); ++j)
            if (std::abs(coords[i].value() - coords[j].value()) <= coincidence_tol) return true;
    return false;
}

// Weighted potential with a frozen term count. Every stencil evaluation of
// one finite-difference pass shares the same cutoff and weight table, so the
// truncation error is a smooth function of the coordinates and cancels in
// the differences instead of polluting them.
class FixedTermPotential {
public:
    FixedTermPotential(const ArmaModel& model, const WeightScheme& scheme, long n_terms)
        : n_terms_(n_terms) {
        base_.reserve(model.poles().size() + model.zeros().size());
        signs_.reserve(base_.capacity());
        for (const auto& lam : model.poles()) {
            base_.push_back(lam.value());
            signs_.push_back(static_cast<double>(CepstrumConvention::sign_pole));
        }
        for (const auto& mu : model.zeros()) {
            base_.push_back(mu.value());
            signs_.push_back(static_cast<double>(CepstrumConvention::sign_zero));
        }
        weights_.resize(static_cast<std::size_t>(n_terms_) + 1);
        for (long s = 0; s <= n_terms_; ++s)
            weights_[static_cast<std::size_t>(s)] = weight_at(scheme, s);
        const double c0 = std::log(model.gain());
        gain_term_ = weights_[0] * c0 * c0;
    }

    const std::vector<cplx>& base() const noexcept { return base_; }

    double operator()(const std::vector<cplx>& pts) const {
        double sum = gain_term_, comp = 0.0;
        std::vector<cplx> powers(pts);
        for (long s = 1; s <= n_terms_; ++s) {
            cplx acc = 0.0;
            for (std::size_t a = 0; a < pts.size(); ++a) {
                if (s > 1) powers[a] *= pts[a];
                acc += signs_[a] * powers[a];
            }
            const double num = std::norm(acc);
            if (num == 0.0) continue;
            const double sd = static_cast<double>(s);
            const double term = weights_[static_cast<std::size_t>(s)] * num / (sd * sd);
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return sum;
    }

private:
    std::vector<cplx> base_;
    std::vector<double> signs_;
    std::vector<double> weights_;
    long n_terms_ = 0;
    double gain_term_ = 0.0;
};

// One real differentiation variable: the re or im part of one coordinate.
struct RealVar {
    std::size_t coord;
    int axis; // 0 = re, 1 = im
};

// Evaluates the potential at the base point shifted by integer multiples of
// the step per variable. Multiplicities are accumulated per coordinate first
// so repeated variables collapse to one exact offset and the untouched
// stencil points coincide bitwise.
class StencilEvaluator {
public:
    StencilEvaluator(const FixedTermPotential& potential, double step)
        : potential_(potential), step_(step), dre_(potential.base().size(), 0),
          dim_(potential.base().size(), 0) {}

    double at(const std::vector<RealVar>& vars, const std::vector<int>& steps) {
        for (std::size_t k = 0; k < vars.size(); ++k)
            (vars[k].axis == 0 ? dre_ : dim_)[vars[k].coord] += steps[k];
        std::vector<cplx> pts = potential_.base();
        for (std::size_t c = 0; c < pts.size(); ++c)
            if (dre_[c] != 0 || dim_[c] != 0)
                pts[c] += cplx(dre_[c] * step_, dim_[c] * step_);
        for (std::size_t c = 0; c < dre_.size(); ++c) dre_[c] = dim_[c] = 0;
        return potential_(pts);
    }

    // Composed central second difference D_a D_b.
    double second(RealVar a, RealVar b) {
        double acc = 0.0;
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1})
                acc += s1 * s2 * at({a, b}, {s1, s2});
        return acc / (4.0 * step_ * step_);
    }

    // Composed central third difference D_a D_b D_c.
    double third(RealVar a, RealVar b, RealVar c) {
        double acc = 0.0;
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1})
                for (int s3 : {+1, -1})
                    acc += s1 * s2 * s3 * at({a, b, c}, {s1, s2, s3});
        return acc / (8.0 * step_ * step_ * step_);
    }

private:
    const FixedTermPotential& potential_;
    double step_;
    std::vector<int> dre_;
    std::vector<int> dim_;
};

// Shared setup for the finite-difference passes: disk-exit check and a term
// count valid for every point the stencil can touch. `order` is the largest
// integer multiple of the step a single coordinate can move by.
inline FixedTermPotential fd_potential(const ArmaModel& model, const WeightScheme& scheme,
                                       double step, double tol, int order) {
    if (!(step > 0.0) || !(tol > 0.0))
        throw Error(errc::invalid_argument, "step and tol must be positive");
    const double margin = model.stability_margin();
    for (const auto& pt : {model.poles(), model.zeros()})
        for (const auto& root : pt)
            if (root.modulus() + order * step >= 1.0 - margin) {
                std::ostringstream os;
                os << "finite-difference step " << step << " pushes root of modulus "
                   << root.modulus() << " out of the stability region";
                throw Error(errc::step_out_of_disk, os.str());
            }
    const double r_eff = model.max_root_modulus() + order * step;
    const int strength = model.p() + model.q();
    const long n_terms = detail::pick_truncation(strength, r_eff, scheme, tol);
    return FixedTermPotential(model, scheme, n_terms);
}

} // namespace detail

// Potential value: the squared weighted norm of the model.
inline double kahler_potential(const ArmaModel& model, const WeightScheme& scheme, double tol) {
    return weighted_norm_series(model, scheme, tol).value_squared;
}

// Dirichlet metric g_{ij} = s_i s_j / (1 - xi_i conj(xi_j))^2. Entries are
// filled for i <= j and mirrored, so the matrix is Hermitian bitwise and the
// diagonal is exactly real.
inline GeometryReport metric_dirichlet_closed(const ArmaModel& model) {
    GeometryReport report = detail::geometry_skeleton(model);
    const std::size_t n = report.coords.size();
    if (n == 0)
        throw Error(errc::invalid_argument,
                    "metric requires at least one pole or zero coordinate");
    report.metric = ComplexMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = 1.0 - std::norm(report.coords[i].value());
        report.metric(i, i) = 1.0 / (d * d);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx w = 1.0 - report.coords[i].value() * std::conj(report.coords[j].value());
            const double sign = static_cast<double>(report.signs[i] * report.signs[j]);
            const cplx entry = sign / (w * w);
            report.metric(i, j) = entry;
            report.metric(j, i) = std::conj(entry);
        }
    }
    report.singular_metric = detail::has_coincident_coords(report.coords);
    return report;
}

// Dirichlet connection Gamma_{ij,k} = delta_{ij} s_j s_k 2 conj(xi_k) /
// (1 - xi_j conj(xi_k))^3.
inline GeometryReport connection_dirichlet_closed(const ArmaModel& model) {
    GeometryReport report = detail::geometry_skeleton(model);
    const std::size_t n = report.coords.size();
    report.connection = ComplexRank3(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx xk = report.coords[k].value();
            const cplx w = 1.0 - report.coords[j].value() * std::conj(xk);
            const double sign = static_cast<double>(report.signs[j] * report.signs[k]);
            report.connection(j, j, k) = sign * 2.0 * std::conj(xk) / (w * w * w);
        }
    return report;
}

// Metric by central differences of the potential, assembled into Wirtinger
// derivatives: g_{ij} = (Dxx + Dyy)/4 + i (Dxy - Dyx)/4.
inline GeometryReport metric_fd(const ArmaModel& model, const WeightScheme& scheme, double step,
                                double tol) {
    GeometryReport report = detail::geometry_skeleton(model);
    const std::size_t n = report.coords.size();
    report.metric = ComplexMatrix(n);
    if (n == 0) return report;

    const auto potential = detail::fd_potential(model, scheme, step, tol, 2);
    detail::StencilEvaluator stencil(potential, step);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const detail::RealVar xi{i, 0}, yi{i, 1}, xj{j, 0}, yj{j, 1};
            const double dxx = stencil.second(xi, xj);
            const double dyy = stencil.second(yi, yj);
            const double dxy = stencil.second(xi, yj);
            const double dyx = stencil.second(yi, xj);
            report.metric(i, j) = cplx(0.25 * (dxx + dyy), 0.25 * (dxy - dyx));
        }
    return report;
}

// Connection by central third differences: Gamma_{ij,k} expands the two
// holomorphic and one antiholomorphic Wirtinger factors over all re/im
// choices of the three variables.
inline GeometryReport connection_fd(const ArmaModel& model, const WeightScheme& scheme,
                                    double step, double tol) {
    GeometryReport report = detail::geometry_skeleton(model);
    const std::size_t n = report.coords.size();
    report.connection = ComplexRank3(n);
    if (n == 0) return report;

    const auto potential = detail::fd_potential(model, scheme, step, tol, 3);
    detail::StencilEvaluator stencil(potential, step);
    const cplx holo[2] = {cplx(0.5, 0.0), cplx(0.0, -0.5)};
    const cplx anti[2] = {cplx(0.5, 0.0), cplx(0.0, +0.5)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                cplx acc = 0.0;
                for (int ai = 0; ai < 2; ++ai)
                    for (int aj = 0; aj < 2; ++aj)
                        for (int ak = 0; ak < 2; ++ak)
                            acc += holo[ai] * holo[aj] * anti[ak] *
                                   stencil.third({i, ai}, {j, aj}, {k, ak});
                report.connection(i, j, k) = acc;
            }
    return report;
}

// Hardy metric by trapezoidal quadrature of d_i(z) conj(d_j(z)) over the
// unit circle, d_i(z) = s_i z^{-1} / (1 - xi_i z^{-1}). Converges spectrally
// to s_i s_j / (1 - xi_i conj(xi_j)).
inline GeometryReport metric_contour_hardy(const ArmaModel& model, long n_samples) {
    if (n_samples < 64)
        throw Error(errc::invalid_argument, "contour quadrature needs at least 64 samples");
    GeometryReport report = detail::geometry_skeleton(model);
    const std::size_t n = report.coords.size();
    report.metric = ComplexMatrix(n);
    if (n == 0) return report;

    ComplexMatrix acc(n);
    std::vector<cplx> d(n);
    for (long k = 0; k < n_samples; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(n_samples);
        const cplx w = std::polar(1.0, -theta); // z^{-1}
        for (std::size_t a = 0; a < n; ++a)
            d[a] = static_cast<double>(report.signs[a]) * w / (1.0 - report.coords[a].value() * w);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) acc(i, j) += d[i] * std::conj(d[j]);
    }
    const double scale = 1.0 / static_cast<double>(n_samples);
    for (std::size_t i = 0; i < n; ++i) {
        report.metric(i, i) = acc(i, i) * scale;
        for (std::size_t j = i + 1; j < n; ++j) {
            report.metric(i, j) = acc(i, j) * scale;
            report.metric(j, i) = std::conj(acc(i, j)) * scale;
        }
    }
    return report;
}

} // namespace arma_geodesy
