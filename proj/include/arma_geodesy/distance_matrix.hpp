// Pairwise distance matrix over a model collection. Pairs are independent,
// so they are distributed over a small worker pool; results are written to
// fixed slots, keeping the output independent of scheduling.
#pragma once

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "arma_geodesy/closed_form.hpp"
#include "arma_geodesy/errors.hpp"
#include "arma_geodesy/model_io.hpp"
#include "arma_geodesy/series.hpp"
#include "arma_geodesy/weights.hpp"

namespace arma_geodesy {

enum class DistanceMethod { closed, series };

inline DistanceMethod parse_distance_method(const std::string& text) {
    if (text == "closed") return DistanceMethod::closed;
    if (text == "series") return DistanceMethod::series;
    throw Error(errc::parse_error, "unknown method '" + text + "' (expected closed or series)");
}

inline const char* to_string(DistanceMethod method) {
    return method == DistanceMethod::closed ? "closed" : "series";
}

struct DistanceMatrixReport {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> values;
    WeightScheme scheme;
    DistanceMethod method = DistanceMethod::closed;
};

namespace detail {

// Worker count: explicit argument, else ARMA_GEODESY_WORKERS, else hardware.
inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ARMA_GEODESY_WORKERS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

} // namespace detail

inline DistanceMatrixReport distance_matrix(const std::vector<LoadedModel>& models,
                                            const WeightScheme& scheme, DistanceMethod method,
                                            double tol, unsigned workers = 0) {
    if (models.size() < 2)
        throw Error(errc::invalid_argument, "distance matrix needs at least 2 models");
    if (method == DistanceMethod::closed && scheme.kind != WeightScheme::Kind::dirichlet)
        throw Error(errc::method_scheme_mismatch,
                    "closed-form distances exist only for the dirichlet weight; use "
                    "--method series");

    const std::size_t n = models.size();
    DistanceMatrixReport report;
    report.scheme = scheme;
    report.method = method;
    report.labels.reserve(n);
    for (const auto& m : models) report.labels.push_back(m.label);
    report.values.assign(n, std::vector<double>(n, 0.0));

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    auto pair_distance = [&](std::size_t i, std::size_t j) {
        const ArmaModel& a = models[i].model;
        const ArmaModel& b = models[j].model;
        if (method == DistanceMethod::closed) return dirichlet_distance_closed(a, b);
        return weighted_distance_series(a, b, scheme, tol).value;
    };

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= pairs.size()) return;
            const auto [i, j] = pairs[k];
            try {
                const double d = pair_distance(i, j);
                report.values[i][j] = d;
                report.values[j][i] = d;
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    unsigned n_workers = detail::resolve_workers(workers);
    if (n_workers > pairs.size()) n_workers = static_cast<unsigned>(pairs.size());
    if (n_workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    return report;
}

// CSV with a header row of labels; 17 significant digits round-trip doubles.
inline void write_matrix_csv(const DistanceMatrixReport& report, std::ostream& out) {
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "label";
    for (const auto& label : report.labels) out << ',' << label;
    out << '\n';
    for (std::size_t i = 0; i < report.labels.size(); ++i) {
        out << report.labels[i];
        for (std::size_t j = 0; j < report.labels.size(); ++j)
            out << ',' << fmt(report.values[i][j]);
        out << '\n';
    }
}

} // namespace arma_geodesy
