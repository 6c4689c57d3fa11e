// arma-geodesy: command-line front end over the library. JSON to stdout by
// default; --format pretty for indented JSON, --format csv for flat tables.
// Exit codes: 0 success, 2 validation error, 3 parse/usage error, 4 internal
// inconsistency.
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arma_geodesy/arma_geodesy.hpp"

namespace ag = arma_geodesy;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json point_list(const std::vector<ag::DiskPoint>& pts) {
    json arr = json::array();
    for (const auto& pt : pts) arr.push_back({pt.re, pt.im});
    return arr;
}

json matrix_json(const ag::ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

json rank3_json(const ag::ComplexRank3& t) {
    json slabs = json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        json rows = json::array();
        for (std::size_t j = 0; j < t.size(); ++j) {
            json row = json::array();
            for (std::size_t k = 0; k < t.size(); ++k)
                row.push_back({t(i, j, k).real(), t(i, j, k).imag()});
            rows.push_back(std::move(row));
        }
        slabs.push_back(std::move(rows));
    }
    return slabs;
}

// Flat key,value lines for scalar-shaped results.
void print_kv_csv(const json& j) {
    for (const auto& [key, value] : j.items()) {
        if (value.is_number_float())
            std::cout << key << ',' << fmt17(value.get<double>()) << '\n';
        else if (value.is_string())
            std::cout << key << ',' << value.get<std::string>() << '\n';
        else
            std::cout << key << ',' << value.dump() << '\n';
    }
}

void print_result(const json& j, const std::string& format) {
    if (format == "pretty")
        std::cout << j.dump(2) << '\n';
    else
        std::cout << j.dump() << '\n';
}

std::vector<ag::cplx> parse_coeff_list(const std::string& text, const char* which) {
    std::vector<ag::cplx> coeffs{1.0};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) throw std::invalid_argument(item);
            coeffs.emplace_back(v, 0.0);
        } catch (const std::exception&) {
            throw ag::Error(ag::errc::parse_error,
                            std::string("bad ") + which + " coefficient '" + item + "'");
        }
    }
    if (coeffs.size() < 2)
        throw ag::Error(ag::errc::parse_error,
                        std::string(which) + " coefficient list is empty");
    return coeffs;
}

struct SeriesFields {
    void fill(json& out, const ag::SeriesResult& r) const {
        out["value"] = r.value;
        out["value_squared"] = r.value_squared;
        out["terms_used"] = r.terms_used;
        out["tail_bound"] = r.tail_bound;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cepstrum-based weighted Hardy norms, distances, and Kahler "
                 "geometry of ARMA models"};
    app.require_subcommand(1);
    app.fallthrough(); // --format may follow the subcommand

    std::string format = "json";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "pretty", "csv"}))
        ->capture_default_str();

    std::string file_a, file_b, weight_text = "dirichlet", method_text = "series";
    std::string dir_path, out_path, ar_text, ma_text;
    double tol = 1e-10;
    double fd_step = 1e-4;
    long max_s = 0;
    bool check_fd = false;

    auto* cmd_validate = app.add_subcommand("validate", "load a model file and report it");
    cmd_validate->add_option("file", file_a, "model JSON file")->required();

    auto* cmd_cepstrum = app.add_subcommand("cepstrum", "cepstrum coefficients c_0..c_N");
    cmd_cepstrum->add_option("file", file_a)->required();
    cmd_cepstrum->add_option("--max-s", max_s, "largest index to compute")
        ->required()
        ->check(CLI::NonNegativeNumber);

    auto* cmd_norm = app.add_subcommand("norm", "weighted norm of one model");
    cmd_norm->add_option("file", file_a)->required();
    cmd_norm->add_option("--weight", weight_text, "hardy|sobolev:m|dirichlet|bergman|diffsemi:m")
        ->required();
    cmd_norm->add_option("--tol", tol, "series tail tolerance")->capture_default_str();
    cmd_norm->add_option("--method", method_text, "closed|series")->capture_default_str();

    auto* cmd_distance = app.add_subcommand("distance", "weighted distance between two models");
    cmd_distance->add_option("file_a", file_a)->required();
    cmd_distance->add_option("file_b", file_b)->required();
    cmd_distance->add_option("--weight", weight_text)->required();
    cmd_distance->add_option("--method", method_text, "closed|series")->required();
    cmd_distance->add_option("--tol", tol)->capture_default_str();

    auto* cmd_decompose =
        app.add_subcommand("decompose", "hyperbolic decomposition of the squared "
                                        "Dirichlet distance");
    cmd_decompose->add_option("file_a", file_a)->required();
    cmd_decompose->add_option("file_b", file_b)->required();

    auto* cmd_metric = app.add_subcommand("metric", "metric tensor (and connection for "
                                                    "the Dirichlet weight)");
    cmd_metric->add_option("file", file_a)->required();
    cmd_metric->add_option("--weight", weight_text)->capture_default_str();
    cmd_metric->add_flag("--check-fd", check_fd, "cross-check against finite differences");
    cmd_metric->add_option("--step", fd_step, "finite-difference step")->capture_default_str();
    cmd_metric->add_option("--tol", tol)->capture_default_str();

    auto* cmd_matrix = app.add_subcommand("matrix", "pairwise distance matrix over a "
                                                    "directory of model files");
    cmd_matrix->add_option("dir", dir_path)->required();
    cmd_matrix->add_option("--weight", weight_text)->required();
    cmd_matrix->add_option("--method", method_text, "closed|series")->required();
    cmd_matrix->add_option("--out", out_path, "write the matrix as CSV to this file");
    cmd_matrix->add_option("--tol", tol)->capture_default_str();

    auto* cmd_roots = app.add_subcommand("roots", "map polynomial coefficients to "
                                                  "pole/zero locations");
    cmd_roots->add_option("--ar", ar_text, "AR coefficients a1,a2,... of 1 + a1 z^-1 + ...");
    cmd_roots->add_option("--ma", ma_text, "MA coefficients b1,b2,... of 1 + b1 z^-1 + ...");

    try {
        app.parse(argc, argv);

        if (*cmd_validate) {
            const auto loaded = ag::load_model(file_a);
            json out{{"label", loaded.label},
                     {"gain", loaded.model.gain()},
                     {"p", loaded.model.p()},
                     {"q", loaded.model.q()},
                     {"poles", point_list(loaded.model.poles())},
                     {"zeros", point_list(loaded.model.zeros())},
                     {"max_root_modulus", loaded.model.max_root_modulus()},
                     {"valid", true}};
            if (format == "csv")
                print_kv_csv(out);
            else
                print_result(out, format);
        } else if (*cmd_cepstrum) {
            const auto loaded = ag::load_model(file_a);
            if (format == "csv") {
                std::cout << "s,re,im\n";
                for (long s = 0; s <= max_s; ++s) {
                    const ag::cplx c = ag::cepstrum(loaded.model, s);
                    std::cout << s << ',' << fmt17(c.real()) << ',' << fmt17(c.imag()) << '\n';
                }
            } else {
                json coeffs = json::array();
                for (long s = 0; s <= max_s; ++s) {
                    const ag::cplx c = ag::cepstrum(loaded.model, s);
                    coeffs.push_back({c.real(), c.imag()});
                }
                print_result(json{{"label", loaded.label},
                                  {"max_s", max_s},
                                  {"coefficients", std::move(coeffs)}},
                             format);
            }
        } else if (*cmd_norm) {
            const auto loaded = ag::load_model(file_a);
            const auto scheme = ag::parse_weight_scheme(weight_text);
            const auto method = ag::parse_distance_method(method_text);
            json out{{"label", loaded.label},
                     {"weight", ag::to_string(scheme)},
                     {"method", ag::to_string(method)}};
            if (method == ag::DistanceMethod::closed) {
                if (scheme.kind != ag::WeightScheme::Kind::dirichlet)
                    throw ag::Error(ag::errc::method_scheme_mismatch,
                                    "closed-form norms exist only for the dirichlet weight");
                const double value = ag::dirichlet_norm_closed(loaded.model);
                out["value"] = value;
                out["value_squared"] = value * value;
            } else {
                SeriesFields{}.fill(out, ag::weighted_norm_series(loaded.model, scheme, tol));
            }
            if (format == "csv")
                print_kv_csv(out);
            else
                print_result(out, format);
        } else if (*cmd_distance) {
            const auto a = ag::load_model(file_a);
            const auto b = ag::load_model(file_b);
            const auto scheme = ag::parse_weight_scheme(weight_text);
            const auto method = ag::parse_distance_method(method_text);
            json out{{"label_a", a.label},
                     {"label_b", b.label},
                     {"weight", ag::to_string(scheme)},
                     {"method", ag::to_string(method)}};
            if (method == ag::DistanceMethod::closed) {
                if (scheme.kind != ag::WeightScheme::Kind::dirichlet)
                    throw ag::Error(ag::errc::method_scheme_mismatch,
                                    "closed-form distances exist only for the dirichlet weight");
                const double value = ag::dirichlet_distance_closed(a.model, b.model);
                out["value"] = value;
                out["value_squared"] = value * value;
            } else {
                SeriesFields{}.fill(out, ag::weighted_distance_series(a.model, b.model, scheme, tol));
            }
            if (format == "csv")
                print_kv_csv(out);
            else
                print_result(out, format);
        } else if (*cmd_decompose) {
            const auto a = ag::load_model(file_a);
            const auto b = ag::load_model(file_b);
            const auto rep = ag::decompose(a.model, b.model);
            json out{{"ar_ar", rep.ar_ar},
                     {"ma_ma", rep.ma_ma},
                     {"ar_ma_cross", rep.ar_ma_cross},
                     {"residual", rep.residual},
                     {"total_squared", rep.total_squared},
                     {"relative_order_delta", rep.relative_order_delta}};
            if (format == "csv")
                print_kv_csv(out);
            else
                print_result(out, format);
        } else if (*cmd_metric) {
            const auto loaded = ag::load_model(file_a);
            const auto scheme = ag::parse_weight_scheme(weight_text);
            const bool dirichlet = scheme.kind == ag::WeightScheme::Kind::dirichlet;
            ag::GeometryReport report;
            if (dirichlet)
                report = ag::metric_dirichlet_closed(loaded.model);
            else
                report = ag::metric_fd(loaded.model, scheme, fd_step, tol);
            json out{{"label", loaded.label},
                     {"weight", ag::to_string(scheme)},
                     {"coords", point_list(report.coords)},
                     {"signs", report.signs},
                     {"singular_metric", report.singular_metric},
                     {"metric", matrix_json(report.metric)}};
            if (dirichlet) {
                const auto conn = ag::connection_dirichlet_closed(loaded.model);
                out["connection"] = rank3_json(conn.connection);
            }
            if (check_fd) {
                if (!dirichlet)
                    throw ag::Error(ag::errc::method_scheme_mismatch,
                                    "--check-fd compares against the closed Dirichlet "
                                    "metric; use --weight dirichlet");
                const auto fd = ag::metric_fd(loaded.model, scheme, fd_step, tol);
                double max_rel = 0.0;
                for (std::size_t i = 0; i < fd.metric.size(); ++i)
                    for (std::size_t j = 0; j < fd.metric.size(); ++j) {
                        const double scale = std::max(1.0, std::abs(report.metric(i, j)));
                        const double rel = std::abs(fd.metric(i, j) - report.metric(i, j)) / scale;
                        if (rel > max_rel) max_rel = rel;
                    }
                out["fd_step"] = fd_step;
                out["fd_max_rel_err"] = max_rel;
            }
            if (format == "csv") {
                std::cout << "i,j,re,im\n";
                for (std::size_t i = 0; i < report.metric.size(); ++i)
                    for (std::size_t j = 0; j < report.metric.size(); ++j)
                        std::cout << i << ',' << j << ',' << fmt17(report.metric(i, j).real())
                                  << ',' << fmt17(report.metric(i, j).imag()) << '\n';
            } else {
                print_result(out, format);
            }
        } else if (*cmd_matrix) {
            const auto models = ag::load_models_in_dir(dir_path);
            const auto scheme = ag::parse_weight_scheme(weight_text);
            const auto method = ag::parse_distance_method(method_text);
            const auto report = ag::distance_matrix(models, scheme, method, tol);
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                if (!out)
                    throw ag::Error(ag::errc::invalid_argument,
                                    "cannot write to " + out_path);
                ag::write_matrix_csv(report, out);
            }
            if (format == "csv") {
                ag::write_matrix_csv(report, std::cout);
            } else {
                json values = json::array();
                for (const auto& row : report.values) values.push_back(row);
                json out{{"labels", report.labels},
                         {"weight", ag::to_string(report.scheme)},
                         {"method", ag::to_string(report.method)},
                         {"values", std::move(values)}};
                if (!out_path.empty()) out["csv"] = out_path;
                print_result(out, format);
            }
        } else if (*cmd_roots) {
            if (ar_text.empty() && ma_text.empty())
                throw ag::Error(ag::errc::parse_error, "provide --ar and/or --ma coefficients");
            json out;
            if (format == "csv") std::cout << "kind,index,re,im\n";
            auto handle = [&](const std::string& text, const char* which, ag::RootKind kind,
                              const char* key) {
                if (text.empty()) return;
                const auto pts = ag::roots_from_poly(parse_coeff_list(text, which), kind);
                if (format == "csv") {
                    for (std::size_t i = 0; i < pts.size(); ++i)
                        std::cout << key << ',' << i << ',' << fmt17(pts[i].re) << ','
                                  << fmt17(pts[i].im) << '\n';
                } else {
                    out[key] = point_list(pts);
                }
            };
            handle(ar_text, "--ar", ag::RootKind::pole, "poles");
            handle(ma_text, "--ma", ag::RootKind::zero, "zeros");
            if (format != "csv") print_result(out, format);
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << json{{"error", e.what()}, {"kind", "UsageError"}}.dump() << '\n';
        return 3;
    } catch (const ag::Error& e) {
        std::cerr << json{{"error", e.message()}, {"kind", ag::errc_name(e.code())}}.dump()
                  << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "InternalError"}}.dump() << '\n';
        return 4;
    }
    return 0;
}
