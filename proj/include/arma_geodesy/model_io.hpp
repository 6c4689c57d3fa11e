// JSON model files: {"gain": g, "poles": [[re, im], ...], "zeros": [...],
// "label": "..."}. gain defaults to 1, label to the file stem.
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arma_geodesy/errors.hpp"
#include "arma_geodesy/model.hpp"

namespace arma_geodesy {

struct LoadedModel {
    ArmaModel model;
    std::string label;
};

namespace detail {

inline std::vector<cplx> parse_point_list(const nlohmann::json& j, const char* field) {
    std::vector<cplx> out;
    if (!j.contains(field)) return out;
    const auto& arr = j.at(field);
    if (!arr.is_array())
        throw Error(errc::parse_error, std::string(field) + " must be an array of [re, im] pairs");
    out.reserve(arr.size());
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
            throw Error(errc::parse_error,
                        std::string(field) + " entries must be [re, im] number pairs");
        out.emplace_back(item[0].get<double>(), item[1].get<double>());
    }
    return out;
}

} // namespace detail

inline LoadedModel model_from_json(const nlohmann::json& j, const std::string& fallback_label,
                                   double stability_margin = default_stability_margin) {
    if (!j.is_object()) throw Error(errc::parse_error, "model document must be a JSON object");
    double gain = 1.0;
    if (j.contains("gain")) {
        if (!j.at("gain").is_number())
            throw Error(errc::parse_error, "gain must be a number");
        gain = j.at("gain").get<double>();
    }
    const auto poles = detail::parse_point_list(j, "poles");
    const auto zeros = detail::parse_point_list(j, "zeros");
    std::string label = fallback_label;
    if (j.contains("label")) {
        if (!j.at("label").is_string())
            throw Error(errc::parse_error, "label must be a string");
        label = j.at("label").get<std::string>();
    }
    return {validate(gain, poles, zeros, stability_margin), label};
}

inline nlohmann::json model_to_json(const ArmaModel& model, const std::string& label = "") {
    nlohmann::json j;
    j["gain"] = model.gain();
    auto points = [](const std::vector<DiskPoint>& pts) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& pt : pts) arr.push_back({pt.re, pt.im});
        return arr;
    };
    j["poles"] = points(model.poles());
    j["zeros"] = points(model.zeros());
    if (!label.empty()) j["label"] = label;
    return j;
}

inline LoadedModel load_model(const std::filesystem::path& path,
                              double stability_margin = default_stability_margin) {
    std::ifstream in(path);
    if (!in) throw Error(errc::parse_error, "cannot open model file " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::parse_error, path.string() + ": " + e.what());
    }
    try {
        return model_from_json(j, path.stem().string(), stability_margin);
    } catch (const Error& e) {
        throw Error(e.code(), e.message() + " (in " + path.string() + ")");
    }
}

// All *.json files in a directory, sorted by filename for deterministic
// ordering of matrix rows.
inline std::vector<LoadedModel> load_models_in_dir(
    const std::filesystem::path& dir, double stability_margin = default_stability_margin) {
    if (!std::filesystem::is_directory(dir))
        throw Error(errc::invalid_argument, dir.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<LoadedModel> models;
    models.reserve(files.size());
    for (const auto& file : files) models.push_back(load_model(file, stability_margin));
    return models;
}

} // namespace arma_geodesy
