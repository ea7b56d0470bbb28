// JSON (de)serialization of state specifications for the CLI.
//
// Schema: either a named family
//   {"class": "thermal", "nu": 3.0}
//   {"class": "coherent", "re": 0.3, "im": -0.7}
//   {"class": "epr", "mu": 2.0}
//   {"class": "st", "mu": 3.0, "c": 2.0}
// or raw moments
//   {"mean": [2n reals], "cov": [[2n x 2n reals]]}
// All numbers are finite doubles; serialization uses shortest round-trip
// formatting so a write/parse cycle reproduces bit-identical states.
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gqhb/catalog.hpp"
#include "gqhb/errors.hpp"

namespace gqhb {

namespace detail {

inline double require_number(const nlohmann::json& j, const std::string& field,
                             const std::string& where) {
    if (!j.contains(field))
        throw parse_error("missing field \"" + field + "\" in " + where);
    const auto& v = j.at(field);
    if (!v.is_number())
        throw parse_error("field \"" + field + "\" in " + where + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw parse_error("field \"" + field + "\" in " + where + " must be finite");
    return x;
}

} // namespace detail

inline state_spec parse_state_spec(const nlohmann::json& j) {
    if (!j.is_object()) throw parse_error("state document must be a JSON object");

    if (j.contains("class")) {
        if (!j.at("class").is_string())
            throw parse_error("field \"class\" must be a string");
        const std::string cls = j.at("class").get<std::string>();
        if (cls == "thermal")
            return thermal_spec{detail::require_number(j, "nu", "thermal state")};
        if (cls == "coherent")
            return coherent_spec{detail::require_number(j, "re", "coherent state"),
                                 detail::require_number(j, "im", "coherent state")};
        if (cls == "epr") return epr_spec{detail::require_number(j, "mu", "epr state")};
        if (cls == "st")
            return squeezed_thermal_spec{detail::require_number(j, "mu", "st state"),
                                         detail::require_number(j, "c", "st state")};
        throw parse_error("unknown state class \"" + cls + "\"");
    }

    if (!j.contains("mean") || !j.contains("cov"))
        throw parse_error("state document needs either \"class\" or both \"mean\" and \"cov\"");
    const auto& jm = j.at("mean");
    const auto& jc = j.at("cov");
    if (!jm.is_array() || jm.empty())
        throw parse_error("field \"mean\" must be a non-empty array");
    if (!jc.is_array() || jc.empty())
        throw parse_error("field \"cov\" must be a non-empty array of rows");

    raw_spec raw;
    const auto dim = static_cast<Eigen::Index>(jm.size());
    raw.mean.resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto& v = jm.at(static_cast<std::size_t>(i));
        if (!v.is_number() || !std::isfinite(v.get<double>()))
            throw parse_error("field \"mean\" must contain finite numbers");
        raw.mean(i) = v.get<double>();
    }
    if (static_cast<Eigen::Index>(jc.size()) != dim)
        throw parse_error("field \"cov\" must have as many rows as \"mean\" has entries");
    raw.cov.resize(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto& row = jc.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
            throw parse_error("field \"cov\" row " + std::to_string(i) +
                              " must have length " + std::to_string(dim));
        for (Eigen::Index k = 0; k < dim; ++k) {
            const auto& v = row.at(static_cast<std::size_t>(k));
            if (!v.is_number() || !std::isfinite(v.get<double>()))
                throw parse_error("field \"cov\" must contain finite numbers");
            raw.cov(i, k) = v.get<double>();
        }
    }
    return raw;
}

inline nlohmann::json to_json(const state_spec& spec) {
    return std::visit(
        [](const auto& sp) -> nlohmann::json {
            using t = std::decay_t<decltype(sp)>;
            if constexpr (std::is_same_v<t, coherent_spec>) {
                return {{"class", "coherent"}, {"re", sp.re}, {"im", sp.im}};
            } else if constexpr (std::is_same_v<t, thermal_spec>) {
                return {{"class", "thermal"}, {"nu", sp.nu}};
            } else if constexpr (std::is_same_v<t, epr_spec>) {
                return {{"class", "epr"}, {"mu", sp.mu}};
            } else if constexpr (std::is_same_v<t, squeezed_thermal_spec>) {
                return {{"class", "st"}, {"mu", sp.mu}, {"c", sp.c}};
            } else {
                nlohmann::json jm = nlohmann::json::array();
                for (Eigen::Index i = 0; i < sp.mean.size(); ++i) jm.push_back(sp.mean(i));
                nlohmann::json jc = nlohmann::json::array();
                for (Eigen::Index i = 0; i < sp.cov.rows(); ++i) {
                    nlohmann::json row = nlohmann::json::array();
                    for (Eigen::Index k = 0; k < sp.cov.cols(); ++k)
                        row.push_back(sp.cov(i, k));
                    jc.push_back(row);
                }
                return {{"mean", jm}, {"cov", jc}};
            }
        },
        spec);
}

inline state_spec load_state_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open state file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("invalid JSON in " + path + ": " + e.what());
    }
    return parse_state_spec(j);
}

} // namespace gqhb
