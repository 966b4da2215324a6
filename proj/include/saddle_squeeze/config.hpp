#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "saddle_squeeze/qnf_symbol.hpp"

// Run configuration: a versioned JSON document (nested key-value text).
// JSON is the config dialect because nlohmann emits shortest round-trip
// representations, so every finite double survives a serialize/parse cycle
// bit-exactly.
namespace saddle_squeeze {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One sweep axis, either {min, max, count} or an explicit value list.
struct AxisSpec {
    std::vector<double> values;

    static AxisSpec linspace(double min, double max, long count) {
        if (count < 1) throw ConfigError("axis: count must be >= 1");
        if (!(min <= max)) throw ConfigError("axis: min must be <= max");
        AxisSpec axis;
        axis.values.reserve(static_cast<std::size_t>(count));
        if (count == 1) {
            axis.values.push_back(min);
        } else {
            for (long i = 0; i < count; ++i)
                axis.values.push_back(min + static_cast<double>(i) * (max - min) /
                                                static_cast<double>(count - 1));
        }
        return axis;
    }
};

struct OutputSpec {
    std::string diagnostic;  // "table" or a record column name
    std::string format;      // csv | structured | curve
    std::string path;
};

struct RunConfig {
    int config_version = 1;
    ModelParams model;
    AxisSpec e_axis;
    AxisSpec s_axis;
    double tol = 1e-12;
    std::uint64_t seed = 42;
    long oracle_samples = 1'000'000;
    double threshold_s_max = 20.0;
    std::vector<OutputSpec> outputs;

    // The documented default parameter set used by the shipped figure
    // configs: mildly anharmonic two-dof model at E = 2.
    static RunConfig defaults() {
        RunConfig cfg;
        cfg.model = ModelParams{1.0, {1.0}, 0.05, 0.2, 0.0, 1.0};
        cfg.e_axis.values = {2.0};
        cfg.s_axis = AxisSpec::linspace(0.0, 2.5, 251);
        return cfg;
    }

    void validate() const {
        if (config_version != 1) throw ConfigError("config_version: only version 1 is understood");
        try {
            model.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (e_axis.values.empty()) throw ConfigError("e_axis: must be non-empty");
        if (s_axis.values.empty()) throw ConfigError("s_axis: must be non-empty");
        for (double v : e_axis.values)
            if (!std::isfinite(v)) throw ConfigError("e_axis: values must be finite");
        for (double v : s_axis.values)
            if (!std::isfinite(v)) throw ConfigError("s_axis: values must be finite");
        if (!(tol > 0.0) || tol > 1e-2) throw ConfigError("tol: must lie in (0, 1e-2]");
        if (oracle_samples < 1000) throw ConfigError("oracle_samples: must be >= 1000");
        if (!(threshold_s_max > 0.0)) throw ConfigError("threshold_s_max: must be > 0");
        for (const OutputSpec& out : outputs) {
            if (out.format != "csv" && out.format != "structured" && out.format != "curve")
                throw ConfigError("outputs.format: must be csv, structured or curve");
            if (out.path.empty()) throw ConfigError("outputs.path: must be non-empty");
        }
    }
};

namespace config_detail {

inline const nlohmann::json& require(const nlohmann::json& j, const std::string& key,
                                     const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end()) throw ConfigError(path + key + ": missing required field");
    return *it;
}

inline double number_at(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

}  // namespace config_detail

// --- QnfTerm / QnfSymbol / ModelParams <-> JSON -----------------------------

inline void to_json(nlohmann::json& j, const QnfTerm& term) {
    j = {{"coeff", term.coeff},
         {"i_power", term.i_power},
         {"j_powers", term.j_powers},
         {"hbar_power", term.hbar_power}};
}

inline void from_json(const nlohmann::json& j, QnfTerm& term) {
    term.coeff = j.at("coeff").get<double>();
    term.i_power = j.value("i_power", 0);
    term.j_powers = j.at("j_powers").get<std::vector<int>>();
    term.hbar_power = j.value("hbar_power", 0);
}

inline nlohmann::json symbol_to_json(const QnfSymbol& symbol) {
    return {{"n_bath", symbol.n_bath()}, {"hbar", symbol.hbar()}, {"terms", symbol.terms()}};
}

inline QnfSymbol symbol_from_json(const nlohmann::json& j) {
    return QnfSymbol(j.at("terms").get<std::vector<QnfTerm>>(), j.at("n_bath").get<int>(),
                     j.at("hbar").get<double>());
}

inline void to_json(nlohmann::json& j, const ModelParams& params) {
    j = {{"lambda", params.lambda}, {"omega", params.omega}, {"alpha", params.alpha},
         {"b2", params.b2},         {"E0", params.E0},       {"hbar", params.hbar}};
}

inline void from_json(const nlohmann::json& j, ModelParams& params) {
    params.lambda = j.at("lambda").get<double>();
    const auto& omega = j.at("omega");
    if (omega.is_number()) {
        params.omega = {omega.get<double>()};
    } else {
        params.omega = omega.get<std::vector<double>>();
    }
    params.alpha = j.value("alpha", 0.0);
    params.b2 = j.value("b2", 0.0);
    params.E0 = j.value("E0", 0.0);
    params.hbar = j.value("hbar", 1.0);
}

// --- RunConfig parsing -------------------------------------------------------

inline AxisSpec parse_axis(const nlohmann::json& j, const std::string& path) {
    AxisSpec axis;
    if (j.is_array()) {
        if (j.empty()) throw ConfigError(path + ": explicit value list must be non-empty");
        for (const auto& v : j) axis.values.push_back(config_detail::number_at(v, path));
        return axis;
    }
    if (j.is_number()) {
        axis.values.push_back(j.get<double>());
        return axis;
    }
    if (!j.is_object())
        throw ConfigError(path + ": expected {min, max, count}, a list, or a number");
    const double min = config_detail::number_at(config_detail::require(j, "min", path + "."),
                                                path + ".min");
    const double max = config_detail::number_at(config_detail::require(j, "max", path + "."),
                                                path + ".max");
    const auto& count_j = config_detail::require(j, "count", path + ".");
    if (!count_j.is_number_integer()) throw ConfigError(path + ".count: expected an integer");
    const long count = count_j.get<long>();
    if (count < 1) throw ConfigError(path + ".count: must be >= 1");
    if (!(min <= max)) throw ConfigError(path + ": min must be <= max");
    return AxisSpec::linspace(min, max, count);
}

inline RunConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");

    RunConfig cfg = RunConfig::defaults();
    cfg.outputs.clear();
    if (j.contains("config_version")) cfg.config_version = j["config_version"].get<int>();
    if (j.contains("model")) {
        try {
            cfg.model = j["model"].get<ModelParams>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("model: ") + e.what());
        }
    }
    if (j.contains("e_axis")) cfg.e_axis = parse_axis(j["e_axis"], "e_axis");
    if (j.contains("s_axis")) cfg.s_axis = parse_axis(j["s_axis"], "s_axis");
    if (j.contains("tol")) cfg.tol = config_detail::number_at(j["tol"], "tol");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) throw ConfigError("seed: expected an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("oracle_samples")) {
        if (!j["oracle_samples"].is_number_integer())
            throw ConfigError("oracle_samples: expected an integer");
        cfg.oracle_samples = j["oracle_samples"].get<long>();
    }
    if (j.contains("threshold_s_max"))
        cfg.threshold_s_max = config_detail::number_at(j["threshold_s_max"], "threshold_s_max");
    if (j.contains("outputs")) {
        if (!j["outputs"].is_array()) throw ConfigError("outputs: expected a list");
        for (const auto& o : j["outputs"]) {
            OutputSpec spec;
            spec.diagnostic = o.value("diagnostic", "table");
            spec.format = o.value("format", "csv");
            spec.path = o.value("path", "");
            cfg.outputs.push_back(std::move(spec));
        }
    }
    cfg.validate();
    return cfg;
}

inline RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

// Normalized echo of a parsed config (axes resolved to explicit lists).
inline std::string dump_config(const RunConfig& cfg) {
    nlohmann::json j;
    j["config_version"] = cfg.config_version;
    j["model"] = cfg.model;
    j["e_axis"] = cfg.e_axis.values;
    j["s_axis"] = cfg.s_axis.values;
    j["tol"] = cfg.tol;
    j["seed"] = cfg.seed;
    j["oracle_samples"] = cfg.oracle_samples;
    j["threshold_s_max"] = cfg.threshold_s_max;
    nlohmann::json outs = nlohmann::json::array();
    for (const OutputSpec& o : cfg.outputs)
        outs.push_back({{"diagnostic", o.diagnostic}, {"format", o.format}, {"path", o.path}});
    j["outputs"] = outs;
    return j.dump(2) + "\n";
}

}  // namespace saddle_squeeze
