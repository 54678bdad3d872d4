// config_json.hpp — JSON reading/writing of SystemConfig.
//
// Keys: epsilon1, epsilon2, J, N1, alpha1, gamma1, N2, alpha2, gamma2, q and
// exactly one of temperature_kelvin | beta | zero_temperature (= true).
// Unknown keys are rejected.

#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dimer/config.hpp"

namespace dimer {

using json = nlohmann::json;

inline SystemConfig config_from_json(const json& j) {
    std::vector<std::string> errs;
    if (!j.is_object()) throw ConfigError({"configuration must be a JSON object"});

    static const std::set<std::string> kNumeric = {"epsilon1", "epsilon2", "J",  "alpha1",
                                                   "gamma1",   "alpha2",   "gamma2", "q"};
    static const std::set<std::string> kInteger = {"N1", "N2"};
    static const std::set<std::string> kThermal = {"temperature_kelvin", "beta", "zero_temperature"};

    for (const auto& [key, _] : j.items()) {
        if (!kNumeric.count(key) && !kInteger.count(key) && !kThermal.count(key)) {
            errs.push_back("unknown key \"" + key + "\"");
        }
    }

    auto number = [&](const char* key) -> double {
        auto it = j.find(key);
        if (it == j.end()) {
            errs.push_back(std::string("missing key \"") + key + "\"");
            return 0.0;
        }
        if (!it->is_number()) {
            errs.push_back(std::string("\"") + key + "\" must be a number");
            return 0.0;
        }
        return it->get<double>();
    };
    auto integer = [&](const char* key) -> int {
        auto it = j.find(key);
        if (it == j.end()) {
            errs.push_back(std::string("missing key \"") + key + "\"");
            return 1;
        }
        if (!it->is_number_integer()) {
            errs.push_back(std::string("\"") + key + "\" must be an integer");
            return 1;
        }
        return it->get<int>();
    };

    SystemConfig c;
    c.dimer.epsilon1 = number("epsilon1");
    c.dimer.epsilon2 = number("epsilon2");
    c.dimer.J = number("J");
    c.bath1.N = integer("N1");
    c.bath1.alpha = number("alpha1");
    c.bath1.gamma = number("gamma1");
    c.bath2.N = integer("N2");
    c.bath2.alpha = number("alpha2");
    c.bath2.gamma = number("gamma2");
    c.correlation.q = number("q");

    int thermal_keys = 0;
    for (const auto& k : kThermal) thermal_keys += j.count(k) ? 1 : 0;
    if (thermal_keys != 1) {
        errs.emplace_back("exactly one of temperature_kelvin, beta, zero_temperature must be given");
    } else if (j.count("temperature_kelvin")) {
        c.thermal = ThermalSpec::kelvin(number("temperature_kelvin"));
    } else if (j.count("beta")) {
        c.thermal = ThermalSpec::inverse_temperature(number("beta"));
    } else {
        const auto& z = j.at("zero_temperature");
        if (!z.is_boolean() || !z.get<bool>()) {
            errs.emplace_back("\"zero_temperature\" must be true when given");
        }
        c.thermal = ThermalSpec::zero_temperature();
    }

    // Range checks only make sense on fields that parsed.
    if (errs.empty()) {
        errs = validation_errors(c);
    } else {
        for (auto& e : validation_errors(c)) {
            if (e.find("must be finite") == std::string::npos) continue;
            errs.push_back(std::move(e));
        }
    }
    if (!errs.empty()) throw ConfigError(std::move(errs));
    return c;
}

inline json config_to_json(const SystemConfig& c) {
    json j = {
        {"epsilon1", c.dimer.epsilon1}, {"epsilon2", c.dimer.epsilon2}, {"J", c.dimer.J},
        {"N1", c.bath1.N},              {"alpha1", c.bath1.alpha},      {"gamma1", c.bath1.gamma},
        {"N2", c.bath2.N},              {"alpha2", c.bath2.alpha},      {"gamma2", c.bath2.gamma},
        {"q", c.correlation.q},
    };
    if (c.thermal.is_zero()) {
        j["zero_temperature"] = true;
    } else if (c.thermal.is_kelvin()) {
        j["temperature_kelvin"] = *c.thermal.raw();
    } else {
        j["beta"] = *c.thermal.raw();
    }
    return j;
}

inline SystemConfig config_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
    return config_from_json(j);
}

inline SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file \"" + path + "\""});
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_string(ss.str());
}

}  // namespace dimer
