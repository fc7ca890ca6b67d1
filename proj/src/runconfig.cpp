#include "keq/runconfig.hpp"

#include <fstream>

#include "keq/errors.hpp"

namespace keq {

namespace {

double get_number(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw ConfigError(std::string("config: missing or non-numeric field '") + key + "'");
    }
    return j[key].get<double>();
}

}  // namespace

Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    return j;
}

DistPtr parse_dist(const Json& parent) {
    if (!parent.contains("dist")) return uniform_dist();
    const Json& d = parent["dist"];
    if (!d.is_object()) throw ConfigError("config: 'dist' must be an object");
    const std::string family = d.value("family", "product_power");
    if (family != "product_power") {
        throw ConfigError("config: unknown distribution family '" + family + "'");
    }
    double t1 = 1.0, t2 = 1.0;
    if (d.contains("theta")) {
        const Json& t = d["theta"];
        if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_number()) {
            throw ConfigError("config: 'dist.theta' must be [t1, t2]");
        }
        t1 = t[0].get<double>();
        t2 = t[1].get<double>();
    }
    if (!(t1 > 0.0) || !(t2 > 0.0)) throw ConfigError("config: 'dist.theta' must be positive");
    return product_power_dist(t1, t2);
}

Point parse_point(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(std::string("config: '") + what + "' must be [x1, x2]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Economy parse_economy(const Json& j, bool need_m, bool need_mu) {
    if (!j.is_object()) throw ConfigError("config: economy block must be an object");
    Economy econ;
    econ.dist = parse_dist(j);
    if (!j.contains("h")) throw ConfigError("config: economy needs 'h'");
    econ.h = parse_point(j["h"], "h");
    if (j.contains("m")) {
        econ.m = parse_point(j["m"], "m");
    } else if (need_m) {
        throw ConfigError("config: economy needs 'm'");
    }
    econ.c = get_number(j, "c");
    if (j.contains("mu")) {
        econ.mu = get_number(j, "mu");
    } else if (need_mu) {
        throw ConfigError("config: economy needs 'mu'");
    } else {
        econ.mu = 1.0;
    }
    if (j.contains("synergy")) {
        if (!j["synergy"].is_boolean()) throw ConfigError("config: 'synergy' must be a boolean");
        econ.synergy = j["synergy"].get<bool>();
    }
    try {
        check_economy(econ);
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return econ;
}

TwoTypeEconomy parse_two_type(const Json& j, bool need_m) {
    if (!j.is_object()) throw ConfigError("config: two_type block must be an object");
    TwoTypeEconomy econ;
    econ.dist = parse_dist(j);
    if (!j.contains("hA") || !j.contains("hB")) {
        throw ConfigError("config: two_type needs 'hA' and 'hB'");
    }
    econ.hA = parse_point(j["hA"], "hA");
    econ.hB = parse_point(j["hB"], "hB");
    econ.phiA = get_number(j, "phiA");
    if (j.contains("m")) {
        econ.m = parse_point(j["m"], "m");
    } else if (need_m) {
        throw ConfigError("config: two_type needs 'm'");
    }
    econ.c = get_number(j, "c");
    try {
        check_two_type(econ);
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return econ;
}

}  // namespace keq
