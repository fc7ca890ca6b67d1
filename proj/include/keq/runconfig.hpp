#pragma once

#include <string>

#include "json.hpp"
#include "keq/econ.hpp"
#include "keq/twotype.hpp"

namespace keq {

using Json = nlohmann::json;

// All parsers throw ConfigError with a field-level message on bad input.

Json load_config(const std::string& path);

// {"family":"product_power","theta":[t1,t2]}; omitted spec means uniform.
DistPtr parse_dist(const Json& parent);

Point parse_point(const Json& j, const char* what);

// {"h":[...],"m":[...],"c":...,"mu":...,"synergy":true,"dist":{...}}
// m defaults to (0,0) and mu to 1 when a command does not need them.
Economy parse_economy(const Json& j, bool need_m = true, bool need_mu = true);

// {"hA":[...],"hB":[...],"phiA":...,"m":[...],"c":...,"dist":{...}}
TwoTypeEconomy parse_two_type(const Json& j, bool need_m = true);

}  // namespace keq
