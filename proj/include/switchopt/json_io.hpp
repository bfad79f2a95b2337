#pragma once

#include <string>

#include <json.hpp>

#include "switchopt/simulate.hpp"
#include "switchopt/verify.hpp"

namespace switchopt {

nlohmann::json to_json(const ProblemData& data);
ProblemData problem_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Thresholds& t);
nlohmann::json to_json(const Classification& c);

nlohmann::json to_json(const FreeBoundaries& b);
FreeBoundaries boundaries_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Coefficients& c);
nlohmann::json to_json(const RegionMap& regions);

// Full solve output; embeds the problem so downstream commands can re-read it.
nlohmann::json to_json(const Solution& sol);

nlohmann::json to_json(const HjbReport& rep);
nlohmann::json to_json(const C1Report& rep);
nlohmann::json to_json(const McResult& res);

// Value-function samples: header x,w1,w0,dw1,dw0,region1,region0.
std::string sample_csv(const Solution& sol, const GridSpec& grid);

// Per-point clause values of the variational-inequality audit.
std::string hjb_csv(const HjbReport& rep);

}  // namespace switchopt
