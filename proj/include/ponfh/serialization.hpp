#pragma once

#include "ponfh/types.hpp"

#include <json.hpp>

#include <string>

namespace ponfh {

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const Point2D& p);
Json to_json(const NetworkInstance& inst);
Json to_json(const Scenario& scenario);
Json to_json(const CostCatalog& catalog);
Json to_json(const PhysicalParams& params);
Json to_json(const Solution& sol);
Json to_json(const CostBreakdown& cost);

Point2D point_from_json(const Json& j);
NetworkInstance instance_from_json(const Json& j);
Scenario scenario_from_json(const Json& j);
CostCatalog catalog_from_json(const Json& j);
PhysicalParams params_from_json(const Json& j);
Solution solution_from_json(const Json& j);
CostBreakdown breakdown_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace ponfh
