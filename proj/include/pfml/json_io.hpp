#ifndef PFML_JSON_IO_HPP_
#define PFML_JSON_IO_HPP_

#include <json.hpp>

#include "pfml/floor_plan.hpp"

namespace pfml {

nlohmann::json floor_plan_to_json(const FloorPlan& plan);
FloorPlan floor_plan_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace pfml

#endif
