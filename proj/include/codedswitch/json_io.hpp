#pragma once

#include <string>

#include <json.hpp>

#include "codedswitch/model.hpp"

namespace codedswitch {

using ordered_json = nlohmann::ordered_json;

// {"N": int, "k": int, "n": int, "placement": string, "packets": [[int,...],...]}
ordered_json to_json(const Instance& inst);
Instance instance_from_json(const ordered_json& j);

// {"N", "k", "n", "assignments": [[int,...] | null, ...], "l_star", "rho"}
ordered_json to_json(const Solution& sol, const Instance& inst);
Solution solution_from_json(const ordered_json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

ordered_json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const ordered_json& j);

}  // namespace codedswitch
