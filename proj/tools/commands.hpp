#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qsample::cli {

using nlohmann::json;

struct CommandResult {
    json result;
    // False when a checked property fails (exit status 1).
    bool property_holds = true;
    // Set for commands that emit CSV instead of JSON.
    std::string csv;
};

const std::vector<std::string>& command_names();
// Every parameter of a command with its default value. A null default marks a
// file-valued parameter whose JSON content is embedded in the config.
json default_config(const std::string& command);
std::string describe(const std::string& command);
CommandResult run_command(const std::string& command, const json& config);

// The property suite behind `verify`.
CommandResult run_verify(bool quick);

}  // namespace qsample::cli
