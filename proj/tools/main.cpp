// qsample: batch front end. Every report embeds the config that produced it;
// `qsample --config report.json` replays it.
#include <cstdio>
#include <deque>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"
#include "json_io.hpp"

using qsample::cli::json;

namespace {

constexpr int kConfigError = 2;
constexpr int kPropertyFailure = 1;

std::string flag_name(std::string key) {
    for (auto& ch : key)
        if (ch == '_') ch = '-';
    return "--" + key;
}

// Binds one CLI option per config key; values the user passes overwrite the defaults.
class Binder {
public:
    void bind(CLI::App& app, json& config) {
        for (auto& [key, value] : config.items()) {
            const auto name = flag_name(key);
            json* slot = &value;
            if (value.is_boolean()) {
                app.add_flag_callback(name, [slot] { *slot = true; }, key);
            } else if (value.is_number_unsigned()) {
                auto& v = u64_.emplace_back(value.get<std::uint64_t>());
                app.add_option_function<std::uint64_t>(name, [slot](std::uint64_t x) { *slot = x; }, key)->default_val(v);
            } else if (value.is_number_integer()) {
                app.add_option_function<long long>(name, [slot](long long x) { *slot = x; }, key);
            } else if (value.is_number_float()) {
                app.add_option_function<double>(name, [slot](double x) { *slot = x; }, key);
            } else if (value.is_string()) {
                app.add_option_function<std::string>(name, [slot](const std::string& x) { *slot = x; }, key);
            } else if (value.is_null()) {
                app.add_option_function<std::string>(name, [slot](const std::string& path) { *slot = qsample::io::read_file(path); },
                                                     key + " (JSON file, embedded into the config)");
            }
        }
    }

private:
    std::deque<std::uint64_t> u64_;
};

// A saved report: JSON, or CSV whose first line is "# " followed by the config.
json load_saved(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qsample::PreconditionError("cannot open '" + path + "'");
    std::string first;
    std::getline(in, first);
    if (first.rfind("# ", 0) == 0) return json::parse(first.substr(2));
    return qsample::io::read_file(path);
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw qsample::PreconditionError("cannot write '" + path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampling-based security analysis: error probabilities, bounds and protocol simulations"};
    app.require_subcommand(0, 1);
    std::string out_path;
    std::string replay_path;
    app.add_option("--out", out_path, "Write the report here instead of standard output");
    app.add_option("--config", replay_path, "Replay the config embedded in an earlier report");

    std::map<std::string, json> configs;
    std::map<std::string, CLI::App*> subs;
    Binder binder;
    for (const auto& name : qsample::cli::command_names()) {
        configs[name] = qsample::cli::default_config(name);
        auto* sub = app.add_subcommand(name, qsample::cli::describe(name));
        sub->add_option("--out", out_path, "Write the report here instead of standard output");
        if (name == "eps-class") sub->add_flag_callback("--exact", [&configs] { configs["eps-class"]["mc"] = false; }, "Exact enumeration (default)");
        subs[name] = sub;
    }
    // Bind after every config exists so the slots stay put.
    for (const auto& name : qsample::cli::command_names()) binder.bind(*subs[name], configs[name]);

    std::string command;
    json config;
    try {
        app.parse(argc, argv);
        if (!replay_path.empty()) {
            const json saved = load_saved(replay_path);
            command = saved.at("command").get<std::string>();
            config = qsample::cli::default_config(command);
            for (const auto& [key, value] : saved.at("config").items()) {
                if (!config.contains(key)) throw qsample::PreconditionError("unknown parameter '" + key + "' for " + command);
                config[key] = value;
            }
        } else {
            for (const auto& [name, sub] : subs)
                if (sub->parsed()) command = name;
            if (command.empty()) throw CLI::CallForHelp();
            config = configs[command];
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    }

    try {
        const auto result = qsample::cli::run_command(command, config);
        if (!result.csv.empty()) {
            emit("# " + json{{"command", command}, {"config", config}}.dump() + "\n" + result.csv, out_path);
        } else {
            const json report{{"command", command}, {"config", config}, {"result", result.result}};
            emit(report.dump(2) + "\n", out_path);
        }
        if (!result.property_holds) {
            std::fprintf(stderr, "property check failed\n");
            return kPropertyFailure;
        }
    } catch (const qsample::BudgetError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const qsample::PreconditionError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "config error: malformed parameter: %s\n", e.what());
        return kConfigError;
    }
    return 0;
}
