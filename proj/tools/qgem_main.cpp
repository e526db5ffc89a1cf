// Command-line front end: reproduces the design tables and trap-field data as
// CSV/JSON from a declarative JSON config plus flag overrides.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgem/qgem.hpp"

namespace {

using nlohmann::json;

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw qgem::ConfigError("config: cannot open file '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw qgem::ConfigError("config: parse error in '" + path + "': " + e.what());
    }
}

// Apply a dotted-path override, e.g. "table1.rate_hz=0.02". The value is
// parsed as JSON when possible and falls back to a plain string.
void apply_override(json& root, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw qgem::ConfigError("--set expects key.path=value, got '" + assignment + "'");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw;
    }

    json* node = &root;
    std::istringstream keys(path);
    std::string key;
    std::vector<std::string> parts;
    while (std::getline(keys, key, '.')) {
        parts.push_back(key);
    }
    if (parts.empty()) {
        throw qgem::ConfigError("--set expects key.path=value, got '" + assignment + "'");
    }
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
        node = &(*node)[parts[i]];
    }
    (*node)[parts.back()] = value;
}

std::string resolve_output_path(const std::string& path) {
    if (path == "-") {
        return path;
    }
    const char* dir = std::getenv("QGEM_OUTPUT_DIR");
    if (dir && *dir && std::filesystem::path(path).is_relative()) {
        return (std::filesystem::path(dir) / path).string();
    }
    return path;
}

void write_output(const std::string& content, const std::string& path) {
    const std::string resolved = resolve_output_path(path);
    if (resolved == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(resolved, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file '" + resolved + "'");
    }
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Design toolkit for gravitationally induced entanglement between two "
                 "trapped, plate-shielded matter-wave interferometers"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string format;
    std::string output_path;
    bool strict = false;
    app.add_option("-c,--config", config_path, "JSON config file");
    app.add_option("--set", overrides,
                   "Override a config key by dotted path, e.g. --set table1.rate_hz=0.02")
        ->allow_extra_args(false);
    app.add_option("--format", format, "Output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", output_path,
                   "Output path ('-' for stdout; relative paths honor QGEM_OUTPUT_DIR)");
    app.add_flag("--strict", strict, "Turn validity-guard warnings into hard errors");

    auto* cmd_table1 = app.add_subcommand(
        "table1", "Superposition width vs mass and plate distance at the target rate");
    auto* cmd_fields = app.add_subcommand(
        "fields", "Minimal trap field magnitude and gradient vs z or mass");
    auto* cmd_dxg = app.add_subcommand(
        "dx-vs-gamma", "Width at zero witness expectation vs decoherence rate");
    auto* cmd_surface =
        app.add_subcommand("trap-surface", "Trapping potential over the (x, z) window at y = 0");
    auto* cmd_check =
        app.add_subcommand("check", "Dominance check of trap vs plate attraction at one point");
    for (auto* sub : {cmd_table1, cmd_fields, cmd_dxg, cmd_surface, cmd_check}) {
        sub->fallthrough(); // global flags remain valid after the subcommand name
    }

    CLI11_PARSE(app, argc, argv);

    try {
        json root = config_path.empty() ? json::object() : load_config_file(config_path);
        for (const auto& assignment : overrides) {
            apply_override(root, assignment);
        }
        if (!format.empty()) {
            root["output"]["format"] = format;
        }
        if (!output_path.empty()) {
            root["output"]["path"] = output_path;
        }
        if (strict) {
            root["strict"] = true;
        }

        const qgem::RunConfig config = qgem::RunConfig::from_json(root);

        if (cmd_table1->parsed()) {
            write_output(qgem::render(qgem::run_table1(config), config.output),
                         config.output.path);
        } else if (cmd_fields->parsed()) {
            write_output(qgem::render(qgem::run_field_requirements(config), config.output),
                         config.output.path);
        } else if (cmd_dxg->parsed()) {
            write_output(qgem::render(qgem::run_dx_vs_gamma(config), config.output),
                         config.output.path);
        } else if (cmd_surface->parsed()) {
            write_output(qgem::render(qgem::run_trap_surface(config), config.output),
                         config.output.path);
        } else if (cmd_check->parsed()) {
            const auto outcome = qgem::run_check(config);
            std::cout << outcome.text;
            return outcome.exit_code;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
