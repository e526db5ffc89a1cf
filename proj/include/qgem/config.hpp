#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgem/em_interactions.hpp"
#include "qgem/trapping.hpp"

// Declarative run configuration. A single JSON document (plus flag overrides
// in the CLI) drives every command; unknown keys are rejected with their full
// key path, and all physical values pass through the module constructors
// before any computation.

namespace qgem {

/// Configuration error carrying the offending key path.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace cfg_detail {

using nlohmann::json;

inline std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

inline void reject_unknown_keys(const json& obj, const std::string& path,
                                const std::set<std::string>& allowed) {
    if (!obj.is_object()) {
        throw ConfigError("config: '" + path + "' must be an object");
    }
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("config: unknown key '" + join(path, item.key()) + "'");
        }
    }
}

inline double get_number(const json& obj, const std::string& path, const char* key,
                         double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_number()) {
        throw ConfigError("config: '" + join(path, key) + "' must be a number");
    }
    return obj[key].get<double>();
}

inline std::optional<double> get_optional_number(const json& obj, const std::string& path,
                                                 const char* key) {
    if (!obj.contains(key)) {
        return std::nullopt;
    }
    if (!obj[key].is_number()) {
        throw ConfigError("config: '" + join(path, key) + "' must be a number");
    }
    return obj[key].get<double>();
}

inline int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_number_integer()) {
        throw ConfigError("config: '" + join(path, key) + "' must be an integer");
    }
    return obj[key].get<int>();
}

inline bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_boolean()) {
        throw ConfigError("config: '" + join(path, key) + "' must be a boolean");
    }
    return obj[key].get<bool>();
}

inline std::string get_string(const json& obj, const std::string& path, const char* key,
                              const std::string& fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_string()) {
        throw ConfigError("config: '" + join(path, key) + "' must be a string");
    }
    return obj[key].get<std::string>();
}

inline std::vector<double> get_number_array(const json& obj, const std::string& path,
                                            const char* key, std::vector<double> fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    if (!obj[key].is_array()) {
        throw ConfigError("config: '" + join(path, key) + "' must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto& v : obj[key]) {
        if (!v.is_number()) {
            throw ConfigError("config: '" + join(path, key) + "' must be an array of numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace cfg_detail

enum class DipoleModel { fixed, volume_scaled };

struct DipoleConfig {
    DipoleModel model = DipoleModel::fixed;
    double magnitude_e_m = 1e-4;     // fixed-model magnitude [e m]
    double theta_rad = 0.0;          // orientation to the plate normal
    double baseline_radius_m = 1e-5; // volume-scaling anchor radius
};

struct OutputConfig {
    enum class Format { csv, json };
    Format format = Format::csv;
    std::string path = "-"; // "-" writes to stdout
};

struct Table1Config {
    std::vector<double> masses_kg = {1e-15, 1e-14, 1e-13};
    std::vector<double> plate_distances_m = {30e-6, 10e-6, 5e-6};
    double plate_thickness_m = 1e-6;
    double rate_hz = 0.01;
};

struct FieldsConfig {
    std::optional<std::vector<double>> z_grid_m{};     // sweep z at fixed mass
    std::optional<std::vector<double>> mass_grid_kg{}; // sweep mass at fixed z
    double mass_kg = 1e-14;
    double z_m = 30e-6;
};

struct DxVsGammaConfig {
    std::vector<double> masses_kg = {1e-15, 1e-14, 1e-13};
    std::vector<double> gamma_hz = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 1e-1};
    double d_m = 61e-6;
    double tau_s = 1.0;
    double witness_target = 0.0;
};

struct TrapSurfaceConfig {
    double mass_kg = 1e-14;
    double x_half_width_m = 10e-6;
    double z_half_width_m = 1e-6;
    int nx = 101;
    int nz = 101;
};

struct CheckConfig {
    double mass_kg = 1e-14;
    double z_m = 30e-6;
    double b_t = 10e-6;
    double dbdz_t_per_m = 1.0;
};

struct TrapConfig {
    double a2_t = -1.3;
    double a3_t = 0.0183;
    double a4_t = 0.72;
    std::optional<double> y0_m{}; // no shipped default
};

struct RunConfig {
    Material material = Material::diamond();
    DipoleConfig dipole;
    EmTermSelection terms = EmTermSelection::casimir_polder_only();
    TrapConfig trap;
    OutputConfig output;
    bool strict = false;

    Table1Config table1;
    FieldsConfig fields;
    DxVsGammaConfig dx_vs_gamma;
    TrapSurfaceConfig trap_surface;
    CheckConfig check;

    [[nodiscard]] Validity validity() const {
        return strict ? Validity::strict : Validity::lenient;
    }

    /// Test mass for a given sphere mass under the configured material and
    /// dipole model.
    [[nodiscard]] TestMass test_mass(double mass_kg) const {
        double dip = dipole_e_m_to_si(dipole.magnitude_e_m);
        if (dipole.model == DipoleModel::volume_scaled) {
            const double radius = radius_from_mass(mass_kg, material.density);
            dip = volume_scaled_dipole(radius, dipole.baseline_radius_m,
                                       dipole_e_m_to_si(dipole.magnitude_e_m));
        }
        return TestMass::make(mass_kg, material, dip, dipole.theta_rad);
    }

    /// Trap profile from the config block; fails naming the key when y0 is
    /// absent.
    [[nodiscard]] TrapProfile trap_profile() const {
        if (!trap.y0_m) {
            throw ConfigError("config: 'trap.y0_m' is required for trap-profile commands");
        }
        TrapProfile p{trap.a2_t, trap.a3_t, trap.a4_t, *trap.y0_m};
        p.validate();
        return p;
    }

    static RunConfig from_json(const nlohmann::json& root);
};

inline RunConfig RunConfig::from_json(const nlohmann::json& root) {
    using namespace cfg_detail;
    RunConfig c;
    reject_unknown_keys(root, "",
                        {"material", "dipole", "terms", "trap", "output", "strict", "table1",
                         "fields", "dx_vs_gamma", "trap_surface", "check"});

    if (root.contains("material")) {
        const auto& m = root["material"];
        reject_unknown_keys(m, "material", {"name", "epsilon", "density_kg_m3", "chi_rho_m3_kg"});
        const std::string name = get_string(m, "material", "name", "diamond");
        if (name == "diamond") {
            c.material = Material::diamond();
        } else {
            throw ConfigError("config: unknown material preset '" + name +
                              "' (material.name); only 'diamond' is shipped");
        }
        c.material.epsilon = get_number(m, "material", "epsilon", c.material.epsilon);
        c.material.density = get_number(m, "material", "density_kg_m3", c.material.density);
        c.material.chi_rho = get_number(m, "material", "chi_rho_m3_kg", c.material.chi_rho);
    }

    if (root.contains("dipole")) {
        const auto& d = root["dipole"];
        reject_unknown_keys(d, "dipole",
                            {"model", "magnitude_e_m", "theta_rad", "baseline_radius_m"});
        const std::string model = get_string(d, "dipole", "model", "fixed");
        if (model == "fixed") {
            c.dipole.model = DipoleModel::fixed;
        } else if (model == "volume-scaled") {
            c.dipole.model = DipoleModel::volume_scaled;
        } else {
            throw ConfigError("config: 'dipole.model' must be 'fixed' or 'volume-scaled'");
        }
        c.dipole.magnitude_e_m = get_number(d, "dipole", "magnitude_e_m", c.dipole.magnitude_e_m);
        c.dipole.theta_rad = get_number(d, "dipole", "theta_rad", c.dipole.theta_rad);
        c.dipole.baseline_radius_m =
            get_number(d, "dipole", "baseline_radius_m", c.dipole.baseline_radius_m);
    }

    if (root.contains("terms")) {
        const auto& t = root["terms"];
        reject_unknown_keys(t, "terms", {"include_dipole", "include_casimir_polder"});
        c.terms.include_dipole = get_bool(t, "terms", "include_dipole", c.terms.include_dipole);
        c.terms.include_casimir_polder =
            get_bool(t, "terms", "include_casimir_polder", c.terms.include_casimir_polder);
        if (!c.terms.any()) {
            throw ConfigError("config: 'terms' selects no electromagnetic term");
        }
    }

    if (root.contains("trap")) {
        const auto& t = root["trap"];
        reject_unknown_keys(t, "trap", {"a2_t", "a3_t", "a4_t", "y0_m"});
        c.trap.a2_t = get_number(t, "trap", "a2_t", c.trap.a2_t);
        c.trap.a3_t = get_number(t, "trap", "a3_t", c.trap.a3_t);
        c.trap.a4_t = get_number(t, "trap", "a4_t", c.trap.a4_t);
        c.trap.y0_m = get_optional_number(t, "trap", "y0_m");
    }

    if (root.contains("output")) {
        const auto& o = root["output"];
        reject_unknown_keys(o, "output", {"format", "path"});
        const std::string fmt = get_string(o, "output", "format", "csv");
        if (fmt == "csv") {
            c.output.format = OutputConfig::Format::csv;
        } else if (fmt == "json") {
            c.output.format = OutputConfig::Format::json;
        } else {
            throw ConfigError("config: 'output.format' must be 'csv' or 'json'");
        }
        c.output.path = get_string(o, "output", "path", c.output.path);
    }

    c.strict = get_bool(root, "", "strict", c.strict);

    if (root.contains("table1")) {
        const auto& t = root["table1"];
        reject_unknown_keys(
            t, "table1", {"masses_kg", "plate_distances_m", "plate_thickness_m", "rate_hz"});
        c.table1.masses_kg = get_number_array(t, "table1", "masses_kg", c.table1.masses_kg);
        c.table1.plate_distances_m =
            get_number_array(t, "table1", "plate_distances_m", c.table1.plate_distances_m);
        c.table1.plate_thickness_m =
            get_number(t, "table1", "plate_thickness_m", c.table1.plate_thickness_m);
        c.table1.rate_hz = get_number(t, "table1", "rate_hz", c.table1.rate_hz);
    }

    if (root.contains("fields")) {
        const auto& f = root["fields"];
        reject_unknown_keys(f, "fields", {"z_grid_m", "mass_grid_kg", "mass_kg", "z_m"});
        if (f.contains("z_grid_m")) {
            c.fields.z_grid_m = get_number_array(f, "fields", "z_grid_m", {});
        }
        if (f.contains("mass_grid_kg")) {
            c.fields.mass_grid_kg = get_number_array(f, "fields", "mass_grid_kg", {});
        }
        if (c.fields.z_grid_m && c.fields.mass_grid_kg) {
            throw ConfigError(
                "config: 'fields.z_grid_m' and 'fields.mass_grid_kg' are mutually exclusive");
        }
        c.fields.mass_kg = get_number(f, "fields", "mass_kg", c.fields.mass_kg);
        c.fields.z_m = get_number(f, "fields", "z_m", c.fields.z_m);
    }

    if (root.contains("dx_vs_gamma")) {
        const auto& g = root["dx_vs_gamma"];
        reject_unknown_keys(g, "dx_vs_gamma",
                            {"masses_kg", "gamma_hz", "d_m", "tau_s", "witness_target"});
        c.dx_vs_gamma.masses_kg =
            get_number_array(g, "dx_vs_gamma", "masses_kg", c.dx_vs_gamma.masses_kg);
        c.dx_vs_gamma.gamma_hz =
            get_number_array(g, "dx_vs_gamma", "gamma_hz", c.dx_vs_gamma.gamma_hz);
        c.dx_vs_gamma.d_m = get_number(g, "dx_vs_gamma", "d_m", c.dx_vs_gamma.d_m);
        c.dx_vs_gamma.tau_s = get_number(g, "dx_vs_gamma", "tau_s", c.dx_vs_gamma.tau_s);
        c.dx_vs_gamma.witness_target =
            get_number(g, "dx_vs_gamma", "witness_target", c.dx_vs_gamma.witness_target);
    }

    if (root.contains("trap_surface")) {
        const auto& t = root["trap_surface"];
        reject_unknown_keys(t, "trap_surface",
                            {"mass_kg", "x_half_width_m", "z_half_width_m", "nx", "nz"});
        c.trap_surface.mass_kg = get_number(t, "trap_surface", "mass_kg", c.trap_surface.mass_kg);
        c.trap_surface.x_half_width_m =
            get_number(t, "trap_surface", "x_half_width_m", c.trap_surface.x_half_width_m);
        c.trap_surface.z_half_width_m =
            get_number(t, "trap_surface", "z_half_width_m", c.trap_surface.z_half_width_m);
        c.trap_surface.nx = get_int(t, "trap_surface", "nx", c.trap_surface.nx);
        c.trap_surface.nz = get_int(t, "trap_surface", "nz", c.trap_surface.nz);
        if (c.trap_surface.nx < 1 || c.trap_surface.nz < 1) {
            throw ConfigError("config: 'trap_surface.nx'/'nz' must be >= 1");
        }
    }

    if (root.contains("check")) {
        const auto& k = root["check"];
        reject_unknown_keys(k, "check", {"mass_kg", "z_m", "b_t", "dbdz_t_per_m"});
        c.check.mass_kg = get_number(k, "check", "mass_kg", c.check.mass_kg);
        c.check.z_m = get_number(k, "check", "z_m", c.check.z_m);
        c.check.b_t = get_number(k, "check", "b_t", c.check.b_t);
        c.check.dbdz_t_per_m = get_number(k, "check", "dbdz_t_per_m", c.check.dbdz_t_per_m);
    }

    return c;
}

} // namespace qgem
