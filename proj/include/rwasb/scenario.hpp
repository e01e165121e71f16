// scenario.hpp — Declarative run description: config parsing, trajectory
// production, CSV + manifest emission

#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rwasb/dynamics.hpp"
#include "rwasb/subohmic.hpp"

namespace rwasb::scenario {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- minimal TOML subset ---------------------------------------------------
// Supports comments, [section] headers, key = value with strings, numbers,
// booleans, arrays (possibly multi-line), and inline tables.
struct TomlValue;
using TomlArray = std::vector<TomlValue>;
using TomlTable = std::map<std::string, TomlValue>;

struct TomlValue {
    std::variant<std::string, double, bool, TomlArray, TomlTable> data;

    bool is_string() const { return std::holds_alternative<std::string>(data); }
    bool is_number() const { return std::holds_alternative<double>(data); }
    bool is_bool() const { return std::holds_alternative<bool>(data); }
    bool is_array() const { return std::holds_alternative<TomlArray>(data); }
    bool is_table() const { return std::holds_alternative<TomlTable>(data); }
};

// section name -> keys; top-level keys land in the "" section.
// Throws ConfigError with a line number on malformed input.
std::map<std::string, TomlTable> parse_toml(const std::string& text);

// --- scenario ---------------------------------------------------------------

enum class KernelKind { Lorentz, SubohmicMix };

enum class Output {
    Exact,
    Pert,
    PertUncorrected,
    Uniform,
    Born,
    Tcl2,
    Tcl4,
    Overlap,
    ShortTime,
    GammaRate,
    Tstar,
    Correlations,
};

std::string output_name(Output o);

struct Scenario {
    KernelKind kind = KernelKind::Lorentz;
    std::vector<kernels::LorentzMode> modes;  // Lorentz
    double chi = 0.5, sub_g = 1.0, sub_gamma = 1.0;  // SubohmicMix
    std::vector<double> lambdas;
    double t_max = 10.0;
    std::size_t n_points = 201;
    std::vector<int> orders;
    std::vector<Output> outputs;
    dynamics::QubitDensity rho0{1.0, {0.0, 0.0}, true};
};

// Validates and converts parsed TOML; errors carry section.key context.
Scenario scenario_from_toml(const std::map<std::string, TomlTable>& doc);
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Built-in golden scenarios (also shipped as presets/*.toml).
std::string preset_text(const std::string& name);  // "figure1" | "figure2"

// Runs every requested output for every lambda (sweep entries in parallel),
// writing one CSV per curve plus a flat key=value manifest into out_dir.
void run(const Scenario& sc, const std::string& out_dir);

// The manifest alone: derived constants without trajectory runs.
std::string report_constants(const Scenario& sc);

// fixed CSV number format: 17 significant digits
std::string format_number(double v);

}  // namespace rwasb::scenario
